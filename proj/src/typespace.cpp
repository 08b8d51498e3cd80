#include "coh/typespace.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <regex>
#include <set>

namespace coh {

namespace {

int code_of(const std::vector<int>& a, int size) {
  int c = 0;
  for (int x : a) c = c * size + x;
  return c;
}

std::vector<int> compose_tuple(const std::vector<int>& b, const std::vector<int>& f) {
  std::vector<int> a;
  for (int i : f) a.push_back(b[i]);
  return a;
}

struct layer_index {
  std::map<type_profile, int> ids;
  std::vector<std::vector<int>> by_model;  // point of every tuple, by tuple code
};

}  // namespace

int typespace::find(int n, const type_profile& p) const {
  auto& pts = layers.at(n).points;
  auto it = std::lower_bound(pts.begin(), pts.end(), p);
  if (it == pts.end() || !(*it == p)) return -1;
  return static_cast<int>(it - pts.begin());
}

int typespace::point_of(int model, const std::vector<int>& a) const {
  int n = static_cast<int>(a.size());
  return find(n, ctp(models.at(model), t.sig, a, d));
}

const std::vector<int>& typespace::smap(const std::vector<int>& f, int m) const {
  auto it = maps.find({m, f});
  if (it == maps.end()) throw std::out_of_range("no stored restriction map for this index map");
  return it->second;
}

bits typespace::open_of(int n, const formula& phi) const {
  if (auto e = check_formula(phi, n, t.sig); !e.empty()) throw std::invalid_argument(e);
  auto& L = layers.at(n);
  bits u(L.points.size());
  for (std::size_t p = 0; p < L.points.size(); ++p) {
    std::optional<bool> val;
    for (auto& r : L.real[p]) {
      bool v = eval(models[r.model], phi, r.tuple);
      if (val && *val != v)
        throw semantic_error("formula not determined by the stored profiles: " + to_string(phi, n));
      val = v;
    }
    if (val && *val) u.set(p);
  }
  return u;
}

formula typespace::isolating(int n, int p) const {
  auto& da = atoms_for(t.sig, n, d);
  auto& pr = layers.at(n).points.at(p);
  std::vector<formula> parts;
  for (std::size_t k = 0; k < da.atoms.size(); ++k)
    if (pr.base >> k & 1u) parts.push_back(da.atoms[k]);
  for (auto m : pr.maxima) parts.push_back(diagram_formula(da, m));
  return normalize(conj_of(parts));
}

formula typespace::formula_of(int n, const bits& u) const {
  auto& L = layers.at(n);
  std::vector<formula> parts;
  for (int p : L.order.minimal(u)) parts.push_back(isolating(n, p));
  return normalize(disj_of(parts));
}

std::string typespace::point_name(int n, int p) const { return "p" + std::to_string(n) + "." + std::to_string(p); }

std::vector<int> point_counts(const theory& t, int N, int B, int d, const enum_options& guard) {
  auto models = enumerate_models(t, B, guard);
  std::vector<int> out;
  for (int n = 0; n <= N; ++n) {
    std::set<type_profile> s;
    for (auto& m : models)
      for (auto& a : all_tuples(m.size, n)) s.insert(ctp(m, t.sig, a, d));
    out.push_back(static_cast<int>(s.size()));
  }
  return out;
}

typespace compute_typespace(const theory& t, const typespace_options& o) {
  if (o.N < 0 || o.B < 0 || o.d < 0) throw std::invalid_argument("bounds must be non-negative");
  typespace ts;
  ts.t = t;
  ts.N = o.N;
  ts.B = o.B;
  ts.d = o.d;
  ts.models = enumerate_models(t, o.B, o.guard);
  std::vector<layer_index> idx(o.N + 1);
  for (int n = 0; n <= o.N; ++n) {
    std::map<type_profile, std::vector<realization>> found;
    std::vector<std::vector<type_profile>> prof(ts.models.size());
    for (std::size_t mi = 0; mi < ts.models.size(); ++mi) {
      auto& m = ts.models[mi];
      for (auto& a : all_tuples(m.size, n)) {
        auto p = ctp(m, t.sig, a, o.d);
        found[p].push_back({static_cast<int>(mi), a});
        prof[mi].push_back(p);
      }
    }
    type_layer L;
    L.n = n;
    for (auto& [p, r] : found) {
      idx[n].ids[p] = static_cast<int>(L.points.size());
      L.points.push_back(p);
      L.real.push_back(r);
    }
    std::vector<bits> up(L.points.size(), bits(L.points.size()));
    for (std::size_t p = 0; p < L.points.size(); ++p)
      for (std::size_t q = 0; q < L.points.size(); ++q)
        if (profile_leq(L.points[p], L.points[q])) up[p].set(q);
    L.order = fin_poset::from_up(up);
    idx[n].by_model.resize(ts.models.size());
    for (std::size_t mi = 0; mi < ts.models.size(); ++mi)
      for (auto& p : prof[mi]) idx[n].by_model[mi].push_back(idx[n].ids.at(p));
    ts.layers.push_back(std::move(L));
  }
  // restriction maps, checked on every realization unless capped
  for (int n = 0; n <= o.N; ++n)
    for (int m = 0; m <= o.N; ++m)
      for (auto& f : all_maps(n, m)) {
        auto& Lm = ts.layers[m];
        std::vector<int> img(Lm.points.size(), -1);
        for (std::size_t q = 0; q < Lm.points.size(); ++q)
          for (std::size_t ri = 0; ri < Lm.real[q].size(); ++ri) {
            if (o.map_witnesses >= 0 && static_cast<int>(ri) >= std::max(1, o.map_witnesses)) break;
            auto& r = Lm.real[q][ri];
            auto& mod = ts.models[r.model];
            int p = idx[n].by_model[r.model][code_of(compose_tuple(r.tuple, f), mod.size)];
            if (img[q] >= 0 && img[q] != p) throw semantic_error("restriction map not well defined on stored profiles");
            img[q] = p;
          }
        ts.maps[{m, f}] = std::move(img);
      }
  if (o.stability) {
    auto& st = ts.stability;
    std::vector<int> c0;
    for (auto& L : ts.layers) c0.push_back(static_cast<int>(L.points.size()));
    st.counts.push_back(c0);
    try {
      st.counts.push_back(point_counts(t, o.N, o.B + 1, o.d, o.guard));
      st.counts.push_back(point_counts(t, o.N, o.B + 1, o.d + 1, o.guard));
      st.run = true;
      st.stable = st.counts[0] == st.counts[1] && st.counts[1] == st.counts[2];
      st.note = st.stable ? "point sets unchanged at (B+1,d) and (B+1,d+1)" : "point counts change with the bounds";
    } catch (const semantic_error& e) {
      st.note = std::string("stability not run: ") + e.what();
    }
  }
  return ts;
}

formula direct_image_formula(const formula& phi, const std::vector<int>& f, int m) {
  const int n = static_cast<int>(f.size());
  std::vector<int> shift;
  for (int j = 0; j < m; ++j) shift.push_back(n + j);
  std::vector<formula> parts{substitute(phi, m, shift, n + m)};
  for (int i = 0; i < n; ++i) {
    if (f[i] < 0 || f[i] >= m) throw index_error("index map value outside its codomain");
    parts.push_back(mk_eq(i, n + f[i]));
  }
  formula g = mk_and(parts);
  for (int j = 0; j < m; ++j) g = mk_exists(g);
  return g;
}

formula preimage_formula(const formula& psi, const std::vector<int>& f, int m) {
  return substitute(psi, static_cast<int>(f.size()), f, m);
}

fin_pushout make_pushout(int k, int n1, int n2, const std::vector<int>& alpha, const std::vector<int>& beta) {
  if (static_cast<int>(alpha.size()) != k || static_cast<int>(beta.size()) != k) throw index_error("span maps have the wrong length");
  for (int v : alpha)
    if (v < 0 || v >= n1) throw index_error("left map value out of range");
  for (int v : beta)
    if (v < 0 || v >= n2) throw index_error("right map value out of range");
  std::vector<int> parent(n1 + n2);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
  for (int i = 0; i < k; ++i) {
    int a = root(alpha[i]), b = root(n1 + beta[i]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<int, int> cls;
  std::vector<int> c(n1 + n2);
  for (int x = 0; x < n1 + n2; ++x) {
    int r = root(x);
    if (!cls.count(r)) cls[r] = static_cast<int>(cls.size());
    c[x] = cls[r];
  }
  fin_pushout po;
  po.k = k;
  po.n1 = n1;
  po.n2 = n2;
  po.p = static_cast<int>(cls.size());
  po.alpha = alpha;
  po.beta = beta;
  po.gamma.assign(c.begin(), c.begin() + n1);
  po.delta.assign(c.begin() + n1, c.end());
  return po;
}

fin_pushout parse_pushout(const std::string& s) {
  static const std::regex plain(R"(\s*(\d+)\s*<-\s*(\d+)\s*->\s*(\d+)\s*)");
  static const std::regex mapped(R"(\s*(\d+)\s*<-\s*(\[[^\]]*\])\s*-\s*(\d+)\s*-\s*(\[[^\]]*\])\s*->\s*(\d+)\s*)");
  std::smatch mt;
  if (std::regex_match(s, mt, plain)) {
    int n1 = std::stoi(mt[1]), k = std::stoi(mt[2]), n2 = std::stoi(mt[3]);
    if (k > n1 || k > n2) throw std::invalid_argument("default inclusions need the middle arity to be the smallest");
    return make_pushout(k, n1, n2, identity_map(k), identity_map(k));
  }
  if (std::regex_match(s, mt, mapped)) {
    int n1 = std::stoi(mt[1]), k = std::stoi(mt[3]), n2 = std::stoi(mt[5]);
    auto a = mt[2].str() == "[]" ? std::vector<int>{} : parse_index_map(mt[2]);
    auto b = mt[4].str() == "[]" ? std::vector<int>{} : parse_index_map(mt[4]);
    return make_pushout(k, n1, n2, a, b);
  }
  throw std::invalid_argument("pushout must look like 1<-0->1 or 2<-[1]-1-[2]->2");
}

std::string pushout_error(const fin_pushout& po) {
  for (int i = 0; i < po.k; ++i)
    if (po.gamma[po.alpha[i]] != po.delta[po.beta[i]]) return "square does not commute";
  auto canon = make_pushout(po.k, po.n1, po.n2, po.alpha, po.beta);
  if (canon.p != po.p) return "corner has the wrong size for a pushout";
  std::vector<int> c(po.p, -1);
  for (int i = 0; i < po.n1; ++i) {
    int x = canon.gamma[i];
    if (c[x] >= 0 && c[x] != po.gamma[i]) return "not a pushout";
    c[x] = po.gamma[i];
  }
  for (int j = 0; j < po.n2; ++j) {
    int x = canon.delta[j];
    if (c[x] >= 0 && c[x] != po.delta[j]) return "not a pushout";
    c[x] = po.delta[j];
  }
  std::vector<int> sorted = c;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < po.p; ++i)
    if (sorted[i] != i) return "not a pushout";
  return "";
}

functor_bc check_functor_bc(const typespace& ts, const fin_pushout& po) {
  if (auto e = pushout_error(po); !e.empty()) throw std::invalid_argument(e);
  if (po.p > ts.N) throw std::invalid_argument("pushout corner exceeds the stored arity");
  functor_bc r;
  auto& s = r.sq;
  s.a = ts.layers[po.p].order;
  s.b = ts.layers[po.n1].order;
  s.c = ts.layers[po.n2].order;
  s.d = ts.layers[po.k].order;
  s.f = ts.smap(po.gamma, po.p);
  s.g = ts.smap(po.delta, po.p);
  s.h = ts.smap(po.alpha, po.n1);
  s.k = ts.smap(po.beta, po.n2);
  r.error = square_error(s);
  r.bc = check_bc_square(s);
  r.surj = universal_map_surjective(s);
  return r;
}

std::vector<bool> t1_report(const typespace& ts) {
  std::vector<bool> out;
  for (auto& L : ts.layers) {
    bool discrete = true;
    for (int x = 0; x < L.order.n; ++x) discrete = discrete && L.order.up[x].count() == 1;
    out.push_back(discrete);
  }
  return out;
}

bits partial_map::domain(int n) const {
  bits b(beta.at(n).size());
  for (std::size_t p = 0; p < beta[n].size(); ++p)
    if (beta[n][p] >= 0) b.set(p);
  return b;
}

bits partial_map::preimage(int n, const bits& u) const {
  bits b(beta.at(n).size());
  for (std::size_t p = 0; p < beta[n].size(); ++p)
    if (beta[n][p] >= 0 && u.test(beta[n][p])) b.set(p);
  return b;
}

partial_map s_of_interpretation(const interpretation& g, const typespace& target_ts, const typespace& source_ts) {
  partial_map pm;
  pm.k = g.k;
  pm.big = &target_ts;
  pm.small = &source_ts;
  const int top = std::min(source_ts.N, target_ts.N / g.k);
  std::map<int, quotient_model> quot;
  auto q_of = [&](int mi) -> const quotient_model& {
    auto it = quot.find(mi);
    if (it == quot.end()) it = quot.emplace(mi, gamma_star(g, target_ts.models[mi])).first;
    return it->second;
  };
  for (int n = 0; n <= top; ++n) {
    auto dom = domain_formula(g, n);
    auto& L = target_ts.layers[n * g.k];
    std::vector<int> img(L.points.size(), -1);
    for (std::size_t p = 0; p < L.points.size(); ++p) {
      std::optional<int> val;
      for (auto& r : L.real[p]) {
        auto& m = target_ts.models[r.model];
        int v = -1;
        if (eval(m, dom, r.tuple)) {
          auto& q = q_of(r.model);
          std::vector<int> cls;
          for (int i = 0; i < n; ++i) {
            std::vector<int> blk(r.tuple.begin() + i * g.k, r.tuple.begin() + (i + 1) * g.k);
            cls.push_back(q.class_of[tuple_code(blk, m.size)]);
          }
          v = source_ts.find(n, ctp(q.model, source_ts.t.sig, cls, source_ts.d));
          if (v < 0) throw semantic_error("image type missing from the source approximation at arity " + std::to_string(n));
        }
        if (val && *val != v) throw semantic_error("S(Gamma) not well defined on stored profiles at arity " + std::to_string(n));
        val = v;
      }
      img[p] = val.value_or(-1);
    }
    pm.beta.push_back(std::move(img));
  }
  return pm;
}

partial_map identity_partial_map(const typespace& ts) {
  partial_map pm;
  pm.k = 1;
  pm.big = pm.small = &ts;
  for (auto& L : ts.layers) {
    std::vector<int> id(L.points.size());
    std::iota(id.begin(), id.end(), 0);
    pm.beta.push_back(id);
  }
  return pm;
}

std::vector<int> times_k(const std::vector<int>& f, int k) {
  std::vector<int> out;
  for (int a : f)
    for (int b = 0; b < k; ++b) out.push_back(a * k + b);
  return out;
}

namespace {

bc_witness check_bc_impl(const partial_map& pm, const std::vector<int>& f, int m, bool weak) {
  const int n = static_cast<int>(f.size());
  if (n >= static_cast<int>(pm.beta.size()) || m >= static_cast<int>(pm.beta.size()))
    throw std::out_of_range("arity beyond the partial map");
  const int k = pm.k;
  auto& fs = pm.small->smap(f, m);              // F'_m -> F'_n
  auto fk = times_k(f, k);
  auto& fb = pm.big->smap(fk, m * k);           // F_mk -> F_nk
  const int nb = pm.big->size(n * k);
  bits whole = image(fb, bits::all(pm.big->size(m * k)), nb);
  bc_witness w;
  w.f = f;
  w.m = m;
  auto& Lm = pm.small->layers[m];
  for (int q = 0; q < Lm.order.n; ++q) {
    const bits& u = Lm.order.up[q];
    bits lhs = pm.preimage(n, image(fs, u, pm.small->size(n)));
    if (weak) lhs &= whole;
    bits rhs = image(fb, pm.preimage(m, u), nb);
    if (lhs != rhs) {
      w.holds = false;
      w.u = u;
      w.lhs = lhs;
      w.rhs = rhs;
      return w;
    }
  }
  return w;
}

}  // namespace

bc_witness check_weak_bc(const partial_map& pm, const std::vector<int>& f, int m) { return check_bc_impl(pm, f, m, true); }
bc_witness check_strict_bc(const partial_map& pm, const std::vector<int>& f, int m) { return check_bc_impl(pm, f, m, false); }

cartesian_family make_family(const typespace& ts, int k, const bits& theta1, int N) {
  if (N * k > ts.N) throw std::out_of_range("type space too small for this family");
  cartesian_family cf;
  cf.k = k;
  cf.f = &ts;
  for (int n = 0; n <= N; ++n) {
    bits t = bits::all(ts.size(n * k));
    for (int i = 0; i < n; ++i) t &= coh::preimage(ts.smap(times_k({i}, k), n * k), theta1);
    cf.theta.push_back(t);
  }
  return cf;
}

std::vector<family_law> check_family_laws(const cartesian_family& cf, int N) {
  std::vector<family_law> out;
  for (int n = 0; n <= N; ++n)
    for (int m = 0; m <= N; ++m)
      for (auto& f : all_maps(n, m)) {
        family_law l;
        l.f = f;
        l.m = m;
        bits pre = coh::preimage(cf.f->smap(times_k(f, cf.k), m * cf.k), cf.theta[n]);
        l.contained = cf.theta[m].subset_of(pre);
        l.equal = cf.theta[m] == pre;
        l.surjective = is_surjective(f, m);
        out.push_back(l);
      }
  return out;
}

}  // namespace coh
