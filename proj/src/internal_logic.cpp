#include "coh/internal_logic.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace coh {

const std::vector<int>& presentation::point_map(const std::vector<int>& f, int m) const {
  auto it = pmap.find({m, f});
  if (it == pmap.end()) throw std::out_of_range("presentation has no map for this index map");
  return it->second;
}

bits presentation::A(const std::vector<int>& f, int m, const bits& u) const { return preimage(point_map(f, m), u); }

bits presentation::E(const std::vector<int>& f, int m, const bits& v) const {
  int n = static_cast<int>(f.size());
  return spaces.at(n).up_closure(image(point_map(f, m), v, size(n)));
}

namespace {

std::string map_text(const std::vector<int>& f, int m) {
  std::ostringstream os;
  os << f.size() << "->" << m << ":[";
  for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i] + 1;
  os << "]";
  return os.str();
}

// literal check through the up-set lattices when they are small
std::optional<std::string> lattice_frobenius(const presentation& p, const std::vector<int>& f, int m) {
  int n = static_cast<int>(f.size());
  auto ln = k_o(p.spaces[n]), lm = k_o(p.spaces[m]);
  std::vector<int> a(ln.lat.n);
  for (int i = 0; i < ln.lat.n; ++i) a[i] = lm.index_of(p.A(f, m, ln.sets[i]));
  try {
    check_hom(ln.lat, lm.lat, a);
    auto h = left_adjoint(ln.lat, lm.lat, a);
    if (auto w = check_frobenius(ln.lat, lm.lat, a, h))
      return "frobenius fails at (" + lm.sets[w->first].to_string() + ", " + ln.sets[w->second].to_string() + ")";
  } catch (const lattice_error& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

}  // namespace

presentation_report validate_presentation(const presentation& p) {
  presentation_report r;
  auto fail = [&](const std::string& s) {
    r.ok = false;
    if (r.failures.size() < 50) r.failures.push_back(s);
  };
  if (static_cast<int>(p.spaces.size()) != p.N + 1) {
    fail("expected one space per arity up to the cutoff");
    return r;
  }
  for (int n = 0; n <= p.N; ++n)
    for (int m = 0; m <= p.N; ++m)
      for (auto& f : all_maps(n, m)) {
        ++r.maps;
        auto it = p.pmap.find({m, f});
        if (it == p.pmap.end()) {
          fail("missing map " + map_text(f, m));
          continue;
        }
        auto& g = it->second;
        if (static_cast<int>(g.size()) != p.size(m) ||
            std::any_of(g.begin(), g.end(), [&](int v) { return v < 0 || v >= p.size(n); })) {
          fail("map " + map_text(f, m) + " has the wrong shape");
          continue;
        }
        if (f == identity_map(n) && n == m)
          for (int x = 0; x < p.size(m); ++x)
            if (g[x] != x) {
              fail("identity map " + map_text(f, m) + " moves a point");
              break;
            }
        if (!is_monotone(p.spaces[m], p.spaces[n], g)) fail("map " + map_text(f, m) + " is not monotone");
        ++r.frobenius;
        bool spatial = true;
        for (int q = 0; q < p.size(m) && spatial; ++q)
          for (int x = 0; x < p.size(n) && spatial; ++x) {
            const bits& u = p.spaces[m].up[q];
            const bits& v = p.spaces[n].up[x];
            if (p.E(f, m, u & p.A(f, m, v)) != (p.E(f, m, u) & v)) {
              fail("frobenius fails for " + map_text(f, m) + " at (" + u.to_string() + ", " + v.to_string() + ")");
              spatial = false;
            }
          }
        if (spatial && p.size(n) <= 6 && p.size(m) <= 6)
          if (auto e = lattice_frobenius(p, f, m)) fail(map_text(f, m) + ": " + *e);
      }
  if (!r.ok) return r;
  for (int n = 0; n <= p.N; ++n)
    for (int m = 0; m <= p.N; ++m)
      for (int l = 0; l <= p.N; ++l)
        for (auto& f : all_maps(n, m))
          for (auto& g : all_maps(m, l)) {
            ++r.composites;
            auto& gf = p.point_map(compose_maps(g, f), l);
            auto& pf = p.point_map(f, m);
            auto& pg = p.point_map(g, l);
            for (int q = 0; q < p.size(l); ++q)
              if (gf[q] != pf[pg[q]]) {
                fail("composite " + map_text(compose_maps(g, f), l) + " differs at point " + std::to_string(q));
                break;
              }
          }
  for (int k = 0; k <= p.N; ++k)
    for (int n1 = 0; n1 <= p.N; ++n1)
      for (int n2 = 0; n2 <= p.N; ++n2)
        for (auto& a : all_maps(k, n1))
          for (auto& b : all_maps(k, n2)) {
            auto po = make_pushout(k, n1, n2, a, b);
            if (po.p > p.N) continue;
            ++r.squares;
            square s;
            s.a = p.spaces[po.p];
            s.b = p.spaces[n1];
            s.c = p.spaces[n2];
            s.d = p.spaces[k];
            s.f = p.point_map(po.gamma, po.p);
            s.g = p.point_map(po.delta, po.p);
            s.h = p.point_map(a, n1);
            s.k = p.point_map(b, n2);
            auto bc = check_bc_square(s);
            if (!bc.holds || !bc.error.empty())
              fail("beck-chevalley fails on " + map_text(a, n1) + " / " + map_text(b, n2) +
                   (bc.witness ? " at " + bc.witness->to_string() : std::string()) +
                   (bc.error.empty() ? "" : ": " + bc.error));
          }
  return r;
}

presentation export_presentation(std::shared_ptr<const typespace> ts) {
  presentation p;
  p.name = ts->t.name;
  p.N = ts->N;
  for (auto& L : ts->layers) p.spaces.push_back(L.order);
  p.pmap = ts->maps;
  p.realizer = std::move(ts);
  return p;
}

presentation trivial_presentation(int N) {
  presentation p;
  p.name = "trivial";
  p.N = N;
  p.spaces.assign(N + 1, fin_poset::discrete(1));
  for (int n = 0; n <= N; ++n)
    for (int m = 0; m <= N; ++m)
      for (auto& f : all_maps(n, m)) p.pmap[{m, f}] = {0};
  return p;
}

std::string symbol_for(int n, const bits& u) { return "R" + std::to_string(n) + "_" + u.hex(); }

std::optional<std::pair<int, bits>> decode_symbol(const presentation& p, const std::string& name) {
  auto us = name.find('_');
  if (name.size() < 3 || name[0] != 'R' || us == std::string::npos) return std::nullopt;
  int n;
  try {
    std::size_t used = 0;
    n = std::stoi(name.substr(1, us - 1), &used);
    if (used != us - 1) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (n < 0 || n > p.N) return std::nullopt;
  try {
    bits u = bits::from_hex(name.substr(us + 1), p.size(n));
    if (!p.spaces[n].is_up_set(u)) return std::nullopt;
    return std::make_pair(n, u);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

bits denote(const presentation& p, const formula& phi, int n) {
  if (n > p.N) throw std::out_of_range("context " + std::to_string(n) + " exceeds the arity cutoff");
  switch (phi->kind) {
    case op::top:
      return p.top(n);
    case op::bottom:
      return bits(p.size(n));
    case op::atom: {
      auto s = decode_symbol(p, phi->rel);
      if (!s) throw std::invalid_argument("not a generated symbol: " + phi->rel);
      if (static_cast<int>(phi->args.size()) != s->first) throw std::invalid_argument("arity mismatch for " + phi->rel);
      return p.A(phi->args, n, s->second);
    }
    case op::eq: {
      int i = phi->args[0], j = phi->args[1];
      if (i == j) return p.top(n);
      auto e = identity_map(n);
      e[i] = j;
      return p.E(e, n, p.top(n));
    }
    case op::conj: {
      bits r = p.top(n);
      for (auto& k : phi->kids) r &= denote(p, k, n);
      return r;
    }
    case op::disj: {
      bits r(p.size(n));
      for (auto& k : phi->kids) r |= denote(p, k, n);
      return r;
    }
    case op::exists:
      if (n + 1 > p.N) throw std::out_of_range("existential raises the arity past the cutoff");
      return p.E(identity_map(n), n + 1, denote(p, phi->kids[0], n + 1));
  }
  return bits(p.size(n));
}

bool th_universe::has(int n, const bits& u) const {
  if (n >= static_cast<int>(elems.size())) return false;
  return std::binary_search(elems[n].begin(), elems[n].end(), u);
}

void th_universe::add(int n, const bits& u) {
  if (n >= static_cast<int>(elems.size())) elems.resize(n + 1);
  auto& v = elems[n];
  auto it = std::lower_bound(v.begin(), v.end(), u);
  if (it == v.end() || *it != u) v.insert(it, u);
}

std::size_t th_universe::count() const {
  std::size_t c = 0;
  for (auto& v : elems) c += v.size();
  return c;
}

namespace {

void add_units(const presentation& p, th_universe& u) {
  u.elems.resize(p.N + 1);
  for (int n = 0; n <= p.N; ++n) {
    u.add(n, p.top(n));
    u.add(n, bits(p.size(n)));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) u.add(n, denote(p, mk_eq(i, j), n));
  }
}

}  // namespace

th_universe universe_all(const presentation& p, std::size_t limit) {
  th_universe u;
  u.full = true;
  u.elems.resize(p.N + 1);
  for (int n = 0; n <= p.N; ++n) {
    auto ups = p.spaces[n].up_sets(limit + 1);
    if (ups.size() > limit)
      throw std::length_error("arity " + std::to_string(n) + " has more than " + std::to_string(limit) + " opens");
    for (auto& s : ups) u.add(n, s);
  }
  return u;
}

th_universe universe_of(const presentation& p, const std::vector<std::pair<int, formula>>& family) {
  th_universe u;
  add_units(p, u);
  std::function<bits(const formula&, int)> walk = [&](const formula& phi, int n) -> bits {
    bits d(p.size(n));
    switch (phi->kind) {
      case op::atom: {
        auto s = decode_symbol(p, phi->rel);
        if (!s) throw std::invalid_argument("not a generated symbol: " + phi->rel);
        u.add(s->first, s->second);
        d = denote(p, phi, n);
        break;
      }
      case op::conj:
      case op::disj: {
        std::vector<bits> parts;
        for (auto& k : phi->kids) parts.push_back(walk(k, n));
        d = denote(p, phi, n);
        if (parts.size() >= 2) (phi->kind == op::conj ? u.meets : u.joins).push_back({n, parts});
        break;
      }
      case op::exists: {
        bits w = walk(phi->kids[0], n + 1);
        u.bodies.push_back({n + 1, w});
        d = denote(p, phi, n);
        break;
      }
      default:
        d = denote(p, phi, n);
    }
    u.add(n, d);
    return d;
  };
  for (auto& [n, phi] : family) walk(phi, n);
  return u;
}

th_universe universe_principal(const presentation& p) {
  th_universe u;
  add_units(p, u);
  for (int n = 0; n <= p.N; ++n)
    for (int x = 0; x < p.size(n); ++x) u.add(n, p.spaces[n].up[x]);
  return u;
}

signature sigma_of(const presentation& p, const th_universe& u) {
  signature sig;
  sig.name = "sigma_" + p.name;
  for (std::size_t n = 0; n < u.elems.size(); ++n)
    for (auto& e : u.elems[n]) sig.rels[symbol_for(static_cast<int>(n), e)] = static_cast<int>(n);
  return sig;
}

theory th_of(const presentation& p, const th_universe& u) {
  theory t;
  t.name = "th_" + p.name;
  t.sig = sigma_of(p, u);
  auto R = [&](int n, const bits& e, std::vector<int> args) { return mk_atom(symbol_for(n, e), std::move(args)); };
  auto add = [&](int n, formula l, formula r) { t.axioms.push_back({n, std::move(l), std::move(r)}); };
  const int top_n = std::min<int>(p.N, static_cast<int>(u.elems.size()) - 1);
  for (int n = 0; n <= top_n; ++n) {
    auto& el = u.elems[n];
    auto id = identity_map(n);
    // covering pairs of the universe
    for (auto& a : el)
      for (auto& b : el) {
        if (a == b || !a.subset_of(b)) continue;
        bool cover = true;
        for (auto& c : el)
          if (c != a && c != b && a.subset_of(c) && c.subset_of(b)) {
            cover = false;
            break;
          }
        if (cover) add(n, R(n, a, id), R(n, b, id));
      }
    if (u.has(n, p.top(n))) add(n, mk_top(), R(n, p.top(n), id));
    if (u.has(n, bits(p.size(n)))) add(n, R(n, bits(p.size(n)), id), mk_bottom());
    if (u.full) {
      for (std::size_t i = 0; i < el.size(); ++i)
        for (std::size_t j = i + 1; j < el.size(); ++j) {
          bits m = el[i] & el[j], s = el[i] | el[j];
          if (m != el[i] && m != el[j] && u.has(n, m)) add(n, mk_and({R(n, el[i], id), R(n, el[j], id)}), R(n, m, id));
          if (s != el[i] && s != el[j] && u.has(n, s)) add(n, R(n, s, id), mk_or({R(n, el[i], id), R(n, el[j], id)}));
        }
    }
    // substitution
    for (int a = 0; a <= top_n; ++a)
      for (auto& f : all_maps(a, n)) {
        if (a == n && f == id) continue;
        for (auto& e : u.elems[a]) {
          bits img = p.A(f, n, e);
          if (!u.has(n, img)) continue;
          add(n, R(a, e, f), R(n, img, id));
          add(n, R(n, img, id), R(a, e, f));
        }
      }
    // equality
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        bits e = denote(p, mk_eq(i, j), n);
        if (!u.has(n, e)) continue;
        add(n, mk_eq(i, j), R(n, e, id));
        add(n, R(n, e, id), mk_eq(i, j));
      }
    // quantifiers: R_W(x, y) |- R_E(W)(x) and R_E(W)(x) |- exists y R_W(x, y)
    if (n + 1 <= top_n) {
      auto inc = identity_map(n);
      auto id1 = identity_map(n + 1);
      for (auto& w : u.elems[n + 1]) {
        bits e = p.E(inc, n + 1, w);
        if (!u.has(n, e)) continue;
        add(n + 1, R(n + 1, w, id1), R(n, e, inc));
        if (u.full) add(n, R(n, e, id), mk_exists(R(n + 1, w, id1)));
      }
    }
  }
  if (!u.full) {
    std::set<std::pair<int, std::vector<bits>>> seen;
    for (auto& [n, parts] : u.meets) {
      if (!seen.insert({n, parts}).second) continue;
      bits m = p.top(n);
      std::vector<formula> l;
      for (auto& x : parts) {
        m &= x;
        l.push_back(R(n, x, identity_map(n)));
      }
      if (std::find(parts.begin(), parts.end(), m) == parts.end()) add(n, mk_and(l), R(n, m, identity_map(n)));
    }
    seen.clear();
    for (auto& [n, parts] : u.joins) {
      if (!seen.insert({n, parts}).second) continue;
      bits s(p.size(n));
      std::vector<formula> r;
      for (auto& x : parts) {
        s |= x;
        r.push_back(R(n, x, identity_map(n)));
      }
      if (std::find(parts.begin(), parts.end(), s) == parts.end()) add(n, R(n, s, identity_map(n)), mk_or(r));
    }
    std::set<std::pair<int, bits>> done;
    for (auto& [n1, w] : u.bodies) {
      if (!done.insert({n1, w}).second) continue;
      int n = n1 - 1;
      bits e = p.E(identity_map(n), n1, w);
      add(n, R(n, e, identity_map(n)), mk_exists(R(n1, w, identity_map(n1))));
    }
  }
  return t;
}

th_1cell th_of_1cell(const partial_map& pm, const presentation& small_p, const presentation& big_p,
                     const th_universe& src) {
  th_1cell out;
  const int k = pm.k;
  const int top = static_cast<int>(pm.beta.size()) - 1;
  for (int n = 0; n <= top; ++n)
    for (int m = 0; m <= top; ++m)
      for (auto& f : all_maps(n, m)) {
        auto w = check_weak_bc(pm, f, m);
        if (!w.holds) {
          out.error = "weak beck-chevalley fails for " + map_text(f, m) + " at U = " + w.u->to_string() +
                      ": " + w.lhs.to_string() + " vs " + w.rhs.to_string();
          throw interp_error(out.error);
        }
      }
  out.src = src;
  add_units(big_p, out.dst);
  auto& g = out.g;
  g.name = "th_" + small_p.name + "_" + big_p.name;
  g.k = k;
  for (int n = 0; n < static_cast<int>(src.elems.size()); ++n) {
    if (n > top || n * k > big_p.N) throw std::out_of_range("partial map does not reach this arity");
    for (auto& e : src.elems[n]) {
      bits b = pm.preimage(n, e);
      out.dst.add(n * k, b);
      g.rel[symbol_for(n, e)] = mk_atom(symbol_for(n * k, b), identity_map(n * k));
    }
  }
  if (2 > top || 2 * k > big_p.N) throw std::out_of_range("equality needs arity 2");
  bits beq = pm.preimage(2, denote(small_p, mk_eq(0, 1), 2));
  out.dst.add(2 * k, beq);
  g.eq = mk_atom(symbol_for(2 * k, beq), identity_map(2 * k));
  g.source = th_of(small_p, out.src);
  g.target = th_of(big_p, out.dst);
  return out;
}

bool pnt_clause5(const presentation& big_p, const partial_map& b1, const partial_map& b2, const bits& theta, int n,
                 const bits& u) {
  const int k = b1.k, k2 = b2.k;
  const int c = n * k + n * k2;
  std::vector<int> xs, ys;
  for (int i = 0; i < n * k; ++i) xs.push_back(i);
  for (int i = 0; i < n * k2; ++i) ys.push_back(n * k + i);
  std::vector<formula> lhs{mk_atom(symbol_for(n * k, b1.preimage(n, u)), xs)};
  for (int i = 0; i < n; ++i) {
    std::vector<int> args;
    for (int b = 0; b < k; ++b) args.push_back(i * k + b);
    for (int b = 0; b < k2; ++b) args.push_back(n * k + i * k2 + b);
    lhs.push_back(mk_atom(symbol_for(k + k2, theta), args));
  }
  auto rhs = mk_atom(symbol_for(n * k2, b2.preimage(n, u)), ys);
  return denote(big_p, mk_and(lhs), c).subset_of(denote(big_p, rhs, c));
}

theory build_lattice_theory(const fin_lattice& l) {
  theory t;
  t.name = "lattice" + std::to_string(l.n);
  auto sym = [](int a) { return "R_" + std::to_string(a); };
  for (int a = 0; a < l.n; ++a) t.sig.rels[sym(a)] = 0;
  t.sig.name = t.name;
  t.axioms.push_back({0, mk_exists(mk_eq(0, 0)), mk_bottom()});
  for (auto [a, b] : l.order.covers()) t.axioms.push_back({0, mk_atom(sym(a), {}), mk_atom(sym(b), {})});
  return t;
}

interpretation gamma_t(const typespace& ts, const presentation& p, const th_universe& u) {
  interpretation g;
  g.name = "gamma_" + ts.t.name;
  g.source = th_of(p, u);
  g.target = ts.t;
  g.k = 1;
  for (std::size_t n = 0; n < u.elems.size(); ++n)
    for (auto& e : u.elems[n]) g.rel[symbol_for(static_cast<int>(n), e)] = ts.formula_of(static_cast<int>(n), e);
  g.eq = mk_eq(0, 1);
  return g;
}

signature base_signature(const typespace& ts) {
  signature sig;
  sig.name = "base_" + ts.t.name;
  auto add = [&](int n, const formula& phi) { sig.rels[symbol_for(n, ts.open_of(n, phi))] = n; };
  for (auto& [r, a] : ts.t.sig.rels)
    if (a <= ts.N) add(a, mk_atom(r, identity_map(a)));
  if (ts.N >= 2) add(2, mk_eq(0, 1));
  if (ts.N >= 1) add(0, mk_exists(mk_eq(0, 0)));
  return sig;
}

namespace {

verdict entails_retry(const theory& t, const sequent& s, const roundtrip_options& o, bool& retried) {
  auto v = entails(t, s, o.eo);
  if (v.kind != verdict_kind::unknown) return v;
  retried = true;
  auto eo = o.eo;
  eo.b.depth *= o.retry_factor;
  eo.b.size *= o.retry_factor;
  eo.b.max_steps *= o.retry_factor;
  return entails(t, s, eo);
}

}  // namespace

roundtrip_theory_report roundtrip_theory(std::shared_ptr<const typespace> ts,
                                         const std::vector<std::pair<int, formula>>& family,
                                         const roundtrip_options& o) {
  roundtrip_theory_report r;
  r.stable = ts->stability.run && ts->stability.stable;
  auto p = export_presentation(ts);
  auto u = universe_of(p, family);
  auto g = gamma_t(*ts, p, u);
  struct row {
    int n;
    formula gamma;
    bits d;
  };
  std::vector<row> rows;
  for (auto& [n, psi] : family) {
    ++r.formulas;
    bits d = denote(p, psi, n);
    formula gp = apply(g, psi, n);
    if (ts->open_of(n, gp) == d)
      ++r.open_match;
    else {
      ++r.open_mismatch;
      r.failures.push_back("open mismatch for " + to_string(psi, n));
    }
    formula iso = ts->formula_of(n, d);
    bool retried = false;
    auto fw = entails_retry(ts->t, {n, gp, iso}, o, retried);
    auto bw = entails_retry(ts->t, {n, iso, gp}, o, retried);
    if (retried) ++r.rechecked;
    if (fw.kind == verdict_kind::proved && bw.kind == verdict_kind::proved)
      ++r.proved;
    else if (fw.kind == verdict_kind::refuted || bw.kind == verdict_kind::refuted) {
      ++r.refuted;
      r.failures.push_back("refuted: " + to_string(psi, n));
    } else
      ++r.unknown;
    rows.push_back({n, gp, d});
  }
  for (std::size_t i = 0; i < rows.size() && static_cast<std::size_t>(r.pairs) < o.max_pairs; ++i)
    for (std::size_t j = 0; j < rows.size() && static_cast<std::size_t>(r.pairs) < o.max_pairs; ++j) {
      if (i == j || rows[i].n != rows[j].n) continue;
      ++r.pairs;
      bool expect = rows[i].d.subset_of(rows[j].d);
      bool retried = false;
      auto v = entails_retry(ts->t, {rows[i].n, rows[i].gamma, rows[j].gamma}, o, retried);
      if (v.kind == verdict_kind::unknown)
        ++r.pair_unknown;
      else if ((v.kind == verdict_kind::proved) == expect)
        ++r.pair_agree;
      else
        r.failures.push_back("pair disagrees: " + to_string(rows[i].gamma, rows[i].n) + " |- " +
                             to_string(rows[j].gamma, rows[j].n));
    }
  return r;
}

namespace {

// the point whose principal filter is U restricted to the universe, or -1
int principal_point(const presentation& p, const th_universe& u, int n, const std::vector<bits>& filt) {
  bits meet = p.top(n);
  for (auto& e : filt) meet &= e;
  auto mins = p.spaces[n].minimal(meet);
  if (mins.size() != 1) return -1;
  int x = mins[0];
  if (meet != p.spaces[n].up[x]) return -1;
  std::vector<bits> want;
  for (auto& e : u.elems[n])
    if (e.test(x)) want.push_back(e);
  return want == filt ? x : -1;
}

bool prime_in(const th_universe& u, int n, const std::vector<bits>& filt, std::size_t size) {
  auto in = [&](const bits& e) { return std::binary_search(filt.begin(), filt.end(), e); };
  if (in(bits(size)) || !in(bits::all(size))) return false;
  auto& el = u.elems[n];
  for (auto& a : el)
    for (auto& b : el) {
      if (in(a) && a.subset_of(b) && !in(b)) return false;
      if (in(a) && in(b) && u.has(n, a & b) && !in(a & b)) return false;
      if (u.has(n, a | b) && in(a | b) && !in(a) && !in(b)) return false;
    }
  return true;
}

std::vector<bits> atomic_filter(const finite_model& m, const th_universe& u, int n, const std::vector<int>& a) {
  std::vector<bits> out;
  for (auto& e : u.elems[n])
    if (m.holds(symbol_for(n, e), a)) out.push_back(e);
  return out;
}

}  // namespace

roundtrip_functor_report roundtrip_functor(const presentation& p, int model_bound) {
  roundtrip_functor_report r;
  r.route = "generic";
  auto u = universe_all(p);
  auto th = th_of(p, u);
  typespace_options o;
  o.N = p.N;
  o.B = model_bound;
  o.d = 1;
  o.stability = false;
  auto ts = compute_typespace(th, o);
  std::vector<std::vector<int>> to_x(p.N + 1);
  for (int n = 0; n <= p.N; ++n) {
    auto& L = ts.layers[n];
    r.points.push_back(static_cast<int>(L.points.size()));
    bits hit(p.size(n));
    for (std::size_t q = 0; q < L.points.size(); ++q) {
      auto& re = L.real[q].front();
      auto filt = atomic_filter(ts.models[re.model], u, n, re.tuple);
      if (!prime_in(u, n, filt, p.size(n))) {
        r.prime = false;
        r.failures.push_back("not a prime filter at arity " + std::to_string(n));
      }
      int x = principal_point(p, u, n, filt);
      if (x < 0) {
        r.bijection = false;
        r.failures.push_back("filter matches no point at arity " + std::to_string(n));
      } else if (hit.test(x)) {
        r.bijection = false;
        r.failures.push_back("two types go to point " + std::to_string(x) + " at arity " + std::to_string(n));
      } else
        hit.set(x);
      to_x[n].push_back(x);
    }
    r.realized.push_back(static_cast<int>(hit.count()));
    if (static_cast<int>(hit.count()) != p.size(n)) {
      r.realization = false;
      r.failures.push_back("unrealized points at arity " + std::to_string(n) + " within the model bound");
    }
    for (std::size_t a = 0; a < L.points.size(); ++a)
      for (std::size_t b = 0; b < L.points.size(); ++b) {
        int x = to_x[n][a], y = to_x[n][b];
        if (x >= 0 && y >= 0 && L.order.leq(a, b) != p.spaces[n].leq(x, y)) {
          r.bijection = false;
          r.failures.push_back("order not preserved at arity " + std::to_string(n));
          a = b = L.points.size();
          break;
        }
      }
  }
  for (int n = 0; n <= p.N; ++n)
    for (int m = 0; m <= p.N; ++m)
      for (auto& f : all_maps(n, m)) {
        auto& sf = ts.smap(f, m);
        auto& pf = p.point_map(f, m);
        for (std::size_t q = 0; q < sf.size(); ++q) {
          int x = to_x[m][q], y = to_x[n][sf[q]];
          if (x >= 0 && y >= 0 && pf[x] != y) {
            r.natural = false;
            r.failures.push_back("naturality fails for " + map_text(f, m));
            break;
          }
        }
      }
  return r;
}

finite_model expand_model(const presentation& p, const th_universe& u, const signature& sig, int model) {
  auto& ts = *p.realizer;
  auto& m = ts.models.at(model);
  auto out = finite_model::empty_for(sig, m.size);
  for (int n = 0; n < static_cast<int>(u.elems.size()); ++n)
    for (auto& a : all_tuples(m.size, n)) {
      int x = ts.point_of(model, a);
      if (x < 0) throw semantic_error("realizer tuple without a stored point");
      for (auto& e : u.elems[n])
        if (e.test(x)) out.set(symbol_for(n, e), a);
    }
  return out;
}

roundtrip_functor_report roundtrip_functor_atomic(const presentation& p) {
  roundtrip_functor_report r;
  r.route = "atomic";
  if (!p.realizer) throw std::invalid_argument("atomic route needs an exported presentation");
  auto& ts = *p.realizer;
  auto u = universe_principal(p);
  auto th = th_of(p, u);
  std::vector<bits> hit;
  for (int n = 0; n <= p.N; ++n) hit.emplace_back(p.size(n));
  for (std::size_t mi = 0; mi < ts.models.size(); ++mi) {
    auto mf = expand_model(p, u, th.sig, static_cast<int>(mi));
    if (auto v = find_violation(mf, th)) {
      r.models_ok = false;
      if (r.failures.size() < 20)
        r.failures.push_back("model " + std::to_string(mi) + " violates " + to_string(th.axioms[v->axiom]));
      continue;
    }
    std::map<std::vector<int>, int> xs;
    for (int n = 0; n <= p.N; ++n)
      for (auto& a : all_tuples(mf.size, n)) {
        auto filt = atomic_filter(mf, u, n, a);
        if (!prime_in(u, n, filt, p.size(n))) {
          r.prime = false;
          if (r.failures.size() < 20) r.failures.push_back("not a prime filter at arity " + std::to_string(n));
        }
        int x = principal_point(p, u, n, filt);
        if (x < 0) {
          r.bijection = false;
          if (r.failures.size() < 20) r.failures.push_back("filter matches no point at arity " + std::to_string(n));
        } else
          hit[n].set(x);
        xs[a] = x;
      }
    for (int n = 0; n <= p.N; ++n)
      for (int m = 0; m <= p.N; ++m)
        for (auto& f : all_maps(n, m)) {
          auto& pf = p.point_map(f, m);
          for (auto& a : all_tuples(mf.size, m)) {
            std::vector<int> af;
            for (int i : f) af.push_back(a[i]);
            int x = xs[a], y = xs[af];
            if (x >= 0 && y >= 0 && pf[x] != y) {
              r.natural = false;
              if (r.failures.size() < 20) r.failures.push_back("naturality fails for " + map_text(f, m));
            }
          }
        }
  }
  for (int n = 0; n <= p.N; ++n) {
    r.points.push_back(p.size(n));
    r.realized.push_back(static_cast<int>(hit[n].count()));
    if (static_cast<int>(hit[n].count()) != p.size(n)) {
      r.realization = false;
      r.failures.push_back("unrealized points at arity " + std::to_string(n));
    }
  }
  return r;
}

}  // namespace coh
