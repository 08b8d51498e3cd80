#include "coh/semantics.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace coh {

namespace {

std::size_t ipow(int b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(b);
  return r;
}

}  // namespace

finite_model finite_model::empty_for(const signature& sig, int size) {
  finite_model m;
  m.size = size;
  for (auto& [r, a] : sig.rels) m.rels[r] = relation_table{a, bits(ipow(size, a))};
  return m;
}

std::size_t finite_model::index(int arity, const int* args) const {
  std::size_t i = 0;
  for (int k = 0; k < arity; ++k) i = i * size + args[k];
  return i;
}

bool finite_model::holds(const std::string& r, const std::vector<int>& args) const {
  auto it = rels.find(r);
  if (it == rels.end()) return false;
  return it->second.data.test(index(it->second.arity, args.data()));
}

void finite_model::set(const std::string& r, const std::vector<int>& args, bool v) {
  auto it = rels.find(r);
  if (it == rels.end()) throw semantic_error("model has no relation '" + r + "'");
  if (static_cast<int>(args.size()) != it->second.arity) throw semantic_error("arity mismatch for '" + r + "'");
  for (int a : args)
    if (a < 0 || a >= size) throw semantic_error("element out of range for '" + r + "'");
  it->second.data.set(index(it->second.arity, args.data()), v);
}

std::vector<std::vector<int>> finite_model::tuples(const std::string& r) const {
  std::vector<std::vector<int>> out;
  auto it = rels.find(r);
  if (it == rels.end()) return out;
  for (auto& t : all_tuples(size, it->second.arity))
    if (it->second.data.test(index(it->second.arity, t.data()))) out.push_back(t);
  return out;
}

bool operator==(const finite_model& a, const finite_model& b) {
  if (a.size != b.size || a.rels.size() != b.rels.size()) return false;
  for (auto& [r, t] : a.rels) {
    auto it = b.rels.find(r);
    if (it == b.rels.end() || it->second.arity != t.arity || it->second.data != t.data) return false;
  }
  return true;
}

std::vector<std::vector<int>> all_tuples(int size, int len) {
  std::vector<std::vector<int>> out;
  if (len > 0 && size == 0) return out;
  std::vector<int> cur(len, 0);
  while (true) {
    out.push_back(cur);
    int i = len - 1;
    while (i >= 0 && cur[i] == size - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

namespace {

bool eval_rec(const finite_model& m, const formula& f, std::vector<int>& a) {
  switch (f->kind) {
    case op::top:
      return true;
    case op::bottom:
      return false;
    case op::eq:
      return a[f->args[0]] == a[f->args[1]];
    case op::atom: {
      auto it = m.rels.find(f->rel);
      if (it == m.rels.end()) throw semantic_error("model has no relation '" + f->rel + "'");
      if (it->second.arity != static_cast<int>(f->args.size())) throw semantic_error("arity mismatch for '" + f->rel + "'");
      std::size_t i = 0;
      for (int v : f->args) i = i * m.size + a[v];
      return it->second.data.test(i);
    }
    case op::conj:
      for (auto& c : f->kids)
        if (!eval_rec(m, c, a)) return false;
      return true;
    case op::disj:
      for (auto& c : f->kids)
        if (eval_rec(m, c, a)) return true;
      return false;
    case op::exists: {
      a.push_back(0);
      bool found = false;
      for (int e = 0; e < m.size && !found; ++e) {
        a.back() = e;
        found = eval_rec(m, f->kids[0], a);
      }
      a.pop_back();
      return found;
    }
  }
  return false;
}

void check_vars(const formula& f, int n) {
  for (int v : f->args)
    if (v < 0 || v >= n) throw semantic_error("variable x" + std::to_string(v + 1) + " outside context " + std::to_string(n));
  for (auto& c : f->kids) check_vars(c, f->kind == op::exists ? n + 1 : n);
}

}  // namespace

bool eval(const finite_model& m, const formula& phi, const std::vector<int>& a) {
  check_vars(phi, static_cast<int>(a.size()));
  for (int e : a)
    if (e < 0 || e >= m.size) throw semantic_error("assignment element out of range");
  std::vector<int> w = a;
  return eval_rec(m, phi, w);
}

std::optional<violation> find_violation(const finite_model& m, const theory& t) {
  for (std::size_t i = 0; i < t.axioms.size(); ++i) {
    auto& s = t.axioms[i];
    for (auto& a : all_tuples(m.size, s.n)) {
      std::vector<int> w = a;
      if (eval_rec(m, s.lhs, w) && !eval_rec(m, s.rhs, w)) return violation{static_cast<int>(i), a};
    }
  }
  return std::nullopt;
}

bool is_model(const finite_model& m, const theory& t) {
  for (auto& [r, a] : t.sig.rels) {
    auto it = m.rels.find(r);
    if (it == m.rels.end() || it->second.arity != a) throw semantic_error("signature mismatch at '" + r + "'");
  }
  return !find_violation(m, t).has_value();
}

int valuation_bits(const signature& sig, int size) {
  std::size_t b = 0;
  for (auto& [r, a] : sig.rels) b += ipow(size, a);
  return static_cast<int>(std::min<std::size_t>(b, 1u << 30));
}

finite_model permute(const finite_model& m, const std::vector<int>& perm) {
  finite_model r = m;
  for (auto& [name, t] : r.rels) {
    t.data = bits(t.data.size());
    auto& src = m.rels.at(name);
    for (auto& tup : all_tuples(m.size, t.arity)) {
      if (!src.data.test(m.index(t.arity, tup.data()))) continue;
      std::vector<int> img(tup.size());
      for (std::size_t i = 0; i < tup.size(); ++i) img[i] = perm[tup[i]];
      t.data.set(r.index(t.arity, img.data()));
    }
  }
  return r;
}

namespace {

// flattened list of all (relation, tuple) slots in canonical order
struct slot_table {
  std::vector<const relation_table*> tab;
  std::vector<std::vector<int>> tup;
  std::vector<std::size_t> idx;
};

slot_table slots_of(const finite_model& m) {
  slot_table s;
  for (auto& [r, t] : m.rels)
    for (auto& tp : all_tuples(m.size, t.arity)) {
      s.tab.push_back(&t);
      s.idx.push_back(m.index(t.arity, tp.data()));
      s.tup.push_back(tp);
    }
  return s;
}

// -1 if the permuted model encodes smaller, 0 equal, 1 larger
int cmp_perm(const finite_model& m, const slot_table& s, const std::vector<int>& inv) {
  std::vector<int> pre;
  for (std::size_t k = 0; k < s.tab.size(); ++k) {
    auto& tp = s.tup[k];
    pre.resize(tp.size());
    for (std::size_t i = 0; i < tp.size(); ++i) pre[i] = inv[tp[i]];
    bool pv = s.tab[k]->data.test(m.index(s.tab[k]->arity, pre.data()));
    bool ov = s.tab[k]->data.test(s.idx[k]);
    if (pv != ov) return pv ? 1 : -1;
  }
  return 0;
}

}  // namespace

bool is_canonical(const finite_model& m) {
  // lexicographically minimal encoding, slots read with 0 < 1
  auto s = slots_of(m);
  std::vector<int> inv(m.size);
  std::iota(inv.begin(), inv.end(), 0);
  while (std::next_permutation(inv.begin(), inv.end()))
    if (cmp_perm(m, s, inv) < 0) return false;
  return true;
}

std::string canonical_key(const finite_model& m) {
  auto s = slots_of(m);
  std::vector<int> inv(m.size);
  std::iota(inv.begin(), inv.end(), 0);
  std::string best;
  do {
    std::string e = std::to_string(m.size) + ":";
    std::vector<int> pre;
    for (std::size_t k = 0; k < s.tab.size(); ++k) {
      auto& tp = s.tup[k];
      pre.resize(tp.size());
      for (std::size_t i = 0; i < tp.size(); ++i) pre[i] = inv[tp[i]];
      e += s.tab[k]->data.test(m.index(s.tab[k]->arity, pre.data())) ? '1' : '0';
    }
    if (best.empty() || e < best) best = e;
  } while (std::next_permutation(inv.begin(), inv.end()));
  return best;
}

std::vector<finite_model> enumerate_models(const theory& t, int max_size, const enum_options& opt) {
  std::vector<finite_model> out;
  for (int s = 0; s <= max_size; ++s) {
    int nb = valuation_bits(t.sig, s);
    if (nb > opt.max_bits)
      throw semantic_error("model enumeration guard: size " + std::to_string(s) + " needs " + std::to_string(nb) +
                           " bits (limit " + std::to_string(opt.max_bits) + ")");
    finite_model base = finite_model::empty_for(t.sig, s);
    std::vector<std::pair<relation_table*, std::size_t>> slots;
    for (auto& [r, tab] : base.rels)
      for (std::size_t i = 0; i < tab.data.size(); ++i) slots.push_back({&tab, i});
    std::uint64_t total = std::uint64_t{1} << nb;
    for (std::uint64_t code = 0; code < total; ++code) {
      for (int b = 0; b < nb; ++b) slots[b].first->data.set(slots[b].second, (code >> b) & 1u);
      if (!is_canonical(base)) continue;
      if (find_violation(base, t)) continue;
      out.push_back(base);
    }
  }
  return out;
}

signature signature_of(const finite_model& m) {
  signature s;
  for (auto& [r, t] : m.rels) s.rels[r] = t.arity;
  return s;
}

const diagram_atoms& atoms_for(const signature& sig, int n, int d) {
  static std::mutex mu;
  static std::map<std::string, diagram_atoms> cache;
  std::ostringstream key;
  for (auto& [r, a] : sig.rels) key << r << '/' << a << ';';
  key << '#' << n << ',' << d;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key.str());
  if (it != cache.end()) return it->second;
  diagram_atoms da;
  da.n = n;
  da.d = d;
  int v = n + d;
  for (auto& [r, a] : sig.rels)
    for (auto& tp : all_tuples(v, a)) da.atoms.push_back(mk_atom(r, tp));
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) da.atoms.push_back(mk_eq(i, j));
  if (da.atoms.size() > 64)
    throw semantic_error("too many atoms for a type profile (" + std::to_string(da.atoms.size()) + " > 64)");
  return cache.emplace(key.str(), std::move(da)).first->second;
}

type_profile ctp(const finite_model& m, const signature& sig, const std::vector<int>& a, int d) {
  int n = static_cast<int>(a.size());
  auto& da = atoms_for(sig, n, d);
  std::vector<std::uint64_t> masks;
  std::vector<int> w = a;
  w.resize(n + d);
  for (auto& c : all_tuples(m.size, d)) {
    for (int i = 0; i < d; ++i) w[n + i] = c[i];
    std::uint64_t mask = 0;
    for (std::size_t k = 0; k < da.atoms.size(); ++k) {
      auto& at = da.atoms[k];
      bool v;
      if (at->kind == op::eq) {
        v = w[at->args[0]] == w[at->args[1]];
      } else {
        auto& tab = m.rels.at(at->rel);
        std::size_t idx = 0;
        for (int x : at->args) idx = idx * m.size + w[x];
        v = tab.data.test(idx);
      }
      if (v) mask |= std::uint64_t{1} << k;
    }
    masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  type_profile p;
  p.base = 0;
  {
    std::uint64_t bm = base_mask(da);
    for (std::size_t k = 0; k < da.atoms.size(); ++k) {
      if (!(bm >> k & 1u)) continue;
      auto& at = da.atoms[k];
      bool v;
      if (at->kind == op::eq) {
        v = w[at->args[0]] == w[at->args[1]];
      } else {
        std::size_t idx = 0;
        for (int x : at->args) idx = idx * m.size + w[x];
        v = m.rels.at(at->rel).data.test(idx);
      }
      if (v) p.base |= std::uint64_t{1} << k;
    }
  }
  for (auto x : masks) {
    bool dominated = false;
    for (auto y : masks)
      if (y != x && (x & ~y) == 0) dominated = true;
    if (!dominated) p.maxima.push_back(x);
  }
  return p;
}

type_profile ctp(const finite_model& m, const std::vector<int>& a, int d) { return ctp(m, signature_of(m), a, d); }

std::uint64_t base_mask(const diagram_atoms& da) {
  std::uint64_t m = 0;
  for (std::size_t k = 0; k < da.atoms.size(); ++k) {
    bool inside = true;
    for (int v : da.atoms[k]->args) inside = inside && v < da.n;
    if (inside) m |= std::uint64_t{1} << k;
  }
  return m;
}

bool profile_has(const type_profile& p, std::uint64_t mask) {
  for (auto y : p.maxima)
    if ((mask & ~y) == 0) return true;
  return false;
}

bool profile_leq(const type_profile& p, const type_profile& q) {
  if (p.base & ~q.base) return false;
  for (auto x : p.maxima)
    if (!profile_has(q, x)) return false;
  return true;
}

formula diagram_formula(const diagram_atoms& da, std::uint64_t mask) {
  std::vector<formula> parts;
  for (std::size_t k = 0; k < da.atoms.size(); ++k)
    if (mask >> k & 1u) parts.push_back(da.atoms[k]);
  formula f = conj_of(std::move(parts));
  for (int i = 0; i < da.d; ++i) f = mk_exists(f);
  return normalize(f);
}

std::string profile_string(const diagram_atoms& da, const type_profile& p) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < p.maxima.size(); ++i) {
    if (i) os << "; ";
    os << to_string(diagram_formula(da, p.maxima[i]), da.n);
  }
  os << '}';
  return os.str();
}

}  // namespace coh
