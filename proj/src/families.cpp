#include "coh/families.hpp"

#include <functional>
#include <random>
#include <set>

namespace coh {

std::vector<formula> atomic_formulas(const signature& sig, int n, bool with_eq) {
  std::vector<formula> out;
  for (auto& [r, a] : sig.rels)
    for (auto& f : all_maps(a, n)) out.push_back(mk_atom(r, f));
  if (with_eq)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) out.push_back(mk_eq(i, j));
  return out;
}

namespace {

struct dedup {
  std::set<formula, formula_less> seen;
  std::vector<formula> out;
  void add(const formula& f) {
    auto g = normalize(f);
    if (seen.insert(g).second) out.push_back(g);
  }
};

}  // namespace

std::vector<formula> depth1_family(const signature& sig, int n, int max_ctx) {
  dedup d;
  auto at = atomic_formulas(sig, n);
  d.add(mk_top());
  d.add(mk_bottom());
  for (auto& a : at) d.add(a);
  for (std::size_t i = 0; i < at.size(); ++i)
    for (std::size_t j = i + 1; j < at.size(); ++j) {
      d.add(mk_and({at[i], at[j]}));
      d.add(mk_or({at[i], at[j]}));
    }
  if (n + 1 <= max_ctx)
    for (auto& a : atomic_formulas(sig, n + 1)) d.add(mk_exists(a));
  return d.out;
}

std::vector<formula> sample_family(const signature& sig, int n, const sample_options& o) {
  std::mt19937 rng(o.seed + 7919u * static_cast<std::uint32_t>(n));
  std::vector<std::vector<formula>> atoms;
  for (int c = 0; c <= o.max_ctx + o.depth; ++c) atoms.push_back(atomic_formulas(sig, c, o.with_eq));
  auto pick = [&](int k) { return std::uniform_int_distribution<int>(0, k - 1)(rng); };
  std::function<formula(int, int)> gen = [&](int ctx, int depth) -> formula {
    if (depth == 0 || pick(4) == 0) {
      auto& a = atoms[ctx];
      int r = pick(static_cast<int>(a.size()) + 2);
      if (r == static_cast<int>(a.size())) return mk_top();
      if (r > static_cast<int>(a.size())) return mk_bottom();
      return a[r];
    }
    int c = pick(ctx + 1 <= o.max_ctx ? 3 : 2);
    if (c == 0) return mk_and({gen(ctx, depth - 1), gen(ctx, depth - 1)});
    if (c == 1) return mk_or({gen(ctx, depth - 1), gen(ctx, depth - 1)});
    return mk_exists(gen(ctx + 1, depth - 1));
  };
  dedup d;
  for (int tries = 0; static_cast<int>(d.out.size()) < o.count && tries < 20 * o.count; ++tries) d.add(gen(n, o.depth));
  return d.out;
}

std::vector<std::pair<int, formula>> standard_family(const signature& sig, int N, const sample_options& o) {
  std::vector<std::pair<int, formula>> out;
  for (int n = 0; n <= N; ++n) {
    std::set<formula, formula_less> seen;
    for (auto& f : depth1_family(sig, n, o.max_ctx))
      if (seen.insert(f).second) out.push_back({n, f});
    for (auto& f : sample_family(sig, n, o))
      if (seen.insert(f).second) out.push_back({n, f});
  }
  return out;
}

std::vector<sequent> sequent_family(const std::vector<std::pair<int, formula>>& fam, int count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<sequent> out;
  if (fam.empty()) return out;
  std::uniform_int_distribution<std::size_t> any(0, fam.size() - 1);
  std::set<std::pair<formula, formula>, bool (*)(const std::pair<formula, formula>&, const std::pair<formula, formula>&)>
      seen([](const std::pair<formula, formula>& a, const std::pair<formula, formula>& b) {
        int c = compare(a.first, b.first);
        return c != 0 ? c < 0 : compare(a.second, b.second) < 0;
      });
  for (int tries = 0; static_cast<int>(out.size()) < count && tries < 50 * count; ++tries) {
    auto& a = fam[any(rng)];
    auto& b = fam[any(rng)];
    if (a.first != b.first) continue;
    if (seen.insert({a.second, b.second}).second) out.push_back({a.first, a.second, b.second});
  }
  return out;
}

}  // namespace coh
