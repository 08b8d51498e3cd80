#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "coh/semantics.hpp"

using namespace coh;

namespace {

std::string raw_key(const finite_model& m) {
  std::string s = std::to_string(m.size);
  for (auto& [r, t] : m.rels) s += "|" + r + t.data.to_string();
  return s;
}

// isomorphism classes by brute force: least raw key over all relabellings,
// independent of the canonical labelling used by enumerate_models
std::size_t brute_classes(const theory& t, int size) {
  int nb = valuation_bits(t.sig, size);
  std::set<std::string> classes;
  for (long code = 0; code < (1L << nb); ++code) {
    auto m = finite_model::empty_for(t.sig, size);
    int bit = 0;
    for (auto& [r, a] : t.sig.rels)
      for (auto& tup : all_tuples(size, a)) m.set(r, tup, (code >> bit++) & 1);
    if (!is_model(m, t)) continue;
    std::vector<int> perm(size);
    std::iota(perm.begin(), perm.end(), 0);
    std::string least = raw_key(m);
    do least = std::min(least, raw_key(permute(m, perm)));
    while (std::next_permutation(perm.begin(), perm.end()));
    classes.insert(least);
  }
  return classes.size();
}

}  // namespace

TEST(Semantics, EvalByHand) {
  auto t = pqr_theory();
  auto m = finite_model::empty_for(t.sig, 2);
  m.set("P", {0});
  m.set("Q", {1});
  m.set("R", {1});
  auto f = [&](const char* s, std::vector<std::string> v) { return parse_formula(s, v, t.sig); };
  EXPECT_TRUE(eval(m, f("P(x) & Q(y)", {"x", "y"}), {0, 1}));
  EXPECT_FALSE(eval(m, f("P(x) & Q(y)", {"x", "y"}), {1, 0}));
  EXPECT_TRUE(eval(m, f("exists z. Q(z) & R(z)", {}), {}));
  EXPECT_FALSE(eval(m, f("exists z. P(z) & R(z)", {}), {}));
  EXPECT_TRUE(eval(m, f("x = y | P(x)", {"x", "y"}), {0, 1}));
  EXPECT_TRUE(is_model(m, t));
  m.set("R", {1}, false);
  auto v = find_violation(m, t);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->axiom, 0);
  EXPECT_EQ(v->assignment, (std::vector<int>{0, 1}));
}

TEST(Semantics, EmptyCarrier) {
  auto t = pqr_theory();
  auto m = finite_model::empty_for(t.sig, 0);
  EXPECT_TRUE(is_model(m, t));
  EXPECT_FALSE(eval(m, parse_formula("exists x. x = x", {}, t.sig), {}));
  EXPECT_TRUE(eval(m, mk_top(), {}));
}

TEST(Semantics, ModelCountsMatchBruteForce) {
  for (auto& t : {pqr_theory(), pequiv_theory(), empty_theory()}) {
    auto ms = enumerate_models(t, 3);
    for (int s = 0; s <= 3; ++s) {
      auto got = std::count_if(ms.begin(), ms.end(), [&](auto& m) { return m.size == s; });
      EXPECT_EQ(static_cast<std::size_t>(got), brute_classes(t, s)) << t.name << " size " << s;
    }
  }
}

TEST(Semantics, PartialEquivalenceCounts) {
  // partial equivalence relations on n points up to iso = sum_{k<=n} p(k)
  auto ms = enumerate_models(pequiv_theory(), 3);
  std::vector<int> per(4, 0);
  for (auto& m : ms) per[m.size]++;
  EXPECT_EQ(per, (std::vector<int>{1, 2, 4, 7}));
}

TEST(Semantics, CanonicalKeyIsIsoInvariant) {
  auto t = pequiv_theory();
  auto m = finite_model::empty_for(t.sig, 3);
  m.set("E", {0, 0});
  m.set("E", {0, 2});
  m.set("E", {2, 0});
  m.set("E", {2, 2});
  auto p = permute(m, {2, 0, 1});
  EXPECT_EQ(canonical_key(m), canonical_key(p));
  auto q = m;
  q.set("E", {1, 1});
  EXPECT_NE(canonical_key(m), canonical_key(q));
}

TEST(Semantics, GuardThrows) {
  enum_options g;
  g.max_bits = 4;
  EXPECT_THROW(enumerate_models(pequiv_theory(), 3, g), semantic_error);
}

TEST(Semantics, ProfilesSeparateAtomicTypes) {
  auto t = pequiv_theory();
  auto m = finite_model::empty_for(t.sig, 2);
  m.set("E", {0, 0});
  // x1 in dom E vs not, at depth 0 only the base diagram differs
  EXPECT_FALSE(ctp(m, {0}, 0) == ctp(m, {1}, 0));
  // at depth 1 the outside element still sees the witness of E(y,y), so it sits below
  auto p0 = ctp(m, {0}, 1), p1 = ctp(m, {1}, 1);
  EXPECT_TRUE(profile_leq(p1, p0));
  EXPECT_FALSE(profile_leq(p0, p1));
}

TEST(Semantics, ProfileOrderMatchesPpFormulas) {
  // the order on profiles is inclusion of satisfied pp formulas with <= d witnesses;
  // check against direct evaluation of every diagram formula
  auto t = pqr_theory();
  auto ms = enumerate_models(t, 2);
  auto& da = atoms_for(t.sig, 1, 1);
  std::vector<std::pair<type_profile, std::vector<bool>>> seen;
  for (auto& m : ms)
    for (int a = 0; a < m.size; ++a) {
      std::vector<bool> sat;
      for (std::uint64_t mask = 0; mask < (1u << da.atoms.size()); ++mask)
        sat.push_back(eval(m, diagram_formula(da, mask), {a}));
      seen.push_back({ctp(m, {a}, 1), sat});
    }
  for (auto& [p, sp] : seen)
    for (auto& [q, sq] : seen) {
      bool incl = true;
      for (std::size_t i = 0; i < sp.size(); ++i) incl = incl && (!sp[i] || sq[i]);
      EXPECT_EQ(profile_leq(p, q), incl);
    }
}
