#include <gtest/gtest.h>

#include "coh/syntax.hpp"

using namespace coh;

namespace {

signature pqr_sig() { return pqr_theory().sig; }

}  // namespace

TEST(Syntax, ParsePrintRoundTrip) {
  auto sig = pqr_sig();
  auto f = parse_formula("P(x) & (Q(y) | exists z. R(z) & x = z)", {"x", "y"}, sig);
  EXPECT_EQ(to_string(f, 2), "P(x1) & (Q(x2) | (exists x3. R(x3) & x1 = x3))");
  auto g = parse_formula(to_string(f, 2), {"x1", "x2"}, sig);
  EXPECT_TRUE(equal(f, g));
}

TEST(Syntax, TheoryFile) {
  auto t = parse_theory("# comment\ntheory t\nsig { A/0, B/2 }\naxiom [x] B(x,x) |- A\naxiom [] true |- exists x. B(x,x)\n");
  EXPECT_EQ(t.name, "t");
  EXPECT_EQ(t.sig.arity("B"), 2);
  EXPECT_EQ(t.sig.arity("A"), 0);
  EXPECT_EQ(t.sig.arity("C"), -1);
  ASSERT_EQ(t.axioms.size(), 2u);
  EXPECT_EQ(t.axioms[0].n, 1);
  EXPECT_EQ(t.axioms[1].n, 0);
  EXPECT_EQ(check_theory(t), "");
}

TEST(Syntax, ErrorsCarryPosition) {
  try {
    parse_theory("theory t\nsig { P/1 }\naxiom [x] P(x) |- Q(x)\n");
    FAIL() << "unknown relation accepted";
  } catch (const syntax_error& e) {
    EXPECT_EQ(e.line, 3);
    EXPECT_GT(e.col, 1);
  }
  EXPECT_THROW(parse_formula("P(x,x)", {"x"}, pqr_sig()), syntax_error);  // arity
  EXPECT_THROW(parse_formula("P(y)", {"x"}, pqr_sig()), syntax_error);    // unbound
  EXPECT_THROW(parse_sequent("[x] P(x) |-", pqr_sig()), syntax_error);
}

TEST(Syntax, SubstituteShiftsBound) {
  auto sig = pqr_sig();
  // phi(x1,x2) = exists x3. P(x3) & x1 = x3 & Q(x2), substituted along [2,2]: 2 -> 2
  auto phi = parse_formula("exists z. P(z) & x = z & Q(y)", {"x", "y"}, sig);
  auto s = substitute(phi, 2, {1, 1}, 2);
  EXPECT_EQ(to_string(s, 2), "exists x3. P(x3) & x2 = x3 & Q(x2)");
  // into a bigger context the bound variable moves past it
  auto w = weaken(phi, 2, 2);
  EXPECT_EQ(to_string(w, 4), "exists x5. P(x5) & x1 = x5 & Q(x2)");
  EXPECT_THROW(substitute(phi, 2, {0}, 2), index_error);
  EXPECT_THROW(substitute(phi, 2, {0, 5}, 2), index_error);
}

TEST(Syntax, NormalizeFlattensAndSorts) {
  auto sig = pqr_sig();
  auto a = parse_formula("(Q(x) & P(x)) & (true & P(x))", {"x"}, sig);
  auto b = parse_formula("P(x) & Q(x)", {"x"}, sig);
  EXPECT_TRUE(equal(normalize(a), normalize(b)));
  EXPECT_EQ(normalize(parse_formula("P(x) | false", {"x"}, sig))->kind, op::atom);
  EXPECT_EQ(normalize(parse_formula("P(x) & false", {"x"}, sig))->kind, op::bottom);
  // x = x is provable, not syntactically true
  EXPECT_EQ(normalize(parse_formula("x = x", {"x"}, sig))->kind, op::eq);
}

TEST(Syntax, Measures) {
  auto sig = pqr_sig();
  auto f = parse_formula("P(x) & (Q(x) | exists y. R(y))", {"x"}, sig);
  EXPECT_EQ(depth(f), 3);
  EXPECT_TRUE(has_disj(f));
  EXPECT_TRUE(has_exists(f));
  auto occ = occurring(parse_formula("P(y)", {"x", "y"}, sig), 2);
  EXPECT_FALSE(occ[0]);
  EXPECT_TRUE(occ[1]);
}

TEST(Syntax, IndexMaps) {
  EXPECT_EQ(parse_index_map("[2,1]"), (std::vector<int>{1, 0}));
  EXPECT_EQ(parse_index_map("[]"), std::vector<int>{});
  EXPECT_EQ(all_maps(2, 3).size(), 9u);
  EXPECT_EQ(all_maps(0, 3).size(), 1u);
  EXPECT_EQ(all_maps(2, 0).size(), 0u);
  EXPECT_EQ(compose_maps({1, 0}, {1, 1}), (std::vector<int>{0, 0}));
  EXPECT_TRUE(is_surjective({1, 0}, 2));
  EXPECT_FALSE(is_surjective({1, 1}, 2));
  EXPECT_TRUE(is_injective({2, 0}));
}

TEST(Syntax, FixturesWellFormed) {
  for (auto& t : {pqr_theory(), pequiv_theory(), empty_theory()}) EXPECT_EQ(check_theory(t), "") << t.name;
  EXPECT_EQ(to_string(pqr_theory().axioms[0]), "[x1,x2] P(x1) & Q(x2) |- R(x1) | R(x2)");
}
