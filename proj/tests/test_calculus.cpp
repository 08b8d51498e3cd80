#include <gtest/gtest.h>

#include "coh/calculus.hpp"
#include "coh/families.hpp"

using namespace coh;

namespace {

sequent seq(const theory& t, const char* s) { return parse_sequent(s, t.sig); }

// exhaustive truth of a sequent over all models up to the given size
bool valid_upto(const theory& t, const sequent& s, int size) {
  for (auto& m : enumerate_models(t, size))
    for (auto& a : all_tuples(m.size, s.n))
      if (eval(m, s.lhs, a) && !eval(m, s.rhs, a)) return false;
  return true;
}

}  // namespace

TEST(Calculus, HandBuiltDerivationsCheck) {
  auto t = pqr_theory();
  auto sig = t.sig;
  auto p = parse_formula("P(x)", {"x"}, sig), q = parse_formula("Q(x)", {"x"}, sig);
  auto pq = mk_and({p, q});
  // P & Q |- Q & P
  auto d = build::conj_rule(1, pq, {build::conj_elim(1, pq, 1), build::conj_elim(1, pq, 0)});
  EXPECT_TRUE(check_derivation(t, d).ok) << check_derivation(t, d).reason;
  EXPECT_EQ(to_string(d->concl), "[x1] P(x1) & Q(x1) |- Q(x1) & P(x1)");
  // the axiom substituted along 2 -> 1, [1,1]
  auto ax = build::subst(build::axiom(t, 0), {0, 0}, 1);
  EXPECT_TRUE(check_derivation(t, ax).ok);
  EXPECT_EQ(to_string(ax->concl), "[x1] P(x1) & Q(x1) |- R(x1) | R(x1)");
  auto whole = build::cut(d, build::cut(build::conj_rule(1, mk_and({q, p}), {build::conj_elim(1, mk_and({q, p}), 1),
                                                                                build::conj_elim(1, mk_and({q, p}), 0)}),
                                        ax));
  EXPECT_TRUE(check_derivation(t, whole).ok);
}

TEST(Calculus, CheckerRejectsTampering) {
  auto t = pqr_theory();
  auto p = parse_formula("P(x)", {"x"}, t.sig), q = parse_formula("Q(x)", {"x"}, t.sig);
  // conj_elim with a conclusion that does not match
  auto bad = make_node(rule::conj_elim, sequent{1, mk_and({p, q}), mk_atom("R", {0})}, {}, {0});
  EXPECT_FALSE(check_derivation(t, bad).ok);
  // axiom index out of range
  auto bad2 = make_node(rule::axiom, t.axioms[0], {}, {7});
  EXPECT_FALSE(check_derivation(t, bad2).ok);
  // cut with mismatched middle formula
  auto bad3 = make_node(rule::cut, sequent{1, p, q}, {build::identity(1, p), build::identity(1, q)});
  EXPECT_FALSE(check_derivation(t, bad3).ok);
}

TEST(Calculus, ProverOnPqr) {
  auto t = pqr_theory();
  auto v = entails(t, seq(t, "[x] P(x) & Q(x) |- R(x)"));
  ASSERT_EQ(v.kind, verdict_kind::proved);
  EXPECT_TRUE(check_derivation(t, v.proof).ok);
  // exists + frobenius
  auto v2 = entails(t, seq(t, "[] (exists x. P(x)) & (exists y. Q(y)) |- exists z. R(z)"));
  ASSERT_EQ(v2.kind, verdict_kind::proved);
  EXPECT_TRUE(check_derivation(t, v2.proof).ok);
  auto v3 = entails(t, seq(t, "[x] P(x) |- R(x)"));
  ASSERT_EQ(v3.kind, verdict_kind::refuted);
  ASSERT_TRUE(v3.cm.has_value());
  EXPECT_TRUE(verify_countermodel(t, seq(t, "[x] P(x) |- R(x)"), *v3.cm));
  // oracle: the countermodel satisfies the axioms and falsifies the sequent under eval
  EXPECT_TRUE(is_model(v3.cm->model, t));
  EXPECT_TRUE(eval(v3.cm->model, parse_formula("P(x)", {"x"}, t.sig), v3.cm->assignment));
  EXPECT_FALSE(eval(v3.cm->model, parse_formula("R(x)", {"x"}, t.sig), v3.cm->assignment));
}

TEST(Calculus, EqualityAndSymmetry) {
  auto t = pequiv_theory();
  for (auto s : {"[x,y] E(x,y) |- E(y,y)", "[x,y] x = y & E(x,x) |- E(y,x)", "[x,y,z] E(x,y) & E(z,y) |- E(x,z)"}) {
    auto v = entails(t, seq(t, s));
    EXPECT_EQ(v.kind, verdict_kind::proved) << s;
    if (v.proof) EXPECT_TRUE(check_derivation(t, v.proof).ok) << s;
  }
}

TEST(Calculus, EquivalentGivesTwoElementCountermodel) {
  auto t = pequiv_theory();
  auto phi = parse_formula("E(x,y)", {"x", "y"}, t.sig);
  auto psi = parse_formula("x = y & E(x,x) & E(y,y)", {"x", "y"}, t.sig);
  auto e = equivalent(t, 2, phi, psi);
  ASSERT_EQ(e.kind, equiv_kind::inequivalent);
  EXPECT_EQ(e.backward.kind, verdict_kind::proved);
  ASSERT_TRUE(e.forward.cm.has_value());
  auto& cm = *e.forward.cm;
  EXPECT_EQ(cm.model.size, 2);
  EXPECT_TRUE(eval(cm.model, phi, cm.assignment));
  EXPECT_FALSE(eval(cm.model, psi, cm.assignment));
}

TEST(Calculus, UnknownWhenBudgetRunsOut) {
  auto t = parse_theory("theory inf\nsig { S/2 }\naxiom [x] true |- exists y. S(x,y)\n");
  // the chase never closes and the only one-element model has a loop
  entail_options o;
  o.b.depth = 2;
  o.b.size = 3;
  o.model_size = 1;
  auto s = parse_sequent("[x] true |- exists y. S(y,y)", t.sig);
  EXPECT_EQ(entails(t, s, o).kind, verdict_kind::unknown);
  // a 2-cycle refutes it
  o.model_size = 2;
  auto v = entails(t, s, o);
  ASSERT_EQ(v.kind, verdict_kind::refuted);
  EXPECT_EQ(v.cm->model.size, 2);
}

TEST(Calculus, SoundnessOnSampledSequents) {
  // every proof checks and its sequent is valid in all small models
  auto t = pqr_theory();
  sample_options so;
  so.count = 15;
  auto fam = standard_family(t.sig, 2, so);
  auto seqs = sequent_family(fam, 80, 11);
  int proved = 0;
  for (auto& s : seqs) {
    auto v = entails(t, s);
    if (v.kind == verdict_kind::proved) {
      ++proved;
      EXPECT_TRUE(check_derivation(t, v.proof).ok) << to_string(s);
      EXPECT_TRUE(valid_upto(t, s, 3)) << to_string(s);
    } else if (v.kind == verdict_kind::refuted) {
      EXPECT_TRUE(verify_countermodel(t, s, *v.cm)) << to_string(s);
    }
  }
  EXPECT_GT(proved, 0);
}
