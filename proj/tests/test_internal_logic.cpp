#include <gtest/gtest.h>

#include "coh/families.hpp"
#include "coh/internal_logic.hpp"
#include "coh/json_io.hpp"

using namespace coh;

namespace {

std::shared_ptr<const typespace> ts_of(const theory& t, int B = 3) {
  typespace_options o;
  o.B = B;
  return std::make_shared<typespace>(compute_typespace(t, o));
}

}  // namespace

TEST(InternalLogic, TrivialPresentation) {
  auto p = trivial_presentation(2);
  auto r = validate_presentation(p);
  EXPECT_TRUE(r.ok);
  for (auto& f : r.failures) ADD_FAILURE() << f;
  // one point everywhere: every atom and equality is the top element
  EXPECT_EQ(denote(p, mk_eq(0, 1), 2), p.top(2));
  EXPECT_EQ(denote(p, mk_exists(mk_eq(0, 0)), 0), p.top(0));
  EXPECT_TRUE(denote(p, mk_bottom(), 1).none());
}

TEST(InternalLogic, SymbolRoundTrip) {
  auto p = trivial_presentation(2);
  auto u = p.top(1);
  auto d = decode_symbol(p, symbol_for(1, u));
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->first, 1);
  EXPECT_EQ(d->second, u);
  EXPECT_FALSE(decode_symbol(p, "P").has_value());
  EXPECT_FALSE(decode_symbol(p, "R9_1").has_value());
}

TEST(InternalLogic, ExportValidatesAndDenotesLikeTheTypeSpace) {
  auto ts = ts_of(pequiv_theory());
  auto p = export_presentation(ts);
  auto r = validate_presentation(p);
  EXPECT_TRUE(r.ok);
  EXPECT_GT(r.squares, 0);
  // equality denotes the points where x1 = x2 holds, computed by eval in the realizers
  EXPECT_EQ(denote(p, mk_eq(0, 1), 2), ts->open_of(2, mk_eq(0, 1)));
  // exists over a generated symbol is the image along the projection
  auto e = ts->open_of(2, mk_atom("E", {0, 1}));
  auto ex = mk_exists(mk_atom(symbol_for(2, e), {0, 1}));
  EXPECT_EQ(denote(p, ex, 1), ts->open_of(1, mk_exists(mk_atom("E", {0, 1}))));
}

TEST(InternalLogic, RealizerModelsSatisfyThOf) {
  // semantic oracle: expanded realizer models are models of th_of, checked by eval
  auto ts = ts_of(pequiv_theory());
  auto p = export_presentation(ts);
  auto u = universe_principal(p);
  auto th = th_of(p, u);
  auto sig = sigma_of(p, u);
  for (std::size_t i = 0; i < ts->models.size(); ++i) {
    auto m = expand_model(p, u, sig, static_cast<int>(i));
    auto v = find_violation(m, th);
    EXPECT_FALSE(v.has_value()) << "model " << i << " axiom " << (v ? to_string(th.axioms[v->axiom]) : "");
  }
}

TEST(InternalLogic, ThOfDecidesTheTrivialLattice) {
  auto p = trivial_presentation(1);
  auto u = universe_all(p);
  auto th = th_of(p, u);
  auto sig = sigma_of(p, u);
  auto top0 = mk_atom(symbol_for(0, p.top(0)), {});
  auto bot0 = mk_atom(symbol_for(0, bits(1)), {});
  EXPECT_EQ(entails(th, {0, mk_top(), top0}).kind, verdict_kind::proved);
  EXPECT_EQ(entails(th, {0, bot0, mk_bottom()}).kind, verdict_kind::proved);
  EXPECT_NE(entails(th, {0, top0, bot0}).kind, verdict_kind::proved);
  EXPECT_EQ(entails(th, {0, mk_top(), mk_exists(mk_eq(0, 0))}).kind, verdict_kind::proved);
}

TEST(InternalLogic, LatticeTheoryPoints) {
  // T(2-chain): models are up-sets of {0 < 1} on the empty carrier
  auto t = build_lattice_theory(fin_lattice::chain(2));
  EXPECT_EQ(t.axioms.size(), 2u);
  typespace_options o;
  o.B = 2;
  auto ts = compute_typespace(t, o);
  EXPECT_EQ(ts.size(0), 3);
  EXPECT_EQ(ts.size(1), 0);
  EXPECT_TRUE(ts.stability.stable);
  auto p = export_presentation(std::make_shared<typespace>(ts));
  EXPECT_TRUE(validate_presentation(p).ok);
  EXPECT_TRUE(roundtrip_functor(p).ok());
}

TEST(InternalLogic, RoundTripFunctorRoutes) {
  EXPECT_TRUE(roundtrip_functor(trivial_presentation(2)).ok());
  auto p = export_presentation(ts_of(pequiv_theory()));
  auto r = roundtrip_functor_atomic(p);
  EXPECT_TRUE(r.ok());
  for (auto& f : r.failures) ADD_FAILURE() << f;
  EXPECT_EQ(r.points, (std::vector<int>{3, 3, 9}));
  EXPECT_EQ(r.realized, r.points);
}

TEST(InternalLogic, RoundTripTheoryOnPequiv) {
  auto ts = ts_of(pequiv_theory());
  sample_options so;
  so.count = 10;
  auto fam = standard_family(base_signature(*ts), 2, so);
  roundtrip_options ro;
  ro.max_pairs = 60;
  auto r = roundtrip_theory(ts, fam, ro);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.open_mismatch, 0);
  EXPECT_EQ(r.proved, r.formulas);
  EXPECT_EQ(r.pair_agree, r.pairs);
}

TEST(InternalLogic, OneCellFromInterpretation) {
  auto big = ts_of(pequiv_theory()), small = ts_of(empty_theory());
  auto pm = s_of_interpretation(e_interpretation(), *big, *small);
  auto bp = export_presentation(big), sp = export_presentation(small);
  auto c = th_of_1cell(pm, sp, bp, universe_principal(sp));
  EXPECT_EQ(c.error, "");
  // equality goes to the symbol of [E(x1,x2)]
  ASSERT_TRUE(c.g.eq);
  EXPECT_EQ(c.g.eq->rel, symbol_for(2, big->open_of(2, mk_atom("E", {0, 1}))));
}

TEST(InternalLogic, PresentationJsonRoundTrip) {
  auto p = export_presentation(ts_of(pequiv_theory()));
  auto q = presentation_from_json(to_json(p));
  EXPECT_EQ(q.N, p.N);
  for (int n = 0; n <= p.N; ++n) EXPECT_TRUE(q.spaces[n] == p.spaces[n]);
  EXPECT_EQ(q.pmap, p.pmap);
  // lattice form: the two-element lattice at every arity
  json j = {{"cutoff", 1},
            {"lattices", {{"0", {{"elements", 2}, {"leq", {{0, 1}}}}}, {"1", {{"elements", 2}, {"leq", {{0, 1}}}}}}},
            {"homs", {{"0->1:[]", {0, 1}}, {"1->1:[1]", {0, 1}}}}};
  auto t = presentation_from_json(j);
  EXPECT_EQ(t.size(0), 1);
  EXPECT_EQ(t.size(1), 1);
}
