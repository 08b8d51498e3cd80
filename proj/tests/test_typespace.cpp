#include <gtest/gtest.h>

#include <set>

#include "coh/typespace.hpp"

using namespace coh;

namespace {

typespace make(const theory& t, int B, int d, int N = 2) {
  typespace_options o;
  o.N = N;
  o.B = B;
  o.d = d;
  o.stability = false;
  return compute_typespace(t, o);
}

// distinct truth vectors of every diagram formula over the models, by eval
std::size_t eval_classes(const theory& t, int n, int d, int B) {
  auto& da = atoms_for(t.sig, n, d);
  std::set<std::vector<bool>> out;
  for (auto& m : enumerate_models(t, B))
    for (auto& a : all_tuples(m.size, n)) {
      std::vector<bool> v;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << da.atoms.size()); ++mask)
        v.push_back(eval(m, diagram_formula(da, mask), a));
      out.insert(v);
    }
  return out.size();
}

formula f(const typespace& ts, const char* s, int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back("x" + std::to_string(i + 1));
  return parse_formula(s, v, ts.t.sig);
}

}  // namespace

TEST(TypeSpace, EmptyTheoryByHand) {
  auto ts = make(empty_theory(), 3, 2);
  // zero-types: the empty model and the rest; one 1-type; x1 = x2 or not
  EXPECT_EQ(ts.size(0), 2);
  EXPECT_EQ(ts.size(1), 1);
  EXPECT_EQ(ts.size(2), 2);
  EXPECT_EQ(ts.open_of(0, f(ts, "exists y. y = y", 0)).count(), 1u);
  EXPECT_EQ(ts.open_of(2, f(ts, "x1 = x2", 2)).count(), 1u);
}

TEST(TypeSpace, PartialEquivalenceByHand) {
  // S_0: empty model, no E, some E. S_1: in dom E, outside with dom E nonempty, outside with
  // dom E empty. S_2: 3 diagonal + 6 off-diagonal cases
  auto ts = make(pequiv_theory(), 3, 2);
  EXPECT_EQ(ts.size(0), 3);
  EXPECT_EQ(ts.size(1), 3);
  EXPECT_EQ(ts.size(2), 9);
}

TEST(TypeSpace, PqrCountsAgreeWithEval) {
  auto ts = make(pqr_theory(), 3, 2, 1);
  EXPECT_EQ(static_cast<std::size_t>(ts.size(0)), eval_classes(pqr_theory(), 0, 2, 3));
  auto ts1 = make(pqr_theory(), 3, 1, 1);
  EXPECT_EQ(static_cast<std::size_t>(ts1.size(1)), eval_classes(pqr_theory(), 1, 1, 3));
  EXPECT_EQ(ts.size(0), 13);
  EXPECT_EQ(ts.size(1), 42);
}

TEST(TypeSpace, StabilityReport) {
  typespace_options o;
  o.B = 3;
  auto ts = compute_typespace(pequiv_theory(), o);
  EXPECT_TRUE(ts.stability.run);
  EXPECT_TRUE(ts.stability.stable);
  auto pq = compute_typespace(pqr_theory(), o);
  EXPECT_FALSE(pq.stability.stable);  // S_2 grows from 194 to 218 at B = 4
  ASSERT_EQ(pq.stability.counts.size(), 3u);
  EXPECT_EQ(pq.stability.counts[0][2], 194);
  EXPECT_EQ(pq.stability.counts[1][2], 218);
}

TEST(TypeSpace, Functoriality) {
  auto ts = make(pequiv_theory(), 3, 2);
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m)
      for (int k = 0; k <= 2; ++k)
        for (auto& a : all_maps(n, m))
          for (auto& b : all_maps(m, k)) {
            auto ba = compose_maps(b, a);
            auto& sb = ts.smap(b, k);
            auto& sa = ts.smap(a, m);
            auto& sba = ts.smap(ba, k);
            for (int p = 0; p < ts.size(k); ++p) EXPECT_EQ(sba[p], sa[sb[p]]);
          }
  auto& id = ts.smap(identity_map(2), 2);
  for (int p = 0; p < ts.size(2); ++p) EXPECT_EQ(id[p], p);
}

TEST(TypeSpace, MapsAreOpenAndMatchDirectImage) {
  auto ts = make(pequiv_theory(), 3, 2);
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m)
      for (auto& fm : all_maps(n, m)) {
        auto& g = ts.smap(fm, m);
        EXPECT_TRUE(is_open_map(ts.layers[m].order, ts.layers[n].order, g));
        for (auto* s : {"E(x1,x1)", "true"}) {
          if (m == 0 && std::string(s) != "true") continue;
          auto phi = f(ts, s, m);
          auto img = image(g, ts.open_of(m, phi), ts.size(n));
          EXPECT_EQ(ts.open_of(n, direct_image_formula(phi, fm, m)), img);
        }
      }
}

TEST(TypeSpace, FormulaOfRecoversOpens) {
  auto ts = make(pequiv_theory(), 3, 2);
  for (int n = 0; n <= 2; ++n)
    for (auto& u : ts.layers[n].order.up_sets()) EXPECT_EQ(ts.open_of(n, ts.formula_of(n, u)), u);
}

TEST(TypeSpace, Pushouts) {
  auto po = parse_pushout("1<-0->1");
  EXPECT_EQ(po.p, 2);
  EXPECT_EQ(pushout_error(po), "");
  auto q = make_pushout(2, 1, 1, {0, 0}, {0, 0});
  EXPECT_EQ(q.p, 1);
  EXPECT_EQ(pushout_error(q), "");
  auto r = make_pushout(2, 2, 2, {0, 1}, {1, 0});
  EXPECT_EQ(r.p, 2);
  // legs that do not commute
  auto bad = r;
  bad.delta = {0, 1};
  EXPECT_NE(pushout_error(bad), "");
}

TEST(TypeSpace, NonSurjectiveUniversalMap) {
  auto ts = make(pqr_theory(), 4, 2);
  auto r = check_functor_bc(ts, parse_pushout("1<-0->1"));
  EXPECT_EQ(r.error, "");
  EXPECT_TRUE(r.bc.holds);
  EXPECT_FALSE(r.surj.surjective);
  ASSERT_TRUE(r.surj.witness.has_value());
  // no 2-type restricts to the witness pair
  auto [b, c] = *r.surj.witness;
  auto& l = ts.smap({0}, 2);
  auto& rr = ts.smap({1}, 2);
  for (int p = 0; p < ts.size(2); ++p) EXPECT_FALSE(l[p] == b && rr[p] == c);
}

TEST(TypeSpace, WeakButNotStrictBc) {
  auto big = make(pequiv_theory(), 3, 2);
  auto small = make(empty_theory(), 3, 2);
  auto pm = s_of_interpretation(e_interpretation(), big, small);
  EXPECT_EQ(pm.domain(1).count(), 1u);  // only the type in dom E
  auto w = check_weak_bc(pm, {0, 0}, 1);
  auto s = check_strict_bc(pm, {0, 0}, 1);
  EXPECT_TRUE(w.holds);
  EXPECT_FALSE(s.holds);
  // the strict witness: [E(x,y)] vs [x = y & E(x,x) & E(y,y)]
  EXPECT_EQ(s.lhs, big.open_of(2, f(big, "E(x1,x2)", 2)));
  EXPECT_EQ(s.rhs, big.open_of(2, f(big, "x1 = x2 & E(x1,x1) & E(x2,x2)", 2)));
}

TEST(TypeSpace, CartesianFamilyLaws) {
  auto ts = make(pequiv_theory(), 3, 2, 3);
  auto cf = make_family(ts, 1, ts.open_of(1, f(ts, "E(x1,x1)", 1)), 3);
  auto laws = check_family_laws(cf, 3);
  EXPECT_FALSE(laws.empty());
  for (auto& l : laws) {
    EXPECT_TRUE(l.contained);
    EXPECT_EQ(l.equal, is_surjective(l.f, l.m));
  }
}

TEST(TypeSpace, T1Report) {
  // empty theory: S_0 is the chain empty model < inhabited, S_1 a point, S_2 a 2-chain
  auto t1 = t1_report(make(empty_theory(), 3, 2));
  EXPECT_FALSE(t1[0]);
  EXPECT_TRUE(t1[1]);
  EXPECT_FALSE(t1[2]);  // x1 != x2 lies below x1 = x2
}
