#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coh/calculus.hpp"
#include "coh/interpretation.hpp"
#include "coh/lattice.hpp"
#include "coh/typespace.hpp"

namespace coh {

// A finitely presented type space functor up to arity N, stored on the
// spectral side: X_n is a finite poset, L_n = Up(X_n), and for f: n -> m
// the point map X_m -> X_n gives A_f = preimage and E_f = image.
struct presentation {
  std::string name;
  int N = 0;
  std::vector<fin_poset> spaces;
  std::map<map_key, std::vector<int>> pmap;
  std::shared_ptr<const typespace> realizer;  // set for exports

  int size(int n) const { return spaces.at(n).n; }
  const std::vector<int>& point_map(const std::vector<int>& f, int m) const;
  bits top(int n) const { return bits::all(size(n)); }
  bits A(const std::vector<int>& f, int m, const bits& u) const;  // L_n -> L_m
  bits E(const std::vector<int>& f, int m, const bits& v) const;  // L_m -> L_n
};

struct presentation_report {
  bool ok = true;
  int maps = 0, composites = 0, frobenius = 0, squares = 0;
  std::vector<std::string> failures;
};
presentation_report validate_presentation(const presentation& p);

presentation export_presentation(std::shared_ptr<const typespace> ts);
presentation trivial_presentation(int N = 2);

// generated signature: R<n>_<hex of U>
std::string symbol_for(int n, const bits& u);
// (arity, U) for a generated symbol; nullopt for foreign names
std::optional<std::pair<int, bits>> decode_symbol(const presentation& p, const std::string& name);

// [[phi]] for phi over the generated signature in context n
bits denote(const presentation& p, const formula& phi, int n);

// The finite set of lattice elements th_of gets symbols for. Full universes
// take every instance of the generating set; otherwise the lattice axioms
// and existential witnesses are restricted to the listed instances.
struct th_universe {
  std::vector<std::vector<bits>> elems;  // per arity, sorted
  bool full = false;
  std::vector<std::pair<int, std::vector<bits>>> meets, joins;
  std::vector<std::pair<int, bits>> bodies;  // (n+1, W) with an existential witness axiom
  bool has(int n, const bits& u) const;
  void add(int n, const bits& u);
  std::size_t count() const;
};
th_universe universe_all(const presentation& p, std::size_t limit = 64);
// denotations of every subformula of the family, plus the units and equality
th_universe universe_of(const presentation& p, const std::vector<std::pair<int, formula>>& family);
// principal up-sets of every point
th_universe universe_principal(const presentation& p);

theory th_of(const presentation& p, const th_universe& u);
signature sigma_of(const presentation& p, const th_universe& u);

// Th on 1-cells: R_U goes to R_{beta_n^-1(U)}, equality to R_{beta_2^-1([[x=y]])}
struct th_1cell {
  interpretation g;
  th_universe src, dst;
  std::string error;  // weak BC witness when non-empty
};
th_1cell th_of_1cell(const partial_map& pm, const presentation& small_p, const presentation& big_p,
                     const th_universe& src);

// the internal-logic form of 2-cell condition (5) on beta, beta' and Theta in F_{k+k'}
bool pnt_clause5(const presentation& big_p, const partial_map& b1, const partial_map& b2, const bits& theta, int n,
                 const bits& u);

// propositional theory of a lattice: R_a for each element
theory build_lattice_theory(const fin_lattice& l);

// generated symbols for [R(x1..xa)] of each relation, [x1 = x2] and [exists x. x = x];
// the usual base for round-trip families
signature base_signature(const typespace& ts);

struct roundtrip_options {
  entail_options eo;
  std::size_t max_pairs = 200;
  int retry_factor = 2;
};

struct roundtrip_theory_report {
  int formulas = 0;
  int open_match = 0, open_mismatch = 0;
  int proved = 0, refuted = 0, unknown = 0, rechecked = 0;
  int pairs = 0, pair_agree = 0, pair_unknown = 0;
  std::vector<std::string> failures;
  bool stable = false;
  bool ok() const { return open_mismatch == 0 && refuted == 0 && unknown == 0 && failures.empty(); }
};
// Gamma_T: th_of(export of S(T)) -> T with R_U going to a formula isolating U
interpretation gamma_t(const typespace& ts, const presentation& p, const th_universe& u);
roundtrip_theory_report roundtrip_theory(std::shared_ptr<const typespace> ts,
                                         const std::vector<std::pair<int, formula>>& family,
                                         const roundtrip_options& o = {});

struct roundtrip_functor_report {
  std::string route;  // "generic" or "atomic"
  std::vector<int> points, realized;
  bool prime = true, bijection = true, natural = true, realization = true, models_ok = true;
  std::vector<std::string> failures;
  bool ok() const { return prime && bijection && natural && realization && models_ok; }
};
// generic: type space of th_of(F) computed directly; needs a small presentation
roundtrip_functor_report roundtrip_functor(const presentation& p, int model_bound = 2);
// atomic: realizer models of an export, expanded to the generated signature
roundtrip_functor_report roundtrip_functor_atomic(const presentation& p);

// Sigma(F)-structure of a realizer model: R_U holds of a tuple iff its point is in U
finite_model expand_model(const presentation& p, const th_universe& u, const signature& sig, int model);

}  // namespace coh
