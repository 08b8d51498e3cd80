#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coh/interpretation.hpp"
#include "coh/lattice.hpp"
#include "coh/semantics.hpp"

namespace coh {

struct realization {
  int model = 0;
  std::vector<int> tuple;
};

struct type_layer {
  int n = 0;
  std::vector<type_profile> points;  // ascending
  fin_poset order;                   // p <= q iff profile(p) is contained in profile(q)
  std::vector<std::vector<realization>> real;
};

struct stability_report {
  bool run = false;
  bool stable = false;
  // point counts per arity at (B,d), (B+1,d), (B+1,d+1)
  std::vector<std::vector<int>> counts;
  std::string note;
};

struct typespace_options {
  int N = 2;
  int B = 3;
  int d = 2;
  bool stability = true;
  int map_witnesses = -1;  // realizations per point used to check each S_f, -1 for all
  enum_options guard;
};

using map_key = std::pair<int, std::vector<int>>;  // (m, f) for f: n -> m

struct typespace {
  theory t;
  int N = 0, B = 0, d = 0;
  std::vector<finite_model> models;
  std::vector<type_layer> layers;
  std::map<map_key, std::vector<int>> maps;  // S_f : S_m -> S_n
  stability_report stability;

  int size(int n) const { return layers.at(n).order.n; }
  int find(int n, const type_profile& p) const;  // -1 if absent
  int point_of(int model, const std::vector<int>& a) const;
  const std::vector<int>& smap(const std::vector<int>& f, int m) const;
  // [phi] over the stored points; throws semantic_error if realizations disagree
  bits open_of(int n, const formula& phi) const;
  // a formula whose open is exactly U (disjunction of isolating formulas)
  formula formula_of(int n, const bits& u) const;
  formula isolating(int n, int p) const;
  std::string point_name(int n, int p) const;
};

typespace compute_typespace(const theory& t, const typespace_options& o);
std::vector<int> point_counts(const theory& t, int N, int B, int d, const enum_options& guard);

// exists y1..ym (phi(y) & x_i = y_f(i)) in context n, for phi in context m
formula direct_image_formula(const formula& phi, const std::vector<int>& f, int m);
formula preimage_formula(const formula& psi, const std::vector<int>& f, int m);

// FinSet spans and their pushouts: alpha: k -> n1, beta: k -> n2
struct fin_pushout {
  int k = 0, n1 = 0, n2 = 0, p = 0;
  std::vector<int> alpha, beta, gamma, delta;  // gamma: n1 -> p, delta: n2 -> p
};
fin_pushout make_pushout(int k, int n1, int n2, const std::vector<int>& alpha, const std::vector<int>& beta);
// "1<-0->1" style, maps default to initial-segment inclusions
fin_pushout parse_pushout(const std::string& s);
// checks that gamma, delta form a pushout of alpha, beta
std::string pushout_error(const fin_pushout& po);

struct functor_bc {
  square sq;
  std::string error;  // monotone/open failures of the induced maps
  bc_result bc;
  surj_result surj;
};
functor_bc check_functor_bc(const typespace& ts, const fin_pushout& po);

// T1 report: a layer is T1 when the order is discrete
std::vector<bool> t1_report(const typespace& ts);

// partial natural transformation: beta_n : F_{nk} -/-> F'_n with F = S(target),
// F' = S(source) on the stored points
struct partial_map {
  int k = 1;
  const typespace* big = nullptr;    // F
  const typespace* small = nullptr;  // F'
  std::vector<std::vector<int>> beta;  // beta[n][p] for p in F_{nk}, -1 outside the domain
  bits domain(int n) const;
  bits preimage(int n, const bits& u) const;
};

partial_map s_of_interpretation(const interpretation& g, const typespace& target_ts, const typespace& source_ts);
partial_map identity_partial_map(const typespace& ts);

std::vector<int> times_k(const std::vector<int>& f, int k);  // f^{x k}

struct bc_witness {
  bool holds = true;
  std::vector<int> f;
  int m = 0;
  std::optional<bits> u;
  bits lhs, rhs;
};
bc_witness check_weak_bc(const partial_map& pm, const std::vector<int>& f, int m);
bc_witness check_strict_bc(const partial_map& pm, const std::vector<int>& f, int m);

// cartesian family generated by theta1 in F_k; theta[n] for n <= N
struct cartesian_family {
  int k = 1;
  const typespace* f = nullptr;
  std::vector<bits> theta;
};
cartesian_family make_family(const typespace& ts, int k, const bits& theta1, int N);

struct family_law {
  std::vector<int> f;
  int m = 0;
  bool contained = false;
  bool equal = false;
  bool surjective = false;
};
std::vector<family_law> check_family_laws(const cartesian_family& cf, int N);

}  // namespace coh
