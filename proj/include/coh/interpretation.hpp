#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coh/calculus.hpp"
#include "coh/semantics.hpp"
#include "coh/syntax.hpp"

namespace coh {

struct interp_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// (Gamma, k): source -> target. Each n-ary source symbol goes to a target
// formula in context n*k; variable i of the source owns the block
// i*k .. i*k+k-1.
struct interpretation {
  std::string name;
  theory source, target;
  int k = 1;
  std::map<std::string, formula> rel;
  formula eq;  // context 2k

  bool strong() const;
};

std::string check_shape(const interpretation& g);  // empty when well formed

interpretation identity_interpretation(const theory& t);
// parses "interpretation NAME k=K" followed by "eq [x,y] ..." and "rel R [x..] ..."
// lines; source and target are supplied by the caller
interpretation parse_interpretation(const std::string& text, const theory& source, const theory& target);
std::string to_string(const interpretation& g);

// Gamma(phi) for phi in context n; result in context n*k. Existentials are
// relativized to Gamma(x = x).
formula apply(const interpretation& g, const formula& phi, int n);
// phi & x1 = x1 & ... & xn = xn
formula pad_context(const formula& phi, int n);
// Gamma(x = x) on block i of a context of n blocks
formula domain_formula(const interpretation& g, int n, int i);
// Gamma(x1 = x1 & ... & xn = xn) in context n*k
formula domain_formula(const interpretation& g, int n);

// composite (D, l) o (G, k) : arity k*l
interpretation compose(const interpretation& d, const interpretation& g);

struct quotient_model {
  finite_model model;
  std::vector<int> class_of;             // indexed by the k-tuple code, -1 outside A
  std::vector<std::vector<int>> reps;    // a representative k-tuple per class
};

// Gamma*(M); throws interp_error naming the failed property
quotient_model gamma_star(const interpretation& g, const finite_model& m);
int tuple_code(const std::vector<int>& a, int size);

// 2-cells
struct two_cell {
  const interpretation* from = nullptr;
  const interpretation* to = nullptr;
  formula theta;  // context k + k'
};

struct condition_result {
  std::string label;
  sequent s;
  verdict v;
};

struct two_cell_report {
  std::vector<condition_result> conditions;
  int proved = 0, refuted = 0, unknown = 0;
  bool holds() const { return refuted == 0 && unknown == 0; }
};

// the sequents (1)-(4), then (5) for every relation symbol and equality and
// for every extra formula supplied
std::vector<std::pair<std::string, sequent>> two_cell_conditions(const two_cell& c,
                                                                 const std::vector<std::pair<int, formula>>& extra = {});
two_cell_report check_two_cell(const two_cell& c, const entail_options& o,
                               const std::vector<std::pair<int, formula>>& extra = {});

two_cell identity_two_cell(const interpretation& g);
// exists y (theta(x,y) & eta(y,z))
formula compose_vertical(const two_cell& theta, const two_cell& eta);
// eta * theta with theta: (G,k) -> (G',k'), eta: (D,l) -> (D',l')
formula compose_horizontal(const two_cell& theta, const two_cell& eta);

struct model_hom {
  std::vector<int> map;  // classes of Gamma*(M) -> classes of Gamma'*(M)
};
// f_theta on a concrete model, re-verified; throws interp_error with a witness
model_hom hom_from_theta(const two_cell& c, const finite_model& m);

// verdict counts for Gamma preserving source-provable sequents over a family
struct interp_report {
  int checked = 0, proved = 0, refuted = 0, unknown = 0, skipped = 0;
  std::optional<sequent> first_failure;
  std::string failure_note;
};
interp_report check_interpretation(const interpretation& g, const std::vector<std::pair<int, formula>>& family,
                                   const entail_options& o, std::size_t max_pairs = 400);

// fixtures
interpretation e_interpretation();        // empty theory -> partial equivalence, = goes to E
interpretation strong_pp_interpretation(); // pqr -> pqr, P goes to P & P
interpretation pair_interpretation();     // empty theory -> empty theory, k = 2

}  // namespace coh
