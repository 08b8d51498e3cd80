#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "coh/syntax.hpp"

namespace coh {

// every atom over sig in context n, equalities x_i = x_j with i < j included
std::vector<formula> atomic_formulas(const signature& sig, int n, bool with_eq = true);

// exhaustive depth <= 1 family in context n: units, atoms, binary conjunctions
// and disjunctions of atoms, and exists over atoms when n + 1 <= max_ctx
std::vector<formula> depth1_family(const signature& sig, int n, int max_ctx);

struct sample_options {
  int depth = 2;
  int count = 100;
  std::uint32_t seed = 20240611u;
  int max_ctx = 2;
  bool with_eq = true;
};
// seeded random formulas of depth <= o.depth, normalized and deduplicated
std::vector<formula> sample_family(const signature& sig, int n, const sample_options& o);

// depth1 for every context <= N plus a sample per context
std::vector<std::pair<int, formula>> standard_family(const signature& sig, int N, const sample_options& o);

// seeded sequents phi |- psi over a family, same context on both sides
std::vector<sequent> sequent_family(const std::vector<std::pair<int, formula>>& fam, int count, std::uint32_t seed);

}  // namespace coh
