#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coh/bits.hpp"

namespace coh {

struct lattice_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite poset, read as a finite spectral space: x <= y means x lies in
// the closure of y, opens are the up-sets.
struct fin_poset {
  int n = 0;
  std::vector<bits> up;    // up[x] = {y : x <= y}
  std::vector<bits> down;  // down[y] = {x : x <= y}

  static fin_poset discrete(int n);
  static fin_poset chain(int n);
  // reflexive-transitive closure of the pairs; throws on a cycle
  static fin_poset from_pairs(int n, const std::vector<std::pair<int, int>>& le);
  static fin_poset from_up(std::vector<bits> up);  // already a partial order

  bool leq(int x, int y) const { return up[x].test(y); }
  bool is_up_set(const bits& s) const;
  bits up_closure(const bits& s) const;
  bits down_closure(const bits& s) const;
  bits all() const { return bits::all(n); }
  std::vector<int> maximal(const bits& s) const;
  std::vector<int> minimal(const bits& s) const;
  std::vector<std::pair<int, int>> covers() const;
  std::vector<bits> up_sets(std::size_t limit = 1u << 20) const;  // every up-set, ascending by (count, bits)
};

bool operator==(const fin_poset& a, const fin_poset& b);

struct fin_lattice {
  int n = 0;
  fin_poset order;
  std::vector<int> meet_t, join_t;
  int bot = 0, top = 0;

  // order generated by the pairs; checks lattice and distributivity
  static fin_lattice from_pairs(int n, const std::vector<std::pair<int, int>>& le);
  static fin_lattice from_order(const fin_poset& p);
  static fin_lattice chain(int n);

  bool leq(int a, int b) const { return order.leq(a, b); }
  int meet(int a, int b) const { return meet_t[a * n + b]; }
  int join(int a, int b) const { return join_t[a * n + b]; }
  std::vector<int> join_irreducibles() const;
};

// a map of lattice elements; throws lattice_error if not a bounded lattice hom
void check_hom(const fin_lattice& l, const fin_lattice& m, const std::vector<int>& f);
bool is_hom(const fin_lattice& l, const fin_lattice& m, const std::vector<int>& f);

struct spectrum {
  fin_poset space;
  std::vector<bits> filters;  // prime filter of each point, as element subsets
};

spectrum spec(const fin_lattice& l);
// brute-force version used as an independent check
std::vector<bits> prime_filters_brute(const fin_lattice& l);
bool is_prime_filter(const fin_lattice& l, const bits& f);

struct upset_lattice {
  fin_lattice lat;
  std::vector<bits> sets;  // element i is the up-set sets[i]
  int index_of(const bits& u) const;
};
upset_lattice k_o(const fin_poset& x);

// point map spec(m) -> spec(l) for f: l -> m
std::vector<int> dual_hom(const fin_lattice& l, const spectrum& sl, const fin_lattice& m, const spectrum& sm,
                          const std::vector<int>& f);

// h(b) = meet{a : b <= f(a)}; throws if the adjunction fails
std::vector<int> left_adjoint(const fin_lattice& l, const fin_lattice& m, const std::vector<int>& f);

// h left adjoint to f: l -> m, h: m -> l. Returns the first (a in m, b in l)
// with h(a & f(b)) != h(a) & b.
std::optional<std::pair<int, int>> check_frobenius(const fin_lattice& l, const fin_lattice& m, const std::vector<int>& f,
                                                   const std::vector<int>& h);

bool is_monotone(const fin_poset& x, const fin_poset& y, const std::vector<int>& g);
bool is_open_map(const fin_poset& x, const fin_poset& y, const std::vector<int>& g);
bits image(const std::vector<int>& g, const bits& s, int target_size);
bits preimage(const std::vector<int>& g, const bits& s);

// commuting square f: A->B, g: A->C, h: B->D, k: C->D
struct square {
  fin_poset a, b, c, d;
  std::vector<int> f, g, h, k;
};

struct bc_result {
  bool holds = true;
  std::optional<bits> witness;  // an up-set U of B
  std::string error;
};

// checks k^-1(h(U)) <= g(f^-1(U)); principal up-sets suffice because both
// sides preserve unions. exhaustive=true runs over every up-set instead.
bc_result check_bc_square(const square& s, bool exhaustive = false);
std::string square_error(const square& s, bool need_open = true);

struct surj_result {
  bool surjective = true;
  std::optional<std::pair<int, int>> witness;  // (b, c) in the fiber product not hit
  std::size_t fiber_size = 0;
};
surj_result universal_map_surjective(const square& s);

// isomorphism classes
std::vector<fin_poset> enumerate_posets(int max_n);
std::vector<fin_lattice> enumerate_distributive_lattices(int max_size);
std::vector<int> canonical_labels(const fin_poset& p);  // order used for canonical form
std::string canonical_form(const fin_poset& p);
// an order isomorphism p -> q if one exists
std::optional<std::vector<int>> find_iso(const fin_poset& p, const fin_poset& q);

}  // namespace coh
