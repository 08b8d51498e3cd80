#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coh/bits.hpp"
#include "coh/syntax.hpp"

namespace coh {

struct relation_table {
  int arity = 0;
  bits data;  // size^arity entries, first argument most significant
};

struct finite_model {
  int size = 0;
  std::map<std::string, relation_table> rels;

  static finite_model empty_for(const signature& sig, int size);
  std::size_t index(int arity, const int* args) const;
  bool holds(const std::string& r, const std::vector<int>& args) const;
  void set(const std::string& r, const std::vector<int>& args, bool v = true);
  std::vector<std::vector<int>> tuples(const std::string& r) const;
};

bool operator==(const finite_model& a, const finite_model& b);

struct semantic_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tarskian truth; a.size() is the context of phi
bool eval(const finite_model& m, const formula& phi, const std::vector<int>& a);

struct violation {
  int axiom = -1;
  std::vector<int> assignment;
};
std::optional<violation> find_violation(const finite_model& m, const theory& t);
bool is_model(const finite_model& m, const theory& t);

// every tuple of the given length over 0..size-1, lexicographic
std::vector<std::vector<int>> all_tuples(int size, int len);

struct enum_options {
  int max_bits = 24;  // bound on sum of size^arity per carrier size
};

// models of t with carrier <= max_size, one per isomorphism class, in order
// of size then valuation code; throws semantic_error past the guard
std::vector<finite_model> enumerate_models(const theory& t, int max_size, const enum_options& opt = {});
int valuation_bits(const signature& sig, int size);
bool is_canonical(const finite_model& m);
std::string canonical_key(const finite_model& m);  // equal iff isomorphic
finite_model permute(const finite_model& m, const std::vector<int>& perm);  // element x goes to perm[x]

// Coherent type profile of a tuple: the down-closed family of positive atomic
// diagrams of (a, c) for c in M^d, kept as its maximal masks. Two tuples get
// the same profile iff they satisfy the same primitive positive formulas
// with at most d quantified variables.
struct diagram_atoms {
  int n = 0, d = 0;
  std::vector<formula> atoms;  // over n+d variables
};
const diagram_atoms& atoms_for(const signature& sig, int n, int d);

struct type_profile {
  std::uint64_t base = 0;             // atomic diagram of the tuple itself
  std::vector<std::uint64_t> maxima;  // sorted antichain; empty only in the empty model
  bool operator==(const type_profile& o) const { return base == o.base && maxima == o.maxima; }
  bool operator<(const type_profile& o) const { return base != o.base ? base < o.base : maxima < o.maxima; }
};

signature signature_of(const finite_model& m);
type_profile ctp(const finite_model& m, const std::vector<int>& a, int d);
type_profile ctp(const finite_model& m, const signature& sig, const std::vector<int>& a, int d);
bool profile_leq(const type_profile& p, const type_profile& q);
bool profile_has(const type_profile& p, std::uint64_t mask);
// mask of the atoms that only mention the first n variables
std::uint64_t base_mask(const diagram_atoms& da);
// formula exists y1..yd And[atoms in mask], normalized, in context n
formula diagram_formula(const diagram_atoms& da, std::uint64_t mask);
std::string profile_string(const diagram_atoms& da, const type_profile& p);

}  // namespace coh
