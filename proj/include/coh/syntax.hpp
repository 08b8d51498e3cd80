#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace coh {

// Formulas use positional variables: in context n the free variables are
// 0..n-1 (printed x1..xn). Exists over a body in context n+1 binds index n.
enum class op { top, bottom, atom, eq, conj, disj, exists };

struct node;
using formula = std::shared_ptr<const node>;

struct node {
  op kind;
  std::string rel;           // atom only
  std::vector<int> args;     // atom arguments, or the two sides of eq
  std::vector<formula> kids; // conj/disj children, exists body
  std::size_t hash = 0;
};

formula mk_top();
formula mk_bottom();
formula mk_atom(const std::string& rel, std::vector<int> args);
formula mk_eq(int i, int j);
formula mk_and(std::vector<formula> kids);  // kept as given, no flattening
formula mk_or(std::vector<formula> kids);
formula mk_exists(formula body);
// conjunction helper: 0 kids -> top, 1 kid -> the kid
formula conj_of(std::vector<formula> kids);
formula disj_of(std::vector<formula> kids);

int compare(const formula& a, const formula& b);  // total order on trees
bool equal(const formula& a, const formula& b);
struct formula_less {
  bool operator()(const formula& a, const formula& b) const { return compare(a, b) < 0; }
};
struct formula_hash {
  std::size_t operator()(const formula& f) const { return f->hash; }
};
struct formula_eq {
  bool operator()(const formula& a, const formula& b) const { return equal(a, b); }
};

struct index_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// phi in context n, map: n -> m. Bound variables are shifted to m, m+1, ...
formula substitute(const formula& phi, int n, const std::vector<int>& map, int m);
// inclusion of context n into n+extra
formula weaken(const formula& phi, int n, int extra = 1);
formula normalize(const formula& phi);
int depth(const formula& phi);
int size(const formula& phi);
bool has_disj(const formula& phi);
bool has_exists(const formula& phi);
// free variables that actually occur
std::vector<bool> occurring(const formula& phi, int n);
void relations_of(const formula& phi, std::vector<std::string>& out);

struct signature {
  std::string name;
  std::map<std::string, int> rels;
  int arity(const std::string& r) const;  // -1 if unknown
};

struct sequent {
  int n = 0;
  formula lhs, rhs;
};

struct theory {
  std::string name;
  signature sig;
  std::vector<sequent> axioms;
};

// empty string when well formed; otherwise a reason
std::string check_formula(const formula& phi, int n, const signature& sig);
std::string check_theory(const theory& t);

std::string var_name(int i);
std::string to_string(const formula& phi, int n);
std::string to_string(const sequent& s);
std::string to_string(const theory& t);

struct syntax_error : std::runtime_error {
  int line, col;
  syntax_error(const std::string& msg, int l, int c);
};

theory parse_theory(const std::string& text);
// "[x,y] phi |- psi"
sequent parse_sequent(const std::string& text, const signature& sig);
// formula over the named context, e.g. vars = {"x","y"}
formula parse_formula(const std::string& text, const std::vector<std::string>& vars, const signature& sig);
std::vector<int> parse_index_map(const std::string& text);  // "[2,1]" 1-based -> 0-based

// index maps n -> m as vectors of length n
std::vector<int> identity_map(int n);
std::vector<int> compose_maps(const std::vector<int>& g, const std::vector<int>& f);  // g after f
std::vector<std::vector<int>> all_maps(int n, int m);
bool is_surjective(const std::vector<int>& f, int m);
bool is_injective(const std::vector<int>& f);

// fixture theories
theory pqr_theory();
theory pequiv_theory();
theory empty_theory();

}  // namespace coh
