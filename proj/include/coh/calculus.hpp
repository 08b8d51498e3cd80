#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coh/semantics.hpp"
#include "coh/syntax.hpp"

namespace coh {

enum class rule {
  identity,
  substitution,  // params: the map f (child context n -> conclusion context m)
  cut,
  equality1,     // params: i
  equality2,     // params: i, j
  conj_top,
  conj_elim,     // params: i
  conj_rule,
  disj_bottom,
  disj_intro,    // params: i
  disj_rule,
  exists_down,   // phi |-_{n+1} weaken(psi)  over  exists phi |-_n psi
  exists_up,     // the reverse direction of the double rule
  distributivity,
  frobenius,
  axiom          // params: index into the theory
};

const char* rule_name(rule r);
std::optional<rule> rule_from_name(const std::string& s);

struct deriv_node;
using derivation = std::shared_ptr<const deriv_node>;

struct deriv_node {
  rule r;
  sequent concl;
  std::vector<derivation> kids;
  std::vector<int> params;
};

derivation make_node(rule r, sequent concl, std::vector<derivation> kids = {}, std::vector<int> params = {});

struct check_result {
  bool ok = true;
  std::string reason;
};

check_result check_derivation(const theory& t, const derivation& d);
std::size_t derivation_size(const derivation& d);
int derivation_height(const derivation& d);

// small constructors used by the prover and by tests; each builds one
// checked-by-construction rule instance
namespace build {
derivation identity(int n, const formula& phi);
derivation cut(const derivation& a, const derivation& b);
derivation subst(const derivation& d, const std::vector<int>& f, int m);
derivation eq1(int n, const formula& lhs_top, int i);
derivation eq2(int n, int i, int j, const formula& phi);
derivation conj_top(int n, const formula& phi);
derivation conj_elim(int n, const formula& conj, int i);
derivation conj_rule(int n, const formula& lhs, const std::vector<derivation>& kids);
derivation disj_bottom(int n, const formula& psi);
derivation disj_intro(int n, const formula& disj, int i);
derivation disj_rule(int n, const formula& rhs, const std::vector<derivation>& kids);
derivation exists_down(const derivation& d, const formula& psi);  // psi in the smaller context
derivation exists_up(const derivation& d);
derivation distributivity(int n, const formula& phi, const formula& disj);
derivation frobenius(int n, const formula& phi, const formula& ex);
derivation axiom(const theory& t, int i);
}  // namespace build

struct budget {
  int depth = 8;          // branching (disjunctive/existential) steps per branch
  int size = 8;           // live elements per branch
  long max_steps = 50000; // total chase steps per call
};

struct countermodel {
  finite_model model;
  std::vector<int> assignment;
};

enum class verdict_kind { proved, refuted, unknown };
const char* verdict_name(verdict_kind k);

struct verdict {
  verdict_kind kind = verdict_kind::unknown;
  derivation proof;
  std::optional<countermodel> cm;
  std::string note;
  long steps = 0;
};

// forward chaining with proof generation; proved, refuted by a saturated
// branch, or unknown when a budget ran out
verdict chase(const theory& t, const sequent& s, const budget& b);
std::optional<derivation> prove(const theory& t, const sequent& s, const budget& b);

struct cm_search {
  std::optional<countermodel> found;
  bool complete = true;  // false when the size guard stopped the search
  int searched_up_to = -1;
};
cm_search find_countermodel(const theory& t, const sequent& s, int max_size, const enum_options& opt = {});

struct entail_options {
  budget b;
  int model_size = 3;
  enum_options guard;
};
verdict entails(const theory& t, const sequent& s, const entail_options& o = {});

enum class equiv_kind { equivalent, inequivalent, unknown };
struct equivalence {
  equiv_kind kind = equiv_kind::unknown;
  verdict forward, backward;  // phi |- psi, psi |- phi
};
equivalence equivalent(const theory& t, int n, const formula& phi, const formula& psi, const entail_options& o = {});

bool verify_countermodel(const theory& t, const sequent& s, const countermodel& cm);

}  // namespace coh
