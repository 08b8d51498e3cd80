#include "coh/calculus.hpp"

#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace coh {

namespace {

const char* const kRuleNames[] = {"identity",    "substitution", "cut",        "equality1",  "equality2",   "conj-top",
                                  "conj-elim",   "conj-rule",    "disj-bottom", "disj-intro", "disj-rule",  "exists-down",
                                  "exists-up",   "distributivity", "frobenius", "axiom"};

}  // namespace

const char* rule_name(rule r) { return kRuleNames[static_cast<int>(r)]; }

std::optional<rule> rule_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(rule::axiom); ++i)
    if (s == kRuleNames[i]) return static_cast<rule>(i);
  return std::nullopt;
}

derivation make_node(rule r, sequent concl, std::vector<derivation> kids, std::vector<int> params) {
  return std::make_shared<const deriv_node>(deriv_node{r, std::move(concl), std::move(kids), std::move(params)});
}

namespace {

std::vector<int> swap_map(int n, int i, int j) {
  auto e = identity_map(n);
  e[i] = j;
  return e;
}

struct checker {
  const theory& t;
  std::unordered_set<const deriv_node*> done;
  std::string path;

  std::string fail(const deriv_node& d, const std::string& why) {
    return std::string(rule_name(d.r)) + " at [" + to_string(d.concl) + "]: " + why;
  }

  std::string kids_expected(const deriv_node& d, std::size_t k) {
    if (d.kids.size() != k) return fail(d, "expected " + std::to_string(k) + " premises, got " + std::to_string(d.kids.size()));
    return "";
  }

  std::string params_expected(const deriv_node& d, std::size_t k) {
    if (d.params.size() != k) return fail(d, "expected " + std::to_string(k) + " parameters");
    return "";
  }

  std::string check(const derivation& dp) {
    if (!dp) return "null derivation node";
    if (done.count(dp.get())) return "";
    const deriv_node& d = *dp;
    const sequent& c = d.concl;
    if (!c.lhs || !c.rhs) return fail(d, "missing formula");
    if (c.n < 0) return fail(d, "negative context");
    if (auto e = check_formula(c.lhs, c.n, t.sig); !e.empty()) return fail(d, e);
    if (auto e = check_formula(c.rhs, c.n, t.sig); !e.empty()) return fail(d, e);
    for (auto& k : d.kids)
      if (auto e = check(k); !e.empty()) return e;
    if (auto e = local(d); !e.empty()) return e;
    done.insert(dp.get());
    return "";
  }

  std::string local(const deriv_node& d) {
    const sequent& c = d.concl;
    const int n = c.n;
    std::string e;
    auto same_ctx = [&](const derivation& k) { return k->concl.n == n; };
    switch (d.r) {
      case rule::identity:
        if (!(e = kids_expected(d, 0)).empty()) return e;
        if (!equal(c.lhs, c.rhs)) return fail(d, "sides differ");
        return "";
      case rule::substitution: {
        if (!(e = kids_expected(d, 1)).empty()) return e;
        auto& k = d.kids[0]->concl;
        if (static_cast<int>(d.params.size()) != k.n) return fail(d, "map length differs from premise context");
        for (int v : d.params)
          if (v < 0 || v >= n) return fail(d, "map value outside conclusion context");
        if (!equal(substitute(k.lhs, k.n, d.params, n), c.lhs)) return fail(d, "left side is not the substituted premise");
        if (!equal(substitute(k.rhs, k.n, d.params, n), c.rhs)) return fail(d, "right side is not the substituted premise");
        return "";
      }
      case rule::cut: {
        if (!(e = kids_expected(d, 2)).empty()) return e;
        auto& a = d.kids[0]->concl;
        auto& b = d.kids[1]->concl;
        if (!same_ctx(d.kids[0]) || !same_ctx(d.kids[1])) return fail(d, "context mismatch");
        if (!equal(a.lhs, c.lhs) || !equal(a.rhs, b.lhs) || !equal(b.rhs, c.rhs)) return fail(d, "premises do not chain");
        return "";
      }
      case rule::equality1: {
        if (!(e = kids_expected(d, 0)).empty()) return e;
        if (!(e = params_expected(d, 1)).empty()) return e;
        int i = d.params[0];
        if (i < 0 || i >= n) return fail(d, "index out of range");
        if (c.lhs->kind != op::top) return fail(d, "left side must be true");
        if (!equal(c.rhs, mk_eq(i, i))) return fail(d, "right side must be x_i = x_i");
        return "";
      }
      case rule::equality2: {
        if (!(e = kids_expected(d, 0)).empty()) return e;
        if (!(e = params_expected(d, 2)).empty()) return e;
        int i = d.params[0], j = d.params[1];
        if (i < 0 || i >= n || j < 0 || j >= n) return fail(d, "index out of range");
        if (c.lhs->kind != op::conj || c.lhs->kids.size() != 2) return fail(d, "left side must be a binary conjunction");
        if (!equal(c.lhs->kids[0], mk_eq(i, j))) return fail(d, "first conjunct must be x_i = x_j");
        if (!equal(substitute(c.lhs->kids[1], n, swap_map(n, i, j), n), c.rhs)) return fail(d, "right side is not the replaced formula");
        return "";
      }
      case rule::conj_top:
        if (!(e = kids_expected(d, 0)).empty()) return e;
        if (c.rhs->kind != op::top) return fail(d, "right side must be true");
        return "";
      case rule::conj_elim: {
        if (!(e = kids_expected(d, 0)).empty()) return e;
        if (!(e = params_expected(d, 1)).empty()) return e;
        int i = d.params[0];
        if (c.lhs->kind != op::conj || i < 0 || i >= static_cast<int>(c.lhs->kids.size())) return fail(d, "no such conjunct");
        if (!equal(c.lhs->kids[i], c.rhs)) return fail(d, "right side is not the selected conjunct");
        return "";
      }
      case rule::conj_rule: {
        if (c.rhs->kind != op::conj) return fail(d, "right side must be a conjunction");
        if (!(e = kids_expected(d, c.rhs->kids.size())).empty()) return e;
        for (std::size_t i = 0; i < d.kids.size(); ++i) {
          auto& k = d.kids[i]->concl;
          if (!same_ctx(d.kids[i]) || !equal(k.lhs, c.lhs) || !equal(k.rhs, c.rhs->kids[i]))
            return fail(d, "premise " + std::to_string(i + 1) + " does not match");
        }
        return "";
      }
      case rule::disj_bottom:
        if (!(e = kids_expected(d, 0)).empty()) return e;
        if (c.lhs->kind != op::bottom) return fail(d, "left side must be false");
        return "";
      case rule::disj_intro: {
        if (!(e = kids_expected(d, 0)).empty()) return e;
        if (!(e = params_expected(d, 1)).empty()) return e;
        int i = d.params[0];
        if (c.rhs->kind != op::disj || i < 0 || i >= static_cast<int>(c.rhs->kids.size())) return fail(d, "no such disjunct");
        if (!equal(c.rhs->kids[i], c.lhs)) return fail(d, "left side is not the selected disjunct");
        return "";
      }
      case rule::disj_rule: {
        if (c.lhs->kind != op::disj) return fail(d, "left side must be a disjunction");
        if (!(e = kids_expected(d, c.lhs->kids.size())).empty()) return e;
        for (std::size_t i = 0; i < d.kids.size(); ++i) {
          auto& k = d.kids[i]->concl;
          if (!same_ctx(d.kids[i]) || !equal(k.lhs, c.lhs->kids[i]) || !equal(k.rhs, c.rhs))
            return fail(d, "premise " + std::to_string(i + 1) + " does not match");
        }
        return "";
      }
      case rule::exists_down: {
        if (!(e = kids_expected(d, 1)).empty()) return e;
        auto& k = d.kids[0]->concl;
        if (k.n != n + 1) return fail(d, "premise context must be one larger");
        if (c.lhs->kind != op::exists || !equal(c.lhs->kids[0], k.lhs)) return fail(d, "left side must quantify the premise");
        if (!equal(weaken(c.rhs, n), k.rhs)) return fail(d, "premise right side is not the weakened conclusion");
        return "";
      }
      case rule::exists_up: {
        if (!(e = kids_expected(d, 1)).empty()) return e;
        auto& k = d.kids[0]->concl;
        if (n != k.n + 1) return fail(d, "conclusion context must be one larger");
        if (k.lhs->kind != op::exists || !equal(k.lhs->kids[0], c.lhs)) return fail(d, "premise left side must quantify the conclusion");
        if (!equal(weaken(k.rhs, k.n), c.rhs)) return fail(d, "right side is not the weakened premise");
        return "";
      }
      case rule::distributivity: {
        if (!(e = kids_expected(d, 0)).empty()) return e;
        if (c.lhs->kind != op::conj || c.lhs->kids.size() != 2 || c.lhs->kids[1]->kind != op::disj)
          return fail(d, "left side must be phi & (psi_1 | ...)");
        auto& phi = c.lhs->kids[0];
        auto& dis = c.lhs->kids[1];
        std::vector<formula> parts;
        for (auto& p : dis->kids) parts.push_back(mk_and({phi, p}));
        if (!equal(mk_or(parts), c.rhs)) return fail(d, "right side is not the distributed disjunction");
        return "";
      }
      case rule::frobenius: {
        if (!(e = kids_expected(d, 0)).empty()) return e;
        if (c.lhs->kind != op::conj || c.lhs->kids.size() != 2 || c.lhs->kids[1]->kind != op::exists)
          return fail(d, "left side must be phi & exists psi");
        auto& phi = c.lhs->kids[0];
        auto& psi = c.lhs->kids[1]->kids[0];
        if (!equal(mk_exists(mk_and({weaken(phi, n), psi})), c.rhs)) return fail(d, "right side is not exists(phi & psi)");
        return "";
      }
      case rule::axiom: {
        if (!(e = kids_expected(d, 0)).empty()) return e;
        if (!(e = params_expected(d, 1)).empty()) return e;
        int i = d.params[0];
        if (i < 0 || i >= static_cast<int>(t.axioms.size())) return fail(d, "no such axiom");
        auto& a = t.axioms[i];
        if (a.n != n || !equal(a.lhs, c.lhs) || !equal(a.rhs, c.rhs)) return fail(d, "conclusion is not the axiom");
        return "";
      }
    }
    return fail(d, "unknown rule");
  }
};

}  // namespace

check_result check_derivation(const theory& t, const derivation& d) {
  checker c{t, {}, {}};
  auto e = c.check(d);
  return {e.empty(), e};
}

std::size_t derivation_size(const derivation& d) {
  std::unordered_set<const deriv_node*> seen;
  std::function<void(const derivation&)> go = [&](const derivation& x) {
    if (!seen.insert(x.get()).second) return;
    for (auto& k : x->kids) go(k);
  };
  go(d);
  return seen.size();
}

int derivation_height(const derivation& d) {
  std::unordered_map<const deriv_node*, int> memo;
  std::function<int(const derivation&)> go = [&](const derivation& x) {
    auto it = memo.find(x.get());
    if (it != memo.end()) return it->second;
    int h = 0;
    for (auto& k : x->kids) h = std::max(h, go(k));
    return memo[x.get()] = h + 1;
  };
  return go(d);
}

namespace build {

derivation identity(int n, const formula& phi) { return make_node(rule::identity, {n, phi, phi}); }

derivation cut(const derivation& a, const derivation& b) {
  return make_node(rule::cut, {a->concl.n, a->concl.lhs, b->concl.rhs}, {a, b});
}

derivation subst(const derivation& d, const std::vector<int>& f, int m) {
  auto& c = d->concl;
  return make_node(rule::substitution, {m, substitute(c.lhs, c.n, f, m), substitute(c.rhs, c.n, f, m)}, {d}, f);
}

derivation eq1(int n, const formula& lhs_top, int i) { return make_node(rule::equality1, {n, lhs_top, mk_eq(i, i)}, {}, {i}); }

derivation eq2(int n, int i, int j, const formula& phi) {
  return make_node(rule::equality2, {n, mk_and({mk_eq(i, j), phi}), substitute(phi, n, swap_map(n, i, j), n)}, {}, {i, j});
}

derivation conj_top(int n, const formula& phi) { return make_node(rule::conj_top, {n, phi, mk_top()}); }

derivation conj_elim(int n, const formula& conj, int i) {
  return make_node(rule::conj_elim, {n, conj, conj->kids[i]}, {}, {i});
}

derivation conj_rule(int n, const formula& lhs, const std::vector<derivation>& kids) {
  std::vector<formula> parts;
  for (auto& k : kids) parts.push_back(k->concl.rhs);
  return make_node(rule::conj_rule, {n, lhs, mk_and(parts)}, kids);
}

derivation disj_bottom(int n, const formula& psi) { return make_node(rule::disj_bottom, {n, mk_bottom(), psi}); }

derivation disj_intro(int n, const formula& disj, int i) {
  return make_node(rule::disj_intro, {n, disj->kids[i], disj}, {}, {i});
}

derivation disj_rule(int n, const formula& rhs, const std::vector<derivation>& kids) {
  std::vector<formula> parts;
  for (auto& k : kids) parts.push_back(k->concl.lhs);
  return make_node(rule::disj_rule, {n, mk_or(parts), rhs}, kids);
}

derivation exists_down(const derivation& d, const formula& psi) {
  auto& c = d->concl;
  return make_node(rule::exists_down, {c.n - 1, mk_exists(c.lhs), psi}, {d});
}

derivation exists_up(const derivation& d) {
  auto& c = d->concl;
  return make_node(rule::exists_up, {c.n + 1, c.lhs->kids[0], weaken(c.rhs, c.n)}, {d});
}

derivation distributivity(int n, const formula& phi, const formula& disj) {
  std::vector<formula> parts;
  for (auto& p : disj->kids) parts.push_back(mk_and({phi, p}));
  return make_node(rule::distributivity, {n, mk_and({phi, disj}), mk_or(parts)});
}

derivation frobenius(int n, const formula& phi, const formula& ex) {
  return make_node(rule::frobenius, {n, mk_and({phi, ex}), mk_exists(mk_and({weaken(phi, n), ex->kids[0]}))});
}

derivation axiom(const theory& t, int i) { return make_node(rule::axiom, t.axioms[i], {}, {i}); }

}  // namespace build

const char* verdict_name(verdict_kind k) {
  switch (k) {
    case verdict_kind::proved: return "proved";
    case verdict_kind::refuted: return "refuted";
    case verdict_kind::unknown: return "unknown";
  }
  return "?";
}

}  // namespace coh
