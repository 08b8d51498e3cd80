#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "coh/calculus.hpp"

namespace coh {

namespace {

using fset = std::unordered_set<formula, formula_hash, formula_eq>;

// conjunctive query from the lhs of an axiom; variables 0..k-1 are the axiom
// context, the rest come from existentials
struct query {
  std::vector<std::pair<std::string, std::vector<int>>> atoms;
  std::vector<std::pair<int, int>> eqs;
};

struct trigger_rule {
  int axiom = 0;
  int k = 0;
  int nvars = 0;
  std::vector<query> parts;
  formula head;
  bool horn = false;
  bool existential = false;
  std::set<std::string> head_rels;
};

std::vector<query> dnf(const formula& f, const std::vector<int>& ctx, int& counter) {
  switch (f->kind) {
    case op::top:
      return {query{}};
    case op::bottom:
      return {};
    case op::atom: {
      query q;
      std::vector<int> a;
      for (int v : f->args) a.push_back(ctx[v]);
      q.atoms.push_back({f->rel, a});
      return {q};
    }
    case op::eq: {
      query q;
      q.eqs.push_back({ctx[f->args[0]], ctx[f->args[1]]});
      return {q};
    }
    case op::conj: {
      std::vector<query> acc{query{}};
      for (auto& k : f->kids) {
        auto sub = dnf(k, ctx, counter);
        std::vector<query> next;
        for (auto& a : acc)
          for (auto& b : sub) {
            query q = a;
            q.atoms.insert(q.atoms.end(), b.atoms.begin(), b.atoms.end());
            q.eqs.insert(q.eqs.end(), b.eqs.begin(), b.eqs.end());
            next.push_back(std::move(q));
          }
        acc = std::move(next);
        if (acc.size() > 4096) throw std::runtime_error("axiom premise too large to match");
      }
      return acc;
    }
    case op::disj: {
      std::vector<query> acc;
      for (auto& k : f->kids) {
        auto sub = dnf(k, ctx, counter);
        acc.insert(acc.end(), sub.begin(), sub.end());
      }
      return acc;
    }
    case op::exists: {
      auto c2 = ctx;
      c2.push_back(counter++);
      return dnf(f->kids[0], c2, counter);
    }
  }
  return {};
}

struct key_hash {
  std::size_t operator()(const std::pair<std::string, std::vector<int>>& k) const {
    std::size_t h = std::hash<std::string>{}(k.first);
    for (int v : k.second) h = h * 1000003u + static_cast<std::size_t>(v) + 7;
    return h;
  }
};
using key_set = std::unordered_set<std::pair<std::string, std::vector<int>>, key_hash>;

struct state {
  int n = 0;
  std::vector<formula> facts;
  key_set fact_keys;
  std::vector<formula> pending;
  formula goal;
  std::vector<char> live;
  std::vector<int> orig;
  int branching = 0;

  int live_count() const { return static_cast<int>(std::count(live.begin(), live.end(), 1)); }
  std::vector<formula> conjuncts() const {
    std::vector<formula> c = facts;
    c.insert(c.end(), pending.begin(), pending.end());
    return c;
  }
  bool add_fact(const formula& a) {
    if (!fact_keys.insert({a->rel, a->args}).second) return false;
    facts.push_back(a);
    return true;
  }
};

// projections out of a (nested) conjunction L
struct view {
  int n;
  formula L;
  std::unordered_map<formula, std::vector<int>, formula_hash, formula_eq> path;

  view(int n_, formula l) : n(n_), L(std::move(l)) {
    std::vector<int> p;
    walk(L, p);
  }
  void walk(const formula& f, std::vector<int>& p) {
    if (path.count(f)) return;
    path.emplace(f, p);
    if (f->kind != op::conj) return;
    for (std::size_t i = 0; i < f->kids.size(); ++i) {
      p.push_back(static_cast<int>(i));
      walk(f->kids[i], p);
      p.pop_back();
    }
  }

  derivation get(const formula& c) const {
    auto it = path.find(c);
    if (it != path.end()) {
      if (it->second.empty()) return build::identity(n, L);
      derivation d;
      formula cur = L;
      for (int i : it->second) {
        auto e = build::conj_elim(n, cur, i);
        d = d ? build::cut(d, e) : e;
        cur = cur->kids[i];
      }
      return d;
    }
    if (c->kind == op::top) return build::conj_top(n, L);
    if (c->kind == op::conj) {
      std::vector<derivation> ks;
      for (auto& k : c->kids) {
        auto d = get(k);
        if (!d) return nullptr;
        ks.push_back(d);
      }
      return build::conj_rule(n, L, ks);
    }
    return nullptr;
  }

  derivation need(const formula& c) const {
    auto d = get(c);
    if (!d) throw std::logic_error("prover: conjunct not found: " + to_string(c, n));
    return d;
  }
};

struct outcome {
  verdict_kind kind = verdict_kind::unknown;
  derivation d;
  std::optional<countermodel> cm;
  std::string note;
};

struct prover {
  const theory& t;
  const budget& b;
  std::vector<trigger_rule> rules;
  std::set<std::string> goal_rels;
  long steps = 0;

  prover(const theory& th, const budget& bu, const sequent& s) : t(th), b(bu) {
    for (std::size_t i = 0; i < t.axioms.size(); ++i) {
      auto& a = t.axioms[i];
      trigger_rule r;
      r.axiom = static_cast<int>(i);
      r.k = a.n;
      int counter = a.n;
      r.parts = dnf(a.lhs, identity_map(a.n), counter);
      r.nvars = counter;
      r.head = a.rhs;
      auto nh = normalize(a.rhs);
      r.horn = !has_disj(nh) && !has_exists(nh);
      r.existential = has_exists(nh);
      std::vector<std::string> rs;
      relations_of(a.rhs, rs);
      r.head_rels.insert(rs.begin(), rs.end());
      rules.push_back(std::move(r));
    }
    std::vector<std::string> rs;
    relations_of(s.rhs, rs);
    goal_rels.insert(rs.begin(), rs.end());
  }

  // truth in the fact model, variables as elements
  bool holds(const state& s, const formula& f, std::vector<int>& a) const {
    switch (f->kind) {
      case op::top: return true;
      case op::bottom: return false;
      case op::atom: {
        std::vector<int> args;
        for (int v : f->args) args.push_back(a[v]);
        return s.fact_keys.count({f->rel, args}) > 0;
      }
      case op::eq: return a[f->args[0]] == a[f->args[1]];
      case op::conj:
        for (auto& k : f->kids)
          if (!holds(s, k, a)) return false;
        return true;
      case op::disj:
        for (auto& k : f->kids)
          if (holds(s, k, a)) return true;
        return false;
      case op::exists:
        for (int v = 0; v < s.n; ++v) {
          if (!s.live[v]) continue;
          a.push_back(v);
          bool r = holds(s, f->kids[0], a);
          a.pop_back();
          if (r) return true;
        }
        return false;
    }
    return false;
  }

  bool holds_here(const state& s, const formula& f) const {
    auto a = identity_map(s.n);
    return holds(s, f, a);
  }

  // L |- chi for chi true in the fact model (context n, no substitution)
  derivation close(const state& s, const view& v, const formula& chi) const {
    const int n = s.n;
    switch (chi->kind) {
      case op::top: return v.need(chi);
      case op::atom: return v.need(chi);
      case op::eq: {
        if (chi->args[0] != chi->args[1]) throw std::logic_error("prover: closing a false equation");
        return build::cut(build::conj_top(n, v.L), build::eq1(n, mk_top(), chi->args[0]));
      }
      case op::conj: {
        std::vector<derivation> ks;
        for (auto& k : chi->kids) ks.push_back(close(s, v, k));
        return build::conj_rule(n, v.L, ks);
      }
      case op::disj:
        for (std::size_t i = 0; i < chi->kids.size(); ++i)
          if (holds_here(s, chi->kids[i]))
            return build::cut(close(s, v, chi->kids[i]), build::disj_intro(n, chi, static_cast<int>(i)));
        throw std::logic_error("prover: closing a false disjunction");
      case op::exists: {
        auto a = identity_map(s.n);
        for (int w = 0; w < s.n; ++w) {
          if (!s.live[w]) continue;
          a.push_back(w);
          bool ok = holds(s, chi->kids[0], a);
          a.pop_back();
          if (!ok) continue;
          auto m = identity_map(n);
          m.push_back(w);
          auto inst = substitute(chi->kids[0], n + 1, m, n);
          auto up = build::exists_up(build::identity(n, chi));
          return build::cut(close(s, v, inst), build::subst(up, m, n));
        }
        throw std::logic_error("prover: closing a false existential");
      }
      case op::bottom: break;
    }
    throw std::logic_error("prover: closing false");
  }

  struct trig {
    int rule;
    std::vector<int> sigma;
  };

  void match_part(const state& s, const trigger_rule& r, const query& q, std::size_t at, std::vector<int>& bind,
                  std::unordered_map<std::string, std::vector<const formula*>>& by_rel, std::set<std::vector<int>>& out) const {
    if (at < q.atoms.size()) {
      auto& [rel, args] = q.atoms[at];
      auto it = by_rel.find(rel);
      if (it == by_rel.end()) return;
      for (const formula* f : it->second) {
        auto& fa = (*f)->args;
        std::vector<int> changed;
        bool ok = true;
        for (std::size_t i = 0; i < args.size() && ok; ++i) {
          int& slot = bind[args[i]];
          if (slot < 0) {
            slot = fa[i];
            changed.push_back(args[i]);
          } else if (slot != fa[i]) {
            ok = false;
          }
        }
        if (ok) match_part(s, r, q, at + 1, bind, by_rel, out);
        for (int c : changed) bind[c] = -1;
      }
      return;
    }
    // equalities, then free context variables
    std::vector<int> saved = bind;
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto [x, y] : q.eqs) {
        if (bind[x] >= 0 && bind[y] >= 0) {
          if (bind[x] != bind[y]) {
            bind = saved;
            return;
          }
        } else if (bind[x] >= 0) {
          bind[y] = bind[x];
          changed = true;
        } else if (bind[y] >= 0) {
          bind[x] = bind[y];
          changed = true;
        }
      }
    }
    for (auto [x, y] : q.eqs) {
      if (bind[x] < 0) {
        for (int v = 0; v < s.n; ++v) {
          if (!s.live[v]) continue;
          bind[x] = v;
          match_part(s, r, q, at, bind, by_rel, out);
        }
        bind = saved;
        return;
      }
    }
    for (int i = 0; i < r.k; ++i) {
      if (bind[i] < 0) {
        for (int v = 0; v < s.n; ++v) {
          if (!s.live[v]) continue;
          bind[i] = v;
          match_part(s, r, q, at, bind, by_rel, out);
        }
        bind = saved;
        return;
      }
    }
    out.insert(std::vector<int>(bind.begin(), bind.begin() + r.k));
    bind = saved;
  }

  std::vector<trig> triggers(const state& s) const {
    std::unordered_map<std::string, std::vector<const formula*>> by_rel;
    for (auto& f : s.facts) by_rel[f->rel].push_back(&f);
    std::vector<trig> out;
    for (std::size_t ri = 0; ri < rules.size(); ++ri) {
      auto& r = rules[ri];
      std::set<std::vector<int>> sigmas;
      for (auto& q : r.parts) {
        std::vector<int> bind(r.nvars, -1);
        match_part(s, r, q, 0, bind, by_rel, sigmas);
      }
      for (auto& sg : sigmas) {
        auto a = sg;
        if (holds(s, r.head, a)) continue;
        out.push_back({static_cast<int>(ri), sg});
      }
    }
    return out;
  }

  int category(const trigger_rule& r) const {
    if (r.horn) return 0;
    for (auto& x : r.head_rels)
      if (goal_rels.count(x)) return 1;
    return r.existential ? 3 : 2;
  }

  // L |- instance of the axiom head
  derivation fire(const state& s, const view& v, const trig& tg) const {
    auto& r = rules[tg.rule];
    auto& ax = t.axioms[r.axiom];
    auto body = substitute(ax.lhs, ax.n, tg.sigma, s.n);
    auto ad = build::subst(build::axiom(t, r.axiom), tg.sigma, s.n);
    return build::cut(close(s, v, body), ad);
  }

  // L |- conj_of(conjuncts ++ extra) given derivations of each extra
  derivation extend(const state& s, const view& v, const std::vector<derivation>& extra) const {
    auto cs = s.conjuncts();
    if (cs.empty() && extra.size() == 1) return extra[0];
    std::vector<derivation> ks;
    for (auto& c : cs) ks.push_back(v.need(c));
    ks.insert(ks.end(), extra.begin(), extra.end());
    return build::conj_rule(s.n, v.L, ks);
  }

  countermodel model_of(const state& s) const {
    std::vector<int> idx(s.n, -1);
    int k = 0;
    for (int v = 0; v < s.n; ++v)
      if (s.live[v]) idx[v] = k++;
    countermodel cm{finite_model::empty_for(t.sig, k), {}};
    for (auto& f : s.facts) {
      std::vector<int> a;
      for (int x : f->args) a.push_back(idx[x]);
      cm.model.set(f->rel, a);
    }
    for (int o : s.orig) cm.assignment.push_back(idx[o]);
    return cm;
  }

  static derivation fold(const std::vector<derivation>& chain, derivation last) {
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) last = build::cut(*it, last);
    return last;
  }

  outcome solve(state s) {
    std::vector<derivation> chain;
    auto done = [&](outcome o) {
      if (o.kind == verdict_kind::proved) o.d = fold(chain, o.d);
      return o;
    };
    bool incomplete = false;
    while (true) {
      if (++steps > b.max_steps) return {verdict_kind::unknown, nullptr, std::nullopt, "step budget exhausted"};
      formula L = conj_of(s.conjuncts());

      if (!s.pending.empty()) {
        // cheap rewrites first, in one bridge
        bool simple = false;
        for (auto& p : s.pending) {
          auto k = p->kind;
          if (k == op::top || k == op::atom || k == op::conj || (k == op::eq && p->args[0] == p->args[1])) simple = true;
          if (k == op::bottom) {
            view v(s.n, L);
            return done({verdict_kind::proved, build::cut(v.need(p), build::disj_bottom(s.n, s.goal)), {}, ""});
          }
        }
        if (simple) {
          std::vector<formula> rest;
          std::vector<formula> work = s.pending;
          while (!work.empty()) {
            auto p = work.front();
            work.erase(work.begin());
            switch (p->kind) {
              case op::top: break;
              case op::atom: s.add_fact(p); break;
              case op::conj: work.insert(work.begin(), p->kids.begin(), p->kids.end()); break;
              case op::eq:
                if (p->args[0] != p->args[1]) rest.push_back(p);
                break;
              default: rest.push_back(p);
            }
          }
          fset seen;
          std::vector<formula> dedup;
          for (auto& p : rest)
            if (seen.insert(p).second) dedup.push_back(p);
          s.pending = dedup;
          view v(s.n, L);
          chain.push_back(v.need(conj_of(s.conjuncts())));
          continue;
        }
        int pick = -1;
        for (op want : {op::eq, op::exists, op::disj}) {
          for (std::size_t i = 0; i < s.pending.size() && pick < 0; ++i)
            if (s.pending[i]->kind == want) pick = static_cast<int>(i);
          if (pick >= 0) break;
        }
        auto p = s.pending[pick];
        outcome o;
        if (p->kind == op::eq) o = merge(s, L, pick);
        else if (p->kind == op::exists) o = open_exists(s, L, pick);
        else o = split(s, L, pick);
        return done(std::move(o));
      }

      if (holds_here(s, s.goal)) {
        view v(s.n, L);
        return done({verdict_kind::proved, close(s, v, s.goal), {}, ""});
      }

      auto ts = triggers(s);
      std::vector<trig> horn;
      std::vector<trig> other;
      for (auto& tg : ts) (rules[tg.rule].horn ? horn : other).push_back(tg);
      if (!horn.empty()) {
        view v(s.n, L);
        std::vector<derivation> extra;
        state before = s;
        for (auto& tg : horn) {
          auto a = tg.sigma;
          if (holds(s, rules[tg.rule].head, a)) continue;
          extra.push_back(fire(before, v, tg));
          auto inst = substitute(t.axioms[rules[tg.rule].axiom].rhs, rules[tg.rule].k, tg.sigma, s.n);
          s.pending.push_back(inst);
          if (inst->kind == op::atom) s.fact_keys.insert({inst->rel, inst->args});
        }
        // pending atoms were pre-registered only for the activity test
        for (auto& p : s.pending)
          if (p->kind == op::atom) s.fact_keys.erase({p->rel, p->args});
        for (auto& f : s.facts) s.fact_keys.insert({f->rel, f->args});
        chain.push_back(extend(before, v, extra));
        continue;
      }
      if (other.empty()) {
        if (incomplete) return {verdict_kind::unknown, nullptr, std::nullopt, "branch saturated only up to the budget"};
        return {verdict_kind::refuted, nullptr, model_of(s), ""};
      }
      std::sort(other.begin(), other.end(), [&](const trig& x, const trig& y) {
        int cx = category(rules[x.rule]), cy = category(rules[y.rule]);
        if (cx != cy) return cx < cy;
        int mx = x.sigma.empty() ? -1 : *std::max_element(x.sigma.begin(), x.sigma.end());
        int my = y.sigma.empty() ? -1 : *std::max_element(y.sigma.begin(), y.sigma.end());
        if (mx != my) return mx < my;
        if (x.rule != y.rule) return x.rule < y.rule;
        return x.sigma < y.sigma;
      });
      const trig* chosen = nullptr;
      for (auto& tg : other) {
        auto& r = rules[tg.rule];
        if (s.branching + 1 > b.depth) {
          incomplete = true;
          continue;
        }
        if (r.existential && s.live_count() >= b.size) {
          incomplete = true;
          continue;
        }
        chosen = &tg;
        break;
      }
      if (!chosen) return {verdict_kind::unknown, nullptr, std::nullopt, "branching budget exhausted"};
      view v(s.n, L);
      auto d = fire(s, v, *chosen);
      auto& r = rules[chosen->rule];
      auto inst = substitute(t.axioms[r.axiom].rhs, r.k, chosen->sigma, s.n);
      chain.push_back(extend(s, v, {d}));
      s.pending.push_back(inst);
      s.branching++;
    }
  }

  // rest of the conjunction without position pick
  static std::vector<formula> without(const state& s, int pick) {
    auto cs = s.conjuncts();
    cs.erase(cs.begin() + static_cast<long>(s.facts.size()) + pick);
    return cs;
  }

  static derivation symmetric(int n, int a, int b) {
    const int z = n;
    auto e = build::eq2(n + 1, a, b, mk_eq(a, z));
    auto m = identity_map(n);
    m.push_back(a);
    auto sb = build::subst(e, m, n);
    auto eab = mk_eq(a, b);
    auto pre = build::conj_rule(n, eab, {build::identity(n, eab), build::cut(build::conj_top(n, eab), build::eq1(n, mk_top(), a))});
    return build::cut(pre, sb);
  }

  // And[x_a = x_b, goal[a:=b]] |- goal
  static derivation unmerge(int n, int a, int b, const formula& goal, const formula& merged) {
    const int z = n;
    auto mr = identity_map(n);
    mr[a] = b;
    mr[b] = z;
    auto rho = substitute(goal, n, mr, n + 1);
    auto e = build::eq2(n + 1, b, a, rho);
    auto m = identity_map(n);
    m.push_back(b);
    auto sb = build::subst(e, m, n);
    auto lhs = mk_and({mk_eq(a, b), merged});
    auto pre = build::conj_rule(
        n, lhs, {build::cut(build::conj_elim(n, lhs, 0), symmetric(n, a, b)), build::conj_elim(n, lhs, 1)});
    return build::cut(pre, sb);
  }

  outcome merge(const state& s, const formula& L, int pick) {
    const int n = s.n;
    auto eqf = s.pending[pick];
    int a = eqf->args[0], bv = eqf->args[1];
    auto rest = without(s, pick);
    auto R = conj_of(rest);
    view v(n, L);
    auto b1 = build::conj_rule(n, L, {v.need(eqf), v.need(R)});
    auto e2 = build::eq2(n, a, bv, R);
    auto m = identity_map(n);
    m[a] = bv;

    state s2;
    s2.n = n;
    for (auto& f : s.facts) s2.add_fact(substitute(f, n, m, n));
    fset seen;
    for (auto& f : s2.facts) seen.insert(f);
    for (int i = 0; i < static_cast<int>(s.pending.size()); ++i) {
      if (i == pick) continue;
      auto g = substitute(s.pending[i], n, m, n);
      if (seen.insert(g).second) s2.pending.push_back(g);
    }
    s2.goal = substitute(s.goal, n, m, n);
    s2.live = s.live;
    s2.live[a] = 0;
    s2.orig = s.orig;
    for (int& o : s2.orig)
      if (o == a) o = bv;
    s2.branching = s.branching;

    auto Rm = substitute(R, n, m, n);
    view v2(n, Rm);
    auto b2 = v2.need(conj_of(s2.conjuncts()));
    auto sub = solve(s2);
    if (sub.kind != verdict_kind::proved) return sub;
    auto d1 = build::cut(build::cut(b1, e2), build::cut(b2, sub.d));
    auto d2 = build::conj_rule(n, L, {v.need(eqf), d1});
    return {verdict_kind::proved, build::cut(d2, unmerge(n, a, bv, s.goal, s2.goal)), {}, ""};
  }

  outcome open_exists(const state& s, const formula& L, int pick) {
    const int n = s.n;
    auto ex = s.pending[pick];
    auto psi = ex->kids[0];
    auto rest = without(s, pick);
    state c;
    c.n = n + 1;
    for (auto& f : s.facts) c.add_fact(f);
    for (int i = 0; i < static_cast<int>(s.pending.size()); ++i)
      if (i != pick) c.pending.push_back(weaken(s.pending[i], n));
    c.pending.push_back(psi);
    c.goal = weaken(s.goal, n);
    c.live = s.live;
    c.live.push_back(1);
    c.orig = s.orig;
    c.branching = s.branching;
    if (rest.empty()) {
      auto sub = solve(c);
      if (sub.kind != verdict_kind::proved) return sub;
      return {verdict_kind::proved, build::exists_down(sub.d, s.goal), {}, ""};
    }
    auto R = conj_of(rest);
    view v(n, L);
    auto b1 = build::conj_rule(n, L, {v.need(R), v.need(ex)});
    auto fr = build::frobenius(n, R, ex);
    auto inner_l = fr->concl.rhs->kids[0];
    view v2(n + 1, inner_l);
    auto b2 = v2.need(conj_of(c.conjuncts()));
    auto sub = solve(c);
    if (sub.kind != verdict_kind::proved) return sub;
    auto ed = build::exists_down(build::cut(b2, sub.d), s.goal);
    return {verdict_kind::proved, build::cut(build::cut(b1, fr), ed), {}, ""};
  }

  outcome split(const state& s, const formula& L, int pick) {
    const int n = s.n;
    auto dis = s.pending[pick];
    auto rest = without(s, pick);
    std::vector<derivation> kids;
    std::optional<outcome> pending_unknown;
    derivation pre;
    formula R;
    if (!rest.empty()) {
      R = conj_of(rest);
      view v(n, L);
      auto b1 = build::conj_rule(n, L, {v.need(R), v.need(dis)});
      pre = build::cut(b1, build::distributivity(n, R, dis));
    }
    for (auto& part : dis->kids) {
      state c = s;
      c.pending.erase(c.pending.begin() + pick);
      c.pending.push_back(part);
      auto cl = conj_of(c.conjuncts());
      auto sub = solve(c);
      if (sub.kind == verdict_kind::refuted) return sub;
      if (sub.kind == verdict_kind::unknown) {
        if (!pending_unknown) pending_unknown = sub;
        continue;
      }
      if (rest.empty()) {
        kids.push_back(sub.d);
      } else {
        auto br = mk_and({R, part});
        view v2(n, br);
        kids.push_back(build::cut(v2.need(cl), sub.d));
      }
    }
    if (pending_unknown) return *pending_unknown;
    auto dr = build::disj_rule(n, s.goal, kids);
    return {verdict_kind::proved, pre ? build::cut(pre, dr) : dr, {}, ""};
  }
};

}  // namespace

bool verify_countermodel(const theory& t, const sequent& s, const countermodel& cm) {
  if (static_cast<int>(cm.assignment.size()) != s.n) return false;
  if (!is_model(cm.model, t)) return false;
  return eval(cm.model, s.lhs, cm.assignment) && !eval(cm.model, s.rhs, cm.assignment);
}

verdict chase(const theory& t, const sequent& s, const budget& b) {
  if (auto e = check_formula(s.lhs, s.n, t.sig); !e.empty()) throw std::invalid_argument(e);
  if (auto e = check_formula(s.rhs, s.n, t.sig); !e.empty()) throw std::invalid_argument(e);
  prover p(t, b, s);
  state st;
  st.n = s.n;
  st.pending = {s.lhs};
  st.goal = s.rhs;
  st.live.assign(s.n, 1);
  st.orig = identity_map(s.n);
  auto o = p.solve(st);
  verdict v;
  v.kind = o.kind;
  v.proof = o.d;
  v.cm = o.cm;
  v.note = o.note;
  v.steps = p.steps;
  if (v.kind == verdict_kind::refuted && !verify_countermodel(t, s, *v.cm)) {
    v.kind = verdict_kind::unknown;
    v.cm.reset();
    v.note = "saturated branch failed verification";
  }
  return v;
}

std::optional<derivation> prove(const theory& t, const sequent& s, const budget& b) {
  auto v = chase(t, s, b);
  if (v.kind == verdict_kind::proved) return v.proof;
  return std::nullopt;
}

cm_search find_countermodel(const theory& t, const sequent& s, int max_size, const enum_options& opt) {
  cm_search r;
  for (int size = 0; size <= max_size; ++size) {
    if (valuation_bits(t.sig, size) > opt.max_bits) {
      r.complete = false;
      break;
    }
    auto models = enumerate_models(t, size, opt);
    for (auto& m : models) {
      if (m.size != size) continue;
      for (auto& a : all_tuples(size, s.n)) {
        if (eval(m, s.lhs, a) && !eval(m, s.rhs, a)) {
          r.found = countermodel{m, a};
          r.searched_up_to = size;
          return r;
        }
      }
    }
    r.searched_up_to = size;
  }
  return r;
}

verdict entails(const theory& t, const sequent& s, const entail_options& o) {
  auto v = chase(t, s, o.b);
  if (v.kind != verdict_kind::unknown) return v;
  auto c = find_countermodel(t, s, o.model_size, o.guard);
  if (c.found) {
    v.kind = verdict_kind::refuted;
    v.cm = c.found;
    v.note = "countermodel from enumeration";
    return v;
  }
  v.note += c.complete ? "; no countermodel up to size " + std::to_string(o.model_size)
                       : "; enumeration stopped at size " + std::to_string(c.searched_up_to);
  return v;
}

equivalence equivalent(const theory& t, int n, const formula& phi, const formula& psi, const entail_options& o) {
  equivalence e;
  e.forward = entails(t, {n, phi, psi}, o);
  e.backward = entails(t, {n, psi, phi}, o);
  if (e.forward.kind == verdict_kind::proved && e.backward.kind == verdict_kind::proved) e.kind = equiv_kind::equivalent;
  else if (e.forward.kind == verdict_kind::refuted || e.backward.kind == verdict_kind::refuted) e.kind = equiv_kind::inequivalent;
  return e;
}

}  // namespace coh
