#include "coh/interpretation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace coh {

namespace {

formula block_subst(const formula& f, int ctx, const std::vector<int>& map, int m) { return substitute(f, ctx, map, m); }

std::vector<int> block_map(const std::vector<int>& args, int k) {
  std::vector<int> mp;
  for (int a : args)
    for (int b = 0; b < k; ++b) mp.push_back(a * k + b);
  return mp;
}

formula exists_n(formula f, int count) {
  for (int i = 0; i < count; ++i) f = mk_exists(f);
  return f;
}

std::vector<int> decode(int code, int size, int k) {
  std::vector<int> a(k);
  for (int i = k - 1; i >= 0; --i) {
    a[i] = code % size;
    code /= size;
  }
  return a;
}

std::string tuple_str(const std::vector<int>& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

}  // namespace

bool interpretation::strong() const { return k == 1 && equal(normalize(eq), mk_eq(0, 1)); }

std::string check_shape(const interpretation& g) {
  if (g.k < 1) return "k must be at least 1";
  if (!g.eq) return "no formula for equality";
  if (auto e = check_formula(g.eq, 2 * g.k, g.target.sig); !e.empty()) return "equality: " + e;
  for (auto& [r, a] : g.source.sig.rels) {
    auto it = g.rel.find(r);
    if (it == g.rel.end()) return "no formula for " + r;
    if (auto e = check_formula(it->second, a * g.k, g.target.sig); !e.empty()) return r + ": " + e;
  }
  for (auto& [r, f] : g.rel)
    if (!g.source.sig.rels.count(r)) return r + " is not a source symbol";
  return "";
}

interpretation identity_interpretation(const theory& t) {
  interpretation g;
  g.name = "id_" + t.name;
  g.source = g.target = t;
  g.k = 1;
  for (auto& [r, a] : t.sig.rels) g.rel[r] = mk_atom(r, identity_map(a));
  g.eq = mk_eq(0, 1);
  return g;
}

interpretation parse_interpretation(const std::string& text, const theory& source, const theory& target) {
  interpretation g;
  g.source = source;
  g.target = target;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header = false;
  auto context = [&](std::string& rest, int want) {
    auto l = rest.find('['), r = rest.find(']');
    if (l == std::string::npos || r == std::string::npos || r < l) throw syntax_error("expected a [..] context", lineno, 1);
    std::vector<std::string> names;
    std::string cur;
    for (char c : rest.substr(l + 1, r - l - 1)) {
      if (c == ',' || c == ' ') {
        if (!cur.empty()) names.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) names.push_back(cur);
    if (static_cast<int>(names.size()) != want)
      throw syntax_error("context has " + std::to_string(names.size()) + " variables, expected " + std::to_string(want), lineno,
                         static_cast<int>(l) + 1);
    rest = rest.substr(r + 1);
    return names;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "interpretation") {
      std::string nm, kk;
      ls >> nm >> kk;
      g.name = nm;
      if (kk.rfind("k=", 0) != 0) throw syntax_error("expected k=<arity>", lineno, 1);
      try {
        g.k = std::stoi(kk.substr(2));
      } catch (...) {
        throw syntax_error("bad arity", lineno, 1);
      }
      if (g.k < 1) throw syntax_error("k must be at least 1", lineno, 1);
      header = true;
    } else if (kw == "eq") {
      if (!header) throw syntax_error("missing interpretation header", lineno, 1);
      std::string rest;
      std::getline(ls, rest);
      auto names = context(rest, 2 * g.k);
      try {
        g.eq = parse_formula(rest, names, target.sig);
      } catch (const syntax_error& e) {
        throw syntax_error(e.what(), lineno, e.col);
      }
    } else if (kw == "rel") {
      if (!header) throw syntax_error("missing interpretation header", lineno, 1);
      std::string r, rest;
      ls >> r;
      std::getline(ls, rest);
      int a = source.sig.arity(r);
      if (a < 0) throw syntax_error("unknown source symbol " + r, lineno, 1);
      auto names = context(rest, a * g.k);
      try {
        g.rel[r] = parse_formula(rest, names, target.sig);
      } catch (const syntax_error& e) {
        throw syntax_error(e.what(), lineno, e.col);
      }
    } else {
      throw syntax_error("unexpected '" + kw + "'", lineno, 1);
    }
  }
  if (!header) throw syntax_error("missing interpretation header", lineno, 1);
  if (auto e = check_shape(g); !e.empty()) throw interp_error(e);
  return g;
}

std::string to_string(const interpretation& g) {
  std::ostringstream os;
  auto ctx = [](int n) {
    std::string s = "[";
    for (int i = 0; i < n; ++i) s += (i ? "," : "") + var_name(i);
    return s + "]";
  };
  os << "interpretation " << g.name << " k=" << g.k << "\n";
  os << "eq " << ctx(2 * g.k) << ' ' << to_string(g.eq, 2 * g.k) << "\n";
  for (auto& [r, f] : g.rel) {
    int a = g.source.sig.arity(r);
    os << "rel " << r << ' ' << ctx(a * g.k) << ' ' << to_string(f, a * g.k) << "\n";
  }
  return os.str();
}

formula apply(const interpretation& g, const formula& phi, int n) {
  const int k = g.k;
  switch (phi->kind) {
    case op::top:
    case op::bottom:
      return phi;
    case op::atom: {
      auto it = g.rel.find(phi->rel);
      if (it == g.rel.end()) throw interp_error("no formula for " + phi->rel);
      int r = static_cast<int>(phi->args.size());
      return block_subst(it->second, r * k, block_map(phi->args, k), n * k);
    }
    case op::eq:
      return block_subst(g.eq, 2 * k, block_map(phi->args, k), n * k);
    case op::conj:
    case op::disj: {
      std::vector<formula> ks;
      for (auto& c : phi->kids) ks.push_back(apply(g, c, n));
      return phi->kind == op::conj ? mk_and(ks) : mk_or(ks);
    }
    case op::exists: {
      auto body = apply(g, phi->kids[0], n + 1);
      return exists_n(mk_and({domain_formula(g, n + 1, n), body}), k);
    }
  }
  return phi;
}

formula pad_context(const formula& phi, int n) {
  if (n == 0) return phi;
  std::vector<formula> ks{phi};
  for (int i = 0; i < n; ++i) ks.push_back(mk_eq(i, i));
  return mk_and(ks);
}

formula domain_formula(const interpretation& g, int n, int i) {
  return block_subst(g.eq, 2 * g.k, block_map({i, i}, g.k), n * g.k);
}

formula domain_formula(const interpretation& g, int n) {
  std::vector<formula> ks;
  for (int i = 0; i < n; ++i) ks.push_back(domain_formula(g, n, i));
  return conj_of(ks);
}

interpretation compose(const interpretation& d, const interpretation& g) {
  if (d.source.name != g.target.name || d.source.sig.rels != g.target.sig.rels)
    throw interp_error("endpoint mismatch: " + g.name + " lands in " + g.target.name + ", " + d.name + " starts at " +
                       d.source.name);
  interpretation c;
  c.name = d.name + "." + g.name;
  c.source = g.source;
  c.target = d.target;
  c.k = g.k * d.k;
  for (auto& [r, f] : g.rel) c.rel[r] = apply(d, f, g.source.sig.arity(r) * g.k);
  c.eq = apply(d, g.eq, 2 * g.k);
  return c;
}

int tuple_code(const std::vector<int>& a, int size) {
  int c = 0;
  for (int x : a) c = c * size + x;
  return c;
}

quotient_model gamma_star(const interpretation& g, const finite_model& m) {
  const int k = g.k;
  int total = 1;
  for (int i = 0; i < k; ++i) total *= m.size;
  if (m.size == 0) total = 0;
  auto rel2 = [&](int a, int b) {
    auto x = decode(a, m.size, k), y = decode(b, m.size, k);
    x.insert(x.end(), y.begin(), y.end());
    return eval(m, g.eq, x);
  };
  std::vector<int> dom;
  for (int c = 0; c < total; ++c)
    if (rel2(c, c)) dom.push_back(c);
  std::vector<char> rt(static_cast<std::size_t>(total) * total, 0);
  for (int a : dom)
    for (int b : dom) rt[static_cast<std::size_t>(a) * total + b] = rel2(a, b);
  auto r = [&](int a, int b) { return rt[static_cast<std::size_t>(a) * total + b] != 0; };
  for (int a : dom)
    for (int b : dom)
      if (r(a, b) && !r(b, a))
        throw interp_error("Gamma(x = y) is not symmetric on A: " + tuple_str(decode(a, m.size, k)) + " ~ " +
                           tuple_str(decode(b, m.size, k)));
  for (int a : dom)
    for (int b : dom)
      if (r(a, b))
        for (int c : dom)
          if (r(b, c) && !r(a, c))
            throw interp_error("Gamma(x = y) is not transitive on A: " + tuple_str(decode(a, m.size, k)) + " ~ " +
                               tuple_str(decode(b, m.size, k)) + " ~ " + tuple_str(decode(c, m.size, k)));
  quotient_model q;
  q.class_of.assign(total, -1);
  std::vector<std::vector<int>> members;
  for (int a : dom) {
    if (q.class_of[a] >= 0) continue;
    int id = static_cast<int>(members.size());
    members.push_back({});
    for (int b : dom)
      if (r(a, b)) {
        q.class_of[b] = id;
        members.back().push_back(b);
      }
    q.reps.push_back(decode(a, m.size, k));
  }
  const int nc = static_cast<int>(members.size());
  q.model = finite_model::empty_for(g.source.sig, nc);
  for (auto& [rn, ar] : g.source.sig.rels) {
    auto& f = g.rel.at(rn);
    for (auto& ct : all_tuples(nc, ar)) {
      // every choice of representatives must agree
      std::optional<bool> val;
      std::vector<int> pick(ar, 0);
      while (true) {
        std::vector<int> a;
        for (int i = 0; i < ar; ++i) {
          auto t = decode(members[ct[i]][pick[i]], m.size, k);
          a.insert(a.end(), t.begin(), t.end());
        }
        bool v = eval(m, f, a);
        if (val && *val != v)
          throw interp_error("Gamma(" + rn + ") is not well defined on classes at " + tuple_str(ct));
        val = v;
        int i = ar - 1;
        while (i >= 0 && ++pick[i] == static_cast<int>(members[ct[i]].size())) pick[i--] = 0;
        if (i < 0) break;
      }
      if (*val) q.model.set(rn, ct);
    }
  }
  return q;
}

std::vector<std::pair<std::string, sequent>> two_cell_conditions(const two_cell& c,
                                                                 const std::vector<std::pair<int, formula>>& extra) {
  const interpretation& g = *c.from;
  const interpretation& h = *c.to;
  const int k = g.k, k2 = h.k;
  const formula& th = c.theta;
  std::vector<std::pair<std::string, sequent>> out;
  auto th_at = [&](const std::vector<int>& xs, const std::vector<int>& ys, int ctx) {
    std::vector<int> mp = xs;
    mp.insert(mp.end(), ys.begin(), ys.end());
    return substitute(th, k + k2, mp, ctx);
  };
  auto range = [](int from, int len) {
    std::vector<int> v;
    for (int i = 0; i < len; ++i) v.push_back(from + i);
    return v;
  };
  auto eq_at = [](const interpretation& x, const std::vector<int>& a, const std::vector<int>& b, int ctx) {
    std::vector<int> mp = a;
    mp.insert(mp.end(), b.begin(), b.end());
    return substitute(x.eq, 2 * x.k, mp, ctx);
  };
  {
    int n = k;
    out.push_back({"(1)", {n, eq_at(g, range(0, k), range(0, k), n), exists_n(th, k2)}});
  }
  {
    int n = k + k2;
    auto xs = range(0, k), ys = range(k, k2);
    out.push_back({"(2)", {n, th, mk_and({eq_at(g, xs, xs, n), eq_at(h, ys, ys, n)})}});
  }
  {
    int n = 2 * k + k2;
    auto xs = range(0, k), xs2 = range(k, k), ys = range(2 * k, k2);
    out.push_back({"(3)", {n, mk_and({th_at(xs, ys, n), eq_at(g, xs, xs2, n)}), th_at(xs2, ys, n)}});
  }
  {
    int n = k + 2 * k2;
    auto xs = range(0, k), ys = range(k, k2), ys2 = range(k + k2, k2);
    out.push_back({"(4)", {n, mk_and({th_at(xs, ys, n), eq_at(h, ys, ys2, n)}), th_at(xs, ys2, n)}});
  }
  auto cond5 = [&](const std::string& label, int r, const formula& gl, const formula& hl) {
    // gl in context r*k, hl in context r*k2
    int n = r * k + r * k2;
    std::vector<formula> parts{substitute(gl, r * k, range(0, r * k), n)};
    for (int i = 0; i < r; ++i) parts.push_back(th_at(range(i * k, k), range(r * k + i * k2, k2), n));
    out.push_back({label, {n, mk_and(parts), substitute(hl, r * k2, range(r * k, r * k2), n)}});
  };
  cond5("(5) =", 2, g.eq, h.eq);
  for (auto& [r, a] : g.source.sig.rels) cond5("(5) " + r, a, g.rel.at(r), h.rel.at(r));
  for (auto& [n, phi] : extra) cond5("(5) " + to_string(phi, n), n, apply(g, phi, n), apply(h, phi, n));
  return out;
}

two_cell_report check_two_cell(const two_cell& c, const entail_options& o, const std::vector<std::pair<int, formula>>& extra) {
  two_cell_report rep;
  for (auto& [label, s] : two_cell_conditions(c, extra)) {
    auto v = entails(c.from->target, s, o);
    if (v.kind == verdict_kind::proved) rep.proved++;
    else if (v.kind == verdict_kind::refuted) rep.refuted++;
    else rep.unknown++;
    rep.conditions.push_back({label, s, std::move(v)});
  }
  return rep;
}

two_cell identity_two_cell(const interpretation& g) { return {&g, &g, g.eq}; }

formula compose_vertical(const two_cell& theta, const two_cell& eta) {
  if (theta.to != eta.from && !(theta.to->name == eta.from->name && theta.to->k == eta.from->k))
    throw interp_error("vertical composition needs matching middle interpretation");
  const int k = theta.from->k, k1 = theta.to->k, k2 = eta.to->k;
  const int n = k + k2 + k1;
  std::vector<int> mt, me;
  for (int i = 0; i < k; ++i) mt.push_back(i);
  for (int j = 0; j < k1; ++j) mt.push_back(k + k2 + j);
  for (int j = 0; j < k1; ++j) me.push_back(k + k2 + j);
  for (int l = 0; l < k2; ++l) me.push_back(k + l);
  auto body = mk_and({substitute(theta.theta, k + k1, mt, n), substitute(eta.theta, k1 + k2, me, n)});
  return exists_n(body, k1);
}

formula compose_horizontal(const two_cell& theta, const two_cell& eta) {
  const int k = theta.from->k, k1 = theta.to->k;
  const int l = eta.from->k, l1 = eta.to->k;
  if (eta.from->source.name != theta.from->target.name) throw interp_error("horizontal composition: endpoint mismatch");
  auto dt = apply(*eta.from, theta.theta, k + k1);  // context (k+k1)*l
  const int xs = k * l, zs = k1 * l1, ys = k1 * l;
  const int n = xs + zs + ys;
  std::vector<int> md;
  for (int p = 0; p < xs; ++p) md.push_back(p);
  for (int q = 0; q < ys; ++q) md.push_back(xs + zs + q);
  std::vector<formula> parts{substitute(dt, (k + k1) * l, md, n)};
  for (int i = 0; i < k1; ++i) {
    std::vector<int> me;
    for (int p = 0; p < l; ++p) me.push_back(xs + zs + i * l + p);
    for (int q = 0; q < l1; ++q) me.push_back(xs + i * l1 + q);
    parts.push_back(substitute(eta.theta, l + l1, me, n));
  }
  return exists_n(mk_and(parts), ys);
}

model_hom hom_from_theta(const two_cell& c, const finite_model& m) {
  auto qa = gamma_star(*c.from, m);
  auto qb = gamma_star(*c.to, m);
  const int k = c.from->k, k2 = c.to->k;
  model_hom h;
  h.map.assign(qa.reps.size(), -1);
  for (int code = 0; code < static_cast<int>(qa.class_of.size()); ++code) {
    int ca = qa.class_of[code];
    if (ca < 0) continue;
    auto a = decode(code, m.size, k);
    int target = -1;
    for (int code2 = 0; code2 < static_cast<int>(qb.class_of.size()); ++code2) {
      auto b = decode(code2, m.size, k2);
      auto ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      if (!eval(m, c.theta, ab)) continue;
      int cb = qb.class_of[code2];
      if (cb < 0) throw interp_error("theta relates " + tuple_str(a) + " to " + tuple_str(b) + " outside the target domain");
      if (target >= 0 && target != cb) throw interp_error("theta is not functional at " + tuple_str(a));
      target = cb;
    }
    if (target < 0) throw interp_error("theta is not total: no image for " + tuple_str(a));
    if (h.map[ca] >= 0 && h.map[ca] != target)
      throw interp_error("theta does not respect Gamma(x = y) at " + tuple_str(a));
    h.map[ca] = target;
  }
  for (auto& [r, ar] : c.from->source.sig.rels) {
    for (auto& t : qa.model.tuples(r)) {
      std::vector<int> u;
      for (int x : t) u.push_back(h.map[x]);
      if (!qb.model.holds(r, u)) throw interp_error("f_theta does not preserve " + r + " at classes " + tuple_str(t));
    }
  }
  return h;
}

interp_report check_interpretation(const interpretation& g, const std::vector<std::pair<int, formula>>& family,
                                   const entail_options& o, std::size_t max_pairs) {
  interp_report rep;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (pairs >= max_pairs) return rep;
      auto& [n, phi] = family[i];
      auto& [n2, psi] = family[j];
      if (n != n2 || i == j) continue;
      ++pairs;
      // the antecedent carries the domain of every variable
      formula a = pad_context(phi, n), b = psi;
      auto src = entails(g.source, {n, a, b}, o);
      if (src.kind != verdict_kind::proved) {
        rep.skipped++;
        continue;
      }
      rep.checked++;
      sequent img{n * g.k, apply(g, a, n), apply(g, b, n)};
      auto v = entails(g.target, img, o);
      if (v.kind == verdict_kind::proved) {
        rep.proved++;
      } else {
        if (v.kind == verdict_kind::refuted) rep.refuted++;
        else rep.unknown++;
        if (!rep.first_failure) {
          rep.first_failure = img;
          rep.failure_note = std::string(verdict_name(v.kind)) + " for the image of " + to_string(sequent{n, a, b});
        }
      }
    }
  }
  return rep;
}

interpretation e_interpretation() {
  interpretation g;
  g.name = "e_interp";
  g.source = empty_theory();
  g.target = pequiv_theory();
  g.k = 1;
  g.eq = mk_atom("E", {0, 1});
  return g;
}

interpretation strong_pp_interpretation() {
  interpretation g = identity_interpretation(pqr_theory());
  g.name = "pp";
  g.rel["P"] = mk_and({mk_atom("P", {0}), mk_atom("P", {0})});
  return g;
}

interpretation pair_interpretation() {
  interpretation g;
  g.name = "pairs";
  g.source = empty_theory();
  g.target = empty_theory();
  g.k = 2;
  g.eq = mk_and({mk_eq(0, 2), mk_eq(1, 3)});
  return g;
}

}  // namespace coh
