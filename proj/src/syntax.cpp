#include "coh/syntax.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace coh {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

formula finish(node&& n) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 1315423911u;
  h = mix(h, std::hash<std::string>{}(n.rel));
  for (int a : n.args) h = mix(h, static_cast<std::size_t>(a) + 17);
  for (auto& k : n.kids) h = mix(h, k->hash);
  n.hash = h;
  return std::make_shared<const node>(std::move(n));
}

}  // namespace

formula mk_top() {
  static formula t = finish(node{op::top, {}, {}, {}});
  return t;
}

formula mk_bottom() {
  static formula b = finish(node{op::bottom, {}, {}, {}});
  return b;
}

formula mk_atom(const std::string& rel, std::vector<int> args) {
  return finish(node{op::atom, rel, std::move(args), {}});
}

formula mk_eq(int i, int j) { return finish(node{op::eq, {}, {i, j}, {}}); }

formula mk_and(std::vector<formula> kids) { return finish(node{op::conj, {}, {}, std::move(kids)}); }

formula mk_or(std::vector<formula> kids) { return finish(node{op::disj, {}, {}, std::move(kids)}); }

formula mk_exists(formula body) { return finish(node{op::exists, {}, {}, {std::move(body)}}); }

formula conj_of(std::vector<formula> kids) {
  if (kids.empty()) return mk_top();
  if (kids.size() == 1) return kids[0];
  return mk_and(std::move(kids));
}

formula disj_of(std::vector<formula> kids) {
  if (kids.empty()) return mk_bottom();
  if (kids.size() == 1) return kids[0];
  return mk_or(std::move(kids));
}

int compare(const formula& a, const formula& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (int c = a->rel.compare(b->rel)) return c < 0 ? -1 : 1;
  if (a->args != b->args) return a->args < b->args ? -1 : 1;
  if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (int c = compare(a->kids[i], b->kids[i])) return c;
  return 0;
}

bool equal(const formula& a, const formula& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash) return false;
  return compare(a, b) == 0;
}

formula substitute(const formula& phi, int n, const std::vector<int>& map, int m) {
  if (static_cast<int>(map.size()) != n)
    throw index_error("substitution map has length " + std::to_string(map.size()) + ", expected " + std::to_string(n));
  for (int v : map)
    if (v < 0 || v >= m) throw index_error("substitution value " + std::to_string(v + 1) + " outside context " + std::to_string(m));
  switch (phi->kind) {
    case op::top:
    case op::bottom:
      return phi;
    case op::atom:
    case op::eq: {
      std::vector<int> a;
      a.reserve(phi->args.size());
      for (int v : phi->args) {
        if (v < 0 || v >= n) throw index_error("variable x" + std::to_string(v + 1) + " outside context " + std::to_string(n));
        a.push_back(map[v]);
      }
      if (a == phi->args) return phi;
      return phi->kind == op::atom ? mk_atom(phi->rel, std::move(a)) : mk_eq(a[0], a[1]);
    }
    case op::conj:
    case op::disj: {
      std::vector<formula> k;
      bool same = true;
      for (auto& c : phi->kids) {
        k.push_back(substitute(c, n, map, m));
        same = same && k.back().get() == c.get();
      }
      if (same) return phi;
      return phi->kind == op::conj ? mk_and(std::move(k)) : mk_or(std::move(k));
    }
    case op::exists: {
      std::vector<int> m2 = map;
      m2.push_back(m);
      auto b = substitute(phi->kids[0], n + 1, m2, m + 1);
      if (b.get() == phi->kids[0].get()) return phi;
      return mk_exists(b);
    }
  }
  return phi;
}

formula weaken(const formula& phi, int n, int extra) { return substitute(phi, n, identity_map(n), n + extra); }

formula normalize(const formula& phi) {
  switch (phi->kind) {
    case op::top:
    case op::bottom:
    case op::atom:
      return phi;
    case op::eq:
      if (phi->args[0] > phi->args[1]) return mk_eq(phi->args[1], phi->args[0]);
      return phi;
    case op::exists: {
      auto b = normalize(phi->kids[0]);
      if (b->kind == op::bottom) return mk_bottom();
      if (b.get() == phi->kids[0].get()) return phi;
      return mk_exists(b);
    }
    case op::conj:
    case op::disj: {
      bool is_and = phi->kind == op::conj;
      op unit = is_and ? op::top : op::bottom;
      op zero = is_and ? op::bottom : op::top;
      std::vector<formula> flat;
      std::function<void(const formula&)> add = [&](const formula& c) {
        if (c->kind == phi->kind) {
          for (auto& g : c->kids) add(g);
        } else {
          flat.push_back(c);
        }
      };
      for (auto& c : phi->kids) add(normalize(c));
      std::vector<formula> out;
      for (auto& c : flat) {
        if (c->kind == zero) return c;
        if (c->kind == unit) continue;
        out.push_back(c);
      }
      std::sort(out.begin(), out.end(), formula_less{});
      out.erase(std::unique(out.begin(), out.end(), formula_eq{}), out.end());
      if (out.empty()) return is_and ? mk_top() : mk_bottom();
      if (out.size() == 1) return out[0];
      if (out.size() == phi->kids.size()) {
        bool same = true;
        for (std::size_t i = 0; i < out.size(); ++i) same = same && out[i].get() == phi->kids[i].get();
        if (same) return phi;
      }
      return is_and ? mk_and(std::move(out)) : mk_or(std::move(out));
    }
  }
  return phi;
}

int depth(const formula& phi) {
  switch (phi->kind) {
    case op::top:
    case op::bottom:
    case op::atom:
    case op::eq:
      return 0;
    default: {
      int d = 0;
      for (auto& c : phi->kids) d = std::max(d, depth(c));
      return d + 1;
    }
  }
}

int size(const formula& phi) {
  int s = 1;
  for (auto& c : phi->kids) s += size(c);
  return s;
}

bool has_disj(const formula& phi) {
  if (phi->kind == op::disj) return true;
  for (auto& c : phi->kids)
    if (has_disj(c)) return true;
  return false;
}

bool has_exists(const formula& phi) {
  if (phi->kind == op::exists) return true;
  for (auto& c : phi->kids)
    if (has_exists(c)) return true;
  return false;
}

std::vector<bool> occurring(const formula& phi, int n) {
  std::vector<bool> seen(n, false);
  std::function<void(const formula&)> go = [&](const formula& f) {
    for (int a : f->args)
      if (a < n) seen[a] = true;
    for (auto& c : f->kids) go(c);
  };
  go(phi);
  return seen;
}

void relations_of(const formula& phi, std::vector<std::string>& out) {
  if (phi->kind == op::atom) out.push_back(phi->rel);
  for (auto& c : phi->kids) relations_of(c, out);
}

int signature::arity(const std::string& r) const {
  auto it = rels.find(r);
  return it == rels.end() ? -1 : it->second;
}

std::string check_formula(const formula& phi, int n, const signature& sig) {
  switch (phi->kind) {
    case op::top:
    case op::bottom:
      return "";
    case op::atom: {
      int a = sig.arity(phi->rel);
      if (a < 0) return "unknown relation symbol '" + phi->rel + "'";
      if (a != static_cast<int>(phi->args.size()))
        return "arity mismatch for '" + phi->rel + "': expected " + std::to_string(a) + ", got " + std::to_string(phi->args.size());
      for (int v : phi->args)
        if (v < 0 || v >= n) return "variable index " + std::to_string(v + 1) + " outside context " + std::to_string(n);
      return "";
    }
    case op::eq:
      for (int v : phi->args)
        if (v < 0 || v >= n) return "variable index " + std::to_string(v + 1) + " outside context " + std::to_string(n);
      return "";
    case op::conj:
    case op::disj:
      for (auto& c : phi->kids)
        if (auto e = check_formula(c, n, sig); !e.empty()) return e;
      return "";
    case op::exists:
      if (phi->kids.size() != 1) return "exists with wrong child count";
      return check_formula(phi->kids[0], n + 1, sig);
  }
  return "bad node";
}

std::string check_theory(const theory& t) {
  for (std::size_t i = 0; i < t.axioms.size(); ++i) {
    auto& s = t.axioms[i];
    if (auto e = check_formula(s.lhs, s.n, t.sig); !e.empty()) return "axiom " + std::to_string(i + 1) + ": " + e;
    if (auto e = check_formula(s.rhs, s.n, t.sig); !e.empty()) return "axiom " + std::to_string(i + 1) + ": " + e;
  }
  return "";
}

std::string var_name(int i) { return "x" + std::to_string(i + 1); }

namespace {

void print(std::ostream& os, const formula& f, int n);

void print_child(std::ostream& os, const formula& f, int n) {
  bool paren = f->kind == op::conj || f->kind == op::disj || f->kind == op::exists;
  if (paren) os << '(';
  print(os, f, n);
  if (paren) os << ')';
}

void print(std::ostream& os, const formula& f, int n) {
  switch (f->kind) {
    case op::top:
      os << "true";
      break;
    case op::bottom:
      os << "false";
      break;
    case op::atom:
      os << f->rel;
      if (!f->args.empty()) {
        os << '(';
        for (std::size_t i = 0; i < f->args.size(); ++i) os << (i ? "," : "") << var_name(f->args[i]);
        os << ')';
      }
      break;
    case op::eq:
      os << var_name(f->args[0]) << " = " << var_name(f->args[1]);
      break;
    case op::conj:
    case op::disj: {
      if (f->kids.empty()) {
        // only reachable for unnormalized input
        os << (f->kind == op::conj ? "true" : "false");
        break;
      }
      const char* sep = f->kind == op::conj ? " & " : " | ";
      for (std::size_t i = 0; i < f->kids.size(); ++i) {
        if (i) os << sep;
        print_child(os, f->kids[i], n);
      }
      break;
    }
    case op::exists:
      os << "exists " << var_name(n) << ". ";
      print(os, f->kids[0], n + 1);
      break;
  }
}

}  // namespace

std::string to_string(const formula& phi, int n) {
  std::ostringstream os;
  print(os, phi, n);
  return os.str();
}

std::string to_string(const sequent& s) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < s.n; ++i) os << (i ? "," : "") << var_name(i);
  os << "] " << to_string(s.lhs, s.n) << " |- " << to_string(s.rhs, s.n);
  return os.str();
}

std::string to_string(const theory& t) {
  std::ostringstream os;
  os << "theory " << (t.name.empty() ? "unnamed" : t.name) << "\n";
  os << "sig {";
  bool first = true;
  for (auto& [r, a] : t.sig.rels) {
    os << (first ? " " : ", ") << r << '/' << a;
    first = false;
  }
  os << (first ? "}" : " }") << "\n";
  for (auto& s : t.axioms) os << "axiom " << to_string(s) << "\n";
  return os.str();
}

std::vector<int> identity_map(int n) {
  std::vector<int> r(n);
  for (int i = 0; i < n; ++i) r[i] = i;
  return r;
}

std::vector<int> compose_maps(const std::vector<int>& g, const std::vector<int>& f) {
  std::vector<int> r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = g.at(f[i]);
  return r;
}

std::vector<std::vector<int>> all_maps(int n, int m) {
  std::vector<std::vector<int>> out;
  if (m == 0 && n > 0) return out;
  std::vector<int> cur(n, 0);
  while (true) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[i] == m - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

bool is_surjective(const std::vector<int>& f, int m) {
  std::vector<bool> hit(m, false);
  for (int v : f) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool is_injective(const std::vector<int>& f) {
  auto s = f;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

theory pqr_theory() {
  return parse_theory(
      "theory pqr\n"
      "sig { P/1, Q/1, R/1 }\n"
      "axiom [x,y] P(x) & Q(y) |- R(x) | R(y)\n");
}

theory pequiv_theory() {
  return parse_theory(
      "theory pequiv\n"
      "sig { E/2 }\n"
      "axiom [x,y] E(x,y) |- E(y,x)\n"
      "axiom [x,y,z] E(x,y) & E(y,z) |- E(x,z)\n");
}

theory empty_theory() {
  theory t;
  t.name = "empty";
  return t;
}

}  // namespace coh
