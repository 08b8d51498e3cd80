#include <cctype>

#include "coh/syntax.hpp"

namespace coh {

syntax_error::syntax_error(const std::string& msg, int l, int c)
    : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg), line(l), col(c) {}

namespace {

enum class tk { ident, number, lparen, rparen, comma, equals, amp, bar, turnstile, dot, lbrack, rbrack, lbrace, rbrace, slash, bad, end };

struct token {
  tk kind;
  std::string text;
  int line, col;
};

std::vector<token> lex(const std::string& s) {
  std::vector<token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto adv = [&](std::size_t k) {
    for (std::size_t t = 0; t < k; ++t) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') adv(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({tk::ident, s.substr(i, j - i), l, cl});
      adv(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({tk::number, s.substr(i, j - i), l, cl});
      adv(j - i);
      continue;
    }
    if (c == '|' && i + 1 < s.size() && s[i + 1] == '-') {
      out.push_back({tk::turnstile, "|-", l, cl});
      adv(2);
      continue;
    }
    tk k = tk::bad;
    switch (c) {
      case '(': k = tk::lparen; break;
      case ')': k = tk::rparen; break;
      case ',': k = tk::comma; break;
      case '=': k = tk::equals; break;
      case '&': k = tk::amp; break;
      case '|': k = tk::bar; break;
      case '.': k = tk::dot; break;
      case '[': k = tk::lbrack; break;
      case ']': k = tk::rbrack; break;
      case '{': k = tk::lbrace; break;
      case '}': k = tk::rbrace; break;
      case '/': k = tk::slash; break;
      default: break;
    }
    std::string text(1, c);
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') text = "->";
    out.push_back({k, text, l, cl});
    adv(text.size());
  }
  out.push_back({tk::end, "", line, col});
  return out;
}

const char* describe(tk k) {
  switch (k) {
    case tk::ident: return "identifier";
    case tk::number: return "number";
    case tk::lparen: return "'('";
    case tk::rparen: return "')'";
    case tk::comma: return "','";
    case tk::equals: return "'='";
    case tk::amp: return "'&'";
    case tk::bar: return "'|'";
    case tk::turnstile: return "'|-'";
    case tk::dot: return "'.'";
    case tk::lbrack: return "'['";
    case tk::rbrack: return "']'";
    case tk::lbrace: return "'{'";
    case tk::rbrace: return "'}'";
    case tk::slash: return "'/'";
    case tk::bad: return "character";
    case tk::end: return "end of input";
  }
  return "?";
}

class parser {
 public:
  parser(const std::string& text, const signature* sig) : toks_(lex(text)), sig_(sig) {}

  const token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(tk k) const { return peek().kind == k; }
  bool at_word(const char* w) const { return peek().kind == tk::ident && peek().text == w; }

  [[noreturn]] void fail(const std::string& msg, const token& t) const { throw syntax_error(msg, t.line, t.col); }

  token expect(tk k) {
    if (!at(k)) {
      const token& t = peek();
      if (t.kind == tk::bad) bad_char(t);
      fail(std::string("expected ") + describe(k) + ", found " + (t.kind == tk::end ? "end of input" : "'" + t.text + "'"), t);
    }
    return next();
  }

  [[noreturn]] void bad_char(const token& t) const {
    if (t.text == "~" || t.text == "!") fail("negation is not part of coherent logic", t);
    if (t.text == "->") fail("implication is only allowed as the sequent arrow |-", t);
    fail("unexpected character '" + t.text + "'", t);
  }

  void set_sig(const signature* s) { sig_ = s; }

  std::vector<std::string> context_list() {
    expect(tk::lbrack);
    std::vector<std::string> vars;
    if (!at(tk::rbrack)) {
      while (true) {
        token t = expect(tk::ident);
        for (auto& v : vars)
          if (v == t.text) fail("variable '" + t.text + "' listed twice in context", t);
        if (sig_ && sig_->arity(t.text) >= 0) fail("'" + t.text + "' is a relation symbol, not a variable", t);
        vars.push_back(t.text);
        if (at(tk::comma)) {
          next();
          continue;
        }
        break;
      }
    }
    expect(tk::rbrack);
    return vars;
  }

  formula parse_formula(std::vector<std::string>& scope) {
    if (at_word("exists")) return parse_exists(scope);
    std::vector<formula> parts{parse_conj(scope)};
    while (at(tk::bar)) {
      next();
      parts.push_back(parse_conj(scope));
    }
    return parts.size() == 1 ? parts[0] : mk_or(std::move(parts));
  }

  formula parse_exists(std::vector<std::string>& scope) {
    token kw = next();
    std::size_t before = scope.size();
    if (!at(tk::ident)) fail("expected a variable after 'exists'", peek());
    while (at(tk::ident)) {
      token t = next();
      if (sig_ && sig_->arity(t.text) >= 0) fail("'" + t.text + "' is a relation symbol, not a variable", t);
      scope.push_back(t.text);
    }
    expect(tk::dot);
    formula body = parse_formula(scope);
    std::size_t k = scope.size() - before;
    scope.resize(before);
    for (std::size_t i = 0; i < k; ++i) body = mk_exists(body);
    (void)kw;
    return body;
  }

  formula parse_conj(std::vector<std::string>& scope) {
    std::vector<formula> parts{parse_primary(scope)};
    while (at(tk::amp)) {
      next();
      parts.push_back(parse_primary(scope));
    }
    return parts.size() == 1 ? parts[0] : mk_and(std::move(parts));
  }

  int lookup_var(const std::vector<std::string>& scope, const token& t) {
    for (int i = static_cast<int>(scope.size()) - 1; i >= 0; --i)
      if (scope[i] == t.text) return i;
    fail("variable '" + t.text + "' is not in context", t);
  }

  formula parse_primary(std::vector<std::string>& scope) {
    const token& t = peek();
    if (t.kind == tk::bad) bad_char(t);
    if (t.kind == tk::lparen) {
      next();
      formula f = parse_formula(scope);
      expect(tk::rparen);
      return f;
    }
    if (t.kind != tk::ident) fail(std::string("expected a formula, found ") + describe(t.kind), t);
    if (t.text == "exists") return parse_exists(scope);
    if (t.text == "not") fail("negation is not part of coherent logic", t);
    if (t.text == "forall") fail("universal quantifiers are only allowed as the sequent context", t);
    if (t.text == "true") {
      next();
      return mk_top();
    }
    if (t.text == "false") {
      next();
      return mk_bottom();
    }
    token name = next();
    if (at(tk::equals)) {
      next();
      token rhs = expect(tk::ident);
      return mk_eq(lookup_var(scope, name), lookup_var(scope, rhs));
    }
    int ar = sig_ ? sig_->arity(name.text) : -1;
    if (ar < 0) {
      for (auto& v : scope)
        if (v == name.text) fail("variable '" + name.text + "' used as a formula", name);
      fail("unknown relation symbol '" + name.text + "'", name);
    }
    std::vector<int> args;
    if (at(tk::lparen)) {
      next();
      if (!at(tk::rparen)) {
        while (true) {
          token v = expect(tk::ident);
          args.push_back(lookup_var(scope, v));
          if (at(tk::comma)) {
            next();
            continue;
          }
          break;
        }
      }
      expect(tk::rparen);
    }
    if (static_cast<int>(args.size()) != ar)
      fail("arity mismatch for '" + name.text + "': expected " + std::to_string(ar) + ", got " + std::to_string(args.size()), name);
    return mk_atom(name.text, std::move(args));
  }

  sequent parse_sequent_body() {
    auto vars = context_list();
    sequent s;
    s.n = static_cast<int>(vars.size());
    s.lhs = parse_formula(vars);
    expect(tk::turnstile);
    s.rhs = parse_formula(vars);
    return s;
  }

  theory parse_theory() {
    theory t;
    bool have_sig = false;
    while (!at(tk::end)) {
      token kw = peek();
      if (at_word("theory")) {
        next();
        t.name = expect(tk::ident).text;
      } else if (at_word("sig")) {
        next();
        expect(tk::lbrace);
        while (!at(tk::rbrace)) {
          token r = expect(tk::ident);
          if (r.text == "exists" || r.text == "true" || r.text == "false")
            fail("'" + r.text + "' is reserved", r);
          expect(tk::slash);
          token a = expect(tk::number);
          if (t.sig.rels.count(r.text)) fail("relation '" + r.text + "' declared twice", r);
          t.sig.rels[r.text] = std::stoi(a.text);
          if (at(tk::comma)) {
            next();
          } else if (!at(tk::rbrace)) {
            fail("expected ',' or '}' in signature", peek());
          }
        }
        next();
        have_sig = true;
        sig_ = &t.sig;
      } else if (at_word("axiom")) {
        next();
        if (!have_sig) sig_ = &t.sig;
        t.axioms.push_back(parse_sequent_body());
      } else {
        if (kw.kind == tk::bad) bad_char(kw);
        fail("expected 'theory', 'sig' or 'axiom', found '" + kw.text + "'", kw);
      }
    }
    t.sig.name = t.name;
    return t;
  }

 private:
  std::vector<token> toks_;
  std::size_t pos_ = 0;
  const signature* sig_;
};

}  // namespace

theory parse_theory(const std::string& text) {
  parser p(text, nullptr);
  return p.parse_theory();
}

sequent parse_sequent(const std::string& text, const signature& sig) {
  parser p(text, &sig);
  sequent s = p.parse_sequent_body();
  p.expect(tk::end);
  return s;
}

formula parse_formula(const std::string& text, const std::vector<std::string>& vars, const signature& sig) {
  parser p(text, &sig);
  auto scope = vars;
  formula f = p.parse_formula(scope);
  p.expect(tk::end);
  return f;
}

std::vector<int> parse_index_map(const std::string& text) {
  std::vector<int> out;
  std::string num;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      num += c;
    } else {
      if (!num.empty()) out.push_back(std::stoi(num) - 1);
      num.clear();
      if (c != '[' && c != ']' && c != ',' && !std::isspace(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad index map '" + text + "'");
    }
  }
  if (!num.empty()) out.push_back(std::stoi(num) - 1);
  for (int v : out)
    if (v < 0) throw std::invalid_argument("index maps are 1-based: '" + text + "'");
  return out;
}

}  // namespace coh
