#include "thetaforms/registry.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace thetaforms {

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::series: return "series";
    case Mode::sift: return "sift";
    case Mode::ternary: return "ternary";
    case Mode::positivity: return "positivity";
    case Mode::modeq3: return "modeq3";
    case Mode::eta_valence: return "eta-valence";
  }
  return "?";
}

RegistryError::RegistryError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(fmt::format("line {}, column {}: {}", line, column, what)), line_(line), column_(column) {}

namespace {

struct Pos {
  std::size_t line = 0, col = 0;
};

// One entry's text with the source position of every character.
struct Chunk {
  std::string text;
  std::vector<Pos> pos;

  Pos at(std::size_t i) const {
    if (pos.empty()) return {};
    if (i < pos.size()) return pos[i];
    Pos p = pos.back();
    ++p.col;
    return p;
  }
};

std::vector<Chunk> split_entries(std::string_view text) {
  std::vector<Chunk> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
    if (!blank) {
      const bool continuation = line.front() == ' ' || line.front() == '\t';
      if (!continuation) out.emplace_back();
      if (out.empty()) throw RegistryError(line_no, 1, "continuation line without an entry");
      Chunk& c = out.back();
      if (continuation) {
        c.text.push_back(' ');
        c.pos.push_back({line_no, 1});
      }
      for (std::size_t i = 0; i < line.size(); ++i) {
        c.text.push_back(line[i]);
        c.pos.push_back({line_no, i + 1});
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

struct Token {
  enum class Kind { integer, ident, symbol, end };
  Kind kind = Kind::end;
  std::string text;
  Pos pos;
};

std::vector<Token> tokenize(const Chunk& c, std::size_t from, std::size_t to) {
  std::vector<Token> out;
  std::size_t i = from;
  while (i < to) {
    const char ch = c.text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = c.at(i);
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < to && std::isdigit(static_cast<unsigned char>(c.text[j]))) ++j;
      t.kind = Token::Kind::integer;
      t.text = c.text.substr(i, j - i);
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < to && (std::isalnum(static_cast<unsigned char>(c.text[j])) || c.text[j] == '_')) ++j;
      t.kind = Token::Kind::ident;
      t.text = c.text.substr(i, j - i);
      i = j;
    } else if (ch == '|' && i + 1 < to && c.text[i + 1] == '|') {
      t.kind = Token::Kind::symbol;
      t.text = "||";
      i += 2;
    } else if (std::string_view("+-*/^()[],=|").find(ch) != std::string_view::npos) {
      t.kind = Token::Kind::symbol;
      t.text = std::string(1, ch);
      ++i;
    } else {
      throw RegistryError(t.pos.line, t.pos.col, fmt::format("unexpected character '{}'", ch));
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::Kind::end;
  end.pos = c.at(to);
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Token::Kind::end; }
  bool is_sym(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::symbol && peek(k).text == s;
  }
  bool is_ident(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::ident && peek(k).text == s;
  }
  Token next() { return toks_[std::min(i_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
    throw RegistryError(t.pos.line, t.pos.col, msg);
  }

  void expect_sym(std::string_view s) {
    if (!is_sym(s)) fail(fmt::format("expected '{}' but found '{}'", s, describe(peek())));
    next();
  }
  void expect_ident(std::string_view s) {
    if (!is_ident(s)) fail(fmt::format("expected '{}' but found '{}'", s, describe(peek())));
    next();
  }
  static std::string describe(const Token& t) { return t.kind == Token::Kind::end ? "end of entry" : t.text; }

  Integer integer() {
    if (peek().kind != Token::Kind::integer) fail(fmt::format("expected an integer but found '{}'", describe(peek())));
    return Integer(next().text);
  }
  i64 small_integer() {
    const Token t = peek();
    Integer v = integer();
    if (!v.fits_slong_p()) fail_at(t, "integer out of range");
    return v.get_si();
  }
  i64 signed_small_integer() {
    if (is_sym("-")) {
      next();
      return -small_integer();
    }
    return small_integer();
  }

  // ---- series expressions ----
  SeriesExprPtr series_expr() {
    SeriesExprPtr left = series_term();
    while (is_sym("+") || is_sym("-")) {
      const bool plus = next().text == "+";
      left = node(plus ? SeriesExpr::Kind::add : SeriesExpr::Kind::sub, {left, series_term()});
    }
    return left;
  }

  SeriesExprPtr series_term() {
    SeriesExprPtr left = series_unary();
    while (is_sym("*") || is_sym("/")) {
      const bool times = next().text == "*";
      left = node(times ? SeriesExpr::Kind::mul : SeriesExpr::Kind::div, {left, series_unary()});
    }
    return left;
  }

  SeriesExprPtr series_unary() {
    if (is_sym("-")) {
      next();
      return node(SeriesExpr::Kind::neg, {series_unary()});
    }
    SeriesExprPtr base = series_atom();
    if (is_sym("^")) {
      next();
      auto e = std::make_shared<SeriesExpr>();
      e->kind = SeriesExpr::Kind::pow;
      e->exponent = small_integer();
      e->kids = {base};
      return e;
    }
    return base;
  }

  // +-q or +-q^k
  std::pair<int, i64> theta_argument() {
    int sign = 1;
    if (is_sym("-")) {
      next();
      sign = -1;
    }
    expect_ident("q");
    i64 k = 1;
    if (is_sym("^")) {
      next();
      k = small_integer();
    }
    if (k < 1) fail("argument power must be positive");
    return {sign, k};
  }

  SeriesExprPtr series_atom() {
    const Token t = peek();
    auto e = std::make_shared<SeriesExpr>();
    if (t.kind == Token::Kind::integer) {
      e->kind = SeriesExpr::Kind::integer;
      e->value = integer();
      return e;
    }
    if (is_sym("(")) {
      next();
      SeriesExprPtr inner = series_expr();
      expect_sym(")");
      return inner;
    }
    if (t.kind != Token::Kind::ident) fail(fmt::format("unexpected '{}'", describe(t)));
    next();
    if (t.text == "q") {
      e->kind = SeriesExpr::Kind::q_power;
      e->exponent = 1;
      if (is_sym("^")) {
        next();
        e->exponent = small_integer();
      }
      return e;
    }
    if (t.text == "f") {
      e->kind = SeriesExpr::Kind::theta;
      expect_sym("(");
      std::tie(e->sign, e->power) = theta_argument();
      expect_sym(",");
      std::tie(e->sign2, e->power2) = theta_argument();
      expect_sym(")");
      return e;
    }
    if (t.text == "S") {
      e->kind = SeriesExpr::Kind::sift;
      expect_sym("[");
      const i64 tt = small_integer();
      expect_sym(",");
      const i64 ss = small_integer();
      expect_sym("]");
      if (tt < 1 || ss >= tt) fail_at(t, fmt::format("sift S[{},{}] needs 0 <= s < t", tt, ss));
      e->t = static_cast<unsigned>(tt);
      e->s = static_cast<unsigned>(ss);
      expect_sym("(");
      e->kids = {series_expr()};
      expect_sym(")");
      return e;
    }
    if (t.text == "eta") {
      e->kind = SeriesExpr::Kind::eta;
      e->eta = eta_list();
      return e;
    }
    if (!is_named_function(t.text)) fail_at(t, fmt::format("unknown primitive '{}'", t.text));
    e->kind = SeriesExpr::Kind::named;
    e->name = t.text;
    expect_sym("(");
    std::tie(e->sign, e->power) = theta_argument();
    expect_sym(")");
    return e;
  }

  // [d^r, d^r, ...]; the level is the lcm of the d.
  EtaQuotient eta_list() {
    EtaQuotient q;
    expect_sym("[");
    while (true) {
      const Token t = peek();
      const i64 d = small_integer();
      if (d < 1) fail_at(t, "eta argument must be positive");
      expect_sym("^");
      const i64 r = signed_small_integer();
      if (q.exponents.count(d)) fail_at(t, fmt::format("eta({}z) listed twice", d));
      if (r != 0) q.exponents[d] = r;
      q.level = lcm(q.level, d);
      if (is_sym(",")) {
        next();
        continue;
      }
      break;
    }
    expect_sym("]");
    return q;
  }

  static SeriesExprPtr node(SeriesExpr::Kind k, std::vector<SeriesExprPtr> kids) {
    auto e = std::make_shared<SeriesExpr>();
    e->kind = k;
    e->kids = std::move(kids);
    return e;
  }

  // ---- ternary combinations ----
  TernaryForm sextuple() {
    const Token open = peek();
    expect_sym("(");
    std::vector<i64> v;
    while (true) {
      v.push_back(signed_small_integer());
      if (is_sym(",")) {
        next();
        continue;
      }
      break;
    }
    expect_sym(")");
    if (v.size() != 6) fail_at(open, fmt::format("malformed sextuple: {} entries instead of 6", v.size()));
    TernaryForm f{v[0], v[1], v[2], v[3], v[4], v[5]};
    if (!f.is_positive_definite()) fail_at(open, "form (" + f.to_string() + ") is not positive definite");
    return f;
  }

  // (M) or (M/d) or (M/w^2)
  i64 count_argument() {
    expect_sym("(");
    expect_ident("M");
    i64 d = 1;
    if (is_sym("/")) {
      next();
      d = small_integer();
      if (is_sym("^")) {
        next();
        const i64 k = small_integer();
        i64 base = d;
        d = 1;
        for (i64 i = 0; i < k; ++i) d *= base;
      }
      if (d < 1) fail("divisor must be positive");
    }
    expect_sym(")");
    return d;
  }

  std::vector<TernaryTerm> ternary_side() {
    std::vector<TernaryTerm> out;
    bool first = true;
    while (true) {
      int sign = 1;
      if (is_sym("+") || is_sym("-")) {
        sign = next().text == "-" ? -1 : 1;
      } else if (!first) {
        break;
      }
      first = false;
      TernaryTerm term = ternary_term();
      term.coefficient *= sign;
      out.push_back(std::move(term));
      if (!(is_sym("+") || is_sym("-"))) break;
    }
    return out;
  }

  TernaryTerm ternary_term() {
    TernaryTerm term;
    while (true) {
      const Token t = peek();
      if (t.kind == Token::Kind::integer) {
        term.coefficient *= integer();
      } else if (is_sym("(")) {
        CountTerm c;
        c.form = sextuple();
        c.divisor = count_argument();
        add_count(term, c, t);
      } else if (is_ident("wt")) {
        next();
        CountTerm c;
        c.kind = CountTerm::Kind::weighted;
        c.form = sextuple();
        c.divisor = count_argument();
        add_count(term, c, t);
      } else if (is_ident("W")) {
        next();
        CountTerm c;
        c.kind = CountTerm::Kind::sgenus;
        expect_sym("[");
        c.S = small_integer();
        expect_sym(",");
        c.index = small_integer();
        expect_sym("]");
        check_sgenus_index(t, c.S, c.index);
        c.divisor = count_argument();
        add_count(term, c, t);
      } else if (is_ident("eps")) {
        next();
        EpsRef r;
        if (is_sym("(")) {
          r.by_form = true;
          r.form = sextuple();
          expect_sym("[");
          r.w = small_integer();
          expect_sym("]");
        } else {
          expect_sym("[");
          r.S = small_integer();
          expect_sym(",");
          r.index = small_integer();
          expect_sym(",");
          r.w = small_integer();
          expect_sym("]");
          check_sgenus_index(t, r.S, r.index);
          if (r.w < 1 || r.S % r.w != 0) fail_at(t, fmt::format("eps: {} does not divide {}", r.w, r.S));
        }
        term.eps.push_back(r);
      } else {
        fail(fmt::format("expected a count term but found '{}'", describe(t)));
      }
      if (is_sym("*")) {
        next();
        continue;
      }
      break;
    }
    return term;
  }

  static void check_sgenus_index(const Token& t, i64 S, i64 index) {
    if (S < 3 || S % 2 == 0 || !is_squarefree(S)) fail_at(t, fmt::format("S = {} must be odd, squarefree, >= 3", S));
    const i64 count = i64{1} << prime_divisors(S).size();
    if (index < 1 || index > count) fail_at(t, fmt::format("genus index {} outside 1..{}", index, count));
  }

  static void add_count(TernaryTerm& term, const CountTerm& c, const Token& t) {
    if (term.count) fail_at(t, "a term may contain only one count");
    term.count = c;
  }

  // ---- conditions ----
  std::vector<Condition> conditions() {
    std::vector<Condition> out;
    if (!is_ident("where")) return out;
    next();
    while (true) {
      out.push_back(condition());
      if (is_ident("and") || is_sym(",")) {
        next();
        continue;
      }
      break;
    }
    return out;
  }

  Condition condition() {
    Condition c;
    const Token t = peek();
    if (is_ident("M")) {
      next();
      expect_sym("=");
      c.kind = Condition::Kind::residue;
      c.residues.push_back(small_integer());
      while (is_sym(",")) {
        next();
        c.residues.push_back(small_integer());
      }
      expect_ident("mod");
      c.modulus = small_integer();
      if (c.modulus < 1) fail_at(t, "modulus must be positive");
      for (auto& r : c.residues) r = mod(r, c.modulus);
      return c;
    }
    if (is_ident("gcd")) {
      next();
      expect_sym("(");
      expect_ident("M");
      expect_sym(",");
      c.kind = Condition::Kind::gcd;
      c.modulus = small_integer();
      expect_sym(")");
      expect_sym("=");
      c.value = small_integer();
      return c;
    }
    if (is_sym("(")) {
      next();
      expect_ident("M");
      expect_sym("|");
      c.kind = Condition::Kind::jacobi;
      c.modulus = small_integer();
      if (c.modulus < 1 || c.modulus % 2 == 0) fail_at(t, "Jacobi symbol needs an odd positive modulus");
      expect_sym(")");
      expect_sym("=");
      c.value = signed_small_integer();
      return c;
    }
    if (t.kind == Token::Kind::integer) {
      c.modulus = small_integer();
      if (c.modulus < 1) fail_at(t, "divisor must be positive");
      if (is_sym("^")) {
        next();
        c.exponent = small_integer();
      }
      if (is_sym("||")) {
        next();
        c.kind = Condition::Kind::exact;
      } else {
        expect_sym("|");
        c.kind = Condition::Kind::divides;
        for (i64 i = 1; i < c.exponent; ++i) c.modulus *= c.modulus;
        c.exponent = 1;
      }
      expect_ident("M");
      return c;
    }
    fail(fmt::format("cannot parse condition at '{}'", describe(t)));
  }

  // ---- modular equations ----
  ModExprPtr mod_expr() {
    ModExprPtr left = mod_term();
    while (is_sym("+") || is_sym("-")) {
      const bool plus = next().text == "+";
      left = mnode(plus ? ModExpr::Kind::add : ModExpr::Kind::sub, {left, mod_term()});
    }
    return left;
  }

  ModExprPtr mod_term() {
    ModExprPtr left = mod_unary();
    while (is_sym("*") || is_sym("/")) {
      const bool times = next().text == "*";
      left = mnode(times ? ModExpr::Kind::mul : ModExpr::Kind::div, {left, mod_unary()});
    }
    return left;
  }

  ModExprPtr mod_unary() {
    if (is_sym("-")) {
      next();
      return mnode(ModExpr::Kind::neg, {mod_unary()});
    }
    ModExprPtr base = mod_atom();
    if (!is_sym("^")) return base;
    next();
    Rational e;
    if (is_sym("(")) {
      next();
      const i64 a = signed_small_integer();
      i64 b = 1;
      if (is_sym("/")) {
        next();
        b = small_integer();
        if (b == 0) fail("zero denominator in exponent");
      }
      expect_sym(")");
      e = Rational(a, b);
      e.canonicalize();
    } else {
      e = small_integer();
    }
    if (base->kind == ModExpr::Kind::alpha || base->kind == ModExpr::Kind::beta) {
      auto copy = std::make_shared<ModExpr>(*base);
      copy->exponent *= e;
      return copy;
    }
    auto p = std::make_shared<ModExpr>();
    p->kind = ModExpr::Kind::pow;
    p->exponent = e;
    p->kids = {base};
    return p;
  }

  ModExprPtr mod_atom() {
    const Token t = peek();
    auto e = std::make_shared<ModExpr>();
    if (t.kind == Token::Kind::integer) {
      e->kind = ModExpr::Kind::integer;
      e->value = integer();
      return e;
    }
    if (is_sym("(")) {
      next();
      ModExprPtr inner = mod_expr();
      expect_sym(")");
      return inner;
    }
    if (is_ident("m")) e->kind = ModExpr::Kind::m;
    else if (is_ident("alpha")) e->kind = ModExpr::Kind::alpha;
    else if (is_ident("beta")) e->kind = ModExpr::Kind::beta;
    else fail(fmt::format("unknown symbol '{}' in modular equation", describe(t)));
    next();
    return e;
  }

  static ModExprPtr mnode(ModExpr::Kind k, std::vector<ModExprPtr> kids) {
    auto e = std::make_shared<ModExpr>();
    e->kind = k;
    e->kids = std::move(kids);
    return e;
  }

  // ---- eta combinations ----
  std::vector<EtaTerm> eta_side() {
    std::vector<EtaTerm> out;
    bool first = true;
    while (true) {
      int sign = 1;
      if (is_sym("+") || is_sym("-")) {
        sign = next().text == "-" ? -1 : 1;
      } else if (!first) {
        break;
      }
      first = false;
      EtaTerm term;
      term.coefficient = sign;
      if (peek().kind == Token::Kind::integer) {
        term.coefficient *= integer();
        if (is_sym("*")) {
          next();
          expect_ident("eta");
          term.quotient = eta_list();
        }
      } else {
        expect_ident("eta");
        term.quotient = eta_list();
      }
      out.push_back(std::move(term));
      if (!(is_sym("+") || is_sym("-"))) break;
    }
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

IdentitySpec parse_entry(const Chunk& c) {
  IdentitySpec spec;
  spec.line = c.at(0).line;
  const std::size_t c1 = c.text.find(':');
  if (c1 == std::string::npos) throw RegistryError(spec.line, 1, "missing ':' after the identity name");
  spec.name = trim(c.text.substr(0, c1));
  if (spec.name.empty()) throw RegistryError(spec.line, 1, "empty identity name");
  const std::size_t c2 = c.text.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    const Pos p = c.at(c1);
    throw RegistryError(p.line, p.col, "missing ':' after the mode");
  }
  std::string mode = trim(c.text.substr(c1 + 1, c2 - c1 - 1));
  const Pos mode_pos = c.at(c1 + 1);
  if (const auto open = mode.find('('); open != std::string::npos) {
    if (mode.back() != ')') throw RegistryError(mode_pos.line, mode_pos.col, "unterminated option list");
    std::string opts = mode.substr(open + 1, mode.size() - open - 2);
    mode = trim(mode.substr(0, open));
    std::stringstream ss(opts);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw RegistryError(mode_pos.line, mode_pos.col, "option '" + trim(item) + "' lacks '='");
      spec.options[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
  }
  if (mode == "series") spec.mode = Mode::series;
  else if (mode == "sift") spec.mode = Mode::sift;
  else if (mode == "ternary") spec.mode = Mode::ternary;
  else if (mode == "positivity") spec.mode = Mode::positivity;
  else if (mode == "modeq3") spec.mode = Mode::modeq3;
  else if (mode == "eta-valence") spec.mode = Mode::eta_valence;
  else throw RegistryError(mode_pos.line, mode_pos.col, "unknown mode '" + mode + "'");
  spec.text = trim(c.text.substr(c2 + 1));

  Parser p(tokenize(c, c2 + 1, c.text.size()));
  switch (spec.mode) {
    case Mode::series:
    case Mode::sift:
      spec.lhs = p.series_expr();
      p.expect_sym("=");
      spec.rhs = p.series_expr();
      break;
    case Mode::positivity:
      spec.lhs = p.series_expr();
      break;
    case Mode::ternary:
      spec.tlhs = p.ternary_side();
      p.expect_sym("=");
      spec.trhs = p.ternary_side();
      spec.conditions = p.conditions();
      break;
    case Mode::modeq3:
      spec.mlhs = p.mod_expr();
      p.expect_sym("=");
      spec.mrhs = p.mod_expr();
      break;
    case Mode::eta_valence:
      spec.elhs = p.eta_side();
      p.expect_sym("=");
      spec.erhs = p.eta_side();
      if (!spec.options.count("level"))
        throw RegistryError(mode_pos.line, mode_pos.col, "eta-valence entries need a level option");
      break;
  }
  if (!p.at_end()) p.fail(fmt::format("unexpected '{}' after the identity", Parser::describe(p.peek())));
  return spec;
}

}  // namespace

std::string SeriesExpr::to_string() const {
  auto arg = [](int sign, i64 k) {
    std::string s = sign < 0 ? "-q" : "q";
    if (k != 1) s += fmt::format("^{}", k);
    return s;
  };
  switch (kind) {
    case Kind::integer: return value.get_str();
    case Kind::q_power: return exponent == 1 ? "q" : fmt::format("q^{}", exponent);
    case Kind::named: return name + "(" + arg(sign, power) + ")";
    case Kind::theta: return "f(" + arg(sign, power) + ", " + arg(sign2, power2) + ")";
    case Kind::eta: return "eta" + eta.to_string();
    case Kind::add: return "(" + kids[0]->to_string() + " + " + kids[1]->to_string() + ")";
    case Kind::sub: return "(" + kids[0]->to_string() + " - " + kids[1]->to_string() + ")";
    case Kind::mul: return kids[0]->to_string() + "*" + kids[1]->to_string();
    case Kind::div: return kids[0]->to_string() + "/(" + kids[1]->to_string() + ")";
    case Kind::neg: return "-" + kids[0]->to_string();
    case Kind::pow: return "(" + kids[0]->to_string() + ")^" + std::to_string(exponent);
    case Kind::sift: return fmt::format("S[{},{}]({})", t, s, kids[0]->to_string());
  }
  return "?";
}

Series evaluate(const SeriesExpr& e, std::size_t n) {
  using K = SeriesExpr::Kind;
  switch (e.kind) {
    case K::integer: return Series::monomial(0, e.value, n);
    case K::q_power:
      return static_cast<std::size_t>(e.exponent) < n ? Series::monomial(static_cast<std::size_t>(e.exponent), 1, n)
                                                      : Series(n);
    case K::named: return named_function(e.name, n, static_cast<unsigned>(e.power), e.sign);
    case K::theta: return general_theta(e.power, e.power2, n, e.sign, e.sign2);
    case K::eta: {
      EtaExpansion x = expand_eta_quotient(e.eta, n);
      if (x.offset < 0)
        throw std::domain_error(fmt::format("eta{} has a pole of order {} at q = 0", e.eta.to_string(), -x.offset));
      return shift(x.series, static_cast<std::size_t>(x.offset));
    }
    case K::add: return add(evaluate(*e.kids[0], n), evaluate(*e.kids[1], n));
    case K::sub: return sub(evaluate(*e.kids[0], n), evaluate(*e.kids[1], n));
    case K::mul: return mul(evaluate(*e.kids[0], n), evaluate(*e.kids[1], n));
    case K::div: return mul(evaluate(*e.kids[0], n), invert(evaluate(*e.kids[1], n)));
    case K::neg: return negate(evaluate(*e.kids[0], n));
    case K::pow: return power(evaluate(*e.kids[0], n), static_cast<unsigned>(e.exponent));
    case K::sift: return sift(evaluate(*e.kids[0], e.t * n), e.t, e.s);
  }
  throw std::logic_error("evaluate: bad node");
}

bool Condition::holds(i64 M) const {
  switch (kind) {
    case Kind::residue:
      return std::find(residues.begin(), residues.end(), mod(M, modulus)) != residues.end();
    case Kind::divides: return M % modulus == 0;
    case Kind::exact: {
      i64 pk = 1;
      for (i64 i = 0; i < exponent; ++i) pk *= modulus;
      return M % pk == 0 && M % (pk * modulus) != 0;
    }
    case Kind::jacobi: return jacobi(M, modulus) == value;
    case Kind::gcd: return gcd(M, modulus) == value;
  }
  return false;
}

std::string Condition::to_string() const {
  switch (kind) {
    case Kind::residue: {
      std::string r;
      for (i64 x : residues) r += (r.empty() ? "" : ",") + std::to_string(x);
      return fmt::format("M = {} mod {}", r, modulus);
    }
    case Kind::divides: return fmt::format("{} | M", modulus);
    case Kind::exact:
      return exponent == 1 ? fmt::format("{} || M", modulus) : fmt::format("{}^{} || M", modulus, exponent);
    case Kind::jacobi: return fmt::format("(M|{}) = {}", modulus, value);
    case Kind::gcd: return fmt::format("gcd(M,{}) = {}", modulus, value);
  }
  return "?";
}

std::vector<IdentitySpec> parse_registry(std::string_view text) {
  std::vector<IdentitySpec> out;
  std::map<std::string, std::size_t> seen;
  for (const Chunk& c : split_entries(text)) {
    IdentitySpec spec = parse_entry(c);
    if (auto it = seen.find(spec.name); it != seen.end())
      throw RegistryError(spec.line, 1, fmt::format("duplicate identity name '{}' (first defined on line {})",
                                                    spec.name, it->second));
    seen[spec.name] = spec.line;
    out.push_back(std::move(spec));
  }
  return out;
}

SeriesExprPtr parse_series_expression(std::string_view text) {
  Chunk c;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') throw RegistryError(1, i + 1, "expression must be a single line");
    c.text.push_back(text[i]);
    c.pos.push_back({1, i + 1});
  }
  Parser p(tokenize(c, 0, c.text.size()));
  SeriesExprPtr e = p.series_expr();
  if (!p.at_end()) p.fail(fmt::format("unexpected '{}'", Parser::describe(p.peek())));
  return e;
}

std::vector<IdentitySpec> load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open registry file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_registry(ss.str());
}

std::string default_registry_path() {
  if (const char* env = std::getenv("THETAFORMS_REGISTRY"); env && *env) return env;
#ifdef THETAFORMS_REGISTRY_FILE
  return THETAFORMS_REGISTRY_FILE;
#else
  return "identities.reg";
#endif
}

}  // namespace thetaforms
