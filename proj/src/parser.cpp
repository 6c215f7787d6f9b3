#include <cctype>
#include <optional>

#include "jetvar/grammar.hpp"

namespace jetvar {

ParseError::ParseError(std::string message, int line, int column,
                       std::vector<std::string> expected)
    : std::runtime_error([&] {
        std::string s = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
        if (!expected.empty()) {
          s += " (expected ";
          for (std::size_t i = 0; i < expected.size(); ++i)
            s += (i ? ", " : "") + expected[i];
          s += ")";
        }
        return s;
      }()),
      message_(std::move(message)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

ParseError ParseError::relocated(int line, int column_offset) const {
  return ParseError(message_, line, column_ + column_offset, expected_);
}

namespace {

enum class Tok {
  Number, Ident, Direction, LParen, RParen, LBracket, RBracket,
  Comma, Semicolon, Plus, Minus, Star, Slash, Caret, End
};

struct Token {
  Tok kind;
  std::string text;
  int column;  // 1-based
};

enum class Mode { Expr, Form, Field };

std::vector<Token> lex(std::string_view s, Mode mode) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < s.size()) {
    char c = s[i];
    int col = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (ident_start(c)) {
      // d/d<name> is a direction in vector-field mode.
      if (mode == Mode::Field && s.substr(i, 3) == "d/d" && i + 3 < s.size() &&
          ident_start(s[i + 3])) {
        std::size_t j = i + 3;
        while (j < s.size() && ident_char(s[j])) ++j;
        out.push_back({Tok::Direction, std::string(s.substr(i + 3, j - i - 3)), col});
        i = j;
        continue;
      }
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case ',': k = Tok::Comma; break;
      case ';': k = Tok::Semicolon; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", 1, col);
    }
    out.push_back({k, std::string(1, c), col});
    ++i;
  }
  out.push_back({Tok::End, "", static_cast<int>(s.size()) + 1});
  return out;
}

// A product term: coefficient, exterior generators in written order, and at
// most one direction d/dy^i.
struct Piece {
  Expression coef{1};
  std::vector<Generator> gens;
  std::optional<int> direction;
  bool is_plain() const { return gens.empty() && !direction; }
};

class Parser {
 public:
  Parser(std::string_view text, const BundleSignature& sig, Mode mode)
      : toks_(lex(text, mode)), sig_(sig), mode_(mode) {}

  std::vector<Piece> parse_top() {
    auto pieces = sum(mode_);
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'", {"operator", "end of input"});
    return pieces;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) const {
    throw ParseError(msg, 1, peek().column, std::move(expected));
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const {
    throw ParseError(msg, 1, t.column);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(peek().kind == Tok::End ? "unexpected end of input" : "unexpected '" + peek().text + "'", {what});
  }

  std::vector<Piece> sum(Mode mode) {
    std::vector<Piece> out;
    bool negate = false;
    if (accept(Tok::Minus)) negate = true;
    else accept(Tok::Plus);
    for (;;) {
      Piece p = product(mode);
      if (negate) p.coef = -p.coef;
      out.push_back(std::move(p));
      if (accept(Tok::Plus)) negate = false;
      else if (accept(Tok::Minus)) negate = true;
      else break;
    }
    return out;
  }

  Piece product(Mode mode) {
    Piece acc = unary(mode);
    for (;;) {
      if (accept(Tok::Star)) {
        const Token& at = peek();
        Piece rhs = unary(mode);
        acc.coef *= rhs.coef;
        acc.gens.insert(acc.gens.end(), rhs.gens.begin(), rhs.gens.end());
        if (rhs.direction) {
          if (acc.direction) fail_at(at, "a term may contain only one direction d/d<field>");
          acc.direction = rhs.direction;
        }
      } else if (accept(Tok::Slash)) {
        const Token& at = peek();
        Piece rhs = unary(mode);
        if (!rhs.is_plain() || !rhs.coef.is_constant())
          fail_at(at, "division is only by non-zero constants");
        Rational q = rhs.coef.constant();
        if (q == 0) fail_at(at, "division by zero");
        acc.coef *= Rational(1 / q);
      } else {
        return acc;
      }
    }
  }

  Piece unary(Mode mode) {
    if (accept(Tok::Minus)) {
      Piece p = unary(mode);
      p.coef = -p.coef;
      return p;
    }
    return power(mode);
  }

  Piece power(Mode mode) {
    Piece p = primary(mode);
    if (!p.gens.empty()) {
      // Wedge chain of generators.
      while (accept(Tok::Caret)) {
        const Token& at = peek();
        Piece g = primary(mode);
        if (g.gens.empty() || !g.coef.is_constant() || g.coef.constant() != 1)
          fail_at(at, "expected a generator after '^' in a wedge product");
        p.gens.insert(p.gens.end(), g.gens.begin(), g.gens.end());
      }
      return p;
    }
    if (accept(Tok::Caret)) {
      const Token& t = peek();
      if (t.kind != Tok::Number) fail("exponent must be a non-negative integer", {"integer"});
      next();
      if (t.text.size() > 6) fail_at(t, "exponent too large");
      if (p.direction) fail_at(t, "cannot raise a direction to a power");
      p.coef = int_pow(p.coef, std::stoi(t.text));
    }
    return p;
  }

  std::vector<int> base_list(bool allow_empty) {
    std::vector<int> idx;
    if (allow_empty && peek().kind == Tok::RBracket) return idx;
    for (;;) {
      const Token& t = peek();
      if (t.kind != Tok::Ident) fail("expected a base coordinate", {"base coordinate"});
      next();
      int l = sig_.base_index(t.text);
      if (l < 0) fail_at(t, "unknown coordinate " + t.text);
      idx.push_back(l);
      if (!accept(Tok::Comma)) break;
    }
    return idx;
  }

  int field_ref(const Token& t) {
    int i = sig_.fiber_index(t.text);
    if (i < 0) fail_at(t, "unknown field " + t.text);
    return i;
  }

  Piece primary(Mode mode) {
    const std::size_t n = sig_.base_dim();
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        Piece p;
        p.coef = Expression(Rational(t.text));
        return p;
      }
      case Tok::LParen: {
        next();
        auto inner = sum(Mode::Expr);
        expect(Tok::RParen, "')'");
        Piece p;
        p.coef = Expression();
        for (auto& q : inner) {
          if (!q.is_plain()) fail_at(t, "parentheses may only group scalar expressions");
          p.coef += q.coef;
        }
        return p;
      }
      case Tok::Direction: {
        next();
        Piece p;
        p.direction = field_ref(t);
        return p;
      }
      case Tok::Ident: {
        next();
        const std::string& name = t.text;
        if ((name == "sin" || name == "cos" || name == "exp") && peek().kind == Tok::LParen) {
          next();
          auto inner = sum(Mode::Expr);
          expect(Tok::RParen, "')'");
          Expression arg;
          for (auto& q : inner) arg += q.coef;
          Fn f = name == "sin" ? Fn::Sin : (name == "cos" ? Fn::Cos : Fn::Exp);
          Piece p;
          p.coef = Expression::func(f, arg);
          return p;
        }
        if (mode == Mode::Form && name == "theta" && peek().kind == Tok::LBracket &&
            sig_.fiber_index(name) < 0) {
          next();
          const Token& ft = peek();
          if (ft.kind != Tok::Ident) fail("expected a field name", {"field"});
          next();
          int field = field_ref(ft);
          std::vector<int> idx;
          if (accept(Tok::Semicolon)) idx = base_list(true);
          expect(Tok::RBracket, "']'");
          Piece p;
          p.gens.push_back(Generator::g({field, MultiIndex::from_indices(n, idx)}));
          return p;
        }
        if (int i = sig_.fiber_index(name); i >= 0) {
          std::vector<int> idx;
          if (accept(Tok::LBracket)) {
            idx = base_list(false);
            expect(Tok::RBracket, "']'");
          }
          Piece p;
          p.coef = Expression::jet(i, MultiIndex::from_indices(n, idx));
          return p;
        }
        if (int l = sig_.base_index(name); l >= 0) {
          if (peek().kind == Tok::LBracket) fail("base coordinate " + name + " cannot carry jet indices");
          Piece p;
          p.coef = Expression::base(l);
          return p;
        }
        if (mode == Mode::Form && name.size() > 1 && name[0] == 'd') {
          int l = sig_.base_index(name.substr(1));
          if (l >= 0) {
            Piece p;
            p.gens.push_back(Generator::d(l));
            return p;
          }
        }
        if (peek().kind == Tok::LBracket) {
          fail_at(t, "unknown field " + name);
        }
        fail_at(t, "unknown coordinate " + name);
      }
      case Tok::End:
        fail("unexpected end of input", {"number", "name", "'('"});
      default:
        fail("unexpected '" + t.text + "'", {"number", "name", "'('"});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const BundleSignature& sig_;
  Mode mode_;
};

}  // namespace

Expression parse_expression(std::string_view text, const BundleSignature& sig) {
  Parser p(text, sig, Mode::Expr);
  Expression e;
  for (auto& piece : p.parse_top()) e += piece.coef;
  return e;
}

Form parse_form(std::string_view text, const BundleSignature& sig) {
  Parser p(text, sig, Mode::Form);
  const std::size_t n = sig.base_dim();
  Form f(n);
  for (auto& piece : p.parse_top()) f += Form::product(n, piece.coef, piece.gens);
  return f;
}

VerticalField parse_vector_field(std::string_view text, const BundleSignature& sig) {
  Parser p(text, sig, Mode::Field);
  std::map<int, Expression> comps;
  for (auto& piece : p.parse_top()) {
    if (!piece.direction)
      throw ParseError("every term of a vector field needs a direction d/d<field>", 1, 1);
    comps[*piece.direction] += piece.coef;
  }
  return VerticalField(std::move(comps));
}

}  // namespace jetvar
