#include "focgnn/parser.hpp"

#include <cctype>
#include <map>
#include <unordered_map>

#include "focgnn/error.hpp"

namespace focgnn {
namespace {

enum class Tok { kIdent, kInt, kLParen, kRParen, kComma, kAnd, kOr, kBang, kGeq, kLBracket,
                 kRBracket, kEquals, kSemi, kEnd };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int tl = line, tc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_' || src[j] == '@'))
        ++j;
      out.push_back({Tok::kIdent, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::kInt, std::string(src.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    Tok k;
    std::size_t len = 1;
    switch (c) {
      case '(': k = Tok::kLParen; break;
      case ')': k = Tok::kRParen; break;
      case ',': k = Tok::kComma; break;
      case '&': k = Tok::kAnd; break;
      case '|': k = Tok::kOr; break;
      case '!': k = Tok::kBang; break;
      case '[': k = Tok::kLBracket; break;
      case ']': k = Tok::kRBracket; break;
      case '=': k = Tok::kEquals; break;
      case ';': k = Tok::kSemi; break;
      case '>':
        if (i + 1 < src.size() && src[i + 1] == '=') {
          k = Tok::kGeq;
          len = 2;
          break;
        }
        [[fallthrough]];
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
    }
    out.push_back({k, std::string(src.substr(i, len)), tl, tc});
    advance(len);
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

struct Macro {
  Var param;
  Formula body;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const Signature& sig) : toks_(std::move(toks)), sig_(sig) {}

  Formula program() {
    while (peek().kind == Tok::kIdent && peek().text == "let") letdef();
    if (peek().kind == Tok::kEnd) fail("empty formula", peek());
    auto f = formula();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "'", peek());
    return f;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const auto& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) {
      fail(std::string("expected ") + what +
               (peek().kind == Tok::kEnd ? " but reached end of input"
                                         : " but found '" + peek().text + "'"),
           peek());
    }
    return next();
  }

  Var variable() {
    const auto& t = peek();
    if (t.kind != Tok::kIdent) fail("expected variable x or y", t);
    if (t.text != "x" && t.text != "y") fail("variable must be x or y, found '" + t.text + "'", t);
    next();
    return t.text == "x" ? Var::kX : Var::kY;
  }

  std::int64_t integer() {
    const auto& t = expect(Tok::kInt, "integer");
    std::int64_t v = 0;
    for (char c : t.text) {
      v = v * 10 + (c - '0');
      if (v > kMaxThreshold) fail("threshold exceeds 2^31", t);
    }
    return v;
  }

  void letdef() {
    next();  // let
    const auto& name = expect(Tok::kIdent, "macro name");
    if (name.text == "EQ") fail("EQ is reserved", name);
    if (sig_.has_unary(name.text) || sig_.has_binary(name.text))
      fail("macro '" + name.text + "' shadows a predicate", name);
    if (macros_.count(name.text)) fail("macro '" + name.text + "' defined twice", name);
    expect(Tok::kLParen, "'('");
    Var param = variable();
    expect(Tok::kRParen, "')'");
    expect(Tok::kEquals, "'='");
    const auto& start = peek();
    auto body = formula();
    if (body->free_vars() & ~var_bit(param))
      fail("macro body has free variables other than its parameter", start);
    expect(Tok::kSemi, "';'");
    macros_.emplace(name.text, Macro{param, body});
  }

  Formula formula() {
    std::vector<Formula> parts{conjunction()};
    while (peek().kind == Tok::kOr) {
      next();
      parts.push_back(conjunction());
    }
    return parts.size() == 1 ? parts[0] : make_or(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{negation()};
    while (peek().kind == Tok::kAnd) {
      next();
      parts.push_back(negation());
    }
    return parts.size() == 1 ? parts[0] : make_and(std::move(parts));
  }

  Formula negation() {
    if (peek().kind == Tok::kBang) {
      next();
      return make_not(negation());
    }
    return atom();
  }

  bool at_quantifier() const {
    if (peek().kind != Tok::kIdent || peek().text != "E") return false;
    const auto& n = peek(1);
    return n.kind == Tok::kGeq || n.kind == Tok::kLBracket ||
           (n.kind == Tok::kIdent && (n.text == "x" || n.text == "y"));
  }

  Formula atom() {
    const auto& t = peek();
    if (t.kind == Tok::kLParen) {
      next();
      auto f = formula();
      expect(Tok::kRParen, "')'");
      return f;
    }
    if (t.kind != Tok::kIdent) {
      if (t.kind == Tok::kEnd) fail("unexpected end of input", t);
      fail("unexpected '" + t.text + "'", t);
    }
    if (t.text == "true") {
      next();
      return make_true();
    }
    if (t.text == "false") {
      next();
      return make_false();
    }
    if (at_quantifier()) return quantifier();
    const Token name = next();
    if (name.text == "EQ") fail("the equality predicate EQ is not supported", name);
    if (name.text == "let") fail("'let' definitions must precede the formula", name);
    expect(Tok::kLParen, "'(' after predicate name");
    Var a = variable();
    if (peek().kind == Tok::kComma) {
      next();
      Var b = variable();
      expect(Tok::kRParen, "')'");
      if (!sig_.has_binary(name.text)) {
        if (sig_.has_unary(name.text) || macros_.count(name.text))
          fail("'" + name.text + "' is not a binary predicate", name);
        fail("unknown binary predicate '" + name.text + "'", name);
      }
      return make_relation(name.text, a, b);
    }
    expect(Tok::kRParen, "')'");
    if (auto it = macros_.find(name.text); it != macros_.end()) {
      const auto& m = it->second;
      return m.param == a ? m.body : swap_variables(m.body);
    }
    if (!sig_.has_unary(name.text)) {
      if (sig_.has_binary(name.text)) fail("'" + name.text + "' is not a unary predicate", name);
      fail("unknown unary predicate '" + name.text + "'", name);
    }
    return make_unary(name.text, a);
  }

  Formula quantifier() {
    next();  // E
    std::int64_t lo = 1;
    std::optional<std::int64_t> hi;
    const auto& bt = peek();
    if (bt.kind == Tok::kGeq) {
      next();
      lo = integer();
    } else if (bt.kind == Tok::kLBracket) {
      next();
      lo = integer();
      expect(Tok::kComma, "','");
      hi = integer();
      expect(Tok::kRBracket, "']'");
      if (*hi < lo) fail("empty counting interval", bt);
      if (*hi + 1 > kMaxThreshold) fail("threshold exceeds 2^31", bt);
    }
    if (lo == 0) fail("counting threshold must be at least 1", bt);
    Var v = variable();
    // a parenthesized body is an atom; bare bodies bind like '!'
    auto body = negation();
    auto lower = make_exists(lo, v, body);
    if (!hi) return lower;
    return make_and({lower, make_not(make_exists(*hi + 1, v, body))});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  std::map<std::string, Macro> macros_;
};

void print_into(const Formula& f, std::string& out);

void print_operand(const Formula& f, std::string& out) {
  if (f->kind() == FormulaKind::kAnd || f->kind() == FormulaKind::kOr) {
    out += '(';
    print_into(f, out);
    out += ')';
  } else {
    print_into(f, out);
  }
}

void print_into(const Formula& f, std::string& out) {
  switch (f->kind()) {
    case FormulaKind::kTrue:
      out += "true";
      return;
    case FormulaKind::kFalse:
      out += "false";
      return;
    case FormulaKind::kUnary:
      out += f->predicate();
      out += '(';
      out += var_char(f->var());
      out += ')';
      return;
    case FormulaKind::kRelation:
      out += f->predicate();
      out += '(';
      out += var_char(f->first());
      out += ',';
      out += var_char(f->second());
      out += ')';
      return;
    case FormulaKind::kNot:
      out += '!';
      print_operand(f->child(), out);
      return;
    case FormulaKind::kAnd:
    case FormulaKind::kOr: {
      const char* sep = f->kind() == FormulaKind::kAnd ? " & " : " | ";
      bool first = true;
      for (const auto& c : f->children()) {
        if (!first) out += sep;
        first = false;
        print_operand(c, out);
      }
      return;
    }
    case FormulaKind::kExistsGeq:
      out += "E>=";
      out += std::to_string(f->threshold());
      out += ' ';
      out += var_char(f->var());
      out += " (";
      print_into(f->body(), out);
      out += ')';
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) {
  Parser p(tokenize(text), sig);
  return p.program();
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

}  // namespace focgnn
