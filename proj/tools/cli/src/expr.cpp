#include "ncdeform/cli/expr.hpp"

#include <cctype>
#include <map>

#include "ncdeform/errors.hpp"

namespace ncdeform::cli {

SyntaxError::SyntaxError(int line, int col, std::string expected)
    : std::runtime_error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) + ": expected " +
                         expected),
      line_(line),
      col_(col),
      expected_(std::move(expected)) {}

bool operator==(const Expr& x, const Expr& y) {
  if (x.kind != y.kind || x.name != y.name || x.indices != y.indices || x.number != y.number) return false;
  auto same = [](const ExprPtr& p, const ExprPtr& q) { return (!p && !q) || (p && q && *p == *q); };
  return same(x.lhs, y.lhs) && same(x.rhs, y.rhs);
}

namespace {

// Symbol name -> number of subscripts.
const std::map<std::string, int, std::less<>> kArity = {{"X", 1}, {"D", 1}, {"xhat", 1}, {"M", 2},   {"a", 1},
                                                         {"Z", 0}, {"Zinv", 0}, {"Box", 0}, {"i", 0}, {"s", 0}};

enum class Tok { Ident, Number, Plus, Minus, Star, LBracket, RBracket, LParen, RParen, Comma, Vacuum, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t{Tok::End, "", line_, col_};
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      t.kind = Tok::Ident;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        t.text += advance();
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Number;
      read_digits(t.text);
      if (pos_ < src_.size() && src_[pos_] == '/') {
        t.text += advance();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          throw SyntaxError(line_, col_, "denominator digits");
        }
        read_digits(t.text);
      }
      return t;
    }
    if (c == '|') {
      if (src_.substr(pos_, 3) != "|0>") throw SyntaxError(line_, col_, "'|0>'");
      advance(), advance(), advance();
      t.kind = Tok::Vacuum;
      t.text = "|0>";
      return t;
    }
    static const std::map<char, Tok> single = {{'+', Tok::Plus},     {'-', Tok::Minus},    {'*', Tok::Star},
                                               {'[', Tok::LBracket}, {']', Tok::RBracket}, {'(', Tok::LParen},
                                               {')', Tok::RParen},   {',', Tok::Comma}};
    auto it = single.find(c);
    if (it == single.end()) throw SyntaxError(line_, col_, "an operator, bracket or atom");
    t.kind = it->second;
    t.text = std::string(1, advance());
    return t;
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }
  void read_digits(std::string& out) {
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) out += advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

ExprPtr make(Expr::Kind kind, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { shift(); }

  ExprPtr parse() {
    ExprPtr e = expr();
    if (cur_.kind == Tok::Vacuum) {
      e = make(Expr::Kind::Vacuum, e);
      shift();
    }
    if (cur_.kind != Tok::End) fail(last_was_operand_ ? "an operator or end of input" : "end of input");
    return e;
  }

 private:
  void shift() { cur_ = lex_.next(); }
  [[noreturn]] void fail(const std::string& expected) const { throw SyntaxError(cur_.line, cur_.col, expected); }
  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(what);
    shift();
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const auto kind = cur_.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
      shift();
      e = make(kind, e, term());
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (cur_.kind == Tok::Star) {
      shift();
      e = make(Expr::Kind::Mul, e, factor());
    }
    return e;
  }

  ExprPtr factor() {
    last_was_operand_ = false;
    switch (cur_.kind) {
      case Tok::Minus:
        shift();
        return make(Expr::Kind::Neg, factor());
      case Tok::LParen: {
        shift();
        ExprPtr e = expr();
        expect(Tok::RParen, "')'");
        last_was_operand_ = true;
        return e;
      }
      case Tok::LBracket: {
        shift();
        ExprPtr l = expr();
        expect(Tok::Comma, "','");
        ExprPtr r = expr();
        expect(Tok::RBracket, "']'");
        last_was_operand_ = true;
        return make(Expr::Kind::Commutator, l, r);
      }
      case Tok::Number: {
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Number;
        e->number = mpq_class(cur_.text);
        e->number.canonicalize();
        shift();
        last_was_operand_ = true;
        return e;
      }
      case Tok::Ident: {
        ExprPtr e = symbol(cur_);
        shift();
        last_was_operand_ = true;
        return e;
      }
      default:
        fail("an atom, '(' or '['");
    }
  }

  // Splits "M_0_1" into name and subscripts; a dangling '_' is reported at its own column.
  static ExprPtr symbol(const Token& t) {
    const auto first = t.text.find('_');
    const std::string name = t.text.substr(0, first);
    auto it = kArity.find(name);
    if (it == kArity.end()) {
      throw SyntaxError(t.line, t.col, "one of X_i, D_i, xhat_i, M_i_j, a_i, Z, Zinv, Box, i, s");
    }
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Symbol;
    e->name = name;
    std::size_t pos = first;
    while (pos != std::string::npos) {
      const auto next = t.text.find('_', pos + 1);
      const std::string digits = t.text.substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1);
      const int col = t.col + static_cast<int>(pos);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw SyntaxError(t.line, col, "index digits after '_'");
      }
      if (static_cast<int>(e->indices.size()) == it->second) throw SyntaxError(t.line, col, "no further index");
      e->indices.push_back(std::stoi(digits));
      pos = next;
    }
    if (static_cast<int>(e->indices.size()) < it->second) {
      throw SyntaxError(t.line, t.col + static_cast<int>(t.text.size()), "'_' and an index");
    }
    return e;
  }

  Lexer lex_;
  Token cur_{Tok::End, "", 1, 1};
  bool last_was_operand_ = false;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul: return 2;
    case Expr::Kind::Vacuum: return 0;
    default: return 3;
  }
}

std::string wrapped(const Expr& e, bool parens) { return parens ? "(" + print_expr(e) + ")" : print_expr(e); }

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Symbol: {
      std::string out = e.name;
      for (int i : e.indices) out += "_" + std::to_string(i);
      return out;
    }
    case Expr::Kind::Number: return e.number.get_str();
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return wrapped(*e.lhs, precedence(*e.lhs) < 1) + (e.kind == Expr::Kind::Add ? " + " : " - ") +
             wrapped(*e.rhs, precedence(*e.rhs) <= 1);
    case Expr::Kind::Mul: return wrapped(*e.lhs, precedence(*e.lhs) < 2) + "*" + wrapped(*e.rhs, precedence(*e.rhs) <= 2);
    case Expr::Kind::Neg: return "-" + wrapped(*e.lhs, precedence(*e.lhs) < 3);
    case Expr::Kind::Commutator: return "[" + print_expr(*e.lhs) + ", " + print_expr(*e.rhs) + "]";
    case Expr::Kind::Vacuum: return print_expr(*e.lhs) + " |0>";
  }
  return {};
}

namespace {

WeylElement eval_op(const Expr& e, const Realization& r) {
  const int n = r.n();
  const int cap = r.trunc();
  auto index = [&](int i) {
    if (i < 0 || i >= n) throw EvalError("index " + std::to_string(i) + " out of range for n = " + std::to_string(n));
    return i;
  };
  switch (e.kind) {
    case Expr::Kind::Number: return WeylElement::scalar(n, ExactScalar(e.number));
    case Expr::Kind::Symbol: {
      const auto& nm = e.name;
      if (nm == "X") return r.X(index(e.indices[0]));
      if (nm == "D") return r.D(index(e.indices[0]));
      if (nm == "xhat") return r.xhat(index(e.indices[0]));
      if (nm == "M") return r.M(index(e.indices[0]), index(e.indices[1]));
      if (nm == "a") return WeylElement::scalar(n, ExactScalar(r.spec().params().a(index(e.indices[0]))));
      if (nm == "s") return WeylElement::scalar(n, ExactScalar(r.spec().params().s()));
      if (nm == "i") return WeylElement::scalar(n, ExactScalar::i());
      if (nm == "Box") return r.box().to_weyl();
      try {
        auto [zinv, z] = r.Z_pair();
        return nm == "Z" ? z.to_weyl() : zinv.to_weyl();
      } catch (const DomainError& err) {
        throw EvalError(err.what());
      }
    }
    case Expr::Kind::Add: return eval_op(*e.lhs, r) + eval_op(*e.rhs, r);
    case Expr::Kind::Sub: return eval_op(*e.lhs, r) - eval_op(*e.rhs, r);
    case Expr::Kind::Neg: return -eval_op(*e.lhs, r);
    case Expr::Kind::Mul: return normal_product(eval_op(*e.lhs, r), eval_op(*e.rhs, r), cap);
    case Expr::Kind::Commutator: return commutator(eval_op(*e.lhs, r), eval_op(*e.rhs, r), cap);
    case Expr::Kind::Vacuum: throw EvalError("'|0>' may only close the whole expression");
  }
  throw EvalError("unknown expression node");
}

}  // namespace

EvalResult evaluate(const Expr& e, const Realization& r) {
  EvalResult out;
  if (e.kind == Expr::Kind::Vacuum) {
    out.on_vacuum = true;
    out.op = eval_op(*e.lhs, r);
    out.poly = apply(out.op, Polynomial::constant(r.n(), 1));
  } else {
    out.op = eval_op(e, r);
  }
  return out;
}

}  // namespace ncdeform::cli
