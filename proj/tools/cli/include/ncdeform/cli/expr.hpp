#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "ncdeform/polynomial.hpp"
#include "ncdeform/realization.hpp"
#include "ncdeform/weyl_element.hpp"

namespace ncdeform::cli {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int col, std::string expected);
  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  int line_;
  int col_;
  std::string expected_;
};

// Well-formed expression that cannot be evaluated under the given realization (bad index, missing Z, ...).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Symbol, Number, Add, Sub, Mul, Neg, Commutator, Vacuum };

  Kind kind;
  std::string name;          // Symbol: X, D, xhat, M, a, Z, Zinv, Box, i, s
  std::vector<int> indices;  // Symbol indices
  mpq_class number;          // Number
  ExprPtr lhs, rhs;          // operands; unary nodes use lhs only

  friend bool operator==(const Expr& x, const Expr& y);
};

ExprPtr parse_expr(std::string_view text);
std::string print_expr(const Expr& e);

struct EvalResult {
  bool on_vacuum = false;
  WeylElement op;
  Polynomial poly;
};

EvalResult evaluate(const Expr& e, const Realization& r);

}  // namespace ncdeform::cli
