#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "ncdeform/exact_scalar.hpp"
#include "ncdeform/multi_index.hpp"

namespace ncdeform {

/// Commutative polynomial in X_0..X_{n-1}; the module on which D annihilates 1.
class Polynomial {
 public:
  explicit Polynomial(int n = 0) : n_(n) {}

  static Polynomial constant(int n, const ExactScalar& c);
  static Polynomial variable(int n, int mu);
  static Polynomial monomial(int n, const MultiIndex& exps, const ExactScalar& c = 1);

  int dim() const noexcept { return n_; }
  /// -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<MultiIndex, ExactScalar>& terms() const noexcept { return terms_; }
  ExactScalar coefficient(const MultiIndex& exps) const;

  void add_term(const MultiIndex& exps, const ExactScalar& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const ExactScalar& c);
  Polynomial operator-() const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const ExactScalar& c) { return a *= c; }
  friend Polynomial operator*(const ExactScalar& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// [{"x_exp": [..], "coeff": "p/q"}, ...] in ascending exponent order.
  nlohmann::json to_json() const;
  static Polynomial from_json(const nlohmann::json& j, int n);
  std::string to_string() const;

 private:
  int n_;
  std::map<MultiIndex, ExactScalar> terms_;
};

/// All monomials X^alpha with |alpha| <= max_degree.
std::vector<MultiIndex> monomials_upto(int n, int max_degree);

}  // namespace ncdeform
