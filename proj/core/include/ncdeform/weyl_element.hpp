#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncdeform/exact_scalar.hpp"
#include "ncdeform/multi_index.hpp"
#include "ncdeform/polynomial.hpp"
#include "ncdeform/truncated_series.hpp"

namespace ncdeform {

struct WeylTerm {
  MultiIndex x_exp;
  MultiIndex d_exp;
  ExactScalar coeff;
};

/// Normal-ordered element sum c * X^alpha D^beta of the Weyl algebra with
/// [D_mu, X_nu] = eta_{mu nu}, [X, X] = [D, D] = 0.
///
/// Stored as X-monomial -> power series in D. `precision()` bounds the D
/// degree: every coefficient with |beta| <= precision() is exact and nothing
/// above it is kept. Finite polynomial elements carry kExactOrder.
class WeylElement {
 public:
  explicit WeylElement(int n = 0, int precision = kExactOrder);

  static WeylElement scalar(int n, const ExactScalar& c);
  static WeylElement X(int n, int mu);
  static WeylElement D(int n, int mu);
  /// Element with every term at alpha = 0.
  static WeylElement from_d_series(const TruncatedSeries& series);
  static WeylElement from_terms(int n, const std::vector<WeylTerm>& terms, int precision = kExactOrder);

  int dim() const noexcept { return n_; }
  int precision() const noexcept { return precision_; }
  /// Highest X degree present, -1 for zero.
  int x_degree() const;
  bool is_zero() const noexcept { return coeffs_.empty(); }

  const std::map<MultiIndex, TruncatedSeries>& x_coefficients() const noexcept { return coeffs_; }
  /// Terms sorted lexicographically by (x_exp, d_exp).
  std::vector<WeylTerm> terms() const;
  ExactScalar coefficient(const MultiIndex& x_exp, const MultiIndex& d_exp) const;
  /// First nonzero term in canonical order; requires !is_zero().
  WeylTerm leading_term() const;

  void add_term(const MultiIndex& x_exp, const MultiIndex& d_exp, const ExactScalar& c);
  /// Adds X^x_exp * series(D).
  void add_x_times_series(const MultiIndex& x_exp, const TruncatedSeries& series);

  WeylElement truncated(int precision) const;

  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  WeylElement& operator*=(const ExactScalar& c);
  WeylElement operator-() const;
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend WeylElement operator*(WeylElement a, const ExactScalar& c) { return a *= c; }
  friend WeylElement operator*(const ExactScalar& c, WeylElement a) { return a *= c; }
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);

  /// Equal precision and identical terms.
  friend bool operator==(const WeylElement& a, const WeylElement& b);

  /// [{"x_exp": [..], "d_exp": [..], "coeff": "p/q+r/t*i"}, ...] in canonical order.
  nlohmann::json to_json() const;
  static WeylElement from_json(const nlohmann::json& j, int n, int precision = kExactOrder);
  std::string to_string() const;

 private:
  void drop_zero(const MultiIndex& x_exp);

  int n_;
  int precision_;
  std::map<MultiIndex, TruncatedSeries> coeffs_;
};

/// Normal-ordered product u*v. The result precision is
/// min(cap, u.precision() - v.x_degree(), v.precision()).
/// Throws DimensionMismatch when u and v live in different dimensions.
WeylElement normal_product(const WeylElement& u, const WeylElement& v, int cap = kExactOrder);

/// u*v - v*u, built from the reordering terms only.
WeylElement commutator(const WeylElement& u, const WeylElement& v, int cap = kExactOrder);

/// Left action on the polynomial module (D_mu 1 = 0).
/// Throws DomainError when deg(p) exceeds u.precision().
Polynomial apply(const WeylElement& u, const Polynomial& p);

}  // namespace ncdeform
