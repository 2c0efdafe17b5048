#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "ncdeform/exact_scalar.hpp"
#include "ncdeform/graded_basis.hpp"
#include "ncdeform/multi_index.hpp"
#include "ncdeform/univariate_series.hpp"

namespace ncdeform {

/// Dense multivariate power series with exact coefficients.
///
/// `order()` is the precision: every coefficient of total degree <= order()
/// is exact, nothing above it is stored. kExactOrder marks a polynomial that
/// is known completely. Coefficients are laid out in GradedBasis order and
/// trailing all-zero degrees are trimmed.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(int nvars, int order);

  static TruncatedSeries constant(int nvars, int order, const ExactScalar& c);
  static TruncatedSeries variable(int nvars, int order, int var);
  static TruncatedSeries monomial(int nvars, int order, const MultiIndex& exps, const ExactScalar& c);

  int nvars() const noexcept { return nvars_; }
  int order() const noexcept { return order_; }
  bool is_exact() const noexcept { return order_ >= kExactOrder; }
  /// Highest degree with stored coefficients, -1 for zero.
  int stored_degree() const noexcept { return stored_degree_; }
  std::size_t stored_size() const noexcept { return coeffs_.size(); }

  const ExactScalar& coeff(std::size_t idx) const { return coeffs_[idx]; }
  ExactScalar coeff(const MultiIndex& exps) const;
  /// Sets a coefficient; requires exps.degree() <= order().
  void set(const MultiIndex& exps, const ExactScalar& c);
  void add_to(const MultiIndex& exps, const ExactScalar& c);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Lowest degree carrying a nonzero coefficient; kExactOrder for zero.
  int valuation() const;
  const ExactScalar& constant_term() const;

  TruncatedSeries truncated(int order) const;
  /// Partial derivative; a finite order drops by one.
  TruncatedSeries derivative(int var) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const ExactScalar& c);
  TruncatedSeries operator-() const;
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const ExactScalar& c) { return a *= c; }
  friend TruncatedSeries operator*(const ExactScalar& c, TruncatedSeries a) { return a *= c; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return multiply(a, b); }

  /// Product truncated at min(a.order(), b.order(), cap).
  friend TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b, int cap);
  friend TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b) {
    return multiply(a, b, kExactOrder);
  }

  /// Same precision and same coefficients.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);
  /// Coefficients agree through the smaller of the two orders.
  bool agrees_with(const TruncatedSeries& o) const;

  /// Calls fn(index, exponents, coefficient) for every nonzero coefficient.
  template <class Fn>
  void for_each_nonzero(Fn&& fn) const {
    if (coeffs_.empty()) return;
    const auto& b = basis();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (!coeffs_[i].is_zero()) fn(i, b.exponents(i), coeffs_[i]);
    }
  }

  /// Basis large enough to address every stored coefficient.
  const GradedBasis& basis() const;

 private:
  friend class SeriesBuilder;
  void normalize();
  void ensure_degree(int degree);

  int nvars_ = 0;
  int order_ = kExactOrder;
  int stored_degree_ = -1;
  std::vector<ExactScalar> coeffs_;
  mutable std::shared_ptr<const GradedBasis> basis_;
};

/// g(s) for a univariate g and a series s without constant term, truncated
/// at min(cap, s.order(), the order implied by g's precision).
TruncatedSeries compose(const UnivariateSeries& g, const TruncatedSeries& s, int cap = kExactOrder);

/// f(s_0, ..., s_{m-1}): substitutes series without constant term for the
/// variables of f. Cost grows with the number of monomials of f.
TruncatedSeries substitute(const TruncatedSeries& f, const std::vector<TruncatedSeries>& subs, int cap = kExactOrder);

/// Multiplicative inverse of a series with nonzero constant term, to its order.
/// Throws DomainError for a zero constant term.
TruncatedSeries invert(const TruncatedSeries& s);

/// Compositional inverse of the map x -> F(x) (one series per variable, no
/// constant terms, invertible linear part), through the given order.
std::vector<TruncatedSeries> compositional_inverse(const std::vector<TruncatedSeries>& map, int order);

}  // namespace ncdeform
