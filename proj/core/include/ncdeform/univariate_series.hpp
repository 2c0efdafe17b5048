#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <gmpxx.h>

namespace ncdeform {

/// Real rational power series c_0 + c_1 t + ... known exactly through t^order.
class UnivariateSeries {
 public:
  UnivariateSeries() = default;
  UnivariateSeries(std::vector<mpq_class> coeffs, int order);

  static UnivariateSeries constant(const mpq_class& c, int order);
  static UnivariateSeries identity(int order);  // t
  /// Series of sqrt(1 + t).
  static UnivariateSeries sqrt_one_plus(int order);
  /// sum_m t^m / (2m+1)!  (sinh(W)/W in the variable t = W^2).
  static UnivariateSeries sinhc(int order);
  /// sum_m t^m / (2m+2)!  ((cosh(W) - 1)/W^2 in t = W^2).
  static UnivariateSeries coshc(int order);
  /// sum_m t^m / (2m)!  (cosh(W) in t = W^2).
  static UnivariateSeries cosh_even(int order);
  /// Coefficients c_0..c_order drawn from a generator.
  static UnivariateSeries from_generator(const std::function<mpq_class(int)>& gen, int order);

  int order() const noexcept { return order_; }
  /// Coefficient of t^m; zero beyond the stored range.
  mpq_class operator[](int m) const;
  const std::vector<mpq_class>& coefficients() const noexcept { return c_; }

  UnivariateSeries truncated(int order) const;
  UnivariateSeries derivative() const;
  /// Antiderivative vanishing at t = 0 (order increases by one).
  UnivariateSeries integral() const;
  /// Multiplies by t (order increases by one).
  UnivariateSeries shifted() const;
  /// Multiplicative inverse; throws DomainError when c_0 == 0.
  UnivariateSeries inverse() const;

  UnivariateSeries& operator+=(const UnivariateSeries& o);
  UnivariateSeries& operator-=(const UnivariateSeries& o);
  UnivariateSeries& operator*=(const mpq_class& factor);
  friend UnivariateSeries operator+(UnivariateSeries a, const UnivariateSeries& b) { return a += b; }
  friend UnivariateSeries operator-(UnivariateSeries a, const UnivariateSeries& b) { return a -= b; }
  friend UnivariateSeries operator*(UnivariateSeries a, const mpq_class& f) { return a *= f; }
  friend UnivariateSeries operator*(const UnivariateSeries& a, const UnivariateSeries& b);
  UnivariateSeries operator-() const;

  /// Equal through the smaller of the two orders.
  bool agrees_with(const UnivariateSeries& o) const;

 private:
  void trim();

  std::vector<mpq_class> c_;
  int order_ = 0;
};

}  // namespace ncdeform
