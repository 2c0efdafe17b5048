#pragma once

#include "ncdeform/deformation_params.hpp"
#include "ncdeform/truncated_series.hpp"
#include "ncdeform/univariate_series.hpp"
#include "ncdeform/weyl_element.hpp"

namespace ncdeform {

/// Operator that depends on D only. Wraps a power series in D_0..D_{n-1};
/// `order()` is the retained derivative order.
class DSeries {
 public:
  DSeries() = default;
  explicit DSeries(TruncatedSeries series) : s_(std::move(series)) {}

  static DSeries constant(int n, int order, const ExactScalar& c) {
    return DSeries(TruncatedSeries::constant(n, order, c));
  }
  /// Throws DomainError when the element carries any X factor.
  static DSeries from_weyl(const WeylElement& u);

  int dim() const noexcept { return s_.nvars(); }
  int order() const noexcept { return s_.order(); }
  const TruncatedSeries& series() const noexcept { return s_; }
  WeylElement to_weyl() const { return WeylElement::from_d_series(s_); }
  DSeries truncated(int order) const { return DSeries(s_.truncated(order)); }

  DSeries& operator+=(const DSeries& o) { s_ += o.s_; return *this; }
  DSeries& operator-=(const DSeries& o) { s_ -= o.s_; return *this; }
  DSeries& operator*=(const ExactScalar& c) { s_ *= c; return *this; }
  DSeries operator-() const { return DSeries(-s_); }
  friend DSeries operator+(DSeries a, const DSeries& b) { return a += b; }
  friend DSeries operator-(DSeries a, const DSeries& b) { return a -= b; }
  friend DSeries operator*(DSeries a, const ExactScalar& c) { return a *= c; }
  friend DSeries operator*(const ExactScalar& c, DSeries a) { return a *= c; }
  friend DSeries operator*(const DSeries& a, const DSeries& b) { return DSeries(multiply(a.s_, b.s_)); }
  friend bool operator==(const DSeries& a, const DSeries& b) { return a.s_ == b.s_; }
  bool agrees_with(const DSeries& o) const { return s_.agrees_with(o.s_); }

 private:
  TruncatedSeries s_;
};

/// D_mu as an exact series.
DSeries d_component(int n, int mu);
/// D.D = eta^{mu mu} D_mu D_mu.
DSeries d_squared(int n);
/// A = i a^mu D_mu.
DSeries variable_A(const DeformationParams& params);
/// B = (a^2 - s) D.D.
DSeries variable_B(const DeformationParams& params);

enum class SeriesVariable { A, B };

/// sum_m c_m V^m with V = A or B, truncated at derivative order N.
DSeries dseries_from_univariate(const UnivariateSeries& c, const DeformationParams& params, int order,
                                SeriesVariable var = SeriesVariable::B);

/// Multiplicative inverse through the given order; DomainError on a zero constant term.
DSeries dseries_invert(const DSeries& z, int order);

/// Replaces D_mu by i q_mu: returns the coefficients as a series in q.
TruncatedSeries momentum_form(const DSeries& z);

}  // namespace ncdeform
