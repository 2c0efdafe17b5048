#pragma once

#include <complex>
#include <vector>

#include <json.hpp>

#include "ncdeform/truncated_series.hpp"

namespace ncdeform {

/// Exact power series in two momentum covectors k and q of dimension n.
/// Variables 0..n-1 are k, n..2n-1 are q; truncation is by total degree.
class BiSeries {
 public:
  BiSeries() = default;
  BiSeries(int n, int order) : n_(n), s_(2 * n, order) {}
  BiSeries(int n, TruncatedSeries s);

  static BiSeries k(int n, int order, int mu);
  static BiSeries q(int n, int order, int mu);
  /// Embeds a series in k alone (n variables).
  static BiSeries from_k_series(const TruncatedSeries& s);
  /// Embeds a series in q alone (n variables).
  static BiSeries from_q_series(const TruncatedSeries& s);

  int dim() const noexcept { return n_; }
  int order() const noexcept { return s_.order(); }
  const TruncatedSeries& series() const noexcept { return s_; }

  ExactScalar coefficient(const MultiIndex& k_exp, const MultiIndex& q_exp) const;
  /// The series with q = 0 (a series in k over n variables).
  TruncatedSeries at_q_zero() const;
  /// The series with k = 0 (a series in q over n variables).
  TruncatedSeries at_k_zero() const;
  std::complex<double> evaluate(const std::vector<double>& k, const std::vector<double>& q) const;

  BiSeries& operator+=(const BiSeries& o) { s_ += o.s_; return *this; }
  BiSeries& operator-=(const BiSeries& o) { s_ -= o.s_; return *this; }
  BiSeries& operator*=(const ExactScalar& c) { s_ *= c; return *this; }
  friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
  friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
  friend BiSeries operator*(BiSeries a, const ExactScalar& c) { return a *= c; }
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b) { return BiSeries(a.n_, multiply(a.s_, b.s_)); }
  bool agrees_with(const BiSeries& o) const { return s_.agrees_with(o.s_); }

  /// [{"k_exp": [..], "q_exp": [..], "coeff": "..."}], graded, then lexicographic on (k, q).
  nlohmann::json to_json() const;

 private:
  int n_ = 0;
  TruncatedSeries s_;
};

/// Evaluates a series in n variables at a real point.
std::complex<double> evaluate(const TruncatedSeries& s, const std::vector<double>& x);

}  // namespace ncdeform
