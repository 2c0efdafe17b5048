#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ncdeform {

/// Parses "p", "-p" or "p/q" into a canonical rational.
mpq_class parse_rational(std::string_view text);

/// Gaussian rational re + im*i with arbitrary precision parts.
///
/// Text form is "p/q" for real values, "r/t*i" for purely imaginary ones and
/// "p/q+r/t*i" (or "p/q-r/t*i") otherwise; integers drop the "/1". The
/// printed form parses back to the identical value.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(mpq_class re) : re_(std::move(re)) {}  // NOLINT
  ExactScalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static ExactScalar i() { return ExactScalar(mpq_class(0), mpq_class(1)); }
  static ExactScalar parse(std::string_view text);

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const noexcept { return sgn(im_) == 0; }

  ExactScalar conj() const { return ExactScalar(re_, -im_); }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string to_string() const;

  ExactScalar& operator+=(const ExactScalar& other);
  ExactScalar& operator-=(const ExactScalar& other);
  ExactScalar& operator*=(const ExactScalar& other);
  /// Throws DomainError on division by zero.
  ExactScalar& operator/=(const ExactScalar& other);
  ExactScalar& operator*=(const mpq_class& factor);

  /// this += a * b, skipping vanishing real or imaginary parts.
  void add_product(const ExactScalar& a, const ExactScalar& b);

  ExactScalar operator-() const { return ExactScalar(-re_, -im_); }

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  friend ExactScalar operator*(ExactScalar a, const mpq_class& b) { return a *= b; }
  friend ExactScalar operator*(const mpq_class& b, ExactScalar a) { return a *= b; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const ExactScalar& value);

 private:
  mpq_class re_;
  mpq_class im_;
};

}  // namespace ncdeform
