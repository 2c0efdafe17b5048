#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace ncdeform {

/// Minkowski metric diag(-1, 1, ..., 1): the diagonal entry for index mu.
inline int eta(int mu) { return mu == 0 ? -1 : 1; }

/// Exact deformation parameters: dimension n, covector a_mu (lower index)
/// and the scalar s.
class DeformationParams {
 public:
  /// Throws DomainError for n < 2 or a of the wrong length.
  DeformationParams(int n, std::vector<mpq_class> a, mpq_class s);
  static DeformationParams undeformed(int n);

  int n() const noexcept { return n_; }
  const std::vector<mpq_class>& a() const noexcept { return a_; }
  const mpq_class& a(int mu) const { return a_[static_cast<std::size_t>(mu)]; }
  /// a^mu = eta^{mu mu} a_mu.
  mpq_class a_upper(int mu) const { return eta(mu) * a_[static_cast<std::size_t>(mu)]; }
  const mpq_class& s() const noexcept { return s_; }
  /// a^2 = eta^{mu nu} a_mu a_nu; may be negative or zero.
  const mpq_class& a_squared() const noexcept { return a2_; }
  /// a^2 - s, the prefactor of B.
  mpq_class b_prefactor() const { return a2_ - s_; }
  bool is_undeformed() const;

  std::string to_string() const;

 private:
  int n_;
  std::vector<mpq_class> a_;
  mpq_class s_;
  mpq_class a2_;
};

/// Floating mirror of DeformationParams for the momentum-space formulas.
struct FloatParams {
  int n = 0;
  std::vector<double> a;
  double s = 0.0;

  static FloatParams from_exact(const DeformationParams& p);
  /// Throws DomainError for n < 2 or a of the wrong length.
  static FloatParams make(std::vector<double> a, double s);
  double a_squared() const;
};

}  // namespace ncdeform
