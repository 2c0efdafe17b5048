#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "ncdeform/deformation_params.hpp"
#include "ncdeform/dseries.hpp"
#include "ncdeform/polynomial.hpp"
#include "ncdeform/univariate_series.hpp"
#include "ncdeform/verification_report.hpp"
#include "ncdeform/weyl_element.hpp"

namespace ncdeform {

enum class FKind { sqrt_one_minus_B, unity, custom };

/// Realization data: parameters, the function f(B) with f(0) = 1 and the
/// derivative truncation N.
class RealizationSpec {
 public:
  /// `custom` holds the coefficients of f as a polynomial in B (used only for
  /// FKind::custom). Throws DomainError when f(0) != 1 or N < 2.
  RealizationSpec(DeformationParams params, FKind kind, int trunc, std::vector<mpq_class> custom = {});

  const DeformationParams& params() const noexcept { return params_; }
  FKind f_kind() const noexcept { return kind_; }
  int trunc() const noexcept { return trunc_; }
  int n() const noexcept { return params_.n(); }
  /// f as a series in B, carried far enough to fill derivative order N.
  const UnivariateSeries& f() const noexcept { return f_; }
  const UnivariateSeries& gamma2() const noexcept { return gamma2_; }
  /// Order in B that covers derivative order N.
  int b_order() const noexcept { return trunc_ / 2 + 1; }

 private:
  DeformationParams params_;
  FKind kind_;
  int trunc_;
  UnivariateSeries f_;
  UnivariateSeries gamma2_;
};

/// Coefficients of f in B through the given order.
UnivariateSeries f_series(FKind kind, int order, const std::vector<mpq_class>& custom = {});

/// gamma_2 = -(1 + 2 f f') / (f - 2 B f'), through the order of f.
UnivariateSeries gamma2_from_f(const UnivariateSeries& f);

/// Integral from 0 to t of dt' / (f - t' gamma_2(t')), the B-series behind the
/// generalized d'Alembertian.
UnivariateSeries box_generator(const UnivariateSeries& f, const UnivariateSeries& gamma2);

/// Operators of one realization, built once and shared by the check suites.
class Realization {
 public:
  explicit Realization(RealizationSpec spec);

  const RealizationSpec& spec() const noexcept { return spec_; }
  int n() const noexcept { return spec_.n(); }
  int trunc() const noexcept { return spec_.trunc(); }

  const WeylElement& xhat(int mu) const { return xhat_.at(static_cast<std::size_t>(mu)); }
  const WeylElement& M(int mu, int nu) const { return M_.at(static_cast<std::size_t>(mu * n() + nu)); }
  const WeylElement& D(int mu) const { return D_.at(static_cast<std::size_t>(mu)); }
  const WeylElement& X(int mu) const { return X_.at(static_cast<std::size_t>(mu)); }

  /// phi = -A + f(B).
  const DSeries& phi() const noexcept { return phi_; }
  const DSeries& phi_inverse() const noexcept { return phi_inv_; }
  /// gamma_2(B) as an operator.
  const DSeries& gamma2() const noexcept { return gamma2_; }
  /// f(B) as an operator.
  const DSeries& f_of_B() const noexcept { return f_of_b_; }
  /// Phi_{alpha mu}(D): x_mu = X^alpha Phi_{alpha mu}.
  DSeries Phi(int alpha, int mu) const;

  /// Z^{-1} = -A + sqrt(1 - B) and its inverse. DomainError unless f = sqrt(1 - B).
  std::pair<DSeries, DSeries> Z_pair() const;
  /// Generalized d'Alembertian.
  DSeries box() const;
  /// (Phi^{-1})^alpha_mu(D) with X_mu = xhat_alpha (Phi^{-1})^alpha_mu.
  DSeries Phi_inverse(int alpha, int mu) const;
  /// sum_alpha xhat_alpha (Phi^{-1})^alpha_mu: X_mu rebuilt from NC coordinates.
  WeylElement inverse_realization(int mu) const;
  /// xhat_mu - i a^alpha M_{alpha mu}.
  WeylElement snyder_coordinate(int mu) const;

 private:
  RealizationSpec spec_;
  std::vector<WeylElement> xhat_, M_, D_, X_;
  DSeries phi_, phi_inv_, gamma2_, f_of_b_;
};

/// X_mu (-A + f(B)) + i (aX) D_mu - (a^2 - s)(XD) D_mu gamma_2.
WeylElement build_xhat(const RealizationSpec& spec, int mu);
/// X_mu D_nu - X_nu D_mu.
WeylElement build_M(int n, int mu, int nu);

/// Commutation relations, Lorentz algebra, mixed relations, the deformed
/// Heisenberg algebra, M through xhat, the trilinear identity, all Jacobi
/// identities among {xhat, M, D}, and Phi(0) = eta.
VerificationReport check_axioms(const Realization& r, int max_degree);

/// Shift operator relations; DomainError unless f = sqrt(1 - B).
VerificationReport check_z_suite(const Realization& r, int max_degree);

/// [box, xhat_mu] = 2 D_mu, [M, box] = 0, and closed forms where they apply.
VerificationReport check_box(const Realization& r, int max_degree);

/// X_mu rebuilt from xhat through Phi^{-1}, checked at operator level.
VerificationReport check_inverse_realization(const Realization& r, int max_degree);

/// Snyder coordinates: their commutators, Lorentz action, M through them and
/// their X, D realization.
VerificationReport check_snyder_map(const Realization& r, int max_degree);

/// Noncommutative polynomial in xhat, stored as coefficients of sorted words
/// xhat_0^{w_0} xhat_1^{w_1} ... (a PBW basis).
using NCPolynomial = std::map<MultiIndex, ExactScalar>;

/// The sorted word xhat^w applied to the vacuum.
Polynomial word_on_vacuum(const Realization& r, const MultiIndex& w);

/// Solves P(xhat)|0> = p for P in sorted words. Each word maps to its
/// leading monomial plus lower degree terms, so the solve is triangular.
NCPolynomial nc_from_commutative(const Realization& r, const Polynomial& p);

/// Operator P(xhat) for a sorted-word polynomial.
WeylElement nc_to_operator(const Realization& r, const NCPolynomial& p);

struct InvariantResult {
  NCPolynomial expression;
  VerificationReport report;
};

/// I_2 = X.X |0^>: rebuilds it in NC coordinates, compares with
/// xhat.xhat - i(n-1) a.xhat and checks M_{mu nu} I_2 |0> = 0.
InvariantResult invariant_I2(const Realization& r);

/// X_mu X_nu rebuilt from two inverse-realization factors acts on the vacuum
/// like the commutative product.
VerificationReport tensor_demo(const Realization& r);

}  // namespace ncdeform
