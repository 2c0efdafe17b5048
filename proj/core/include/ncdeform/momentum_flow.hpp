#pragma once

#include <vector>

#include <json.hpp>

#include "ncdeform/deformation_params.hpp"

namespace ncdeform {

class Realization;

/// Real covector k_mu (lower index).
using MomentumVector = std::vector<double>;

/// eta^{mu nu} k_mu q_nu.
double dot(const MomentumVector& k, const MomentumVector& q);
/// (a k) for the deformation covector.
double a_dot(const FloatParams& p, const MomentumVector& k);
double max_abs_diff(const MomentumVector& x, const MomentumVector& y);

struct FlowDiagnostics {
  double w2 = 0.0;
  double radicand = 1.0;
  int iterations = 0;
};

struct FlowResult {
  MomentumVector p;
  FlowDiagnostics diagnostics;
};

/// sinh(W)/W and (cosh W - 1)/W^2 as functions of w2 = W^2. Negative w2 goes
/// through sin and cos; |w2| < 1e-8 uses the Taylor series.
struct EvenKernels {
  double sh;
  double ch;
};
EvenKernels even_kernels(double w2);

/// W^2 = (ak)^2 - s k^2.
double w_squared(const MomentumVector& k, const FloatParams& p);

/// Z^{-1}(q) = (aq) + sqrt(1 + (a^2 - s) q^2). DomainError for a negative radicand.
double z_inverse_of(const MomentumVector& q, const FloatParams& p);

/// box(k) = 2/(a^2 - s) [1 - sqrt(1 + (a^2 - s) k^2)], evaluated without the
/// division so a^2 = s is regular.
double box_of(const MomentumVector& k, const FloatParams& p);

/// Closed-form flow P^{(t)}(k, q) for f(B) = sqrt(1 - B).
FlowResult flow_closed_form(const MomentumVector& k, const MomentumVector& q, double t, const FloatParams& p);

/// Right-hand side k_mu [aP + sqrt(1 + (a^2 - s)P^2)] - a_mu (kP) of the flow equation.
MomentumVector flow_rhs(const MomentumVector& k, const MomentumVector& P, const FloatParams& p);

/// Classic fixed-step RK4 integration of the flow equation from P(0) = q.
FlowResult flow_ode(const MomentumVector& k, const MomentumVector& q, double t, const FloatParams& p, int steps);

/// K(k) = P(k, 0) at t = 1.
MomentumVector big_k(const MomentumVector& k, const FloatParams& p);

/// Newton iteration for K(x) = k starting at x = k with a central-difference
/// Jacobian. Throws NoConvergence after max_iter steps.
FlowResult big_k_inverse(const MomentumVector& k, const FloatParams& p, double tol = 1e-12, int max_iter = 50);

/// Both sides of the Z^{-1}(k) and box(k) identities in terms of K^{-1}(k).
struct KIdentities {
  MomentumVector k_inverse;
  double z_lhs = 0, z_rhs = 0;
  double box_lhs = 0, box_rhs = 0;
  double z_error() const;
  double box_error() const;
};
KIdentities check_k_identities(const MomentumVector& k, const FloatParams& p);

/// k^2 + m^2 (zero on the mass shell).
double mass_shell(const MomentumVector& k, double m);

/// Nested-commutator expansion of e^{-ik xhat}(-iD_mu)e^{ik xhat} through the
/// given order in k, compared coefficientwise with the exact Taylor series of
/// the closed-form flow at t = 1, and evaluated at (k, q) against it.
struct BchReport {
  int order = 0;
  int q_order = 0;
  bool exact_match = false;
  std::size_t coefficients_compared = 0;
  std::size_t mismatches = 0;
  double max_abs_err = 0.0;
  nlohmann::json to_json() const;
};
BchReport bch_cross_check(const MomentumVector& k, const MomentumVector& q, const Realization& r, int order);

}  // namespace ncdeform
