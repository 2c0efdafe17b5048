#include "ncdeform/momentum_flow.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ncdeform/errors.hpp"

namespace ncdeform {

namespace {

void check_dim(const MomentumVector& k, const FloatParams& p) {
  if (k.size() != static_cast<std::size_t>(p.n)) throw DimensionMismatch("momentum dimension differs from params");
}

double norm_inf(const MomentumVector& k) {
  double m = 0;
  for (double v : k) m = std::max(m, std::abs(v));
  return m;
}

double radicand_of(const MomentumVector& q, const FloatParams& p) { return 1.0 + (p.a_squared() - p.s) * dot(q, q); }

MomentumVector axpy(const MomentumVector& x, double alpha, const MomentumVector& y) {
  MomentumVector r(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += alpha * y[i];
  return r;
}

}  // namespace

double dot(const MomentumVector& k, const MomentumVector& q) {
  if (k.size() != q.size()) throw DimensionMismatch("momenta of different dimension");
  double s = 0;
  for (std::size_t mu = 0; mu < k.size(); ++mu) s += eta(static_cast<int>(mu)) * k[mu] * q[mu];
  return s;
}

double a_dot(const FloatParams& p, const MomentumVector& k) { return dot(p.a, k); }

double max_abs_diff(const MomentumVector& x, const MomentumVector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("vectors of different dimension");
  double m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

EvenKernels even_kernels(double w2) {
  if (std::abs(w2) < 1e-8) {
    return {1.0 + w2 / 6.0 + w2 * w2 / 120.0, 0.5 + w2 / 24.0 + w2 * w2 / 720.0};
  }
  // cosh W - 1 = 2 sinh^2(W/2) avoids the cancellation near W = 0.
  if (w2 > 0) {
    const double w = std::sqrt(w2);
    const double half = std::sinh(0.5 * w) / (0.5 * w);
    return {std::sinh(w) / w, 0.5 * half * half};
  }
  const double v = std::sqrt(-w2);
  const double half = std::sin(0.5 * v) / (0.5 * v);
  return {std::sin(v) / v, 0.5 * half * half};
}

double w_squared(const MomentumVector& k, const FloatParams& p) {
  const double ak = a_dot(p, k);
  return ak * ak - p.s * dot(k, k);
}

double z_inverse_of(const MomentumVector& q, const FloatParams& p) {
  check_dim(q, p);
  const double rad = radicand_of(q, p);
  if (rad < 0) throw DomainError("1 + (a^2 - s) q^2 = " + std::to_string(rad) + " is negative");
  return a_dot(p, q) + std::sqrt(rad);
}

double box_of(const MomentumVector& k, const FloatParams& p) {
  check_dim(k, p);
  const double rad = radicand_of(k, p);
  if (rad < 0) throw DomainError("1 + (a^2 - s) k^2 is negative");
  return -2.0 * dot(k, k) / (1.0 + std::sqrt(rad));
}

FlowResult flow_closed_form(const MomentumVector& k, const MomentumVector& q, double t, const FloatParams& p) {
  check_dim(k, p);
  check_dim(q, p);
  FlowResult r;
  r.diagnostics.radicand = radicand_of(q, p);
  const double zinv = z_inverse_of(q, p);
  const double w2 = w_squared(k, p);
  r.diagnostics.w2 = w2;
  const auto [sh, ch] = even_kernels(t * t * w2);
  const double ak = a_dot(p, k), kq = dot(k, q), kk = dot(k, k);
  r.p.resize(q.size());
  for (std::size_t mu = 0; mu < q.size(); ++mu) {
    const double lin = k[mu] * zinv - p.a[mu] * kq;
    const double quad = (k[mu] * ak - p.a[mu] * kk) * zinv + p.a[mu] * ak * kq - p.s * k[mu] * kq;
    r.p[mu] = q[mu] + lin * t * sh + quad * t * t * ch;
  }
  return r;
}

MomentumVector flow_rhs(const MomentumVector& k, const MomentumVector& P, const FloatParams& p) {
  const double zinv = z_inverse_of(P, p);
  const double kP = dot(k, P);
  MomentumVector d(P.size());
  for (std::size_t mu = 0; mu < P.size(); ++mu) d[mu] = k[mu] * zinv - p.a[mu] * kP;
  return d;
}

FlowResult flow_ode(const MomentumVector& k, const MomentumVector& q, double t, const FloatParams& p, int steps) {
  check_dim(k, p);
  check_dim(q, p);
  if (steps < 1) throw DomainError("flow_ode needs at least one step");
  const double h = t / steps;
  MomentumVector P = q;
  double min_rad = radicand_of(q, p);
  for (int i = 0; i < steps; ++i) {
    const MomentumVector k1 = flow_rhs(k, P, p);
    const MomentumVector k2 = flow_rhs(k, axpy(P, 0.5 * h, k1), p);
    const MomentumVector k3 = flow_rhs(k, axpy(P, 0.5 * h, k2), p);
    const MomentumVector k4 = flow_rhs(k, axpy(P, h, k3), p);
    for (std::size_t mu = 0; mu < P.size(); ++mu) P[mu] += h / 6.0 * (k1[mu] + 2 * k2[mu] + 2 * k3[mu] + k4[mu]);
    min_rad = std::min(min_rad, radicand_of(P, p));
  }
  return {P, {w_squared(k, p), min_rad, steps}};
}

MomentumVector big_k(const MomentumVector& k, const FloatParams& p) {
  check_dim(k, p);
  const auto [sh, ch] = even_kernels(w_squared(k, p));
  const double ak = a_dot(p, k), kk = dot(k, k);
  MomentumVector K(k.size());
  for (std::size_t mu = 0; mu < k.size(); ++mu) K[mu] = (k[mu] * ak - p.a[mu] * kk) * ch + k[mu] * sh;
  return K;
}

FlowResult big_k_inverse(const MomentumVector& k, const FloatParams& p, double tol, int max_iter) {
  check_dim(k, p);
  const int n = p.n;
  const double step = 1e-6 * (1.0 + norm_inf(k));
  MomentumVector x = k;
  auto residual = [&](const MomentumVector& v) {
    MomentumVector F = big_k(v, p);
    for (int i = 0; i < n; ++i) F[static_cast<std::size_t>(i)] -= k[static_cast<std::size_t>(i)];
    return F;
  };
  auto newton_step = [&](const MomentumVector& v, const MomentumVector& Fv, MomentumVector& next) {
    Eigen::MatrixXd J(n, n);
    for (int j = 0; j < n; ++j) {
      MomentumVector xp = v, xm = v;
      xp[static_cast<std::size_t>(j)] += step;
      xm[static_cast<std::size_t>(j)] -= step;
      const MomentumVector Kp = big_k(xp, p), Km = big_k(xm, p);
      for (int i = 0; i < n; ++i) J(i, j) = (Kp[static_cast<std::size_t>(i)] - Km[static_cast<std::size_t>(i)]) / (2 * step);
    }
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(Fv.data(), n);
    const Eigen::VectorXd dx = J.partialPivLu().solve(rhs);
    if (!dx.allFinite()) return false;
    next = v;
    for (int i = 0; i < n; ++i) next[static_cast<std::size_t>(i)] -= dx(i);
    return true;
  };
  MomentumVector F = residual(x);
  for (int it = 0; it <= max_iter; ++it) {
    if (norm_inf(F) <= tol) {
      // One more step takes the residual from tol down to rounding level.
      MomentumVector polished;
      if (newton_step(x, F, polished)) {
        const MomentumVector Fp = residual(polished);
        if (norm_inf(Fp) <= norm_inf(F)) x = polished;
      }
      return {x, {w_squared(x, p), radicand_of(x, p), it}};
    }
    if (it == max_iter) break;
    MomentumVector next;
    if (!newton_step(x, F, next)) break;
    x = std::move(next);
    F = residual(x);
  }
  throw NoConvergence("K^{-1} Newton iteration did not reach tolerance; residual " + std::to_string(norm_inf(F)),
                      max_iter);
}

double KIdentities::z_error() const { return std::abs(z_lhs - z_rhs); }
double KIdentities::box_error() const { return std::abs(box_lhs - box_rhs); }

KIdentities check_k_identities(const MomentumVector& k, const FloatParams& p) {
  KIdentities r;
  r.k_inverse = big_k_inverse(k, p).p;
  const MomentumVector& x = r.k_inverse;
  const double w2 = w_squared(x, p);
  const auto [sh, ch] = even_kernels(w2);
  const double cosh_w = 1.0 + w2 * ch;
  r.z_lhs = z_inverse_of(k, p);
  r.z_rhs = cosh_w + a_dot(p, x) * sh;
  r.box_lhs = box_of(k, p);
  // 2 x^2 (1 - cosh W)/W^2 = -2 x^2 ch
  r.box_rhs = -2.0 * dot(x, x) * ch;
  return r;
}

double mass_shell(const MomentumVector& k, double m) { return dot(k, k) + m * m; }

nlohmann::json BchReport::to_json() const {
  return {{"check", "bch_cross_check"},
          {"order", order},
          {"q_order", q_order},
          {"coefficients_compared", coefficients_compared},
          {"mismatches", mismatches},
          {"exact_match", exact_match},
          {"max_abs_err", max_abs_err}};
}

}  // namespace ncdeform
