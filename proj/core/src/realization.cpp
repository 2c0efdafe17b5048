#include "ncdeform/realization.hpp"

#include "ncdeform/errors.hpp"

namespace ncdeform {

namespace {

DSeries dseries_of(const UnivariateSeries& g, const DeformationParams& params, int order) {
  return dseries_from_univariate(g, params, order, SeriesVariable::B);
}

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

}  // namespace

UnivariateSeries f_series(FKind kind, int order, const std::vector<mpq_class>& custom) {
  switch (kind) {
    case FKind::sqrt_one_minus_B: {
      UnivariateSeries s = UnivariateSeries::sqrt_one_plus(order);
      std::vector<mpq_class> c = s.coefficients();
      for (std::size_t m = 1; m < c.size(); m += 2) c[m] = -c[m];
      return UnivariateSeries(std::move(c), order);
    }
    case FKind::unity:
      return UnivariateSeries::constant(1, order);
    case FKind::custom:
      return UnivariateSeries(custom, order);
  }
  throw DomainError("unknown f kind");
}

UnivariateSeries gamma2_from_f(const UnivariateSeries& f) {
  const UnivariateSeries fp = f.derivative();
  const int order = fp.order();
  const UnivariateSeries num = UnivariateSeries::constant(1, order) + f * fp * mpq_class(2);
  const UnivariateSeries den = f.truncated(order) - fp.shifted().truncated(order) * mpq_class(2);
  return -(num * den.inverse());
}

UnivariateSeries box_generator(const UnivariateSeries& f, const UnivariateSeries& gamma2) {
  const int order = std::min(f.order(), gamma2.order() + 1);
  const UnivariateSeries den = f.truncated(order) - gamma2.shifted().truncated(order);
  return den.inverse().integral();
}

RealizationSpec::RealizationSpec(DeformationParams params, FKind kind, int trunc, std::vector<mpq_class> custom)
    : params_(std::move(params)), kind_(kind), trunc_(trunc) {
  if (trunc_ < 2) throw DomainError("truncation order must be at least 2");
  if (kind_ == FKind::custom && (custom.empty() || custom.front() != 1)) {
    throw DomainError("custom f must start with f(0) = 1");
  }
  f_ = f_series(kind_, b_order() + 1, custom);
  gamma2_ = gamma2_from_f(f_);
}

WeylElement build_M(int n, int mu, int nu) {
  WeylElement m(n);
  if (mu == nu) return m;
  const auto un = sz(n);
  m.add_term(MultiIndex::unit(un, sz(mu)), MultiIndex::unit(un, sz(nu)), 1);
  m.add_term(MultiIndex::unit(un, sz(nu)), MultiIndex::unit(un, sz(mu)), -1);
  return m;
}

WeylElement build_xhat(const RealizationSpec& spec, int mu) {
  const auto& p = spec.params();
  const int n = spec.n();
  const int N = spec.trunc();
  if (mu < 0 || mu >= n) throw DimensionMismatch("coordinate index out of range");
  const auto un = sz(n);
  const DSeries phi = (dseries_of(spec.f(), p, N) - variable_A(p)).truncated(N);
  const DSeries g2 = dseries_of(spec.gamma2(), p, N);
  const DSeries d_mu = d_component(n, mu);

  WeylElement x(n, N);
  x.add_x_times_series(MultiIndex::unit(un, sz(mu)), phi.series());
  for (int alpha = 0; alpha < n; ++alpha) {
    const MultiIndex x_alpha = MultiIndex::unit(un, sz(alpha));
    // i (aX) D_mu
    if (p.a(alpha) != 0) {
      x.add_x_times_series(x_alpha, (d_mu * ExactScalar(mpq_class(0), p.a_upper(alpha))).series());
    }
    // -(a^2 - s)(XD) D_mu gamma_2
    if (p.b_prefactor() != 0) {
      const DSeries t = d_component(n, alpha) * d_mu * g2 * ExactScalar(mpq_class(-eta(alpha) * p.b_prefactor()));
      x.add_x_times_series(x_alpha, t.truncated(N).series());
    }
  }
  return x;
}

Realization::Realization(RealizationSpec spec) : spec_(std::move(spec)) {
  const int n = spec_.n();
  const int N = spec_.trunc();
  const auto& p = spec_.params();
  for (int mu = 0; mu < n; ++mu) {
    xhat_.push_back(build_xhat(spec_, mu));
    D_.push_back(WeylElement::D(n, mu));
    X_.push_back(WeylElement::X(n, mu));
  }
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) M_.push_back(build_M(n, mu, nu));
  }
  f_of_b_ = dseries_of(spec_.f(), p, N);
  phi_ = (f_of_b_ - variable_A(p)).truncated(N);
  phi_inv_ = dseries_invert(phi_, N);
  gamma2_ = dseries_of(spec_.gamma2(), p, N);
}

DSeries Realization::Phi(int alpha, int mu) const {
  const auto& p = spec_.params();
  const int N = trunc();
  DSeries out = DSeries::constant(n(), N, 0);
  if (alpha == mu) out += phi_ * ExactScalar(eta(mu));
  out += d_component(n(), mu) * ExactScalar(mpq_class(0), p.a(alpha));
  out -= d_component(n(), alpha) * d_component(n(), mu) * gamma2_ * ExactScalar(p.b_prefactor());
  return out.truncated(N);
}

std::pair<DSeries, DSeries> Realization::Z_pair() const {
  if (spec_.f_kind() != FKind::sqrt_one_minus_B) {
    throw DomainError("the shift operator is defined only for f(B) = sqrt(1 - B)");
  }
  const int N = trunc();
  const auto& p = spec_.params();
  DSeries zinv = (dseries_of(f_series(FKind::sqrt_one_minus_B, spec_.b_order()), p, N) - variable_A(p)).truncated(N);
  DSeries z = dseries_invert(zinv, N);
  return {std::move(zinv), std::move(z)};
}

DSeries Realization::box() const {
  // box = D.D * H(B) with H(t) = (integral of 1/(f - t gamma_2)) / t, so the
  // division by a^2 - s never happens numerically.
  const UnivariateSeries g = box_generator(spec_.f(), spec_.gamma2());
  std::vector<mpq_class> h(g.coefficients().begin() + 1, g.coefficients().end());
  const UnivariateSeries H(std::move(h), g.order() - 1);
  const int N = trunc();
  return (d_squared(n()) * dseries_of(H, spec_.params(), N)).truncated(N);
}

DSeries Realization::Phi_inverse(int alpha, int mu) const {
  const auto& p = spec_.params();
  const int N = trunc();
  const int nn = n();
  // h = 1 / (f(B) - B gamma_2(B))
  const DSeries h = dseries_invert(f_of_b_ - variable_B(p) * gamma2_, N);
  DSeries inner = DSeries::constant(nn, N, alpha == mu ? 1 : 0);
  const DSeries hd = h * d_component(nn, mu);
  inner -= hd * ExactScalar(mpq_class(0), p.a_upper(alpha));
  inner += d_component(nn, alpha) * hd * gamma2_ * ExactScalar(mpq_class(eta(alpha) * p.b_prefactor()));
  return (inner.truncated(N) * phi_inv_).truncated(N);
}

WeylElement Realization::inverse_realization(int mu) const {
  WeylElement out(n(), trunc());
  for (int alpha = 0; alpha < n(); ++alpha) out += xhat(alpha) * Phi_inverse(alpha, mu).to_weyl();
  return out;
}

WeylElement Realization::snyder_coordinate(int mu) const {
  WeylElement out = xhat(mu);
  const auto& p = spec_.params();
  for (int alpha = 0; alpha < n(); ++alpha) {
    if (p.a(alpha) != 0) out -= M(alpha, mu) * ExactScalar(mpq_class(0), p.a_upper(alpha));
  }
  return out;
}

}  // namespace ncdeform
