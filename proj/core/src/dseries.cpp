#include "ncdeform/dseries.hpp"

#include "ncdeform/errors.hpp"

namespace ncdeform {

DSeries DSeries::from_weyl(const WeylElement& u) {
  TruncatedSeries s(u.dim(), u.precision());
  for (const auto& [x_exp, series] : u.x_coefficients()) {
    if (x_exp.degree() != 0) throw DomainError("operator depends on X: " + u.to_string());
    s += series;
  }
  return DSeries(std::move(s));
}

DSeries d_component(int n, int mu) { return DSeries(TruncatedSeries::variable(n, kExactOrder, mu)); }

DSeries d_squared(int n) {
  TruncatedSeries s(n, kExactOrder);
  for (int mu = 0; mu < n; ++mu) {
    MultiIndex e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(mu)] = 2;
    s.add_to(e, eta(mu));
  }
  return DSeries(std::move(s));
}

DSeries variable_A(const DeformationParams& params) {
  const int n = params.n();
  TruncatedSeries s(n, kExactOrder);
  for (int mu = 0; mu < n; ++mu) {
    s.add_to(MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(mu)),
             ExactScalar(mpq_class(0), params.a_upper(mu)));
  }
  return DSeries(std::move(s));
}

DSeries variable_B(const DeformationParams& params) { return d_squared(params.n()) * ExactScalar(params.b_prefactor()); }

DSeries dseries_from_univariate(const UnivariateSeries& c, const DeformationParams& params, int order,
                                SeriesVariable var) {
  const DSeries v = var == SeriesVariable::A ? variable_A(params) : variable_B(params);
  return DSeries(compose(c, v.series(), order));
}

DSeries dseries_invert(const DSeries& z, int order) { return DSeries(invert(z.series().truncated(order))); }

TruncatedSeries momentum_form(const DSeries& z) {
  TruncatedSeries out(z.dim(), z.order());
  static const ExactScalar powers[4] = {ExactScalar(1), ExactScalar::i(), ExactScalar(-1), -ExactScalar::i()};
  z.series().for_each_nonzero([&](std::size_t, const MultiIndex& e, const ExactScalar& c) {
    out.add_to(e, c * powers[e.degree() % 4]);
  });
  return out;
}

}  // namespace ncdeform
