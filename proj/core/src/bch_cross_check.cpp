#include <map>

#include "ncdeform/coalgebra_star.hpp"
#include "ncdeform/dseries.hpp"
#include "ncdeform/errors.hpp"
#include "ncdeform/graded_basis.hpp"
#include "ncdeform/momentum_flow.hpp"
#include "ncdeform/realization.hpp"

namespace ncdeform {

BchReport bch_cross_check(const MomentumVector& k, const MomentumVector& q, const Realization& r, int order) {
  if (r.spec().f_kind() != FKind::sqrt_one_minus_B) throw DomainError("the closed-form flow needs f(B) = sqrt(1 - B)");
  if (order < 0 || order > 3) throw DomainError("bch_cross_check supports orders 0..3");
  const int n = r.n();
  const int N = r.trunc();
  const auto un = static_cast<std::size_t>(n);
  if (k.size() != un || q.size() != un) throw DimensionMismatch("momentum dimension differs from the realization");

  // Per component: k-exponent -> operator in D, summed over the nested commutators
  // Q_{m+1} = [Q_m, i k^alpha xhat_alpha] / (m + 1).
  std::vector<BiSeries> bch;
  for (int mu = 0; mu < n; ++mu) {
    std::map<MultiIndex, DSeries> level;
    level.emplace(MultiIndex(un), d_component(n, mu) * -ExactScalar::i());
    BiSeries sum(n, N);
    for (int m = 0;; ++m) {
      for (const auto& [a, Q] : level) {
        const TruncatedSeries qs = momentum_form(Q);
        TruncatedSeries embedded(2 * n, N);
        qs.for_each_nonzero([&](std::size_t, const MultiIndex& b, const ExactScalar& c) {
          if (a.degree() + b.degree() > N) return;
          std::vector<int> e(a.exponents());
          e.insert(e.end(), b.exponents().begin(), b.exponents().end());
          embedded.add_to(MultiIndex(std::move(e)), c);
        });
        sum += BiSeries(n, std::move(embedded));
      }
      if (m == order) break;
      std::map<MultiIndex, DSeries> next;
      for (const auto& [a, Q] : level) {
        const WeylElement qw = Q.to_weyl();
        for (int alpha = 0; alpha < n; ++alpha) {
          DSeries c = DSeries::from_weyl(commutator(qw, r.xhat(alpha))) *
                      ExactScalar(mpq_class(0, 1), mpq_class(eta(alpha), m + 1));
          const MultiIndex key = a + MultiIndex::unit(un, static_cast<std::size_t>(alpha));
          auto it = next.find(key);
          if (it == next.end()) {
            next.emplace(key, std::move(c));
          } else {
            it->second += c;
          }
        }
      }
      level = std::move(next);
    }
    bch.push_back(std::move(sum));
  }

  // Exact Taylor series of the closed-form flow, restricted to k-degree <= order.
  const auto flow = flow_series(r.spec().params(), N);
  BchReport rep;
  rep.order = order;
  rep.q_order = N - order;
  for (int mu = 0; mu < n; ++mu) {
    const auto& ref = flow[static_cast<std::size_t>(mu)].series();
    const auto& got = bch[static_cast<std::size_t>(mu)];
    // Level m is exact through q-degree N - m, i.e. total degree N.
    const int limit = std::min(got.order(), N);
    const auto basis = GradedBasis::get(2 * n, limit);
    for (std::size_t idx = 0; idx < basis->size(); ++idx) {
      const MultiIndex& e = basis->exponents(idx);
      int kdeg = 0;
      for (std::size_t v = 0; v < un; ++v) kdeg += e[v];
      if (kdeg > order) continue;
      const ExactScalar expected = ref.coeff(e);
      const ExactScalar actual = got.series().coeff(e);
      if (expected.is_zero() && actual.is_zero()) continue;
      ++rep.coefficients_compared;
      if (expected != actual) ++rep.mismatches;
    }
    // Evaluate the restricted reference and the commutator series at (k, q).
    TruncatedSeries restricted(2 * n, limit);
    ref.for_each_nonzero([&](std::size_t, const MultiIndex& e, const ExactScalar& c) {
      int kdeg = 0;
      for (std::size_t v = 0; v < un; ++v) kdeg += e[v];
      if (kdeg <= order && e.degree() <= limit) restricted.add_to(e, c);
    });
    const double err = std::abs(BiSeries(n, restricted).evaluate(k, q) - got.evaluate(k, q));
    rep.max_abs_err = std::max(rep.max_abs_err, err);
  }
  rep.exact_match = rep.mismatches == 0;
  return rep;
}

}  // namespace ncdeform
