#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ncdeform/bi_series.hpp"
#include "ncdeform/deformation_params.hpp"
#include "ncdeform/momentum_flow.hpp"
#include "ncdeform/polynomial.hpp"
#include "ncdeform/truncated_series.hpp"

namespace ncdeform {

/// Exact series of the closed-form flow P_mu(k, q) at t = 1, one per component,
/// through total order M.
std::vector<BiSeries> flow_series(const DeformationParams& p, int order);

/// Exact series of K_mu(k) (n variables) through order M.
std::vector<TruncatedSeries> k_series(const DeformationParams& p, int order);

/// Compositional inverse of k_series through order M.
std::vector<TruncatedSeries> k_series_inverse(const DeformationParams& p, int order);

/// Exact series of the deformed addition D_mu(k, q) = P_mu(K^{-1}(k), q).
std::vector<BiSeries> dsum_series(const DeformationParams& p, int order);

/// Exact series of the closed-form coproduct for a = 0 (sqrt realization):
/// k_mu sqrt(1 - s q^2) + q_mu - s k_mu (kq) / (1 + sqrt(1 - s k^2)).
/// DomainError unless a = 0.
std::vector<BiSeries> snyder_dsum_series(const DeformationParams& p, int order);

/// Exact series of the closed-form coproduct for s = 0:
/// k_mu Z^{-1}(q) + q_mu - a_mu (kq) Z(k) + a_mu box(k) Z(k) (aq) / 2.
/// DomainError unless s = 0.
std::vector<BiSeries> kappa_dsum_series(const DeformationParams& p, int order);

/// Float closed forms of the two special coproducts.
MomentumVector snyder_dsum(const MomentumVector& k, const MomentumVector& q, const FloatParams& p);
MomentumVector kappa_dsum(const MomentumVector& k, const MomentumVector& q, const FloatParams& p);

/// e^{ikX} * e^{iqX} = e^{i D(k,q) X}: returns D(k, q) through K^{-1} and the flow.
MomentumVector star_plane_waves(const MomentumVector& k, const MomentumVector& q, const FloatParams& p);

/// The expansion coefficients of D_mu(k, q) to second order in a deformation
/// scaled as a -> eps a, s -> eps^2 s.
struct CoproductTerms {
  MomentumVector order0, order1, order2;
};
CoproductTerms coproduct_terms(const MomentumVector& k, const MomentumVector& q, const FloatParams& p);

struct CoproductFit {
  CoproductTerms fitted;
  CoproductTerms expected;
  double rel_err0 = 0, rel_err1 = 0, rel_err2 = 0;
  /// |D - orders 0..2| at eps = 1/8 over the same at eps = 1/16; about 8 when
  /// the remainder is O(eps^3).
  double residual_ratio = 0;
  nlohmann::json to_json() const;
};

/// Evaluates D(k, q) at eps in {1/2, 1/4, 1/8, 1/16}, fits a cubic in eps per
/// component and compares the eps^0, eps^1, eps^2 coefficients with coproduct_terms.
CoproductFit coproduct_check(const FloatParams& p, const MomentumVector& k, const MomentumVector& q);

struct SpecialCoproductReport {
  std::string kind;
  bool series_match = false;
  int series_order = 0;
  double float_err = 0;
  /// |Z^{-1}(D(k,q)) - Z^{-1}(k) Z^{-1}(q)|, s = 0 only.
  double z_product_err = 0;
  nlohmann::json to_json() const;
};

/// Compares the closed-form coproduct (a = 0 or s = 0) with dsum_series
/// exactly through `order` and with star_plane_waves at (k, q).
SpecialCoproductReport special_coproducts(const DeformationParams& p, const MomentumVector& k, const MomentumVector& q,
                                          int order);

/// Star product of polynomials: exp(X_alpha E^alpha) f(Y) g(Z) at Y = Z = X,
/// where E^alpha = i (D^alpha - k^alpha - q^alpha)(-i d_Y, -i d_Z).
/// Throws DomainError when deg f + deg g exceeds the series order.
Polynomial star_polynomials(const Polynomial& f, const Polynomial& g, const std::vector<BiSeries>& dsum);
Polynomial star_polynomials(const Polynomial& f, const Polynomial& g, const DeformationParams& p, int order);

/// |D(D(k,q), r) - D(k, D(q,r))|_inf on the float path.
double associativity_defect(const MomentumVector& k, const MomentumVector& q, const MomentumVector& r,
                            const FloatParams& p);

}  // namespace ncdeform
