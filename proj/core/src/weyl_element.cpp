#include "ncdeform/weyl_element.hpp"

#include <algorithm>
#include <sstream>

#include "ncdeform/deformation_params.hpp"
#include "ncdeform/errors.hpp"

namespace ncdeform {

namespace {

void check_dims(const WeylElement& u, const WeylElement& v) {
  if (u.dim() != v.dim()) throw DimensionMismatch("Weyl elements of different dimension");
}

mpz_class binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// prod_mu C(gamma_mu, kappa_mu) eta_mu^kappa_mu: the weight of X^{gamma-kappa} d^kappa
// when a function of D is moved to the right of X^gamma.
mpq_class reorder_weight(const MultiIndex& gamma, const MultiIndex& kappa) {
  mpz_class w = 1;
  for (std::size_t mu = 0; mu < gamma.size(); ++mu) {
    if (kappa[mu] == 0) continue;
    w *= binomial(gamma[mu], kappa[mu]);
    if (eta(static_cast<int>(mu)) < 0 && kappa[mu] % 2 == 1) w = -w;
  }
  return mpq_class(w);
}

// prod_mu eta_mu^kappa_mu gamma_mu! / (gamma_mu - kappa_mu)!: D^kappa X^gamma |0>.
mpq_class falling_weight(const MultiIndex& gamma, const MultiIndex& kappa) {
  mpz_class w = 1;
  for (std::size_t mu = 0; mu < gamma.size(); ++mu) {
    for (int j = 0; j < kappa[mu]; ++j) w *= gamma[mu] - j;
    if (eta(static_cast<int>(mu)) < 0 && kappa[mu] % 2 == 1) w = -w;
  }
  return mpq_class(w);
}

class DerivativeCache {
 public:
  explicit DerivativeCache(const TruncatedSeries& base) : base_(base) {}

  const TruncatedSeries& get(const MultiIndex& kappa) {
    auto it = cache_.find(kappa);
    if (it != cache_.end()) return it->second;
    TruncatedSeries s = base_;
    for (std::size_t mu = 0; mu < kappa.size(); ++mu) {
      for (int j = 0; j < kappa[mu]; ++j) s = s.derivative(static_cast<int>(mu));
    }
    return cache_.emplace(kappa, std::move(s)).first->second;
  }

 private:
  const TruncatedSeries& base_;
  std::map<MultiIndex, TruncatedSeries> cache_;
};

using CoefficientMap = std::map<MultiIndex, TruncatedSeries>;

// out += sign * (u v), restricted to reorderings with kappa != 0 when skip_plain.
void accumulate_product(CoefficientMap& out, const WeylElement& u, const WeylElement& v, int precision,
                        bool skip_plain, const ExactScalar& sign) {
  const int n = u.dim();
  for (const auto& [alpha, c] : u.x_coefficients()) {
    DerivativeCache derivs(c);
    for (const auto& [gamma, d] : v.x_coefficients()) {
      for_each_sub_index(gamma, [&](const MultiIndex& kappa) {
        const int k = kappa.degree();
        if (skip_plain && k == 0) return;
        const TruncatedSeries& dc = derivs.get(kappa);
        if (dc.is_zero()) return;
        TruncatedSeries term = multiply(dc, d, precision);
        if (term.is_zero()) return;
        term *= sign * ExactScalar(reorder_weight(gamma, kappa));
        const MultiIndex x_exp = alpha + gamma - kappa;
        auto it = out.find(x_exp);
        if (it == out.end()) {
          out.emplace(x_exp, std::move(term));
        } else {
          it->second += term;
        }
      });
    }
  }
  (void)n;
}

WeylElement assemble(int n, int precision, CoefficientMap&& coeffs) {
  WeylElement r(n, precision);
  for (auto& [x_exp, series] : coeffs) r.add_x_times_series(x_exp, series);
  return r;
}

}  // namespace

WeylElement::WeylElement(int n, int precision) : n_(n), precision_(std::min(precision, kExactOrder)) {}

WeylElement WeylElement::scalar(int n, const ExactScalar& c) {
  WeylElement r(n);
  r.add_term(MultiIndex(static_cast<std::size_t>(n)), MultiIndex(static_cast<std::size_t>(n)), c);
  return r;
}

WeylElement WeylElement::X(int n, int mu) {
  WeylElement r(n);
  r.add_term(MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(mu)),
             MultiIndex(static_cast<std::size_t>(n)), 1);
  return r;
}

WeylElement WeylElement::D(int n, int mu) {
  WeylElement r(n);
  r.add_term(MultiIndex(static_cast<std::size_t>(n)),
             MultiIndex::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(mu)), 1);
  return r;
}

WeylElement WeylElement::from_d_series(const TruncatedSeries& series) {
  WeylElement r(series.nvars(), series.order());
  r.add_x_times_series(MultiIndex(static_cast<std::size_t>(series.nvars())), series);
  return r;
}

WeylElement WeylElement::from_terms(int n, const std::vector<WeylTerm>& terms, int precision) {
  WeylElement r(n, precision);
  for (const auto& t : terms) r.add_term(t.x_exp, t.d_exp, t.coeff);
  return r;
}

int WeylElement::x_degree() const {
  int d = -1;
  for (const auto& [x_exp, s] : coeffs_) d = std::max(d, x_exp.degree());
  return d;
}

std::vector<WeylTerm> WeylElement::terms() const {
  std::vector<WeylTerm> out;
  for (const auto& [x_exp, series] : coeffs_) {
    std::vector<WeylTerm> block;
    series.for_each_nonzero([&](std::size_t, const MultiIndex& d_exp, const ExactScalar& c) {
      block.push_back({x_exp, d_exp, c});
    });
    std::sort(block.begin(), block.end(), [](const WeylTerm& a, const WeylTerm& b) { return a.d_exp < b.d_exp; });
    out.insert(out.end(), std::make_move_iterator(block.begin()), std::make_move_iterator(block.end()));
  }
  return out;
}

ExactScalar WeylElement::coefficient(const MultiIndex& x_exp, const MultiIndex& d_exp) const {
  auto it = coeffs_.find(x_exp);
  return it == coeffs_.end() ? ExactScalar() : it->second.coeff(d_exp);
}

WeylTerm WeylElement::leading_term() const {
  if (coeffs_.empty()) throw DomainError("leading_term of zero element");
  auto all = terms();
  return all.front();
}

void WeylElement::drop_zero(const MultiIndex& x_exp) {
  auto it = coeffs_.find(x_exp);
  if (it != coeffs_.end() && it->second.is_zero()) coeffs_.erase(it);
}

void WeylElement::add_term(const MultiIndex& x_exp, const MultiIndex& d_exp, const ExactScalar& c) {
  if (x_exp.size() != static_cast<std::size_t>(n_) || d_exp.size() != static_cast<std::size_t>(n_)) {
    throw DimensionMismatch("term exponents do not match the dimension");
  }
  if (c.is_zero() || d_exp.degree() > precision_) return;
  auto [it, inserted] = coeffs_.try_emplace(x_exp, n_, precision_);
  it->second.add_to(d_exp, c);
  drop_zero(x_exp);
}

void WeylElement::add_x_times_series(const MultiIndex& x_exp, const TruncatedSeries& series) {
  if (series.nvars() != n_ || x_exp.size() != static_cast<std::size_t>(n_)) {
    throw DimensionMismatch("series does not match the dimension");
  }
  if (series.order() < precision_) *this = truncated(series.order());
  auto it = coeffs_.find(x_exp);
  if (it == coeffs_.end()) {
    TruncatedSeries s = series.truncated(precision_);
    if (!s.is_zero()) coeffs_.emplace(x_exp, std::move(s));
    return;
  }
  it->second += series.truncated(precision_);
  drop_zero(x_exp);
}

WeylElement WeylElement::truncated(int precision) const {
  WeylElement r(n_, std::min(precision_, precision));
  for (const auto& [x_exp, s] : coeffs_) {
    TruncatedSeries t = s.truncated(r.precision_);
    if (!t.is_zero()) r.coeffs_.emplace(x_exp, std::move(t));
  }
  return r;
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  check_dims(*this, o);
  if (o.precision_ < precision_) *this = truncated(o.precision_);
  for (const auto& [x_exp, s] : o.coeffs_) add_x_times_series(x_exp, s.truncated(precision_));
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
  check_dims(*this, o);
  if (o.precision_ < precision_) *this = truncated(o.precision_);
  for (const auto& [x_exp, s] : o.coeffs_) add_x_times_series(x_exp, -s.truncated(precision_));
  return *this;
}

WeylElement& WeylElement::operator*=(const ExactScalar& c) {
  if (c.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [x_exp, s] : coeffs_) s *= c;
  return *this;
}

WeylElement WeylElement::operator-() const {
  WeylElement r = *this;
  for (auto& [x_exp, s] : r.coeffs_) s = -s;
  return r;
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) { return normal_product(a, b); }

bool operator==(const WeylElement& a, const WeylElement& b) {
  if (a.n_ != b.n_ || a.precision_ != b.precision_ || a.coeffs_.size() != b.coeffs_.size()) return false;
  auto it = b.coeffs_.begin();
  for (const auto& [x_exp, s] : a.coeffs_) {
    if (it->first != x_exp || !s.agrees_with(it->second)) return false;
    ++it;
  }
  return true;
}

nlohmann::json WeylElement::to_json() const {
  auto out = nlohmann::json::array();
  for (const auto& t : terms()) {
    out.push_back({{"x_exp", t.x_exp.exponents()}, {"d_exp", t.d_exp.exponents()}, {"coeff", t.coeff.to_string()}});
  }
  return out;
}

WeylElement WeylElement::from_json(const nlohmann::json& j, int n, int precision) {
  if (!j.is_array()) throw ParseError("Weyl element JSON must be an array of terms");
  WeylElement r(n, precision);
  for (const auto& term : j) {
    auto x = term.at("x_exp").get<std::vector<int>>();
    auto d = term.at("d_exp").get<std::vector<int>>();
    r.add_term(MultiIndex(std::move(x)), MultiIndex(std::move(d)), ExactScalar::parse(term.at("coeff").get<std::string>()));
  }
  return r;
}

std::string WeylElement::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coeff << ")";
    for (std::size_t mu = 0; mu < t.x_exp.size(); ++mu) {
      if (t.x_exp[mu] > 0) os << "*X_" << mu << (t.x_exp[mu] > 1 ? "^" + std::to_string(t.x_exp[mu]) : "");
    }
    for (std::size_t mu = 0; mu < t.d_exp.size(); ++mu) {
      if (t.d_exp[mu] > 0) os << "*D_" << mu << (t.d_exp[mu] > 1 ? "^" + std::to_string(t.d_exp[mu]) : "");
    }
  }
  if (precision_ < kExactOrder) os << " + O(D^" << precision_ + 1 << ")";
  return os.str();
}

WeylElement normal_product(const WeylElement& u, const WeylElement& v, int cap) {
  check_dims(u, v);
  const int precision = std::min({cap, order_minus(u.precision(), std::max(v.x_degree(), 0)), v.precision()});
  CoefficientMap out;
  accumulate_product(out, u, v, precision, false, ExactScalar(1));
  return assemble(u.dim(), precision, std::move(out));
}

WeylElement commutator(const WeylElement& u, const WeylElement& v, int cap) {
  check_dims(u, v);
  const int precision = std::min({cap, order_minus(u.precision(), std::max(v.x_degree(), 0)), v.precision(),
                                  order_minus(v.precision(), std::max(u.x_degree(), 0)), u.precision()});
  CoefficientMap out;
  accumulate_product(out, u, v, precision, true, ExactScalar(1));
  accumulate_product(out, v, u, precision, true, ExactScalar(-1));
  return assemble(u.dim(), precision, std::move(out));
}

Polynomial apply(const WeylElement& u, const Polynomial& p) {
  if (u.dim() != p.dim()) throw DimensionMismatch("operator and polynomial of different dimension");
  if (p.degree() > u.precision()) {
    throw DomainError("polynomial degree " + std::to_string(p.degree()) + " exceeds operator precision " +
                      std::to_string(u.precision()));
  }
  Polynomial out(u.dim());
  for (const auto& [alpha, series] : u.x_coefficients()) {
    for (const auto& [gamma, pc] : p.terms()) {
      for_each_sub_index(gamma, [&](const MultiIndex& kappa) {
        if (kappa.degree() > series.stored_degree()) return;
        const ExactScalar c = series.coeff(kappa);
        if (c.is_zero()) return;
        out.add_term(alpha + gamma - kappa, c * pc * ExactScalar(falling_weight(gamma, kappa)));
      });
    }
  }
  return out;
}

}  // namespace ncdeform
