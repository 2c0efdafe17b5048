#include "ncdeform/truncated_series.hpp"

#include <algorithm>
#include <optional>

#include "ncdeform/errors.hpp"

namespace ncdeform {

namespace {

void check_same_dim(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.nvars() != b.nvars()) throw DimensionMismatch("series over different variable counts");
}

// Coefficients of a series rescaled to Gaussian integers over one common denominator.
struct ScaledCoefficients {
  std::vector<mpz_class> re;
  std::vector<mpz_class> im;
  std::vector<std::uint32_t> nonzero;
  mpz_class den = 1;
};

ScaledCoefficients scale_to_integers(const TruncatedSeries& s, std::size_t limit) {
  ScaledCoefficients out;
  const std::size_t n = std::min(limit, s.stored_size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = s.coeff(i);
    if (c.is_zero()) continue;
    out.nonzero.push_back(static_cast<std::uint32_t>(i));
    if (sgn(c.re()) != 0) mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), c.re().get_den_mpz_t());
    if (sgn(c.im()) != 0) mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), c.im().get_den_mpz_t());
  }
  out.re.resize(n);
  out.im.resize(n);
  for (std::uint32_t i : out.nonzero) {
    const auto& c = s.coeff(i);
    if (sgn(c.re()) != 0) {
      mpz_divexact(out.re[i].get_mpz_t(), out.den.get_mpz_t(), c.re().get_den_mpz_t());
      out.re[i] *= c.re().get_num();
    }
    if (sgn(c.im()) != 0) {
      mpz_divexact(out.im[i].get_mpz_t(), out.den.get_mpz_t(), c.im().get_den_mpz_t());
      out.im[i] *= c.im().get_num();
    }
  }
  return out;
}

int min_order(int a, int b) { return std::min(a, b); }

}  // namespace

TruncatedSeries::TruncatedSeries(int nvars, int order) : nvars_(nvars), order_(std::min(order, kExactOrder)) {
  if (nvars < 0) throw std::invalid_argument("TruncatedSeries: negative variable count");
}

TruncatedSeries TruncatedSeries::constant(int nvars, int order, const ExactScalar& c) {
  TruncatedSeries s(nvars, order);
  s.set(MultiIndex(static_cast<std::size_t>(nvars)), c);
  return s;
}

TruncatedSeries TruncatedSeries::variable(int nvars, int order, int var) {
  return monomial(nvars, order, MultiIndex::unit(static_cast<std::size_t>(nvars), static_cast<std::size_t>(var)), 1);
}

TruncatedSeries TruncatedSeries::monomial(int nvars, int order, const MultiIndex& exps, const ExactScalar& c) {
  TruncatedSeries s(nvars, order);
  s.set(exps, c);
  return s;
}

const GradedBasis& TruncatedSeries::basis() const {
  const int needed = std::max(stored_degree_, 0);
  if (!basis_ || basis_->order() < needed || basis_->nvars() != nvars_) basis_ = GradedBasis::get(nvars_, needed);
  return *basis_;
}

void TruncatedSeries::ensure_degree(int degree) {
  if (degree <= stored_degree_) return;
  coeffs_.resize(GradedBasis::count_upto(nvars_, degree));
  stored_degree_ = degree;
  basis_ = GradedBasis::get(nvars_, degree);
}

void TruncatedSeries::normalize() {
  if (stored_degree_ > order_) {
    coeffs_.resize(GradedBasis::count_upto(nvars_, order_));
    stored_degree_ = order_;
  }
  std::size_t last = coeffs_.size();
  while (last > 0 && coeffs_[last - 1].is_zero()) --last;
  if (last == 0) {
    coeffs_.clear();
    stored_degree_ = -1;
    return;
  }
  const auto& b = basis();
  const int deg = b.degree(last - 1);
  coeffs_.resize(GradedBasis::count_upto(nvars_, deg));
  stored_degree_ = deg;
}

ExactScalar TruncatedSeries::coeff(const MultiIndex& exps) const {
  if (exps.size() != static_cast<std::size_t>(nvars_)) throw DimensionMismatch("multi-index length differs from variable count");
  if (exps.degree() > stored_degree_) return {};
  return coeffs_[basis().index_of(exps)];
}

void TruncatedSeries::set(const MultiIndex& exps, const ExactScalar& c) {
  if (exps.size() != static_cast<std::size_t>(nvars_)) throw DimensionMismatch("multi-index length differs from variable count");
  if (exps.degree() > order_) return;
  ensure_degree(exps.degree());
  coeffs_[basis().index_of(exps)] = c;
  normalize();
}

void TruncatedSeries::add_to(const MultiIndex& exps, const ExactScalar& c) {
  if (exps.size() != static_cast<std::size_t>(nvars_)) throw DimensionMismatch("multi-index length differs from variable count");
  if (exps.degree() > order_) return;
  ensure_degree(exps.degree());
  coeffs_[basis().index_of(exps)] += c;
  normalize();
}

int TruncatedSeries::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_zero()) return basis().degree(i);
  }
  return kExactOrder;
}

const ExactScalar& TruncatedSeries::constant_term() const {
  static const ExactScalar zero;
  return coeffs_.empty() ? zero : coeffs_[0];
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  TruncatedSeries r = *this;
  r.order_ = std::min(order_, order);
  r.normalize();
  return r;
}

TruncatedSeries TruncatedSeries::derivative(int var) const {
  TruncatedSeries r(nvars_, order_minus(order_, 1));
  if (coeffs_.empty() || stored_degree_ == 0) return r;
  const auto& b = basis();
  r.ensure_degree(stored_degree_ - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    const std::int64_t lo = b.lower(var, i);
    if (lo < 0) continue;
    r.coeffs_[static_cast<std::size_t>(lo)] = coeffs_[i] * mpq_class(b.exponents(i)[static_cast<std::size_t>(var)]);
  }
  r.normalize();
  return r;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  check_same_dim(*this, o);
  order_ = min_order(order_, o.order_);
  ensure_degree(std::min(o.stored_degree_, order_));
  const std::size_t n = std::min(o.coeffs_.size(), coeffs_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!o.coeffs_[i].is_zero()) coeffs_[i] += o.coeffs_[i];
  }
  normalize();
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  check_same_dim(*this, o);
  order_ = min_order(order_, o.order_);
  ensure_degree(std::min(o.stored_degree_, order_));
  const std::size_t n = std::min(o.coeffs_.size(), coeffs_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!o.coeffs_[i].is_zero()) coeffs_[i] -= o.coeffs_[i];
  }
  normalize();
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const ExactScalar& c) {
  if (c.is_zero()) {
    coeffs_.clear();
    stored_degree_ = -1;
    return *this;
  }
  for (auto& v : coeffs_) {
    if (!v.is_zero()) v *= c;
  }
  return *this;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r = *this;
  for (auto& v : r.coeffs_) {
    if (!v.is_zero()) v = -v;
  }
  return r;
}

TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b, int cap) {
  check_same_dim(a, b);
  const int order = std::min({a.order_, b.order_, cap});
  TruncatedSeries r(a.nvars_, order);
  if (a.is_zero() || b.is_zero()) return r;
  const int top = std::min(order, a.stored_degree_ + b.stored_degree_);
  if (top < 0) return r;

  const auto basis = GradedBasis::get(a.nvars_, top);
  const auto sa = scale_to_integers(a, basis->size());
  const auto sb = scale_to_integers(b, basis->size());
  const bool a_re = std::any_of(sa.nonzero.begin(), sa.nonzero.end(), [&](auto i) { return sgn(sa.re[i]) != 0; });
  const bool a_im = std::any_of(sa.nonzero.begin(), sa.nonzero.end(), [&](auto i) { return sgn(sa.im[i]) != 0; });
  const bool b_re = std::any_of(sb.nonzero.begin(), sb.nonzero.end(), [&](auto i) { return sgn(sb.re[i]) != 0; });
  const bool b_im = std::any_of(sb.nonzero.begin(), sb.nonzero.end(), [&](auto i) { return sgn(sb.im[i]) != 0; });

  std::vector<mpz_class> out_re(basis->size());
  std::vector<mpz_class> out_im(basis->size());
  for (std::uint32_t i : sa.nonzero) {
    const auto row = basis->product_row(i);
    const mpz_srcptr ar = sa.re[i].get_mpz_t();
    const mpz_srcptr ai = sa.im[i].get_mpz_t();
    const bool has_ar = a_re && mpz_sgn(ar) != 0;
    const bool has_ai = a_im && mpz_sgn(ai) != 0;
    for (std::uint32_t j : sb.nonzero) {
      if (j >= row.size()) break;
      const std::uint32_t k = row[j];
      const mpz_srcptr br = sb.re[j].get_mpz_t();
      const mpz_srcptr bi = sb.im[j].get_mpz_t();
      if (has_ar) {
        if (b_re && mpz_sgn(br) != 0) mpz_addmul(out_re[k].get_mpz_t(), ar, br);
        if (b_im && mpz_sgn(bi) != 0) mpz_addmul(out_im[k].get_mpz_t(), ar, bi);
      }
      if (has_ai) {
        if (b_im && mpz_sgn(bi) != 0) mpz_submul(out_re[k].get_mpz_t(), ai, bi);
        if (b_re && mpz_sgn(br) != 0) mpz_addmul(out_im[k].get_mpz_t(), ai, br);
      }
    }
  }

  const mpz_class den = sa.den * sb.den;
  r.coeffs_.resize(basis->size());
  r.stored_degree_ = top;
  r.basis_ = basis;
  for (std::size_t k = 0; k < basis->size(); ++k) {
    const bool zr = sgn(out_re[k]) == 0, zi = sgn(out_im[k]) == 0;
    if (zr && zi) continue;
    mpq_class re, im;
    if (!zr) {
      re = mpq_class(out_re[k], den);
      re.canonicalize();
    }
    if (!zi) {
      im = mpq_class(out_im[k], den);
      im.canonicalize();
    }
    r.coeffs_[k] = ExactScalar(std::move(re), std::move(im));
  }
  r.normalize();
  return r;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a.nvars_ == b.nvars_ && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

bool TruncatedSeries::agrees_with(const TruncatedSeries& o) const {
  check_same_dim(*this, o);
  const int order = std::min(order_, o.order_);
  const std::size_t limit = order >= kExactOrder ? std::max(coeffs_.size(), o.coeffs_.size())
                                                 : GradedBasis::count_upto(nvars_, order);
  static const ExactScalar zero;
  for (std::size_t i = 0; i < limit; ++i) {
    const auto& x = i < coeffs_.size() ? coeffs_[i] : zero;
    const auto& y = i < o.coeffs_.size() ? o.coeffs_[i] : zero;
    if (x != y) return false;
  }
  return true;
}

TruncatedSeries compose(const UnivariateSeries& g, const TruncatedSeries& s, int cap) {
  if (!s.constant_term().is_zero()) throw DomainError("compose: inner series has a constant term");
  const int v = s.valuation();
  int order = std::min(cap, s.order());
  if (v < kExactOrder && g.order() < kExactOrder) {
    order = std::min(order, (g.order() + 1) * v - 1);
  }
  const int top_power = v >= kExactOrder ? 0
                        : order >= kExactOrder ? static_cast<int>(g.coefficients().size()) - 1
                                               : std::min(static_cast<int>(g.coefficients().size()) - 1, order / v);
  TruncatedSeries r = TruncatedSeries::constant(s.nvars(), order, ExactScalar(g[std::max(top_power, 0)]));
  for (int m = top_power - 1; m >= 0; --m) {
    r = multiply(r, s, order);
    r += TruncatedSeries::constant(s.nvars(), order, ExactScalar(g[m]));
  }
  return r.truncated(order);
}

TruncatedSeries substitute(const TruncatedSeries& f, const std::vector<TruncatedSeries>& subs, int cap) {
  if (subs.size() != static_cast<std::size_t>(f.nvars())) throw DimensionMismatch("substitute: wrong number of series");
  if (subs.empty()) return f;
  const int nv = subs.front().nvars();
  int vmin = kExactOrder;
  int order = cap;
  for (const auto& s : subs) {
    if (s.nvars() != nv) throw DimensionMismatch("substitute: series over different variables");
    if (!s.constant_term().is_zero()) throw DomainError("substitute: series with constant term");
    vmin = std::min(vmin, s.valuation());
    order = std::min(order, s.order());
  }
  if (!f.is_exact() && vmin < kExactOrder) order = std::min(order, (f.order() + 1) * vmin - 1);

  TruncatedSeries r(nv, order);
  if (f.is_zero()) return r;
  const auto& fb = f.basis();
  std::vector<std::optional<TruncatedSeries>> memo(f.stored_size());
  auto power_product = [&](auto&& self, std::size_t idx) -> const TruncatedSeries& {
    if (memo[idx]) return *memo[idx];
    const auto& e = fb.exponents(idx);
    int last = -1;
    for (int v = f.nvars() - 1; v >= 0; --v) {
      if (e[static_cast<std::size_t>(v)] > 0) {
        last = v;
        break;
      }
    }
    if (last < 0) {
      memo[idx] = TruncatedSeries::constant(nv, order, 1);
    } else {
      const auto lower = static_cast<std::size_t>(fb.lower(last, idx));
      memo[idx] = multiply(self(self, lower), subs[static_cast<std::size_t>(last)], order);
    }
    return *memo[idx];
  };
  f.for_each_nonzero([&](std::size_t idx, const MultiIndex& e, const ExactScalar& c) {
    if (vmin < kExactOrder && order < kExactOrder && e.degree() * vmin > order) return;
    r += power_product(power_product, idx) * c;
  });
  return r;
}

TruncatedSeries invert(const TruncatedSeries& s) {
  const ExactScalar c0 = s.constant_term();
  if (c0.is_zero()) throw DomainError("series inverse needs a nonzero constant term");
  if (s.is_exact() && s.stored_degree() > 0) throw DomainError("inverse of a polynomial needs a finite truncation order");
  if (s.stored_degree() <= 0) return TruncatedSeries::constant(s.nvars(), s.order(), ExactScalar(1) / c0);
  // 1/s = (1/c0) * 1/(1 + u) with u = s/c0 - 1.
  TruncatedSeries u = s * (ExactScalar(1) / c0);
  u -= TruncatedSeries::constant(s.nvars(), kExactOrder, 1);
  const auto geometric = UnivariateSeries::from_generator([](int m) { return mpq_class(m % 2 == 0 ? 1 : -1); }, s.order());
  return compose(geometric, u, s.order()) * (ExactScalar(1) / c0);
}

namespace {

// Inverse of a square matrix over ExactScalar by Gauss-Jordan elimination.
std::vector<std::vector<ExactScalar>> invert_matrix(std::vector<std::vector<ExactScalar>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<ExactScalar>> inv(n, std::vector<ExactScalar>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw DomainError("compositional inverse: singular linear part");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const ExactScalar scale = ExactScalar(1) / m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      const ExactScalar factor = m[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[row][j] -= factor * m[col][j];
        inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

std::vector<TruncatedSeries> compositional_inverse(const std::vector<TruncatedSeries>& map, int order) {
  const std::size_t m = map.size();
  for (const auto& f : map) {
    if (f.nvars() != static_cast<int>(m)) throw DimensionMismatch("compositional inverse needs a square map");
    if (!f.constant_term().is_zero()) throw DomainError("compositional inverse: map has a constant term");
  }
  const int nv = static_cast<int>(m);
  std::vector<std::vector<ExactScalar>> linear(m, std::vector<ExactScalar>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) linear[i][j] = map[i].coeff(MultiIndex::unit(m, j));
  }
  const auto linv = invert_matrix(linear);

  // Nonlinear remainder G_i = F_i - (L y)_i.
  std::vector<TruncatedSeries> nonlinear;
  for (std::size_t i = 0; i < m; ++i) {
    TruncatedSeries g = map[i].truncated(order);
    for (std::size_t j = 0; j < m; ++j) {
      if (!linear[i][j].is_zero()) g -= TruncatedSeries::variable(nv, kExactOrder, static_cast<int>(j)) * linear[i][j];
    }
    nonlinear.push_back(std::move(g));
  }

  auto apply_linv = [&](const std::vector<TruncatedSeries>& v) {
    std::vector<TruncatedSeries> out;
    for (std::size_t i = 0; i < m; ++i) {
      TruncatedSeries acc(nv, order);
      for (std::size_t j = 0; j < m; ++j) {
        if (!linv[i][j].is_zero()) acc += v[j] * linv[i][j];
      }
      out.push_back(std::move(acc));
    }
    return out;
  };

  std::vector<TruncatedSeries> y;
  for (int j = 0; j < nv; ++j) y.push_back(TruncatedSeries::variable(nv, order, j));
  std::vector<TruncatedSeries> h = apply_linv(y);
  // Each pass fixes one more degree: H = L^{-1}(y - G(H)).
  for (int pass = 1; pass < order; ++pass) {
    std::vector<TruncatedSeries> rhs;
    for (std::size_t i = 0; i < m; ++i) rhs.push_back(y[i] - substitute(nonlinear[i], h, order));
    h = apply_linv(rhs);
  }
  return h;
}

}  // namespace ncdeform
