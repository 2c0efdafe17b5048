#include "ncdeform/univariate_series.hpp"

#include <algorithm>

#include "ncdeform/errors.hpp"

namespace ncdeform {

namespace {

mpz_class factorial(int n) {
  mpz_class r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

UnivariateSeries::UnivariateSeries(std::vector<mpq_class> coeffs, int order) : c_(std::move(coeffs)), order_(order) {
  if (static_cast<int>(c_.size()) > order_ + 1) c_.resize(static_cast<std::size_t>(order_ + 1));
  trim();
}

UnivariateSeries UnivariateSeries::constant(const mpq_class& c, int order) { return UnivariateSeries({c}, order); }

UnivariateSeries UnivariateSeries::identity(int order) { return UnivariateSeries({0, 1}, order); }

UnivariateSeries UnivariateSeries::from_generator(const std::function<mpq_class(int)>& gen, int order) {
  std::vector<mpq_class> c;
  c.reserve(static_cast<std::size_t>(order + 1));
  for (int m = 0; m <= order; ++m) c.push_back(gen(m));
  return UnivariateSeries(std::move(c), order);
}

UnivariateSeries UnivariateSeries::sqrt_one_plus(int order) {
  // binomial(1/2, m) by the ratio binomial(1/2, m) = binomial(1/2, m-1) * (1/2 - m + 1) / m.
  std::vector<mpq_class> c{1};
  for (int m = 1; m <= order; ++m) {
    mpq_class next = c.back() * mpq_class(3 - 2 * m, 2) / m;
    next.canonicalize();
    c.push_back(next);
  }
  return UnivariateSeries(std::move(c), order);
}

UnivariateSeries UnivariateSeries::sinhc(int order) {
  return from_generator([](int m) { return mpq_class(mpz_class(1), factorial(2 * m + 1)); }, order);
}

UnivariateSeries UnivariateSeries::coshc(int order) {
  return from_generator([](int m) { return mpq_class(mpz_class(1), factorial(2 * m + 2)); }, order);
}

UnivariateSeries UnivariateSeries::cosh_even(int order) {
  return from_generator([](int m) { return mpq_class(mpz_class(1), factorial(2 * m)); }, order);
}

mpq_class UnivariateSeries::operator[](int m) const {
  if (m < 0 || m >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(m)];
}

void UnivariateSeries::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

UnivariateSeries UnivariateSeries::truncated(int order) const {
  UnivariateSeries r = *this;
  r.order_ = std::min(order_, order);
  if (static_cast<int>(r.c_.size()) > r.order_ + 1) r.c_.resize(static_cast<std::size_t>(r.order_ + 1));
  r.trim();
  return r;
}

UnivariateSeries UnivariateSeries::derivative() const {
  std::vector<mpq_class> c;
  for (std::size_t m = 1; m < c_.size(); ++m) c.push_back(c_[m] * static_cast<long>(m));
  return UnivariateSeries(std::move(c), order_ - 1);
}

UnivariateSeries UnivariateSeries::integral() const {
  std::vector<mpq_class> c{0};
  for (std::size_t m = 0; m < c_.size(); ++m) {
    mpq_class v = c_[m] / static_cast<long>(m + 1);
    v.canonicalize();
    c.push_back(v);
  }
  return UnivariateSeries(std::move(c), order_ + 1);
}

UnivariateSeries UnivariateSeries::shifted() const {
  std::vector<mpq_class> c{0};
  c.insert(c.end(), c_.begin(), c_.end());
  return UnivariateSeries(std::move(c), order_ + 1);
}

UnivariateSeries UnivariateSeries::inverse() const {
  if (c_.empty() || sgn(c_[0]) == 0) throw DomainError("series inverse needs a nonzero constant term");
  std::vector<mpq_class> w(static_cast<std::size_t>(order_ + 1));
  w[0] = 1 / c_[0];
  for (int m = 1; m <= order_; ++m) {
    mpq_class acc = 0;
    for (int j = 1; j <= m; ++j) acc += (*this)[j] * w[static_cast<std::size_t>(m - j)];
    w[static_cast<std::size_t>(m)] = -acc * w[0];
  }
  return UnivariateSeries(std::move(w), order_);
}

UnivariateSeries& UnivariateSeries::operator+=(const UnivariateSeries& o) {
  order_ = std::min(order_, o.order_);
  c_.resize(std::max(c_.size(), o.c_.size()));
  for (std::size_t m = 0; m < o.c_.size(); ++m) c_[m] += o.c_[m];
  if (static_cast<int>(c_.size()) > order_ + 1) c_.resize(static_cast<std::size_t>(order_ + 1));
  trim();
  return *this;
}

UnivariateSeries& UnivariateSeries::operator-=(const UnivariateSeries& o) { return *this += -o; }

UnivariateSeries& UnivariateSeries::operator*=(const mpq_class& factor) {
  for (auto& v : c_) v *= factor;
  trim();
  return *this;
}

UnivariateSeries UnivariateSeries::operator-() const {
  UnivariateSeries r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

UnivariateSeries operator*(const UnivariateSeries& a, const UnivariateSeries& b) {
  const int order = std::min(a.order_, b.order_);
  std::vector<mpq_class> c(static_cast<std::size_t>(std::max(order + 1, 0)));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size() && static_cast<int>(i + j) <= order; ++j) {
      c[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return UnivariateSeries(std::move(c), order);
}

bool UnivariateSeries::agrees_with(const UnivariateSeries& o) const {
  const int order = std::min(order_, o.order_);
  for (int m = 0; m <= order; ++m) {
    if ((*this)[m] != o[m]) return false;
  }
  return true;
}

}  // namespace ncdeform
