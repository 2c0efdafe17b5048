#include "ncdeform/graded_basis.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace ncdeform {

namespace {

std::size_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

// Monomials of exact degree d in k variables.
std::size_t count_exact(int k, int d) {
  if (k == 0) return d == 0 ? 1 : 0;
  return binomial(d + k - 1, k - 1);
}

void enumerate_degree(int nvars, int degree, std::vector<MultiIndex>& out) {
  MultiIndex current(static_cast<std::size_t>(nvars));
  // Recursive fill, highest exponent in the leading variable first.
  auto fill = [&](auto&& self, int var, int remaining) -> void {
    if (var == nvars - 1) {
      current[static_cast<std::size_t>(var)] = remaining;
      out.push_back(current);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      current[static_cast<std::size_t>(var)] = e;
      self(self, var + 1, remaining - e);
    }
  };
  if (nvars == 0) {
    out.push_back(current);
    return;
  }
  fill(fill, 0, degree);
}

}  // namespace

std::size_t GradedBasis::count_upto(int nvars, int degree) {
  if (degree < 0) return 0;
  return binomial(nvars + degree, nvars);
}

std::shared_ptr<const GradedBasis> GradedBasis::get(int nvars, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const GradedBasis>> cache;
  if (nvars < 0 || order < 0) throw std::invalid_argument("GradedBasis: negative size");
  std::lock_guard lock(mutex);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot = std::shared_ptr<const GradedBasis>(new GradedBasis(nvars, order));
  return slot;
}

GradedBasis::GradedBasis(int nvars, int order) : nvars_(nvars), order_(order) {
  for (int d = 0; d <= order; ++d) enumerate_degree(nvars, d, exponents_);
  degrees_.reserve(exponents_.size());
  for (const auto& m : exponents_) degrees_.push_back(m.degree());

  row_offsets_.reserve(exponents_.size() + 1);
  row_offsets_.push_back(0);
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    const std::size_t len = size_upto(order - degrees_[i]);
    for (std::size_t j = 0; j < len; ++j) {
      products_.push_back(static_cast<std::uint32_t>(index_of(exponents_[i] + exponents_[j])));
    }
    row_offsets_.push_back(products_.size());
  }

  lower_.assign(static_cast<std::size_t>(nvars) * exponents_.size(), -1);
  for (int v = 0; v < nvars; ++v) {
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
      MultiIndex m = exponents_[i];
      if (m[static_cast<std::size_t>(v)] == 0) continue;
      --m[static_cast<std::size_t>(v)];
      lower_[static_cast<std::size_t>(v) * exponents_.size() + i] = static_cast<std::int64_t>(index_of(m));
    }
  }
}

std::size_t GradedBasis::size_upto(int degree) const { return count_upto(nvars_, degree); }

std::size_t GradedBasis::index_of(const MultiIndex& m) const {
  const int d = m.degree();
  std::size_t rank = count_upto(nvars_, d - 1);
  int remaining = d;
  for (int v = 0; v + 1 < nvars_; ++v) {
    const int e = m[static_cast<std::size_t>(v)];
    for (int x = remaining; x > e; --x) rank += count_exact(nvars_ - v - 1, remaining - x);
    remaining -= e;
  }
  return rank;
}

}  // namespace ncdeform
