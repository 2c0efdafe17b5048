#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ncdeform/multi_index.hpp"

namespace ncdeform {

/// Sentinel order for series that are exact polynomials.
inline constexpr int kExactOrder = 1 << 28;

inline int order_minus(int order, int amount) { return order >= kExactOrder ? kExactOrder : order - amount; }

/// Enumeration of the monomials of total degree <= order in nvars variables.
///
/// Monomials are sorted by total degree, then lexicographically descending
/// within a degree (x0^d first). The index of a monomial does not depend on
/// the order the basis was built for, so a series truncated at a lower order
/// is a prefix of one truncated at a higher order.
class GradedBasis {
 public:
  /// Shared, immutable, cached basis.
  static std::shared_ptr<const GradedBasis> get(int nvars, int order);

  /// Number of monomials of degree <= degree in nvars variables.
  static std::size_t count_upto(int nvars, int degree);

  int nvars() const noexcept { return nvars_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return exponents_.size(); }
  std::size_t size_upto(int degree) const;

  const MultiIndex& exponents(std::size_t idx) const { return exponents_[idx]; }
  int degree(std::size_t idx) const { return degrees_[idx]; }
  std::size_t index_of(const MultiIndex& m) const;

  /// row[j] = index(exponents(i) + exponents(j)) for j < size_upto(order - degree(i)).
  std::span<const std::uint32_t> product_row(std::size_t i) const {
    return {products_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
  }

  /// Index of exponents(idx) - e_var, or -1 when that exponent is zero.
  std::int64_t lower(int var, std::size_t idx) const { return lower_[static_cast<std::size_t>(var) * size() + idx]; }

 private:
  GradedBasis(int nvars, int order);

  int nvars_;
  int order_;
  std::vector<MultiIndex> exponents_;
  std::vector<int> degrees_;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::uint32_t> products_;
  std::vector<std::int64_t> lower_;
};

}  // namespace ncdeform
