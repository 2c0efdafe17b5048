#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "ncdeform/deformation_params.hpp"
#include "ncdeform/realization.hpp"

namespace ncdeform::cli {

// Any problem with the configuration itself; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double ode = 1e-9;
  double newton = 1e-12;
  double float_match = 1e-10;
};

struct RunConfig {
  int n = 2;
  std::vector<mpq_class> a;
  mpq_class s;
  FKind f_kind = FKind::sqrt_one_minus_B;
  std::vector<mpq_class> f_series;  // only for FKind::custom
  int trunc = 8;
  int max_degree = 6;
  int series_order = 6;
  std::uint64_t seed = 1;
  Tolerances tol;

  DeformationParams params() const { return DeformationParams(n, a, s); }
  FloatParams float_params() const { return FloatParams::from_exact(params()); }
  RealizationSpec spec() const { return RealizationSpec(params(), f_kind, trunc, f_series); }
  std::string f_name() const;
  nlohmann::json to_json() const;
};

// Validates every field; throws ConfigError with a message naming the offending key.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Deterministic uniform doubles: identical streams on every platform for a given seed.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::vector<double> vector(int n, double bound);
  std::int64_t integer(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 rng_;
};

}  // namespace ncdeform::cli
