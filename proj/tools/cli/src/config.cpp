#include "ncdeform/cli/config.hpp"

#include <algorithm>
#include <fstream>

#include "ncdeform/errors.hpp"
#include "ncdeform/exact_scalar.hpp"

namespace ncdeform::cli {

namespace {

using nlohmann::json;

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

mpq_class rational_field(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + ": rationals must be given as strings such as \"1/3\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

int int_field(const json& j, const char* key, int fallback, int lo, int hi) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) throw ConfigError(std::string(key) + ": expected an integer");
  const auto x = v->get<long long>();
  if (x < lo || x > hi) {
    throw ConfigError(std::string(key) + ": must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(x);
}

double tol_field(const json& j, const char* key, double fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number() || v->get<double>() <= 0) throw ConfigError(std::string("tolerances.") + key + ": expected a positive number");
  return v->get<double>();
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

}  // namespace

std::string RunConfig::f_name() const {
  switch (f_kind) {
    case FKind::sqrt_one_minus_B: return "sqrt";
    case FKind::unity: return "one";
    case FKind::custom: return "series";
  }
  return "?";
}

json RunConfig::to_json() const {
  json j;
  j["n"] = n;
  j["a"] = json::array();
  for (const auto& x : a) j["a"].push_back(rational_text(x));
  j["s"] = rational_text(s);
  if (f_kind == FKind::custom) {
    json series = json::array();
    for (const auto& c : f_series) series.push_back(rational_text(c));
    j["f"] = {{"series", series}};
  } else {
    j["f"] = f_name();
  }
  j["trunc"] = trunc;
  j["max_degree"] = max_degree;
  j["series_order"] = series_order;
  j["seed"] = seed;
  j["tolerances"] = {{"ode", tol.ode}, {"newton", tol.newton}, {"float_match", tol.float_match}};
  return j;
}

RunConfig parse_config(const json& j) {
  static const std::vector<std::string> known = {"n",  "a", "s", "f", "trunc", "max_degree", "series_order", "seed",
                                                 "tolerances"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key '" + key + "'");
  }

  RunConfig cfg;
  if (!find(j, "n")) throw ConfigError("n: required");
  cfg.n = int_field(j, "n", 2, 2, 16);

  const json* a = find(j, "a");
  if (!a) {
    cfg.a.assign(static_cast<std::size_t>(cfg.n), mpq_class(0));
  } else {
    if (!a->is_array() || a->size() != static_cast<std::size_t>(cfg.n)) {
      throw ConfigError("a: expected an array of " + std::to_string(cfg.n) + " rational strings");
    }
    for (std::size_t i = 0; i < a->size(); ++i) cfg.a.push_back(rational_field((*a)[i], "a[" + std::to_string(i) + "]"));
  }
  if (const json* s = find(j, "s")) cfg.s = rational_field(*s, "s");

  if (const json* f = find(j, "f")) {
    if (f->is_string() && *f == "sqrt") {
      cfg.f_kind = FKind::sqrt_one_minus_B;
    } else if (f->is_string() && *f == "one") {
      cfg.f_kind = FKind::unity;
    } else if (f->is_object() && f->size() == 1 && f->contains("series") && (*f)["series"].is_array() &&
               !(*f)["series"].empty()) {
      cfg.f_kind = FKind::custom;
      const auto& series = (*f)["series"];
      for (std::size_t i = 0; i < series.size(); ++i) {
        cfg.f_series.push_back(rational_field(series[i], "f.series[" + std::to_string(i) + "]"));
      }
      if (cfg.f_series.front() != 1) throw ConfigError("f.series: the constant coefficient must be 1");
    } else {
      throw ConfigError("f: expected \"sqrt\", \"one\" or {\"series\": [...]}");
    }
  }

  cfg.trunc = int_field(j, "trunc", 8, 2, 24);
  cfg.max_degree = int_field(j, "max_degree", std::min(6, cfg.trunc), 0, 24);
  if (cfg.max_degree > cfg.trunc) throw ConfigError("max_degree: must not exceed trunc");
  cfg.series_order = int_field(j, "series_order", 6, 2, 12);

  if (const json* seed = find(j, "seed")) {
    if (!seed->is_number_unsigned() && !(seed->is_number_integer() && seed->get<long long>() >= 0)) {
      throw ConfigError("seed: expected a non-negative integer");
    }
    cfg.seed = seed->get<std::uint64_t>();
  }

  if (const json* tol = find(j, "tolerances")) {
    if (!tol->is_object()) throw ConfigError("tolerances: expected an object");
    for (const auto& [key, value] : tol->items()) {
      if (key != "ode" && key != "newton" && key != "float_match") throw ConfigError("unknown tolerance '" + key + "'");
    }
    cfg.tol.ode = tol_field(*tol, "ode", cfg.tol.ode);
    cfg.tol.newton = tol_field(*tol, "newton", cfg.tol.newton);
    cfg.tol.float_match = tol_field(*tol, "float_match", cfg.tol.float_match);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

std::vector<double> Sampler::vector(int n, double bound) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = uniform(-bound, bound);
  return v;
}

std::int64_t Sampler::integer(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng_() % span);
}

}  // namespace ncdeform::cli
