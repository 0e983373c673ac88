#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gramframe/systems.hpp"

namespace gramframe::cli {

/// Malformed configuration. `field` is a dotted path such as "system.vectors".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct Tolerances {
  double rank_tol = 1e-12;
  double verify_tol = 1e-9;
  double band_eps = 1e-12;
  double psd_tol = 1e-10;
  double cauchy_rel_tol = 1e-6;
  double reproduce_tol = 1e-8;
};

struct RunConfig {
  /// The parsed JSON, echoed into reports without `out`.
  nlohmann::json source;
  std::optional<VectorSystem> system;
  std::size_t truncation = 0;
  std::optional<std::pair<double, double>> band;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  std::string out = "gramframe-out";
  std::size_t trials = 100;
  std::size_t points = 64;
  std::vector<std::size_t> sweep{5, 10, 20, 50, 100, 200};
  std::vector<std::size_t> sample_sizes{100, 1000, 10000};
  std::size_t replicates = 10;
};

/// Validates `doc` for `command`. Throws ConfigError naming the field.
RunConfig parse_config(const nlohmann::json& doc, const std::string& command);

/// Reads and parses a JSON file; I/O and syntax problems are ConfigErrors.
RunConfig load_config(const std::string& path, const std::string& command);

}  // namespace gramframe::cli
