#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gossip/params.hpp"

namespace gossip {

enum class ModelKind { weighted, sbm, population, graph };

const char* to_string(ModelKind kind);

/// eta, t_oja and t_orth given explicitly.
struct DirectSchedule {
  double eta = 0.0;
  std::uint64_t t_oja = 0;
  std::uint64_t t_orth = 0;
};

/// eta, t_oja and t_orth derived from (eps, delta) and the measured spectrum.
struct DerivedScheduleSpec {
  double eps = 0.1;
  double delta = 0.1;
  ScheduleConstants constants;
};

struct CleanupConfig {
  bool enabled = false;
  std::optional<std::uint64_t> phases;
  std::optional<std::uint64_t> rounds;
  double eps = 1.0 / 64.0;  // tolerated error fraction for the weighted model
};

struct ExperimentConfig {
  ModelKind model = ModelKind::weighted;
  std::size_t n = 0;
  double p = 0.0;
  double q = 0.0;
  std::string graph_file;
  std::size_t k = 2;
  std::variant<DirectSchedule, DerivedScheduleSpec> schedule;
  CleanupConfig cleanup;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
};

/// Parses flat key=value text (one key per line, '#' starts a comment).
/// A value may be a comma-separated list; the result is the cartesian
/// product of all lists, expanded with the first key varying slowest.
///
/// Keys: model, n, p, q, graph_file, k, eta, t_oja, t_orth, eps, delta, c1,
/// c2, c3, cleanup, cleanup_phases, cleanup_rounds, cleanup_eps, trials, seed.
/// Exactly one of {eta, t_oja, t_orth} (all three) or {eps, delta} must be
/// present. Throws InvalidInput on unknown keys or malformed values.
std::vector<ExperimentConfig> parse_configs(std::istream& in);
std::vector<ExperimentConfig> parse_configs(const std::string& text);

/// Builds one config from already-split key/value pairs.
ExperimentConfig make_config(const std::vector<std::pair<std::string, std::string>>& kv);

}  // namespace gossip
