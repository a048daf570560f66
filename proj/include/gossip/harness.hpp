#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gossip/community.hpp"
#include "gossip/config.hpp"
#include "gossip/linalg.hpp"
#include "gossip/model.hpp"
#include "gossip/oja.hpp"

namespace gossip {

struct TrialReport {
  std::size_t config_id = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  ModelKind model = ModelKind::weighted;
  std::size_t n = 0;
  OjaSchedule schedule;
  std::string status = "ok";  // "ok" or an Error::kind() token

  double alignment_1 = kNaN;
  double alignment_2 = kNaN;
  double norm_2 = kNaN;
  double subspace_error = kNaN;
  double truth_alignment = kNaN;  // |v2ᵀ chi| / sqrt(n) for the exact v2
  std::optional<std::size_t> misclass_before;
  std::optional<std::size_t> misclass_after_cleanup;
  std::optional<std::size_t> orth_failures;
  std::uint64_t rounds_used = 0;
  std::uint64_t local_rounds_max = 0;

  bool ok() const noexcept { return status == "ok"; }

  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
};

/// ‖Zᵀ vhat‖²_F with Z the bottom n - k eigenvectors of m (k = vhat.cols()).
double subspace_error(const Matrix& vhat, const Matrix& m);
double subspace_error(const Matrix& vhat, const SymEigen& spectrum);

struct PipelineInputs {
  const SymEigen* spectrum = nullptr;  // of the realized D + W
  const GroundTruth* truth = nullptr;
  OjaSchedule schedule;
  std::optional<CleanupParams> cleanup;
};

/// Oja, orthogonalization, labels and optional cleanup over one event stream,
/// then metrics against `spectrum`. Fills metric fields of `report`.
void run_pipeline(EventSource& source, StateMatrix q0, const PipelineInputs& in,
                  TrialReport& report, Labels* labels_out = nullptr);

/// Builds the model from `seed`, runs the pipeline and reports. Library
/// errors become a non-"ok" status instead of propagating.
TrialReport run_trial(const ExperimentConfig& config, std::uint64_t seed);

/// Runs every trial of every config with up to `parallelism` threads.
/// Trial i of a config uses derive_seed(config.seed, i). Rows come back
/// ordered by (config_id, trial) whatever the parallelism.
std::vector<TrialReport> run_sweep(const std::vector<ExperimentConfig>& configs,
                                   std::size_t parallelism);

/// Parallelism from GOSSIP_PARALLELISM when set, else `fallback`.
std::size_t parallelism_from_env(std::size_t fallback);

/// Header and rows. Reals use %.17g, missing values print as "nan".
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const TrialReport& r);
void write_csv(std::ostream& out, const std::vector<TrialReport>& rows);

/// Per-config median, 10% and 90% quantiles of the metrics over ok trials.
void write_summary(std::ostream& out, const std::vector<TrialReport>& rows);

/// Linear-interpolation quantile of unsorted data, q in [0, 1].
double quantile(std::vector<double> values, double q);

/// Symmetric matrix file: first line "n", then n whitespace-separated rows.
Matrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const Matrix& m);

}  // namespace gossip
