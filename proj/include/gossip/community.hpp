#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "gossip/model.hpp"

namespace gossip {

struct Labels {
  std::vector<int> chi_hat;  // each +1 or -1
  bool operator==(const Labels&) const = default;
};

/// +1 where vhat2 >= 0, -1 elsewhere.
Labels assign_labels(std::span<const double> vhat2);

/// Hamming distance to the truth, minimized over a global sign flip.
std::size_t misclassification(const Labels& labels, const GroundTruth& truth);

struct CleanupParams {
  enum class Kind { manual, weighted, sbm };
  Kind kind = Kind::manual;
  std::uint64_t phases = 0;
  std::uint64_t rounds_per_phase = 0;
  // Weighted model: p' and q'.
  double p_prime = 0.0;
  double q_prime = 0.0;
  // G(n,p,q) model: Delta, p'', q'' and the tolerated initial error fraction.
  double delta = 0.0;
  double p_dprime = 0.0;
  double q_dprime = 0.0;
  double tolerated_eps = 0.0;
};

/// One phase with p' = (1-eps)p/(p+q), q' = (q+eps p)/(p+q) and
/// r = ceil(72 n ln n / (sqrt(p') - sqrt(q'))^2).
/// Throws InvalidParameters for eps outside [0, 1/64], InfeasibleCleanup when p' <= q'.
CleanupParams cleanup_params_weighted(std::size_t n, double p, double q, double eps);

/// Delta = p/2 - q/2 - sqrt(12 p ln n/n) - sqrt(12 q ln n/n),
/// p'' = p/2 - sqrt(6 p ln n/n) - Delta/12, q'' = q/2 + sqrt(6 q ln n/n) + Delta/12,
/// r = ceil(72 p n ln n / (sqrt(p'') - sqrt(q''))^2), phases = ceil(6 ln n),
/// tolerated eps = Delta/(24 p). Throws InfeasibleCleanup when Delta <= 0 or p'' <= q''.
CleanupParams cleanup_params_sbm(std::size_t n, double p, double q);

/// Phased majority vote. Within a phase every event (u, v) adds v's
/// phase-start label to u's running sum and vice versa; at the barrier each
/// node with at least one sample takes the sign of its sum (0 counts as +1),
/// and nodes without samples keep their label. The observer sees the labels
/// after each phase barrier.
Labels run_cleanup(EventSource& source, Labels labels, const CleanupParams& params,
                   const std::function<void(std::uint64_t phase, const Labels&)>& observer = {});

/// Labels as one line of space-separated +1/-1 integers.
void write_labels(std::ostream& out, const Labels& labels);
Labels read_labels(std::istream& in);

}  // namespace gossip
