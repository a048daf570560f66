#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gossip/linalg.hpp"
#include "gossip/model.hpp"

namespace gossip {

// ---------------------------------------------------------------------------
// Gossip averaging
// ---------------------------------------------------------------------------

struct AvgState {
  std::vector<double> y;   // current estimates
  std::vector<double> x0;  // initial values
};

/// Both endpoints take the arithmetic mean.
std::pair<double, double> avg_step(double y_u, double y_v);

/// Runs `rounds` averaging interactions. The observer, when set, sees the
/// state after every round.
AvgState run_averaging(EventSource& source, std::span<const double> init, std::uint64_t rounds,
                       const std::function<void(const AvgState&)>& observer = {});

/// Σ_u (y_u - x_avg)^2 with x_avg the mean of x0.
double averaging_error(const AvgState& state);

/// Rounds after which the squared averaging error is at most eps times its
/// initial value with probability >= 1 - delta, given lambda2 of
/// I - D/2 + W/2: ceil(log(1/(eps*delta)) / log(1/lambda2)).
std::uint64_t averaging_rounds(double lambda2, double eps, double delta);

/// lambda2 of I - D/2 + W/2 for a model, from the dense eigensolver.
double averaging_lambda2(const CommunicationModel& model);

// ---------------------------------------------------------------------------
// Distributed Cholesky orthogonalization
// ---------------------------------------------------------------------------

/// Per-node running averages r_u^(i,j), upper triangle (i <= j) packed row
/// by row, plus the finalized outputs.
class OrthState {
 public:
  /// r_u^(i,j) := q_u^(i) q_u^(j).
  explicit OrthState(const Matrix& q);

  std::size_t node_count() const noexcept { return r_.rows(); }
  std::size_t rank() const noexcept { return k_; }
  static std::size_t packed_size(std::size_t k) noexcept { return k * (k + 1) / 2; }
  static std::size_t packed_index(std::size_t k, std::size_t i, std::size_t j) noexcept;

  std::span<double> r(std::size_t u) noexcept { return r_.row(u); }
  std::span<const double> r(std::size_t u) const noexcept { return r_.row(u); }
  double r(std::size_t u, std::size_t i, std::size_t j) const noexcept;

  const Matrix& vhat() const noexcept { return vhat_; }
  const std::vector<bool>& failed() const noexcept { return failed_; }
  std::size_t failure_count() const noexcept;

  /// Finalizes every node against its original q row.
  void finalize_all(const Matrix& q);

 private:
  std::size_t k_;
  Matrix r_;
  Matrix vhat_;
  std::vector<bool> failed_;
};

/// Averages every stored entry of nodes u and v.
void orth_avg_step(OrthState& state, std::size_t u, std::size_t v);

struct NodeOrthOutput {
  std::vector<double> vhat;  // zeros when failed
  bool failed = false;
};

/// R_u = n * r_u (symmetrized), L_u = chol(R_u), vhat = q_row * (L_uᵀ)^{-1}.
/// A non-positive-definite R_u yields failed = true instead of throwing.
NodeOrthOutput finalize_orth(std::span<const double> r_packed, std::span<const double> q_row,
                             std::size_t n, std::size_t k);

/// Averages for `rounds` scheduler events, then finalizes all nodes.
OrthState run_asynch_orth(EventSource& source, const Matrix& q, std::uint64_t rounds);

/// Q (Lᵀ)^{-1} with L = chol(QᵀQ). Throws NotPositiveDefinite for rank-deficient q.
Matrix centralized_orth(const Matrix& q);

}  // namespace gossip
