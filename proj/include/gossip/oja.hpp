#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "gossip/linalg.hpp"
#include "gossip/model.hpp"
#include "gossip/rng.hpp"

namespace gossip {

/// Row u holds node u's state [q_u^(1), ..., q_u^(k)].
using StateMatrix = Matrix;

struct OjaSchedule {
  std::size_t k = 2;
  double eta = 0.0;
  std::uint64_t t_oja = 0;
  std::uint64_t t_orth = 0;
};

/// Default magnitude beyond which a run aborts with StepSizeTooLarge.
/// Non-finite entries abort whatever the limit.
inline constexpr double kOverflowGuard = 1e12;

/// n x k matrix of independent standard normals, filled row by row.
StateMatrix init_states(std::size_t n, std::size_t k, Rng& rng);

/// Two-row update for event (u, v): both rows read their pre-update values,
/// q_u := (1+eta) q_u + eta q_v and symmetrically for v.
void oja_step(StateMatrix& state, const ScheduleEvent& ev, double eta);

struct OjaRun {
  StateMatrix q;
  std::vector<ScheduleEvent> log;
};

/// Applies `rounds` events from `source` to `q0`. The log is kept when asked.
OjaRun run_asynch_oja(EventSource& source, StateMatrix q0, double eta, std::uint64_t rounds,
                      bool keep_log = true, double guard = kOverflowGuard);

/// Draws Q0 with init_states, then runs schedule.t_oja scheduler rounds.
OjaRun run_asynch_oja(const CommunicationModel& model, const OjaSchedule& schedule, Rng& rng,
                      double guard = kOverflowGuard);

/// Sparse sample vector x for the centralized iteration.
struct SampleVector {
  std::vector<std::pair<std::size_t, double>> entries;  // ascending index
  static SampleVector pair(std::size_t u, std::size_t v);
  static SampleVector dense(std::span<const double> x);
};

/// Q_{t+1} = (I + eta x xᵀ) Q_t over the stream, without orthogonalization.
/// Row w of the product is accumulated over the nonzero entries of x in
/// index order, so for x = e_u + e_v it reproduces oja_step bit for bit.
StateMatrix centralized_oja(std::span<const SampleVector> xs, StateMatrix q0, double eta);

std::vector<SampleVector> to_samples(std::span<const ScheduleEvent> log);

/// Event logs as "t u v" lines.
void write_event_log(std::ostream& out, std::span<const ScheduleEvent> log);
std::vector<ScheduleEvent> read_event_log(std::istream& in);

}  // namespace gossip
