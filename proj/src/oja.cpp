#include "gossip/oja.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "gossip/errors.hpp"

namespace gossip {

StateMatrix init_states(std::size_t n, std::size_t k, Rng& rng) {
  if (k == 0 || k > n) throw InvalidParameters("init_states requires 1 <= k <= n");
  StateMatrix q(n, k);
  for (double& x : q.data()) x = rng.normal();
  return q;
}

void oja_step(StateMatrix& state, const ScheduleEvent& ev, double eta) {
  const std::size_t k = state.cols();
  auto ru = state.row(ev.u);
  auto rv = state.row(ev.v);
  const double grow = 1.0 + eta;
  for (std::size_t i = 0; i < k; ++i) {
    const double qu = ru[i];
    const double qv = rv[i];
    ru[i] = grow * qu + eta * qv;
    rv[i] = grow * qv + eta * qu;
  }
}

namespace {

void guard_rows(const StateMatrix& q, const ScheduleEvent& ev, double guard) {
  for (std::size_t node : {ev.u, ev.v}) {
    for (double x : q.row(node)) {
      if (!std::isfinite(x) || std::abs(x) > guard) {
        char limit[32];
        std::snprintf(limit, sizeof limit, "%g", guard);
        throw StepSizeTooLarge(std::string("state entry exceeded ") + limit + " at round " +
                               std::to_string(ev.t) + "; reduce eta or t_oja");
      }
    }
  }
}

}  // namespace

OjaRun run_asynch_oja(EventSource& source, StateMatrix q0, double eta, std::uint64_t rounds,
                      bool keep_log, double guard) {
  if (!(eta >= 0.0)) throw InvalidParameters("eta must be nonnegative");
  if (q0.rows() != source.node_count())
    throw InvalidInput("state rows do not match node count");
  OjaRun run{std::move(q0), {}};
  if (keep_log) run.log.reserve(rounds);
  for (std::uint64_t t = 0; t < rounds; ++t) {
    const ScheduleEvent ev = source.next();
    oja_step(run.q, ev, eta);
    guard_rows(run.q, ev, guard);
    if (keep_log) run.log.push_back(ev);
  }
  return run;
}

OjaRun run_asynch_oja(const CommunicationModel& model, const OjaSchedule& schedule, Rng& rng,
                      double guard) {
  StateMatrix q0 = init_states(model.node_count(), schedule.k, rng);
  ModelScheduler scheduler(model, rng);
  return run_asynch_oja(scheduler, std::move(q0), schedule.eta, schedule.t_oja, true, guard);
}

SampleVector SampleVector::pair(std::size_t u, std::size_t v) {
  if (u > v) std::swap(u, v);
  return {{{u, 1.0}, {v, 1.0}}};
}

SampleVector SampleVector::dense(std::span<const double> x) {
  SampleVector s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) s.entries.emplace_back(i, x[i]);
  return s;
}

StateMatrix centralized_oja(std::span<const SampleVector> xs, StateMatrix q, double eta) {
  const std::size_t k = q.cols();
  std::vector<double> old_rows;
  for (const auto& x : xs) {
    const auto& nz = x.entries;
    // Rows outside the support of x are fixed by (I + eta x xᵀ).
    old_rows.resize(nz.size() * k);
    for (std::size_t a = 0; a < nz.size(); ++a) {
      const auto src = q.row(nz[a].first);
      std::copy(src.begin(), src.end(), old_rows.begin() + static_cast<std::ptrdiff_t>(a * k));
    }
    for (std::size_t a = 0; a < nz.size(); ++a) {
      auto dst = q.row(nz[a].first);
      for (std::size_t i = 0; i < k; ++i) {
        double acc = 0.0;
        for (std::size_t b = 0; b < nz.size(); ++b) {
          const double coeff = (a == b ? 1.0 : 0.0) + eta * nz[a].second * nz[b].second;
          acc += coeff * old_rows[b * k + i];
        }
        dst[i] = acc;
      }
    }
  }
  return q;
}

std::vector<SampleVector> to_samples(std::span<const ScheduleEvent> log) {
  std::vector<SampleVector> xs;
  xs.reserve(log.size());
  for (const auto& ev : log) xs.push_back(SampleVector::pair(ev.u, ev.v));
  return xs;
}

void write_event_log(std::ostream& out, std::span<const ScheduleEvent> log) {
  for (const auto& ev : log) out << ev.t << ' ' << ev.u << ' ' << ev.v << '\n';
}

std::vector<ScheduleEvent> read_event_log(std::istream& in) {
  std::vector<ScheduleEvent> log;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    unsigned long long t = 0, u = 0, v = 0;
    if (!(ls >> t)) continue;
    if (!(ls >> u >> v) || u == v)
      throw InvalidInput("bad event on line " + std::to_string(lineno));
    log.push_back({t, static_cast<std::size_t>(u), static_cast<std::size_t>(v)});
  }
  return log;
}

}  // namespace gossip
