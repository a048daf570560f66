#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "gossip/linalg.hpp"
#include "gossip/rng.hpp"

namespace gossip {

/// Unordered node pair, stored with u < v. Nodes are 0-indexed.
struct NodePair {
  std::size_t u = 0;
  std::size_t v = 0;
  auto operator<=>(const NodePair&) const = default;
};

/// One scheduler round: the pair (u, v) interacting at global round t. Its
/// sampling vector is e_u + e_v.
struct ScheduleEvent {
  std::uint64_t t = 0;
  std::size_t u = 0;
  std::size_t v = 0;
  bool operator==(const ScheduleEvent&) const = default;
};

/// Sampling law of the random scheduler: a probability per unordered pair.
///
/// Only pairs with positive probability are stored. Sampling uses a
/// cumulative table and binary search, so each round costs O(log #pairs).
/// Immutable after construction and safe to share between threads.
class CommunicationModel {
 public:
  struct WeightedPair {
    NodePair pair;
    double weight;
  };

  /// Normalizes nonnegative pair weights into probabilities. Pairs with zero
  /// weight are dropped; a zero total throws DegenerateGraph.
  static CommunicationModel from_weights(std::size_t n, std::vector<WeightedPair> weights);

  std::size_t node_count() const noexcept { return n_; }
  std::span<const NodePair> pairs() const noexcept { return pairs_; }
  std::span<const double> probabilities() const noexcept { return probs_; }
  /// D_{u,u}: probability that u takes part in a round.
  std::span<const double> degree() const noexcept { return degree_; }

  /// Probability of the unordered pair {u, v}; 0 when absent.
  double pair_prob(std::size_t u, std::size_t v) const;

  /// Index into pairs() selected by a uniform draw in [0, 1).
  std::size_t locate(double uniform) const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<NodePair> pairs_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
  std::vector<double> degree_;
};

/// Planted two-community partition; chi[u] = +1 for the first n/2 nodes.
struct GroundTruth {
  std::vector<int> chi;
  static GroundTruth first_half(std::size_t n);
};

struct PlantedModel {
  CommunicationModel model;
  GroundTruth truth;
};

struct SbmModel {
  CommunicationModel model;
  GroundTruth truth;
  std::vector<NodePair> edges;
};

/// Weight p within a community and q across. Requires n even, n >= 4, p > q > 0.
PlantedModel weighted_model(std::size_t n, double p, double q);

/// G(n, p, q) graph with pair probability 1/|E| on each sampled edge. Pairs
/// are visited in lexicographic order, one uniform draw each. Requires n even,
/// n >= 4, 0 < q < p <= 1. Isolated nodes are kept.
SbmModel sbm_model(std::size_t n, double p, double q, Rng& rng);

/// Uniform over all n(n-1)/2 pairs.
CommunicationModel population_model(std::size_t n);

/// Uniform over the given simple edge list. n defaults to max id + 1.
CommunicationModel graph_model(std::span<const NodePair> edges, std::size_t n = 0);

ScheduleEvent sample_event(const CommunicationModel& model, std::uint64_t t, Rng& rng);

/// D + W as a dense symmetric matrix.
Matrix communication_matrix(const CommunicationModel& model);

/// Source of scheduler events. Protocols pull one event per global round.
class EventSource {
 public:
  virtual ~EventSource() = default;
  virtual ScheduleEvent next() = 0;
  virtual std::size_t node_count() const = 0;
};

/// Draws events from a model; the round counter continues across protocols.
class ModelScheduler final : public EventSource {
 public:
  ModelScheduler(const CommunicationModel& model, Rng& rng, std::uint64_t first_round = 0)
      : model_(model), rng_(rng), t_(first_round) {}
  ScheduleEvent next() override { return sample_event(model_, t_++, rng_); }
  std::size_t node_count() const override { return model_.node_count(); }
  std::uint64_t round() const noexcept { return t_; }

 private:
  const CommunicationModel& model_;
  Rng& rng_;
  std::uint64_t t_;
};

/// Replays a recorded event log; throws InvalidInput when exhausted.
class ReplaySource final : public EventSource {
 public:
  ReplaySource(std::span<const ScheduleEvent> events, std::size_t n)
      : events_(events), n_(n) {}
  ScheduleEvent next() override;
  std::size_t node_count() const override { return n_; }

 private:
  std::span<const ScheduleEvent> events_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

/// Forwards events while counting per-node interactions (local rounds).
class CountingSource final : public EventSource {
 public:
  explicit CountingSource(EventSource& inner)
      : inner_(inner), contacts_(inner.node_count(), 0) {}
  ScheduleEvent next() override;
  std::size_t node_count() const override { return inner_.node_count(); }
  std::span<const std::uint64_t> contacts() const noexcept { return contacts_; }
  std::uint64_t rounds() const noexcept { return rounds_; }

 private:
  EventSource& inner_;
  std::vector<std::uint64_t> contacts_;
  std::uint64_t rounds_ = 0;
};

/// Edge lists as whitespace-separated "u v" lines, 0-indexed.
void write_edge_list(std::ostream& out, std::span<const NodePair> edges);
std::vector<NodePair> read_edge_list(std::istream& in);

}  // namespace gossip
