#include "gossip/model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "gossip/errors.hpp"

namespace gossip {

CommunicationModel CommunicationModel::from_weights(std::size_t n,
                                                    std::vector<WeightedPair> weights) {
  if (n < 2) throw InvalidParameters("communication model needs at least two nodes");
  for (auto& w : weights) {
    if (w.pair.u > w.pair.v) std::swap(w.pair.u, w.pair.v);
    if (w.pair.u == w.pair.v) throw InvalidInput("self-pair in communication model");
    if (w.pair.v >= n) throw InvalidInput("node id out of range");
    if (!(w.weight >= 0.0) || !std::isfinite(w.weight))
      throw InvalidInput("pair weight must be finite and nonnegative");
  }
  std::sort(weights.begin(), weights.end(),
            [](const WeightedPair& a, const WeightedPair& b) { return a.pair < b.pair; });
  for (std::size_t i = 1; i < weights.size(); ++i)
    if (weights[i].pair == weights[i - 1].pair)
      throw InvalidInput("duplicate pair in communication model");

  double total = 0.0;
  for (const auto& w : weights) total += w.weight;
  if (!(total > 0.0)) throw DegenerateGraph("communication model has no positive-weight pair");

  CommunicationModel m;
  m.n_ = n;
  m.degree_.assign(n, 0.0);
  m.pairs_.reserve(weights.size());
  m.probs_.reserve(weights.size());
  m.cumulative_.reserve(weights.size());
  double running = 0.0;
  for (const auto& w : weights) {
    if (w.weight == 0.0) continue;
    const double p = w.weight / total;
    m.pairs_.push_back(w.pair);
    m.probs_.push_back(p);
    running += p;
    m.cumulative_.push_back(running);
    m.degree_[w.pair.u] += p;
    m.degree_[w.pair.v] += p;
  }
  return m;
}

double CommunicationModel::pair_prob(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  const NodePair key{u, v};
  const auto it = std::lower_bound(pairs_.begin(), pairs_.end(), key);
  if (it == pairs_.end() || *it != key) return 0.0;
  return probs_[static_cast<std::size_t>(it - pairs_.begin())];
}

std::size_t CommunicationModel::locate(double uniform) const noexcept {
  const double target = uniform * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
  return std::min(idx, cumulative_.size() - 1);
}

GroundTruth GroundTruth::first_half(std::size_t n) {
  GroundTruth g;
  g.chi.assign(n, -1);
  std::fill(g.chi.begin(), g.chi.begin() + static_cast<std::ptrdiff_t>(n / 2), 1);
  return g;
}

namespace {

void check_planted_size(std::size_t n) {
  if (n < 4 || n % 2 != 0)
    throw InvalidParameters("planted models need an even node count n >= 4");
}

bool same_side(std::size_t u, std::size_t v, std::size_t n) {
  return (u < n / 2) == (v < n / 2);
}

}  // namespace

PlantedModel weighted_model(std::size_t n, double p, double q) {
  check_planted_size(n);
  if (!(q > 0.0) || !(p > q) || !std::isfinite(p))
    throw InvalidParameters("weighted model requires p > q > 0");
  std::vector<CommunicationModel::WeightedPair> w;
  w.reserve(n * (n - 1) / 2);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      w.push_back({{u, v}, same_side(u, v, n) ? p : q});
  return {CommunicationModel::from_weights(n, std::move(w)), GroundTruth::first_half(n)};
}

SbmModel sbm_model(std::size_t n, double p, double q, Rng& rng) {
  check_planted_size(n);
  if (!(q > 0.0) || !(p > q) || !(p <= 1.0))
    throw InvalidParameters("G(n,p,q) model requires 0 < q < p <= 1");
  SbmModel out{CommunicationModel{}, GroundTruth::first_half(n), {}};
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.uniform() < (same_side(u, v, n) ? p : q)) out.edges.push_back({u, v});
  if (out.edges.empty()) throw DegenerateGraph("sampled G(n,p,q) graph has no edges");
  out.model = graph_model(out.edges, n);
  return out;
}

CommunicationModel population_model(std::size_t n) {
  if (n < 2) throw InvalidParameters("population model needs n >= 2");
  std::vector<CommunicationModel::WeightedPair> w;
  w.reserve(n * (n - 1) / 2);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) w.push_back({{u, v}, 1.0});
  return CommunicationModel::from_weights(n, std::move(w));
}

CommunicationModel graph_model(std::span<const NodePair> edges, std::size_t n) {
  if (edges.empty()) throw DegenerateGraph("empty edge list");
  std::size_t max_id = 0;
  for (const auto& e : edges) max_id = std::max({max_id, e.u, e.v});
  if (n == 0) n = max_id + 1;
  if (max_id >= n) throw InvalidInput("edge endpoint exceeds node count");
  std::vector<CommunicationModel::WeightedPair> w;
  w.reserve(edges.size());
  for (const auto& e : edges) w.push_back({e, 1.0});
  return CommunicationModel::from_weights(n, std::move(w));
}

ScheduleEvent sample_event(const CommunicationModel& model, std::uint64_t t, Rng& rng) {
  const NodePair& pr = model.pairs()[model.locate(rng.uniform())];
  return {t, pr.u, pr.v};
}

Matrix communication_matrix(const CommunicationModel& model) {
  Matrix m(model.node_count(), model.node_count());
  const auto pairs = model.pairs();
  const auto probs = model.probabilities();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    m(pairs[i].u, pairs[i].v) = probs[i];
    m(pairs[i].v, pairs[i].u) = probs[i];
  }
  const auto deg = model.degree();
  for (std::size_t u = 0; u < model.node_count(); ++u) m(u, u) = deg[u];
  return m;
}

ScheduleEvent ReplaySource::next() {
  if (pos_ >= events_.size()) throw InvalidInput("event log exhausted");
  return events_[pos_++];
}

ScheduleEvent CountingSource::next() {
  const ScheduleEvent ev = inner_.next();
  ++contacts_[ev.u];
  ++contacts_[ev.v];
  ++rounds_;
  return ev;
}

void write_edge_list(std::ostream& out, std::span<const NodePair> edges) {
  for (const auto& e : edges) out << e.u << ' ' << e.v << '\n';
}

std::vector<NodePair> read_edge_list(std::istream& in) {
  std::vector<NodePair> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long u = 0, v = 0;
    if (!(ls >> u)) continue;
    std::string rest;
    if (!(ls >> v) || (ls >> rest) || u < 0 || v < 0 || u == v)
      throw InvalidInput("bad edge on line " + std::to_string(lineno));
    edges.push_back({static_cast<std::size_t>(std::min(u, v)),
                     static_cast<std::size_t>(std::max(u, v))});
  }
  return edges;
}

}  // namespace gossip
