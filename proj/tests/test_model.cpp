#include "doctest.h"

#include <cmath>
#include <map>
#include <sstream>

#include "gossip/errors.hpp"
#include "gossip/model.hpp"

using namespace gossip;

namespace {

void check_model_invariants(const CommunicationModel& m) {
  double total = 0.0;
  for (double p : m.probabilities()) {
    CHECK(p >= 0.0);
    total += p;
  }
  CHECK(std::abs(total - 1.0) < 1e-12);
  double dsum = 0.0;
  for (std::size_t u = 0; u < m.node_count(); ++u) {
    double row = 0.0;
    for (std::size_t v = 0; v < m.node_count(); ++v)
      if (v != u) row += m.pair_prob(u, v);
    CHECK(std::abs(row - m.degree()[u]) < 1e-12);
    dsum += m.degree()[u];
  }
  CHECK(std::abs(dsum - 2.0) < 1e-12);
}

}  // namespace

TEST_CASE("weighted_model n=4, p=2, q=1") {
  const PlantedModel pm = weighted_model(4, 2.0, 1.0);
  // Z = 2*1*2 + 4*1 = 8.
  CHECK(pm.model.pair_prob(0, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(pm.model.pair_prob(0, 2) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(pm.model.pair_prob(2, 3) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(pm.model.degree()[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pm.truth.chi == std::vector<int>{1, 1, -1, -1});
  check_model_invariants(pm.model);
}

TEST_CASE("weighted_model parameter checks") {
  CHECK_THROWS_AS(weighted_model(4, 1.0, 1.0), InvalidParameters);
  CHECK_THROWS_AS(weighted_model(5, 2.0, 1.0), InvalidParameters);
  CHECK_THROWS_AS(weighted_model(2, 2.0, 1.0), InvalidParameters);
  CHECK_THROWS_AS(weighted_model(4, 2.0, 0.0), InvalidParameters);
  for (std::size_t n : {4, 10, 50}) check_model_invariants(weighted_model(n, 3.0, 0.5).model);
}

TEST_CASE("sbm_model with q near p gives the complete graph") {
  Rng rng(1);
  const SbmModel sm = sbm_model(8, 1.0, 1.0 - 1e-12, rng);
  CHECK(sm.edges.size() == 28);
  for (std::size_t u = 0; u < 8; ++u)
    for (std::size_t v = u + 1; v < 8; ++v)
      CHECK(sm.model.pair_prob(u, v) == doctest::Approx(1.0 / 28.0).epsilon(1e-14));
  check_model_invariants(sm.model);
}

TEST_CASE("sbm_model with no inter-community edges") {
  Rng rng(3);
  const SbmModel sm = sbm_model(4, 1.0, 1e-9, rng);
  REQUIRE(sm.edges == std::vector<NodePair>{{0, 1}, {2, 3}});
  CHECK(sm.model.pair_prob(0, 1) == 0.5);
  CHECK(sm.model.pair_prob(2, 3) == 0.5);
  CHECK(sm.model.pair_prob(0, 2) == 0.0);
  CHECK(sm.model.degree()[0] == 0.5);
}

TEST_CASE("sbm_model parameter checks and degenerate graphs") {
  Rng rng(4);
  CHECK_THROWS_AS(sbm_model(4, 0.5, 0.5, rng), InvalidParameters);
  CHECK_THROWS_AS(sbm_model(4, 1.5, 0.5, rng), InvalidParameters);
  CHECK_THROWS_AS(sbm_model(5, 0.5, 0.25, rng), InvalidParameters);
  // Tiny probabilities leave the graph empty.
  CHECK_THROWS_AS(sbm_model(4, 1e-12, 1e-13, rng), DegenerateGraph);
}

TEST_CASE("sbm_model edge count matches its binomial mean") {
  // n=100, p=0.5, q=0.25: mean 0.5*2450 + 0.25*2500 = 1850.
  const double mean = 1850.0;
  const double var = 2450 * 0.25 + 2500 * 0.25 * 0.75;
  double total = 0.0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    Rng rng(1000 + s);
    total += static_cast<double>(sbm_model(100, 0.5, 0.25, rng).edges.size());
  }
  CHECK(std::abs(total / seeds - mean) < 3.0 * std::sqrt(var / seeds));
}

TEST_CASE("population and graph models") {
  const CommunicationModel p3 = population_model(3);
  CHECK(p3.pair_prob(0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(p3.pair_prob(1, 2) == doctest::Approx(1.0 / 3.0));
  const std::vector<NodePair> path{{0, 1}, {1, 2}};
  const CommunicationModel g = graph_model(path);
  CHECK(g.node_count() == 3);
  CHECK(g.pair_prob(0, 1) == 0.5);
  CHECK(g.pair_prob(2, 1) == 0.5);
  CHECK(g.pair_prob(0, 2) == 0.0);
  for (std::size_t n : {2, 5, 12}) {
    const CommunicationModel m = population_model(n);
    for (double d : m.degree()) CHECK(d == doctest::Approx(2.0 / n).epsilon(1e-14));
    check_model_invariants(m);
  }
  CHECK_THROWS_AS(graph_model(std::vector<NodePair>{}), DegenerateGraph);
  CHECK_THROWS_AS(graph_model(std::vector<NodePair>{{1, 1}}), InvalidInput);
  CHECK_THROWS_AS(graph_model(std::vector<NodePair>{{0, 1}, {1, 0}}), InvalidInput);
}

TEST_CASE("sample_event: point mass") {
  const CommunicationModel m = population_model(2);
  Rng rng(8);
  for (std::uint64_t t = 0; t < 100; ++t) {
    const ScheduleEvent ev = sample_event(m, t, rng);
    CHECK(ev.t == t);
    CHECK(ev.u == 0);
    CHECK(ev.v == 1);
  }
}

TEST_CASE("sample_event: population_model(4) frequencies pass a chi-square test") {
  const CommunicationModel m = population_model(4);
  Rng rng(99);
  std::map<std::pair<std::size_t, std::size_t>, int> counts;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    const ScheduleEvent ev = sample_event(m, i, rng);
    REQUIRE(ev.u < ev.v);
    ++counts[{ev.u, ev.v}];
  }
  REQUIRE(counts.size() == 6);
  const double expected = draws / 6.0;
  double chi2 = 0.0;
  for (const auto& [pair, c] : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
    CHECK(std::abs(c - expected) < 4.0 * std::sqrt(draws * (1.0 / 6.0) * (5.0 / 6.0)));
  }
  CHECK(chi2 < 20.515);  // 5 degrees of freedom, 0.001 level
}

TEST_CASE("sample_event: weighted_model(4,2,1) frequency of (0,1)") {
  const CommunicationModel m = weighted_model(4, 2.0, 1.0).model;
  Rng rng(7);
  const int draws = 60000;
  int hits = 0;
  for (int i = 0; i < draws; ++i) {
    const ScheduleEvent ev = sample_event(m, i, rng);
    if (ev.u == 0 && ev.v == 1) ++hits;
  }
  CHECK(std::abs(hits - 0.25 * draws) < 4.0 * std::sqrt(draws * 0.25 * 0.75));
}

TEST_CASE("communication_matrix examples") {
  const Matrix p2 = communication_matrix(population_model(2));
  CHECK(p2 == Matrix{{1, 1}, {1, 1}});
  const Matrix w = communication_matrix(weighted_model(4, 2.0, 1.0).model);
  CHECK(w(0, 0) == doctest::Approx(0.5));
  CHECK(w(0, 1) == doctest::Approx(0.25));
  CHECK(w(1, 0) == w(0, 1));
}

TEST_CASE("communication_matrix is PSD for every model kind") {
  Rng rng(12);
  std::vector<CommunicationModel> models;
  models.push_back(weighted_model(10, 2.0, 1.0).model);
  models.push_back(sbm_model(20, 0.5, 0.25, rng).model);
  models.push_back(population_model(9));
  models.push_back(graph_model(std::vector<NodePair>{{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3}}));
  for (const auto& m : models) {
    const SymEigen e = sym_eigen(communication_matrix(m));
    for (double v : e.values) CHECK(v >= -1e-10);
  }
}

TEST_CASE("empirical mean of e_uv e_uvᵀ converges to D + W") {
  const CommunicationModel m = weighted_model(6, 2.0, 1.0).model;
  const Matrix target = communication_matrix(m);
  Rng rng(31);
  const int draws = 100000;
  Matrix acc(6, 6);
  for (int i = 0; i < draws; ++i) {
    const ScheduleEvent ev = sample_event(m, i, rng);
    acc(ev.u, ev.u) += 1;
    acc(ev.v, ev.v) += 1;
    acc(ev.u, ev.v) += 1;
    acc(ev.v, ev.u) += 1;
  }
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      const double p = target(i, j);
      const double sigma = std::sqrt(p * (1 - p) / draws);
      CHECK(std::abs(acc(i, j) / draws - p) < 4.0 * sigma + 1e-12);
    }
  }
}

TEST_CASE("weighted model: second eigenvector is collinear with chi") {
  for (std::size_t n : {4, 10, 30}) {
    const PlantedModel pm = weighted_model(n, 2.0, 1.0);
    const SymEigen e = sym_eigen(communication_matrix(pm.model));
    double d = 0.0;
    for (std::size_t u = 0; u < n; ++u) d += e.vectors(u, 1) * pm.truth.chi[u];
    CHECK(std::abs(std::abs(d) / std::sqrt(static_cast<double>(n)) - 1.0) < 1e-8);
  }
}

TEST_CASE("identical seeds give identical event streams") {
  const CommunicationModel m = weighted_model(10, 2.0, 1.0).model;
  Rng a(55), b(55), c(56);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const ScheduleEvent x = sample_event(m, i, a);
    CHECK(x == sample_event(m, i, b));
    if (!(x == sample_event(m, i, c))) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("event sources") {
  const CommunicationModel m = population_model(5);
  Rng rng(2);
  ModelScheduler sched(m, rng, 10);
  CountingSource counting(sched);
  std::vector<ScheduleEvent> log;
  for (int i = 0; i < 50; ++i) log.push_back(counting.next());
  CHECK(log.front().t == 10);
  CHECK(sched.round() == 60);
  CHECK(counting.rounds() == 50);
  std::uint64_t total = 0;
  for (auto c : counting.contacts()) total += c;
  CHECK(total == 100);

  ReplaySource replay(log, 5);
  for (const auto& ev : log) CHECK(replay.next() == ev);
  CHECK_THROWS_AS(replay.next(), InvalidInput);
}

TEST_CASE("edge list round trip") {
  Rng rng(6);
  const SbmModel sm = sbm_model(12, 0.6, 0.2, rng);
  std::stringstream ss;
  write_edge_list(ss, sm.edges);
  CHECK(read_edge_list(ss) == sm.edges);
  std::istringstream with_comments("# header\n0 1\n\n2 3 # trailing\n");
  CHECK(read_edge_list(with_comments) == std::vector<NodePair>{{0, 1}, {2, 3}});
  std::istringstream bad("0 x\n");
  CHECK_THROWS_AS(read_edge_list(bad), InvalidInput);
}
