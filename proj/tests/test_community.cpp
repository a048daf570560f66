#include "doctest.h"

#include <cmath>
#include <sstream>

#include "gossip/community.hpp"
#include "gossip/errors.hpp"
#include "gossip/model.hpp"
#include "gossip/params.hpp"
#include "support.hpp"

using namespace gossip;

namespace {

std::vector<double> scaled_truth(const GroundTruth& t, double s) {
  std::vector<double> v;
  for (int c : t.chi) v.push_back(s * c / std::sqrt(static_cast<double>(t.chi.size())));
  return v;
}

Labels negate(Labels l) {
  for (int& x : l.chi_hat) x = -x;
  return l;
}

}  // namespace

TEST_CASE("assign_labels examples") {
  const GroundTruth t = GroundTruth::first_half(10);
  const Labels exact = assign_labels(scaled_truth(t, 1.0));
  CHECK(exact.chi_hat == t.chi);
  CHECK(misclassification(exact, t) == 0);

  const Labels zero = assign_labels(std::vector<double>(10, 0.0));
  CHECK(zero.chi_hat == std::vector<int>(10, 1));

  const Labels flipped = assign_labels(scaled_truth(t, -1.0));
  CHECK(flipped.chi_hat == negate(Labels{t.chi}).chi_hat);
  CHECK(misclassification(flipped, t) == 0);
}

TEST_CASE("misclassification is flip-symmetric") {
  const GroundTruth t = GroundTruth::first_half(12);
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    Labels l;
    for (int i = 0; i < 12; ++i) l.chi_hat.push_back(rng.uniform() < 0.5 ? 1 : -1);
    CHECK(misclassification(l, t) == misclassification(negate(l), t));
    CHECK(misclassification(l, t) <= 6);
  }
  CHECK(misclassification(Labels{t.chi}, t) == 0);
  CHECK(misclassification(Labels{{1, 1, 1, -1}}, GroundTruth::first_half(4)) == 1);
  CHECK_THROWS_AS(misclassification(Labels{{1}}, t), InvalidInput);
}

TEST_CASE("perturbed second eigenvectors misclassify at most 5 eps n nodes") {
  const std::size_t n = 100;
  const GroundTruth t = GroundTruth::first_half(n);
  const std::vector<double> v2 = scaled_truth(t, 1.0);
  Rng rng(41);
  for (double eps : {0.01, 0.05, 0.1}) {
    for (int c = 0; c < 200; ++c) {
      const auto v = testing::perturbed_v2(v2, eps, rng, c);
      double nrm = 0.0, d = 0.0;
      for (std::size_t u = 0; u < n; ++u) {
        nrm += v[u] * v[u];
        d += v[u] * v2[u];
      }
      REQUIRE(std::sqrt(nrm) <= 1.0 + eps + 1e-12);
      REQUIRE(d >= 1.0 - eps - 1e-12);
      CHECK(misclassification(assign_labels(v), t) <= 5.0 * eps * n);
    }
  }
}

TEST_CASE("cleanup_params_weighted") {
  const CleanupParams a = cleanup_params_weighted(100, 2.0, 1.0, 0.0);
  CHECK(a.p_prime == doctest::Approx(2.0 / 3.0));
  CHECK(a.q_prime == doctest::Approx(1.0 / 3.0));
  CHECK(a.phases == 1);

  // Reference values from an independent calculator script.
  const CleanupParams b = cleanup_params_weighted(100, 1.0, 0.9, 1.0 / 64.0);
  CHECK(b.p_prime == doctest::Approx(0.518092105263158).epsilon(1e-14));
  CHECK(b.q_prime == doctest::Approx(0.48190789473684215).epsilon(1e-14));
  CHECK(cleanup_params_weighted(256, 2.0, 1.0, 1.0 / 64.0).rounds_per_phase == 2040818);

  CHECK_THROWS_AS(cleanup_params_weighted(100, 1.0, 0.99, 1.0 / 64.0), InfeasibleCleanup);
  CHECK_THROWS_AS(cleanup_params_weighted(100, 2.0, 1.0, 0.1), InvalidParameters);
}

TEST_CASE("cleanup_params_sbm") {
  // Independent script: Delta = -0.21903217801575134 at n = 1024.
  try {
    cleanup_params_sbm(1024, 0.5, 0.25);
    FAIL("expected InfeasibleCleanup");
  } catch (const InfeasibleCleanup& e) {
    CHECK(std::string(e.what()).find("-0.219") != std::string::npos);
  }
  const CleanupParams c = cleanup_params_sbm(20000, 0.5, 0.25);
  CHECK(c.delta == doctest::Approx(0.0319502105208283).epsilon(1e-12));
  CHECK(c.p_dprime == doctest::Approx(0.2087949976783634).epsilon(1e-12));
  CHECK(c.q_dprime == doctest::Approx(0.15491616989387108).epsilon(1e-12));
  CHECK(c.rounds_per_phase == 1776922896);
  CHECK(c.phases == 60);
  CHECK(c.tolerated_eps == doctest::Approx(0.0319502105208283 / 12.0).epsilon(1e-12));

  CHECK_THROWS_AS(cleanup_params_sbm(20000, 0.25, 0.5), InfeasibleCleanup);
  CHECK_THROWS_AS(cleanup_params_sbm(64, 0.5, 0.25), InfeasibleCleanup);
}

TEST_CASE("cleanup keeps a unanimous labeling exactly") {
  const PlantedModel pm = weighted_model(40, 2.0, 1.0);
  CleanupParams params;
  params.phases = 3;
  params.rounds_per_phase = 50;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    ModelScheduler s(pm.model, rng);
    for (int sign : {1, -1}) {
      const Labels same{std::vector<int>(40, sign)};
      CHECK(run_cleanup(s, same, params).chi_hat == same.chi_hat);
    }
  }
}

TEST_CASE("cleanup keeps the planted labeling with enough rounds") {
  const PlantedModel pm = weighted_model(40, 2.0, 1.0);
  const CleanupParams params = cleanup_params_weighted(40, 2.0, 1.0, 0.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    ModelScheduler s(pm.model, rng);
    CHECK(run_cleanup(s, Labels{pm.truth.chi}, params).chi_hat == pm.truth.chi);
    const Labels neg = negate(Labels{pm.truth.chi});
    CHECK(run_cleanup(s, neg, params).chi_hat == neg.chi_hat);
  }
}

TEST_CASE("cleanup with zero phases returns the labels unchanged") {
  const PlantedModel pm = weighted_model(4, 2.0, 1.0);
  Rng rng(1);
  ModelScheduler s(pm.model, rng);
  CleanupParams params;
  params.phases = 0;
  params.rounds_per_phase = 10;
  const Labels in{{1, -1, 1, -1}};
  CHECK(run_cleanup(s, in, params).chi_hat == in.chi_hat);
}

TEST_CASE("cleanup reads phase-start labels and keeps unsampled nodes") {
  // Path 0-1-2 plus an isolated node 3; one event (0,1) per phase.
  const std::vector<ScheduleEvent> events{{0, 0, 1}};
  ReplaySource src(events, 4);
  CleanupParams params;
  params.phases = 1;
  params.rounds_per_phase = 1;
  const Labels out = run_cleanup(src, Labels{{1, -1, -1, -1}}, params);
  CHECK(out.chi_hat == std::vector<int>{-1, 1, -1, -1});
}

TEST_CASE("weighted cleanup fixes 1/64 random flips") {
  const std::size_t n = 256;
  const PlantedModel pm = weighted_model(n, 2.0, 1.0);
  const CleanupParams params = cleanup_params_weighted(n, 2.0, 1.0, 1.0 / 64.0);
  int all_correct = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    Labels l{pm.truth.chi};
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < n / 64; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.uniform() * (n - i));
      std::swap(idx[i], idx[j]);
      l.chi_hat[idx[i]] = -l.chi_hat[idx[i]];
    }
    ModelScheduler s(pm.model, rng);
    if (misclassification(run_cleanup(s, l, params), pm.truth) == 0) ++all_correct;
  }
  CHECK(all_correct == 5);
}

TEST_CASE("observer sees every phase") {
  const PlantedModel pm = weighted_model(8, 2.0, 1.0);
  Rng rng(3);
  ModelScheduler s(pm.model, rng);
  CleanupParams params;
  params.phases = 4;
  params.rounds_per_phase = 20;
  std::vector<std::uint64_t> seen;
  run_cleanup(s, Labels{pm.truth.chi}, params,
              [&](std::uint64_t phase, const Labels&) { seen.push_back(phase); });
  CHECK(seen == std::vector<std::uint64_t>{0, 1, 2, 3});
}

TEST_CASE("labels round trip") {
  const Labels l{{1, -1, -1, 1, 1}};
  std::stringstream ss;
  write_labels(ss, l);
  CHECK(read_labels(ss).chi_hat == l.chi_hat);
  std::istringstream bad("1 0 -1\n");
  CHECK_THROWS_AS(read_labels(bad), InvalidInput);
}
