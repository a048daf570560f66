#include "gossip/community.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "gossip/errors.hpp"

namespace gossip {

Labels assign_labels(std::span<const double> vhat2) {
  Labels out;
  out.chi_hat.reserve(vhat2.size());
  for (double x : vhat2) out.chi_hat.push_back(x >= 0.0 ? 1 : -1);
  return out;
}

std::size_t misclassification(const Labels& labels, const GroundTruth& truth) {
  if (labels.chi_hat.size() != truth.chi.size())
    throw InvalidInput("misclassification: size mismatch");
  std::size_t disagree = 0;
  for (std::size_t u = 0; u < truth.chi.size(); ++u)
    if (labels.chi_hat[u] != truth.chi[u]) ++disagree;
  return std::min(disagree, truth.chi.size() - disagree);
}

namespace {

std::uint64_t ceil_rounds(double x) {
  if (!std::isfinite(x) || x < 1.0) return 1;
  return static_cast<std::uint64_t>(std::ceil(x));
}

void check_cleanup_inputs(std::size_t n, double p, double q) {
  if (n < 2) throw InvalidParameters("cleanup needs n >= 2");
  if (!(q > 0.0) || !(p > 0.0) || !std::isfinite(p))
    throw InvalidParameters("cleanup needs positive p and q");
}

}  // namespace

CleanupParams cleanup_params_weighted(std::size_t n, double p, double q, double eps) {
  check_cleanup_inputs(n, p, q);
  if (!(eps >= 0.0) || eps > 1.0 / 64.0)
    throw InvalidParameters("weighted cleanup requires 0 <= eps <= 1/64");
  CleanupParams c;
  c.kind = CleanupParams::Kind::weighted;
  c.p_prime = (1.0 - eps) * p / (p + q);
  c.q_prime = (q + eps * p) / (p + q);
  if (!(c.p_prime > c.q_prime))
    throw InfeasibleCleanup("weighted cleanup infeasible: p' <= q'");
  const double nn = static_cast<double>(n);
  const double gap = std::sqrt(c.p_prime) - std::sqrt(c.q_prime);
  c.rounds_per_phase = ceil_rounds(72.0 * nn * std::log(nn) / (gap * gap));
  c.phases = 1;
  c.tolerated_eps = eps;
  return c;
}

CleanupParams cleanup_params_sbm(std::size_t n, double p, double q) {
  check_cleanup_inputs(n, p, q);
  const double nn = static_cast<double>(n);
  const double ln_n = std::log(nn);
  CleanupParams c;
  c.kind = CleanupParams::Kind::sbm;
  c.delta = p / 2.0 - q / 2.0 - std::sqrt(12.0 * p * ln_n / nn) - std::sqrt(12.0 * q * ln_n / nn);
  if (!(c.delta > 0.0)) {
    throw InfeasibleCleanup("G(n,p,q) cleanup infeasible: Delta = " + std::to_string(c.delta) +
                            " <= 0");
  }
  c.p_dprime = p / 2.0 - std::sqrt(6.0 * p * ln_n / nn) - c.delta / 12.0;
  c.q_dprime = q / 2.0 + std::sqrt(6.0 * q * ln_n / nn) + c.delta / 12.0;
  if (!(c.p_dprime > c.q_dprime) || !(c.p_dprime > 0.0))
    throw InfeasibleCleanup("G(n,p,q) cleanup infeasible: p'' <= q''");
  const double gap = std::sqrt(c.p_dprime) - std::sqrt(c.q_dprime);
  c.rounds_per_phase = ceil_rounds(72.0 * p * nn * ln_n / (gap * gap));
  c.phases = ceil_rounds(6.0 * ln_n);
  c.tolerated_eps = c.delta / (24.0 * p);
  return c;
}

Labels run_cleanup(EventSource& source, Labels labels, const CleanupParams& params,
                   const std::function<void(std::uint64_t, const Labels&)>& observer) {
  const std::size_t n = labels.chi_hat.size();
  if (n != source.node_count()) throw InvalidInput("cleanup: label count does not match model");
  std::vector<long long> sums(n);
  std::vector<std::uint64_t> samples(n);
  for (std::uint64_t phase = 0; phase < params.phases; ++phase) {
    const std::vector<int> start = labels.chi_hat;
    std::fill(sums.begin(), sums.end(), 0);
    std::fill(samples.begin(), samples.end(), 0);
    for (std::uint64_t i = 0; i < params.rounds_per_phase; ++i) {
      const ScheduleEvent ev = source.next();
      sums[ev.u] += start[ev.v];
      sums[ev.v] += start[ev.u];
      ++samples[ev.u];
      ++samples[ev.v];
    }
    for (std::size_t u = 0; u < n; ++u)
      if (samples[u] > 0) labels.chi_hat[u] = sums[u] >= 0 ? 1 : -1;
    if (observer) observer(phase, labels);
  }
  return labels;
}

void write_labels(std::ostream& out, const Labels& labels) {
  for (std::size_t u = 0; u < labels.chi_hat.size(); ++u) {
    if (u) out << ' ';
    out << labels.chi_hat[u];
  }
  out << '\n';
}

Labels read_labels(std::istream& in) {
  Labels l;
  std::string line;
  std::getline(in, line);
  std::istringstream ls(line);
  int x = 0;
  while (ls >> x) {
    if (x != 1 && x != -1) throw InvalidInput("labels must be +1 or -1");
    l.chi_hat.push_back(x);
  }
  if (!ls.eof()) throw InvalidInput("malformed label line");
  return l;
}

}  // namespace gossip
