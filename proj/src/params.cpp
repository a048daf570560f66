#include "gossip/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gossip/errors.hpp"
#include "gossip/orth.hpp"

namespace gossip {

WeightedSpectralFacts weighted_spectral_facts(std::size_t n, double p, double q) {
  if (n < 4 || n % 2 != 0) throw InvalidParameters("weighted model needs even n >= 4");
  if (!(q > 0.0) || !(p > q)) throw InvalidParameters("weighted model requires p > q > 0");
  const double nn = static_cast<double>(n);
  WeightedSpectralFacts f;
  f.lambda1 = 4.0 / nn;
  f.lambda2 = (4.0 / nn) * p / (p + (nn / (nn - 2.0)) * q);
  f.lambda_tail = 2.0 / nn - 4.0 * p / (nn * nn * (p + q) - 2.0 * nn * p);
  f.gap12 = f.lambda1 - f.lambda2;
  f.gap23 = f.lambda2 - f.lambda_tail;
  f.rho = std::min(q / (p + q), (p - q) / (p + q));
  const double unit = 1.0 / std::sqrt(nn);
  f.v1.assign(n, unit);
  f.v2.assign(n, -unit);
  std::fill(f.v2.begin(), f.v2.begin() + static_cast<std::ptrdiff_t>(n / 2), unit);
  return f;
}

double mixing_bound(const CommunicationModel& model) {
  const double lambda2 = averaging_lambda2(model);
  if (lambda2 >= 1.0 - 1e-12)
    throw NoMixing("lambda2(I - D/2 + W/2) is 1: communication graph is disconnected");
  const double inv_n = 1.0 / static_cast<double>(model.node_count());
  if (lambda2 <= 0.0) return inv_n;
  return std::min(inv_n, std::log(1.0 / lambda2));
}

SpectralBounds measured_bounds(const CommunicationModel& model, std::size_t k) {
  const std::size_t n = model.node_count();
  if (k == 0 || k >= n) throw InvalidParameters("measured_bounds requires 1 <= k < n");
  const SymEigen eig = sym_eigen(communication_matrix(model));
  SpectralBounds b;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < k; ++j) {
    b.Lambda += eig.values[j];
    gap = std::min(gap, eig.values[j] - eig.values[j + 1]);
  }
  b.gap = gap;
  b.gamma_mix = mixing_bound(model);
  return b;
}

DerivedSchedule oja_schedule(const SpectralBounds& bounds, std::size_t n, std::size_t k,
                             double eps, double delta, const ScheduleConstants& consts,
                             double lambda1) {
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0))
    throw InvalidParameters("eps and delta must lie in (0, 1)");
  if (!(bounds.Lambda > 0.0) || !(bounds.gap > 0.0) || !(bounds.gamma_mix > 0.0) ||
      !(lambda1 > 0.0) || k == 0 || n == 0)
    throw InvalidParameters("schedule inputs must be positive");
  if (!(consts.c1 > 0.0) || !(consts.c2 > 0.0) || !(consts.c3 > 0.0))
    throw InvalidParameters("schedule constants must be positive");

  DerivedSchedule d;
  d.xi = static_cast<double>(n) / (delta * eps * bounds.gap);
  const double log_xi = std::log(d.xi);
  const double kk = static_cast<double>(k);
  const double eta = consts.c1 * eps * eps * bounds.gap * delta * delta /
                     (bounds.Lambda * kk * kk * kk * log_xi * log_xi * log_xi);
  d.t_oja_exact = consts.c2 * (log_xi + 1.0 / eps) / (bounds.gap * eta);
  d.t_orth_exact = consts.c3 * (log_xi + 1.0 / eps) * lambda1 / (bounds.gap * bounds.gamma_mix);
  d.schedule.k = k;
  d.schedule.eta = eta;
  d.schedule.t_oja = static_cast<std::uint64_t>(std::ceil(d.t_oja_exact));
  d.schedule.t_orth = static_cast<std::uint64_t>(std::ceil(d.t_orth_exact));
  return d;
}

}  // namespace gossip
