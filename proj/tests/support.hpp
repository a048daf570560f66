#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gossip/rng.hpp"

namespace gossip::testing {

// Random v2tilde = alpha v2 + beta w with w ⊥ v2 and ‖w‖ = 1, alpha >= 1 - eps,
// alpha^2 + beta^2 <= (1 + eps)^2. Even constructions spread w over all
// nodes; odd ones concentrate it on a few nodes against the sign of v2.
inline std::vector<double> perturbed_v2(const std::vector<double>& v2, double eps, Rng& rng,
                                        int variant) {
  const std::size_t n = v2.size();
  std::vector<double> w(n, 0.0);
  if (variant % 2 == 0) {
    for (auto& x : w) x = rng.normal();
  } else {
    const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform() * (n / 4));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.uniform() * (n - i));
      std::swap(idx[i], idx[j]);
      w[idx[i]] = v2[idx[i]] >= 0.0 ? -1.0 : 1.0;
    }
  }
  double proj = 0.0;
  for (std::size_t u = 0; u < n; ++u) proj += w[u] * v2[u];
  for (std::size_t u = 0; u < n; ++u) w[u] -= proj * v2[u];
  double norm = 0.0;
  for (double x : w) norm += x * x;
  norm = std::sqrt(norm);
  for (auto& x : w) x /= norm;

  const double alpha = (1.0 - eps) + rng.uniform() * 2.0 * eps;
  const double beta_max = std::sqrt(std::max(0.0, (1.0 + eps) * (1.0 + eps) - alpha * alpha));
  const double beta = beta_max * std::sqrt(rng.uniform());
  std::vector<double> out(n);
  for (std::size_t u = 0; u < n; ++u) out[u] = alpha * v2[u] + beta * w[u];
  return out;
}

}  // namespace gossip::testing
