#pragma once

#include <cstddef>
#include <vector>

#include "gossip/model.hpp"
#include "gossip/oja.hpp"

namespace gossip {

/// Closed-form spectrum of D + W for the (n, p, q)-weighted model.
struct WeightedSpectralFacts {
  double lambda1 = 0.0;      // 4/n, eigenvector 1/sqrt(n)
  double lambda2 = 0.0;      // eigenvector chi/sqrt(n)
  double lambda_tail = 0.0;  // remaining n-2 eigenvalues
  double gap12 = 0.0;
  double gap23 = 0.0;
  double rho = 0.0;  // min(q/(p+q), (p-q)/(p+q))
  std::vector<double> v1;
  std::vector<double> v2;
};

WeightedSpectralFacts weighted_spectral_facts(std::size_t n, double p, double q);

struct SpectralBounds {
  double Lambda = 0.0;     // >= sum of the top-k eigenvalues
  double gap = 0.0;        // <= min top-k eigengap
  double gamma_mix = 0.0;  // <= min(1/n, log(1/lambda2(I - D/2 + W/2)))
};

/// The universal constants of the step-size and round formulas.
struct ScheduleConstants {
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;
};

/// min(1/n, log(1/lambda2(I - D/2 + W/2))). Throws NoMixing when
/// lambda2 >= 1 - 1e-12 (disconnected communication graph).
double mixing_bound(const CommunicationModel& model);

/// Bounds measured from the dense spectrum of D + W plus mixing_bound.
SpectralBounds measured_bounds(const CommunicationModel& model, std::size_t k);

struct DerivedSchedule {
  OjaSchedule schedule;
  double xi = 0.0;
  double t_oja_exact = 0.0;   // before the ceiling
  double t_orth_exact = 0.0;  // before the ceiling
};

/// xi = n/(delta eps gap),
/// eta = c1 eps^2 gap delta^2 / (Lambda k^3 log^3 xi),
/// T = c2 (log xi + 1/eps) / (gap eta),
/// T' = c3 (log xi + 1/eps) lambda1 / (gap gamma_mix).
/// Natural logarithms throughout.
DerivedSchedule oja_schedule(const SpectralBounds& bounds, std::size_t n, std::size_t k,
                             double eps, double delta, const ScheduleConstants& consts,
                             double lambda1);

}  // namespace gossip
