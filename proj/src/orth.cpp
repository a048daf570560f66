#include "gossip/orth.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "gossip/errors.hpp"

namespace gossip {

std::pair<double, double> avg_step(double y_u, double y_v) {
  const double mean = (y_u + y_v) / 2.0;
  return {mean, mean};
}

AvgState run_averaging(EventSource& source, std::span<const double> init, std::uint64_t rounds,
                       const std::function<void(const AvgState&)>& observer) {
  if (init.size() != source.node_count())
    throw InvalidInput("averaging: init size does not match node count");
  AvgState s{{init.begin(), init.end()}, {init.begin(), init.end()}};
  for (std::uint64_t t = 0; t < rounds; ++t) {
    const ScheduleEvent ev = source.next();
    std::tie(s.y[ev.u], s.y[ev.v]) = avg_step(s.y[ev.u], s.y[ev.v]);
    if (observer) observer(s);
  }
  return s;
}

double averaging_error(const AvgState& state) {
  double mean = 0.0;
  for (double x : state.x0) mean += x;
  mean /= static_cast<double>(state.x0.size());
  double err = 0.0;
  for (double y : state.y) err += (y - mean) * (y - mean);
  return err;
}

std::uint64_t averaging_rounds(double lambda2, double eps, double delta) {
  if (!(eps > 0.0) || !(delta > 0.0)) throw InvalidParameters("eps and delta must be positive");
  if (!(lambda2 < 1.0)) throw NoMixing("lambda2 >= 1: averaging does not mix");
  if (lambda2 <= 0.0) return 1;
  const double rounds = std::log(1.0 / (eps * delta)) / std::log(1.0 / lambda2);
  return static_cast<std::uint64_t>(std::ceil(std::max(rounds, 0.0)));
}

double averaging_lambda2(const CommunicationModel& model) {
  Matrix m = communication_matrix(model);
  const std::size_t n = m.rows();
  // I - D/2 + W/2 from D + W: flip the diagonal, halve everything.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = (i == j) ? 1.0 - m(i, i) / 2.0 : m(i, j) / 2.0;
  return sym_eigen(m).values.at(1);
}

OrthState::OrthState(const Matrix& q)
    : k_(q.cols()), r_(q.rows(), packed_size(q.cols())), vhat_(q.rows(), q.cols()),
      failed_(q.rows(), false) {
  for (std::size_t u = 0; u < q.rows(); ++u) {
    const auto row = q.row(u);
    auto out = r_.row(u);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = i; j < k_; ++j) out[idx++] = row[i] * row[j];
  }
}

std::size_t OrthState::packed_index(std::size_t k, std::size_t i, std::size_t j) noexcept {
  if (i > j) std::swap(i, j);
  return i * k - (i * (i - 1)) / 2 + (j - i);
}

double OrthState::r(std::size_t u, std::size_t i, std::size_t j) const noexcept {
  return r_(u, packed_index(k_, i, j));
}

std::size_t OrthState::failure_count() const noexcept {
  return static_cast<std::size_t>(std::count(failed_.begin(), failed_.end(), true));
}

void OrthState::finalize_all(const Matrix& q) {
  const std::size_t n = node_count();
  for (std::size_t u = 0; u < n; ++u) {
    NodeOrthOutput out = finalize_orth(r_.row(u), q.row(u), n, k_);
    std::copy(out.vhat.begin(), out.vhat.end(), vhat_.row(u).begin());
    failed_[u] = out.failed;
  }
}

void orth_avg_step(OrthState& state, std::size_t u, std::size_t v) {
  auto ru = state.r(u);
  auto rv = state.r(v);
  for (std::size_t i = 0; i < ru.size(); ++i) {
    std::tie(ru[i], rv[i]) = avg_step(ru[i], rv[i]);
  }
}

NodeOrthOutput finalize_orth(std::span<const double> r_packed, std::span<const double> q_row,
                             std::size_t n, std::size_t k) {
  if (r_packed.size() != OrthState::packed_size(k) || q_row.size() != k)
    throw InvalidInput("finalize_orth: dimension mismatch");
  Matrix big_r(k, k);
  const double scale = static_cast<double>(n);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) big_r(i, j) = big_r(j, i) = scale * r_packed[idx++];
  try {
    const Matrix l = cholesky(big_r);
    return {solve_transposed_lower(q_row, l), false};
  } catch (const NotPositiveDefinite&) {
    return {std::vector<double>(k, 0.0), true};
  }
}

OrthState run_asynch_orth(EventSource& source, const Matrix& q, std::uint64_t rounds) {
  if (q.rows() != source.node_count())
    throw InvalidInput("orth: state rows do not match node count");
  OrthState state(q);
  for (std::uint64_t t = 0; t < rounds; ++t) {
    const ScheduleEvent ev = source.next();
    orth_avg_step(state, ev.u, ev.v);
  }
  state.finalize_all(q);
  return state;
}

Matrix centralized_orth(const Matrix& q) {
  const Matrix l = cholesky(gram(q));
  Matrix v(q.rows(), q.cols());
  for (std::size_t u = 0; u < q.rows(); ++u) {
    const auto x = solve_transposed_lower(q.row(u), l);
    std::copy(x.begin(), x.end(), v.row(u).begin());
  }
  return v;
}

}  // namespace gossip
