#include "gossip/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <tuple>
#include <ostream>
#include <thread>

#include "gossip/errors.hpp"
#include "gossip/orth.hpp"
#include "gossip/params.hpp"
#include "gossip/rng.hpp"

namespace gossip {

double subspace_error(const Matrix& vhat, const SymEigen& spectrum) {
  const std::size_t n = spectrum.vectors.rows();
  const std::size_t k = vhat.cols();
  if (vhat.rows() != n) throw InvalidInput("subspace_error: row count mismatch");
  if (k >= n) throw InvalidInput("subspace_error: requires k < n");
  double total = 0.0;
  for (std::size_t z = k; z < n; ++z) {
    for (std::size_t c = 0; c < k; ++c) {
      double s = 0.0;
      for (std::size_t u = 0; u < n; ++u) s += spectrum.vectors(u, z) * vhat(u, c);
      total += s * s;
    }
  }
  return total;
}

double subspace_error(const Matrix& vhat, const Matrix& m) {
  return subspace_error(vhat, sym_eigen(m));
}

namespace {

double column_dot(const Matrix& a, std::size_t ca, const Matrix& b, std::size_t cb) {
  double s = 0.0;
  for (std::size_t u = 0; u < a.rows(); ++u) s += a(u, ca) * b(u, cb);
  return s;
}

double truth_alignment(const SymEigen& spectrum, const GroundTruth& truth) {
  const std::size_t n = truth.chi.size();
  double s = 0.0;
  for (std::size_t u = 0; u < n; ++u) s += spectrum.vectors(u, 1) * truth.chi[u];
  return std::abs(s) / std::sqrt(static_cast<double>(n));
}

}  // namespace

void run_pipeline(EventSource& source, StateMatrix q0, const PipelineInputs& in,
                  TrialReport& report, Labels* labels_out) {
  if (!in.spectrum || !in.truth) throw InvalidInput("run_pipeline: missing spectrum or truth");
  CountingSource counting(source);
  const OjaRun oja = run_asynch_oja(counting, std::move(q0), in.schedule.eta,
                                    in.schedule.t_oja, false);
  const OrthState orth = run_asynch_orth(counting, oja.q, in.schedule.t_orth);
  const Matrix& vhat = orth.vhat();

  std::vector<double> col2(vhat.rows());
  for (std::size_t u = 0; u < vhat.rows(); ++u) col2[u] = vhat(u, 1);
  Labels labels = assign_labels(col2);

  report.alignment_1 = std::abs(column_dot(vhat, 0, in.spectrum->vectors, 0));
  report.alignment_2 = std::abs(column_dot(vhat, 1, in.spectrum->vectors, 1));
  report.norm_2 = norm2(col2);
  report.subspace_error = subspace_error(vhat, *in.spectrum);
  report.truth_alignment = truth_alignment(*in.spectrum, *in.truth);
  report.orth_failures = orth.failure_count();
  report.misclass_before = misclassification(labels, *in.truth);
  report.misclass_after_cleanup = report.misclass_before;

  if (in.cleanup) {
    labels = run_cleanup(counting, std::move(labels), *in.cleanup);
    report.misclass_after_cleanup = misclassification(labels, *in.truth);
  }
  report.rounds_used = counting.rounds();
  const auto contacts = counting.contacts();
  report.local_rounds_max =
      contacts.empty() ? 0 : *std::max_element(contacts.begin(), contacts.end());
  if (labels_out) *labels_out = std::move(labels);
}

namespace {

struct BuiltModel {
  CommunicationModel model;
  GroundTruth truth;
};

BuiltModel build_model(const ExperimentConfig& c, Rng& rng) {
  switch (c.model) {
    case ModelKind::weighted: {
      PlantedModel pm = weighted_model(c.n, c.p, c.q);
      return {std::move(pm.model), std::move(pm.truth)};
    }
    case ModelKind::sbm: {
      SbmModel sm = sbm_model(c.n, c.p, c.q, rng);
      return {std::move(sm.model), std::move(sm.truth)};
    }
    case ModelKind::population: {
      CommunicationModel m = population_model(c.n);
      return {std::move(m), GroundTruth::first_half(c.n)};
    }
    case ModelKind::graph: {
      std::ifstream f(c.graph_file);
      if (!f) throw InvalidInput("cannot open graph file: " + c.graph_file);
      const std::vector<NodePair> edges = read_edge_list(f);
      CommunicationModel m = graph_model(edges, c.n);
      const std::size_t n = m.node_count();
      return {std::move(m), GroundTruth::first_half(n)};
    }
  }
  throw InvalidInput("unknown model kind");
}

std::optional<CleanupParams> resolve_cleanup(const ExperimentConfig& c, std::size_t n) {
  if (!c.cleanup.enabled) return std::nullopt;
  CleanupParams params;
  if (c.cleanup.phases && c.cleanup.rounds) {
    params.kind = CleanupParams::Kind::manual;
  } else if (c.model == ModelKind::weighted) {
    params = cleanup_params_weighted(n, c.p, c.q, c.cleanup.eps);
  } else if (c.model == ModelKind::sbm) {
    params = cleanup_params_sbm(n, c.p, c.q);
  } else {
    throw InvalidParameters("cleanup on this model needs explicit phases and rounds");
  }
  if (c.cleanup.phases) params.phases = *c.cleanup.phases;
  if (c.cleanup.rounds) params.rounds_per_phase = *c.cleanup.rounds;
  return params;
}

OjaSchedule resolve_schedule(const ExperimentConfig& c, const CommunicationModel& model,
                             const SymEigen& spectrum) {
  if (const auto* d = std::get_if<DirectSchedule>(&c.schedule)) {
    OjaSchedule s;
    s.k = c.k;
    s.eta = d->eta;
    s.t_oja = d->t_oja;
    s.t_orth = d->t_orth;
    return s;
  }
  const auto& spec = std::get<DerivedScheduleSpec>(c.schedule);
  const std::size_t n = model.node_count();
  if (c.k >= n) throw InvalidParameters("k must be below n");
  SpectralBounds b;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < c.k; ++j) {
    b.Lambda += spectrum.values[j];
    gap = std::min(gap, spectrum.values[j] - spectrum.values[j + 1]);
  }
  b.gap = gap;
  b.gamma_mix = mixing_bound(model);
  return oja_schedule(b, n, c.k, spec.eps, spec.delta, spec.constants, spectrum.values[0])
      .schedule;
}

}  // namespace

TrialReport run_trial(const ExperimentConfig& config, std::uint64_t seed) {
  TrialReport report;
  report.seed = seed;
  report.model = config.model;
  report.n = config.n;
  report.schedule.k = config.k;
  try {
    Rng rng(seed);
    BuiltModel built = build_model(config, rng);
    const std::size_t n = built.model.node_count();
    report.n = n;
    if (config.k >= n) throw InvalidParameters("k must be below n");
    const SymEigen spectrum = sym_eigen(communication_matrix(built.model));

    PipelineInputs in;
    in.spectrum = &spectrum;
    in.truth = &built.truth;
    in.schedule = resolve_schedule(config, built.model, spectrum);
    report.schedule = in.schedule;
    in.cleanup = resolve_cleanup(config, n);

    StateMatrix q0 = init_states(n, config.k, rng);
    ModelScheduler scheduler(built.model, rng);
    run_pipeline(scheduler, std::move(q0), in, report);
  } catch (const Error& e) {
    report.status = e.kind();
  }
  return report;
}

std::vector<TrialReport> run_sweep(const std::vector<ExperimentConfig>& configs,
                                   std::size_t parallelism) {
  if (configs.empty()) throw InvalidInput("sweep needs at least one config");
  struct Job {
    std::size_t config_id;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < configs.size(); ++c)
    for (std::size_t i = 0; i < configs[c].trials; ++i) jobs.push_back({c, i});

  std::vector<TrialReport> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const ExperimentConfig& c = configs[jobs[j].config_id];
      TrialReport r = run_trial(c, derive_seed(c.seed, jobs[j].trial));
      r.config_id = jobs[j].config_id;
      r.trial = jobs[j].trial;
      rows[j] = std::move(r);
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(parallelism, 1, jobs.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::stable_sort(rows.begin(), rows.end(), [](const TrialReport& a, const TrialReport& b) {
    return std::tie(a.config_id, a.trial) < std::tie(b.config_id, b.trial);
  });
  return rows;
}

std::size_t parallelism_from_env(std::size_t fallback) {
  const char* v = std::getenv("GOSSIP_PARALLELISM");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v, &end, 10);
  if (*end != '\0' || x == 0) throw InvalidInput("GOSSIP_PARALLELISM must be a positive integer");
  return static_cast<std::size_t>(x);
}

namespace {

std::string fmt_real(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_count(const std::optional<std::size_t>& x) {
  return x ? std::to_string(*x) : std::string("nan");
}

}  // namespace

void write_csv_header(std::ostream& out) {
  out << "config_id,trial,seed,model,n,k,eta,t_oja,t_orth,status,alignment_1,alignment_2,"
         "norm_2,subspace_error,truth_alignment,misclass_before,misclass_after_cleanup,"
         "orth_failures,rounds_used,local_rounds_max\n";
}

void write_csv_row(std::ostream& out, const TrialReport& r) {
  out << r.config_id << ',' << r.trial << ',' << r.seed << ',' << to_string(r.model) << ','
      << r.n << ',' << r.schedule.k << ',' << fmt_real(r.schedule.eta) << ',' << r.schedule.t_oja
      << ',' << r.schedule.t_orth << ',' << r.status << ',' << fmt_real(r.alignment_1) << ','
      << fmt_real(r.alignment_2) << ',' << fmt_real(r.norm_2) << ','
      << fmt_real(r.subspace_error) << ',' << fmt_real(r.truth_alignment) << ','
      << fmt_count(r.misclass_before) << ',' << fmt_count(r.misclass_after_cleanup) << ','
      << fmt_count(r.orth_failures) << ',' << r.rounds_used << ',' << r.local_rounds_max << '\n';
}

void write_csv(std::ostream& out, const std::vector<TrialReport>& rows) {
  write_csv_header(out);
  for (const auto& r : rows) write_csv_row(out, r);
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return TrialReport::kNaN;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

void write_summary(std::ostream& out, const std::vector<TrialReport>& rows) {
  struct Metric {
    const char* name;
    double (*get)(const TrialReport&);
  };
  static const Metric metrics[] = {
      {"alignment_1", [](const TrialReport& r) { return r.alignment_1; }},
      {"alignment_2", [](const TrialReport& r) { return r.alignment_2; }},
      {"norm_2", [](const TrialReport& r) { return r.norm_2; }},
      {"subspace_error", [](const TrialReport& r) { return r.subspace_error; }},
      {"misclass_before",
       [](const TrialReport& r) { return static_cast<double>(r.misclass_before.value_or(0)); }},
      {"misclass_after_cleanup",
       [](const TrialReport& r) {
         return static_cast<double>(r.misclass_after_cleanup.value_or(0));
       }},
      {"local_rounds_max",
       [](const TrialReport& r) { return static_cast<double>(r.local_rounds_max); }},
  };
  out << "config_id,trials,failed";
  for (const auto& m : metrics) out << ',' << m.name << "_median," << m.name << "_q10," << m.name << "_q90";
  out << '\n';

  std::size_t begin = 0;
  while (begin < rows.size()) {
    std::size_t end = begin;
    while (end < rows.size() && rows[end].config_id == rows[begin].config_id) ++end;
    std::size_t failed = 0;
    for (std::size_t i = begin; i < end; ++i)
      if (!rows[i].ok()) ++failed;
    out << rows[begin].config_id << ',' << (end - begin) << ',' << failed;
    for (const auto& m : metrics) {
      std::vector<double> xs;
      for (std::size_t i = begin; i < end; ++i)
        if (rows[i].ok()) xs.push_back(m.get(rows[i]));
      out << ',' << fmt_real(quantile(xs, 0.5)) << ',' << fmt_real(quantile(xs, 0.1)) << ','
          << fmt_real(quantile(xs, 0.9));
    }
    out << '\n';
    begin = end;
  }
}

Matrix read_matrix(std::istream& in) {
  std::size_t n = 0;
  if (!(in >> n) || n == 0) throw InvalidInput("matrix file: expected positive n on first line");
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(in >> m(i, j))) throw InvalidInput("matrix file: too few entries");
  double extra = 0.0;
  if (in >> extra) throw InvalidInput("matrix file: trailing entries");
  return m;
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << fmt_real(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace gossip
