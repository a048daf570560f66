// Command-line front end: simulate, sweep and oracle.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "gossip/config.hpp"
#include "gossip/errors.hpp"
#include "gossip/harness.hpp"
#include "gossip/linalg.hpp"
#include "gossip/model.hpp"
#include "gossip/rng.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw gossip::InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<gossip::ExperimentConfig> load_configs(const std::string& file,
                                                   const std::vector<std::string>& overrides) {
  std::string text = file.empty() ? std::string() : slurp(file);
  for (const auto& kv : overrides) text += "\n" + kv;
  return gossip::parse_configs(text);
}

void print_spectrum(const gossip::Matrix& m, bool vectors) {
  const gossip::SymEigen eig = gossip::sym_eigen(m);
  std::printf("index,value\n");
  for (std::size_t i = 0; i < eig.values.size(); ++i) std::printf("%zu,%.17g\n", i, eig.values[i]);
  if (vectors) {
    std::printf("vectors\n");
    gossip::write_matrix(std::cout, eig.vectors);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asynchronous gossip Oja simulator"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Run the trials of one config and print CSV rows");
  std::string sim_config;
  std::vector<std::string> sim_kv;
  sim->add_option("-c,--config", sim_config, "key=value config file");
  sim->add_option("settings", sim_kv, "extra key=value settings, appended to the file");

  auto* sweep = app.add_subcommand("sweep", "Run a config grid and write CSV plus summary");
  std::string sweep_config;
  std::string out_path;
  std::string summary_path;
  std::size_t jobs = 0;
  sweep->add_option("-c,--config", sweep_config, "key=value config file")->required();
  sweep->add_option("-o,--out", out_path, "CSV output (default stdout)");
  sweep->add_option("-s,--summary", summary_path, "summary CSV output");
  sweep->add_option("-j,--jobs", jobs, "worker threads (GOSSIP_PARALLELISM overrides the default)");

  auto* oracle = app.add_subcommand("oracle", "Print the spectrum of a matrix or model");
  std::string matrix_path;
  std::string model_kind;
  std::size_t n = 0;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t seed = 1;
  std::string edges_path;
  bool vectors = false;
  oracle->add_option("-m,--matrix", matrix_path, "matrix file: n, then n rows");
  oracle->add_option("--model", model_kind, "weighted | sbm | population | graph");
  oracle->add_option("-n", n, "node count");
  oracle->add_option("-p", p, "intra-community weight");
  oracle->add_option("-q", q, "inter-community weight");
  oracle->add_option("--seed", seed, "seed for sbm sampling");
  oracle->add_option("--edges", edges_path, "edge list for the graph model");
  oracle->add_flag("--vectors", vectors, "also print eigenvectors");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      const auto configs = load_configs(sim_config, sim_kv);
      if (configs.size() != 1) throw gossip::InvalidInput("simulate takes a single config, not a grid");
      const auto rows = gossip::run_sweep(configs, 1);
      gossip::write_csv(std::cout, rows);
    } else if (sweep->parsed()) {
      const auto configs = load_configs(sweep_config, {});
      std::size_t fallback = std::max(1u, std::thread::hardware_concurrency());
      const std::size_t threads = jobs ? jobs : gossip::parallelism_from_env(fallback);
      const auto rows = gossip::run_sweep(configs, threads);
      if (out_path.empty()) {
        gossip::write_csv(std::cout, rows);
      } else {
        std::ofstream f(out_path);
        gossip::write_csv(f, rows);
        if (!f) throw std::runtime_error("write failed: " + out_path);
      }
      if (!summary_path.empty()) {
        std::ofstream f(summary_path);
        gossip::write_summary(f, rows);
        if (!f) throw std::runtime_error("write failed: " + summary_path);
      }
    } else if (oracle->parsed()) {
      if (!matrix_path.empty()) {
        std::ifstream f(matrix_path);
        if (!f) throw gossip::InvalidInput("cannot open " + matrix_path);
        print_spectrum(gossip::read_matrix(f), vectors);
      } else if (model_kind == "weighted") {
        print_spectrum(gossip::communication_matrix(gossip::weighted_model(n, p, q).model), vectors);
      } else if (model_kind == "sbm") {
        gossip::Rng rng(seed);
        print_spectrum(gossip::communication_matrix(gossip::sbm_model(n, p, q, rng).model), vectors);
      } else if (model_kind == "population") {
        print_spectrum(gossip::communication_matrix(gossip::population_model(n)), vectors);
      } else if (model_kind == "graph") {
        std::ifstream f(edges_path);
        if (!f) throw gossip::InvalidInput("cannot open " + edges_path);
        const auto edges = gossip::read_edge_list(f);
        print_spectrum(gossip::communication_matrix(gossip::graph_model(edges, n)), vectors);
      } else {
        throw gossip::InvalidInput("oracle needs --matrix or --model");
      }
    }
  } catch (const gossip::Error& e) {
    std::cerr << "error (" << e.kind() << "): " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
