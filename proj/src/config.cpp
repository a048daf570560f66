#include "gossip/config.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "gossip/errors.hpp"

namespace gossip {

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::weighted: return "weighted";
    case ModelKind::sbm: return "sbm";
    case ModelKind::population: return "population";
    case ModelKind::graph: return "graph";
  }
  return "unknown";
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw InvalidInput("empty item in list '" + value + "'");
    out.push_back(item);
  }
  if (out.empty()) throw InvalidInput("empty value");
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size()) throw InvalidInput("key '" + key + "': not a number: " + v);
  return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  // Accept plain integers and exact scientific forms such as 2e5.
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec == std::errc{} && ptr == v.data() + v.size()) return x;
  const double d = to_double(key, v);
  if (d < 0.0 || d != static_cast<double>(static_cast<std::uint64_t>(d)))
    throw InvalidInput("key '" + key + "': not a nonnegative integer: " + v);
  return static_cast<std::uint64_t>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw InvalidInput("key '" + key + "': expected on/off, got " + v);
}

ModelKind to_model(const std::string& v) {
  if (v == "weighted") return ModelKind::weighted;
  if (v == "sbm") return ModelKind::sbm;
  if (v == "population") return ModelKind::population;
  if (v == "graph" || v == "graph-file") return ModelKind::graph;
  throw InvalidInput("unknown model kind: " + v);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "model", "n",      "p",       "q",       "graph_file",     "k",
      "eta",   "t_oja",  "t_orth",  "eps",     "delta",          "c1",
      "c2",    "c3",     "cleanup", "cleanup_phases", "cleanup_rounds",
      "cleanup_eps",     "trials",  "seed"};
  return keys;
}

}  // namespace

ExperimentConfig make_config(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::map<std::string, std::string> m;
  for (const auto& [k, v] : kv) {
    if (!known_keys().count(k)) throw InvalidInput("unknown config key: " + k);
    if (!m.emplace(k, v).second) throw InvalidInput("duplicate config key: " + k);
  }
  auto has = [&](const char* k) { return m.count(k) > 0; };

  ExperimentConfig c;
  if (!has("model")) throw InvalidInput("config needs 'model'");
  c.model = to_model(m["model"]);
  if (has("n")) c.n = static_cast<std::size_t>(to_u64("n", m["n"]));
  if (has("p")) c.p = to_double("p", m["p"]);
  if (has("q")) c.q = to_double("q", m["q"]);
  if (has("graph_file")) c.graph_file = m["graph_file"];
  if (has("k")) c.k = static_cast<std::size_t>(to_u64("k", m["k"]));
  if (has("trials")) c.trials = static_cast<std::size_t>(to_u64("trials", m["trials"]));
  if (has("seed")) c.seed = to_u64("seed", m["seed"]);

  const bool any_direct = has("eta") || has("t_oja") || has("t_orth");
  const bool all_direct = has("eta") && has("t_oja") && has("t_orth");
  const bool any_derived = has("eps") || has("delta") || has("c1") || has("c2") || has("c3");
  if (any_direct && any_derived)
    throw InvalidInput("config mixes direct (eta, t_oja, t_orth) and derived (eps, delta) keys");
  if (any_direct) {
    if (!all_direct) throw InvalidInput("direct schedule needs eta, t_oja and t_orth");
    c.schedule = DirectSchedule{to_double("eta", m["eta"]), to_u64("t_oja", m["t_oja"]),
                                to_u64("t_orth", m["t_orth"])};
  } else if (has("eps") && has("delta")) {
    DerivedScheduleSpec d;
    d.eps = to_double("eps", m["eps"]);
    d.delta = to_double("delta", m["delta"]);
    if (has("c1")) d.constants.c1 = to_double("c1", m["c1"]);
    if (has("c2")) d.constants.c2 = to_double("c2", m["c2"]);
    if (has("c3")) d.constants.c3 = to_double("c3", m["c3"]);
    c.schedule = d;
  } else {
    throw InvalidInput("config needs either eta/t_oja/t_orth or eps/delta");
  }

  if (has("cleanup")) c.cleanup.enabled = to_bool("cleanup", m["cleanup"]);
  if (has("cleanup_phases")) c.cleanup.phases = to_u64("cleanup_phases", m["cleanup_phases"]);
  if (has("cleanup_rounds")) c.cleanup.rounds = to_u64("cleanup_rounds", m["cleanup_rounds"]);
  if (has("cleanup_eps")) c.cleanup.eps = to_double("cleanup_eps", m["cleanup_eps"]);

  if (c.trials < 1) throw InvalidInput("trials must be >= 1");
  if (c.k < 2) throw InvalidInput("k must be >= 2 (labels come from the second column)");
  if (c.model == ModelKind::graph) {
    if (c.graph_file.empty()) throw InvalidInput("graph model needs 'graph_file'");
  } else if (c.n == 0) {
    throw InvalidInput("config needs 'n'");
  }
  if (c.model == ModelKind::weighted || c.model == ModelKind::sbm) {
    if (!has("p") || !has("q")) throw InvalidInput("planted models need 'p' and 'q'");
  }
  if (c.cleanup.enabled &&
      (c.model == ModelKind::population || c.model == ModelKind::graph) &&
      (!c.cleanup.phases || !c.cleanup.rounds))
    throw InvalidInput("cleanup on this model needs cleanup_phases and cleanup_rounds");
  return c;
}

std::vector<ExperimentConfig> parse_configs(std::istream& in) {
  std::vector<std::pair<std::string, std::vector<std::string>>> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw InvalidInput("line " + std::to_string(lineno) + ": empty key or value");
    entries.emplace_back(key, split_list(value));
  }

  std::vector<ExperimentConfig> out;
  std::vector<std::size_t> idx(entries.size(), 0);
  while (true) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
      kv.emplace_back(entries[i].first, entries[i].second[idx[i]]);
    out.push_back(make_config(kv));
    // Odometer: last key varies fastest.
    std::size_t pos = entries.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < entries[pos].second.size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
    if (entries.empty()) return out;
  }
}

std::vector<ExperimentConfig> parse_configs(const std::string& text) {
  std::istringstream in(text);
  return parse_configs(in);
}

}  // namespace gossip
