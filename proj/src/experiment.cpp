#include "tsome/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "tsome/benchmarks.hpp"
#include "tsome/iir.hpp"
#include "tsome/stats.hpp"

namespace tsome::exp {

namespace {

namespace fs = std::filesystem;

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto piece = comma == std::string_view::npos ? s.substr(start)
                                                       : s.substr(start, comma - start);
    const std::string item = trim(piece);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t parse_u64(const std::string& value, const std::string& context) {
  try {
    std::size_t pos = 0;
    if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(context + ": expected a non-negative integer, got '" + value + "'");
  }
}

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

// raw per-run store; 17 significant digits round-trip a double exactly, so
// `stats` regenerates byte-identical reports
std::string format_full(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

struct PairResults {
  std::string problem;
  std::string algorithm;
  std::uint64_t budget = 0;
  std::vector<RunResult> runs;
};

struct FinalSample {
  std::vector<double> values;  // final fitness per run, run-index order
};

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << contents;
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

/// Best-so-far value of one run at a given evaluation count (step function
/// over the recorded trajectory).
double trajectory_at(const RunResult& run, std::uint64_t evals) {
  double value = kWorstFitness;
  for (const auto& [e, f] : run.trajectory) {
    if (e > evals) break;
    value = f;
  }
  return value;
}

std::string trend_csv(const PairResults& pair) {
  std::string out = "evaluations,mean_best_fitness\n";
  const std::uint64_t interval = pair.budget >= 200 ? pair.budget / 200 : 1;
  for (std::uint64_t e = interval; e <= pair.budget; e += interval) {
    double acc = 0.0;
    for (const auto& run : pair.runs) acc += trajectory_at(run, e);
    acc /= static_cast<double>(pair.runs.size());
    out += std::to_string(e);
    out += ',';
    out += format_sci(acc);
    out += '\n';
  }
  return out;
}

void write_reports(const fs::path& dir, const std::vector<std::string>& problems,
                   const std::vector<std::string>& algorithms, std::size_t reference,
                   const std::map<std::pair<std::string, std::string>, FinalSample>& finals) {
  std::string results = "problem,algorithm,mean,std\n";
  for (const auto& prob : problems) {
    for (const auto& algo : algorithms) {
      const auto& values = finals.at({prob, algo}).values;
      const double mean = mean_of(values);
      results += prob + ',' + algo + ',' + format_sci(mean) + ',' +
                 format_sci(stddev_of(values, mean)) + '\n';
    }
  }
  write_file(dir / "results.csv", results);

  std::string wilcoxon = "problem,challenger,verdict\n";
  const std::string& ref_algo = algorithms[reference];
  for (const auto& prob : problems) {
    const auto& ref_values = finals.at({prob, ref_algo}).values;
    for (const auto& algo : algorithms) {
      if (algo == ref_algo) continue;
      const auto verdict =
          stats::wilcoxon_verdict(ref_values, finals.at({prob, algo}).values);
      wilcoxon += prob + ',' + algo + ',' + stats::verdict_symbol(verdict) + '\n';
    }
  }
  write_file(dir / "wilcoxon.csv", wilcoxon);

  std::string holm = "j,algorithm,z,p,threshold,hypothesis\n";
  if (algorithms.size() >= 2) {
    std::vector<std::vector<double>> means(algorithms.size(),
                                           std::vector<double>(problems.size()));
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      for (std::size_t p = 0; p < problems.size(); ++p) {
        means[a][p] = mean_of(finals.at({problems[p], algorithms[a]}).values);
      }
    }
    const std::vector<double> ranks = stats::rank_scores(means);
    const auto rows =
        stats::holm_procedure(ranks, algorithms, reference, problems.size());
    for (const auto& row : rows) {
      holm += std::to_string(row.j_index) + ',' + row.algorithm + ',' + format_sci(row.z) +
              ',' + format_sci(row.p) + ',' + format_sci(row.threshold) + ',' +
              (row.rejected ? "Rejected" : "Accepted") + '\n';
    }
  }
  write_file(dir / "holm.csv", holm);
}

}  // namespace

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.suite = bench::suite_ids();
  return cfg;
}

std::vector<std::string> resolve_suite(std::string_view selector) {
  const std::string sel = trim(selector);
  if (sel.empty() || sel == "all") return bench::suite_ids();
  if (sel == "cec2008") {
    return {"f24", "f25", "f26", "f27", "f28", "f29", "f30"};
  }
  std::vector<std::string> ids = split_list(sel);
  if (ids.empty()) throw ConfigError("suite: empty selection");
  const auto& known = bench::suite_ids();
  for (const auto& id : ids) {
    if (id == "iir") continue;
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw ConfigError("suite: unknown problem id '" + id + "'");
    }
  }
  return ids;
}

ExperimentConfig parse_config_text(std::string_view text) {
  ExperimentConfig cfg = default_config();
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const std::string context = "line " + std::to_string(line_no) + " (" + key + ")";
    if (key == "suite") {
      cfg.suite = resolve_suite(value);
    } else if (key == "algorithms") {
      cfg.algorithms.clear();
      for (const auto& id : split_list(value)) {
        const auto v = parse_variant(id);
        if (!v) throw ConfigError(context + ": unknown algorithm id '" + id + "'");
        cfg.algorithms.push_back(*v);
      }
      if (cfg.algorithms.empty()) throw ConfigError(context + ": empty algorithm list");
    } else if (key == "runs") {
      cfg.runs = parse_u64(value, context);
      if (cfg.runs == 0) throw ConfigError(context + ": runs must be >= 1");
    } else if (key == "budget") {
      const auto v = parse_u64(value, context);
      if (v == 0) throw ConfigError(context + ": budget must be positive");
      cfg.budget_flat = v;
    } else if (key == "budget_multiplier") {
      cfg.budget_multiplier = parse_u64(value, context);
      if (cfg.budget_multiplier == 0) {
        throw ConfigError(context + ": budget_multiplier must be positive");
      }
    } else if (key == "iir_budget") {
      cfg.iir_budget = parse_u64(value, context);
      if (cfg.iir_budget == 0) throw ConfigError(context + ": iir_budget must be positive");
    } else if (key == "seed") {
      cfg.master_seed = parse_u64(value, context);
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "reference") {
      const auto v = parse_variant(value);
      if (!v) throw ConfigError(context + ": unknown algorithm id '" + value + "'");
      const auto it = std::find(cfg.algorithms.begin(), cfg.algorithms.end(), *v);
      if (it == cfg.algorithms.end()) {
        throw ConfigError(context + ": reference must be one of the configured algorithms");
      }
      cfg.reference = static_cast<std::size_t>(it - cfg.algorithms.begin());
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string resolve_out_dir(const std::string& configured) {
  if (!configured.empty()) return configured;
  if (const char* env = std::getenv("TSOME_OUT"); env && *env) return env;
  return "tsome_out";
}

std::uint64_t budget_for(const ExperimentConfig& config, const Problem& problem) {
  if (config.budget_flat) return *config.budget_flat;
  if (problem.label == "iir") return config.iir_budget;
  return config.budget_multiplier * problem.dimension();
}

void run_experiment(const ExperimentConfig& config) {
  if (config.suite.empty()) throw ConfigError("empty suite");
  if (config.algorithms.empty()) throw ConfigError("empty algorithm list");
  if (config.reference >= config.algorithms.size()) throw ConfigError("bad reference index");
  if (config.runs == 0) throw ConfigError("runs must be >= 1");

  const fs::path dir = resolve_out_dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string());

  std::vector<std::string> algo_ids;
  for (const Variant v : config.algorithms) algo_ids.emplace_back(variant_id(v));

  std::map<std::pair<std::string, std::string>, FinalSample> finals;
  std::string runs_csv = "problem,algorithm,run,seed,evaluations,final_fitness\n";
  std::optional<std::pair<Candidate, std::uint64_t>> best_iir;  // candidate + noise seed

  for (const auto& prob_id : config.suite) {
    const std::uint64_t iir_noise_seed = hash64(config.master_seed, "iir-noise", 0);
    const Problem problem = prob_id == "iir" ? iir::make_iir_problem(iir_noise_seed)
                                             : bench::make_problem(prob_id, config.master_seed);
    const std::uint64_t budget = budget_for(config, problem);
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
      SomeConfig algo;
      algo.variant = config.algorithms[a];
      PairResults pair{prob_id, algo_ids[a], budget,
                       run_batch(problem, algo, budget, config.runs, config.master_seed)};

      FinalSample sample;
      for (std::size_t r = 0; r < pair.runs.size(); ++r) {
        const RunResult& run = pair.runs[r];
        sample.values.push_back(run.best.fitness);
        runs_csv += prob_id + ',' + algo_ids[a] + ',' + std::to_string(r) + ',' +
                    std::to_string(run.seed) + ',' + std::to_string(run.evaluations_used) +
                    ',' + format_full(run.best.fitness) + '\n';
        if (prob_id == "iir" &&
            (!best_iir || run.best.fitness < best_iir->first.fitness)) {
          best_iir = {run.best, iir_noise_seed};
        }
      }
      write_file(dir / ("trend_" + prob_id + "_" + algo_ids[a] + ".csv"), trend_csv(pair));
      finals.emplace(std::make_pair(prob_id, algo_ids[a]), std::move(sample));
    }
  }

  write_file(dir / "runs.csv", runs_csv);
  write_file(dir / "manifest.txt", bench::manifest_table(config.master_seed));
  write_reports(dir, config.suite, algo_ids, config.reference, finals);

  if (best_iir) {
    const iir::SignalPair signals = iir::make_signal_pair(best_iir->second);
    std::ofstream os(dir / "iir_response.csv", std::ios::binary);
    if (!os) throw std::runtime_error("cannot write iir_response.csv");
    iir::write_response_csv(os, signals, iir::FilterCoeffs::unpack(best_iir->first.genes));
  }
}

void recompute_reports(const std::string& out_dir) {
  const fs::path dir = out_dir;
  std::ifstream in(dir / "runs.csv", std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + (dir / "runs.csv").string());

  std::vector<std::string> problems, algorithms;
  std::map<std::pair<std::string, std::string>, FinalSample> finals;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split_list(line);
    if (fields.size() != 6) throw std::runtime_error("runs.csv: malformed row: " + line);
    const std::string& prob = fields[0];
    const std::string& algo = fields[1];
    const double fitness = std::strtod(fields[5].c_str(), nullptr);
    if (std::find(problems.begin(), problems.end(), prob) == problems.end()) {
      problems.push_back(prob);
    }
    if (std::find(algorithms.begin(), algorithms.end(), algo) == algorithms.end()) {
      algorithms.push_back(algo);
    }
    finals[{prob, algo}].values.push_back(fitness);
  }
  if (problems.empty()) throw std::runtime_error("runs.csv: no data rows");
  write_reports(dir, problems, algorithms, 0, finals);
}

}  // namespace tsome::exp
