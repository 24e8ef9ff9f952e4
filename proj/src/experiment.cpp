#include "treebo/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "treebo/benchmarks.hpp"
#include "treebo/io.hpp"

namespace treebo {
namespace {

void write_summary(const std::string& path, const ExperimentConfig& config,
                   const std::vector<SurrogateSummary>& summaries) {
  nlohmann::json doc;
  doc["benchmark"] = config.benchmark;
  doc["surrogates"] = nlohmann::json::array();
  for (const auto& s : summaries) {
    doc["surrogates"].push_back({{"surrogate", s.surrogate},
                                 {"median_final_regret", s.median_final_regret},
                                 {"median_iter_seconds", s.median_iter_seconds}});
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open summary file: " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace

SurrogateChoice surrogate_choice_from_config(const ExperimentConfig& config,
                                             SurrogateKind kind) {
  SurrogateChoice choice = SurrogateChoice::from_kind(kind);
  choice.forest.num_trees = config.num_trees;
  choice.forest.tree.max_features = config.max_features;
  if (choice.forest.resample.kind == ResampleKind::kOversampleWithoutReplacement) {
    choice.forest.resample.alpha = config.alpha;
    choice.forest.resample.beta = config.beta;
  }
  return choice;
}

std::string to_csv_line(const RunRecord& r) {
  return r.benchmark + "," + r.surrogate + "," + std::to_string(r.repeat) + "," +
         std::to_string(r.iteration) + "," + format_double(r.incumbent) + "," +
         format_double(r.regret) + "," + format_double(r.iter_seconds);
}

RunRecord run_record_from_csv_line(const std::string& line) {
  const auto fields = split_csv_line(line);
  if (fields.size() != 7) throw std::runtime_error("malformed run record: " + line);
  RunRecord r;
  r.benchmark = fields[0];
  r.surrogate = fields[1];
  r.repeat = std::stoi(fields[2]);
  r.iteration = std::stol(fields[3]);
  r.incumbent = std::strtod(fields[4].c_str(), nullptr);
  r.regret = std::strtod(fields[5].c_str(), nullptr);
  r.iter_seconds = std::strtod(fields[6].c_str(), nullptr);
  return r;
}

std::vector<SurrogateSummary> summarize(const ExperimentConfig& config,
                                        const std::vector<RunRecord>& records) {
  std::vector<SurrogateSummary> out;
  const Index last = config.n_init + config.iterations - 1;
  for (SurrogateKind kind : config.surrogates) {
    const std::string name = to_string(kind);
    std::vector<Scalar> final_regrets;
    std::vector<Scalar> iter_times;
    for (const auto& r : records) {
      if (r.surrogate != name) continue;
      if (r.iteration == last) final_regrets.push_back(r.regret);
      if (r.iteration >= config.n_init) iter_times.push_back(r.iter_seconds);
    }
    if (final_regrets.empty()) continue;
    SurrogateSummary s;
    s.surrogate = name;
    s.median_final_regret = median(std::move(final_regrets));
    s.median_iter_seconds = iter_times.empty() ? 0.0 : median(std::move(iter_times));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config,
                                      const std::string& csv_path,
                                      const std::string& summary_path) {
  if (config.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  const Benchmark& benchmark = benchmark_by_name(config.benchmark);

  const Problem problem{[&benchmark](const Vector& x) { return evaluate(benchmark, x); },
                        benchmark.bounds(), benchmark.known_optimum_value(),
                        config.noise_std};
  const Scalar f_star = benchmark.known_optimum_value();

  const AcquisitionConfig acquisition{config.ei_xi, config.n_candidates};

  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path);
    if (!csv) throw std::runtime_error("cannot open output file: " + csv_path);
    csv << kRunRecordCsvHeader << "\n";
  }

  std::vector<RunRecord> records;
  try {
    for (SurrogateKind kind : config.surrogates) {
      const SurrogateChoice choice = surrogate_choice_from_config(config, kind);
      for (int repeat = 0; repeat < config.repeats; ++repeat) {
        const SeededRng stream = derive_stream(config.seed, static_cast<std::uint64_t>(repeat));
        const SmoHistory history = run_smo(problem, choice, config.n_init,
                                           config.iterations, acquisition, stream);
        const Vector regrets = regret_curve(history, f_star);
        for (Index i = 0; i < history.size(); ++i) {
          RunRecord r{config.benchmark, to_string(kind),   repeat, i,
                      history.incumbent_values[i], regrets[i], history.iter_seconds[i]};
          if (csv.is_open()) csv << to_csv_line(r) << "\n";
          records.push_back(std::move(r));
        }
        if (csv.is_open()) csv.flush();
      }
    }

    if (!summary_path.empty()) {
      write_summary(summary_path, config, summarize(config, records));
    }
  } catch (...) {
    if (csv.is_open()) {
      csv.close();
      std::filesystem::remove(csv_path);
    }
    if (!summary_path.empty()) std::filesystem::remove(summary_path);
    throw;
  }

  return records;
}

}  // namespace treebo
