#ifndef TREEBO_EXPERIMENT_HPP
#define TREEBO_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "treebo/smo.hpp"
#include "treebo/surrogate.hpp"
#include "treebo/tree.hpp"
#include "treebo/types.hpp"

namespace treebo {

struct ExperimentConfig {
  std::string benchmark = "branin2";
  std::vector<SurrogateKind> surrogates = {SurrogateKind::kBwo};
  int repeats = 10;
  Index iterations = 500;
  std::uint64_t seed = 0;

  int num_trees = 100;
  Scalar alpha = 4.0;
  int beta = 16;
  MaxFeatures max_features = MaxFeatures::sqrt();
  Index n_candidates = 50000;
  Index n_init = 5;
  Scalar ei_xi = 0.0;
  Scalar noise_std = 0.0;
};

/// One CSV row: the state of a run after each evaluation.
struct RunRecord {
  std::string benchmark;
  std::string surrogate;
  int repeat = 0;
  Index iteration = 0;  // history index, 0-based over n_init + T entries
  Scalar incumbent = 0.0;
  Scalar regret = 0.0;
  Scalar iter_seconds = 0.0;
};

struct SurrogateSummary {
  std::string surrogate;
  Scalar median_final_regret = 0.0;
  Scalar median_iter_seconds = 0.0;  // over model iterations, initial design excluded
};

inline const char* kRunRecordCsvHeader =
    "benchmark,surrogate,repeat,iteration,incumbent,regret,iter_seconds";

std::string to_csv_line(const RunRecord& record);
RunRecord run_record_from_csv_line(const std::string& line);

/// Runs every (surrogate x repeat) cell of the experiment. Repeat r of every
/// surrogate shares the stream keyed (seed, r), so initial designs and noise
/// draws match across surrogates. Records stream to `csv_path` as produced;
/// a per-surrogate summary goes to `summary_path` as JSON. Either path may be
/// empty to skip the file. Partial outputs are removed on failure.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config,
                                      const std::string& csv_path,
                                      const std::string& summary_path);

std::vector<SurrogateSummary> summarize(const ExperimentConfig& config,
                                        const std::vector<RunRecord>& records);

SurrogateChoice surrogate_choice_from_config(const ExperimentConfig& config,
                                             SurrogateKind kind);

}  // namespace treebo

#endif
