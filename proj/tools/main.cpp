#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "treebo/analysis.hpp"
#include "treebo/benchmarks.hpp"
#include "treebo/experiment.hpp"
#include "treebo/forest.hpp"
#include "treebo/io.hpp"
#include "treebo/smo.hpp"
#include "treebo/surrogate.hpp"

namespace {

using namespace treebo;

struct ModelOptions {
  int num_trees = 100;
  double alpha = 4.0;
  int beta = 16;
  std::string max_features = "sqrt";
  long n_candidates = 50000;
  long n_init = 5;
  double ei_xi = 0.0;
  double noise_std = 0.0;
};

MaxFeatures parse_max_features(const std::string& text) {
  if (text == "sqrt") return MaxFeatures::sqrt();
  if (text == "all") return MaxFeatures::all();
  try {
    return MaxFeatures::fixed_count(std::stoi(text));
  } catch (const std::exception&) {
    throw CLI::ValidationError("max_features must be 'sqrt', 'all', or an integer");
  }
}

// Applies a JSON config file underneath any explicitly passed flags.
// Unknown keys are an error, listed by name.
void apply_config_file(const std::string& path, const CLI::App& cmd, ModelOptions& opts) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open config file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);

  std::vector<std::string> unknown;
  for (const auto& [key, value] : doc.items()) {
    const bool overridden = cmd.count("--" + key) > 0;
    if (key == "num_trees") {
      if (!overridden) opts.num_trees = value.get<int>();
    } else if (key == "alpha") {
      if (!overridden) opts.alpha = value.get<double>();
    } else if (key == "beta") {
      if (!overridden) opts.beta = value.get<int>();
    } else if (key == "max_features") {
      if (!overridden) {
        opts.max_features =
            value.is_number() ? std::to_string(value.get<int>()) : value.get<std::string>();
      }
    } else if (key == "n_candidates") {
      if (!overridden) opts.n_candidates = value.get<long>();
    } else if (key == "n_init") {
      if (!overridden) opts.n_init = value.get<long>();
    } else if (key == "ei_xi") {
      if (!overridden) opts.ei_xi = value.get<double>();
    } else if (key == "noise_std") {
      if (!overridden) opts.noise_std = value.get<double>();
    } else {
      unknown.push_back(key);
    }
  }
  if (!unknown.empty()) {
    std::string msg = "invalid config keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw CLI::ValidationError(msg);
  }
}

void add_model_options(CLI::App* cmd, ModelOptions& opts, std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file; flags take precedence");
  cmd->add_option("--num_trees", opts.num_trees, "ensemble size B")->capture_default_str();
  cmd->add_option("--alpha", opts.alpha, "oversampling rate")->capture_default_str();
  cmd->add_option("--beta", opts.beta, "duplication factor")->capture_default_str();
  cmd->add_option("--max_features", opts.max_features, "sqrt | all | integer")
      ->capture_default_str();
  cmd->add_option("--n_candidates", opts.n_candidates, "acquisition candidate count")
      ->capture_default_str();
  cmd->add_option("--n_init", opts.n_init, "initial design size")->capture_default_str();
  cmd->add_option("--ei_xi", opts.ei_xi, "EI exploration offset")->capture_default_str();
  cmd->add_option("--noise_std", opts.noise_std, "observation noise std")
      ->capture_default_str();
}

ForestConfig forest_config_for(SurrogateKind kind, const ModelOptions& opts) {
  SurrogateChoice choice = SurrogateChoice::from_kind(kind);
  choice.forest.num_trees = opts.num_trees;
  choice.forest.tree.max_features = parse_max_features(opts.max_features);
  if (choice.forest.resample.kind == ResampleKind::kOversampleWithoutReplacement) {
    choice.forest.resample.alpha = opts.alpha;
    choice.forest.resample.beta = opts.beta;
  }
  return choice.forest;
}

std::unique_ptr<Surrogate> fitted_surrogate(SurrogateKind kind, const ModelOptions& opts,
                                            const Dataset& data, const Bounds& bounds,
                                            SeededRng fit_rng) {
  auto model = make_surrogate(kind, forest_config_for(kind, opts), bounds);
  model->fit(data, fit_rng);
  return model;
}

// Writes through a functor and removes the file if writing throws.
template <typename Fn>
void write_file_or_clean_up(const std::string& path, Fn&& write) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  try {
    write(out);
  } catch (...) {
    out.close();
    std::filesystem::remove(path);
    throw;
  }
}

int cmd_bootstrap_stats(long n, long m) {
  const Moments membership = membership_moments(n, m);
  const Moments unique = unique_count_moments(n, m);
  nlohmann::json doc;
  doc["n"] = n;
  doc["m"] = m;
  doc["membership_expectation"] = membership.expectation;
  doc["membership_variance"] = membership.variance;
  doc["unique_expectation"] = unique.expectation;
  doc["unique_variance"] = unique.variance;
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_profile(const std::string& surrogate_name, const std::string& demo_name,
                std::uint64_t seed, long grid_size, const std::string& out_path,
                const ModelOptions& opts) {
  const DemoProblem demo = demo_problem_by_name(demo_name);
  const Bounds bounds = demo_bounds();
  SeededRng data_rng = derive_stream(seed, 0);
  const Dataset data = demo_dataset(demo, data_rng);

  const SurrogateKind kind = parse_surrogate_kind(surrogate_name);
  const auto model = fitted_surrogate(kind, opts, data, bounds, derive_stream(seed, 1));

  const Vector grid = equispaced_grid(bounds.lower()[0], bounds.upper()[0], grid_size);
  const auto rows = uncertainty_profile(*model, grid);

  write_file_or_clean_up(out_path, [&](std::ofstream& out) {
    out << "x,mean,std\n";
    for (const auto& row : rows) {
      out << format_double(row.x) << "," << format_double(row.mean) << ","
          << format_double(row.std) << "\n";
    }
  });
  return 0;
}

int cmd_kl(const std::string& demo_name, std::uint64_t seed, bool reverse, long grid_size,
           const std::string& out_path, const ModelOptions& opts) {
  const DemoProblem demo = demo_problem_by_name(demo_name);
  const Bounds bounds = demo_bounds();
  SeededRng data_rng = derive_stream(seed, 0);
  const Dataset data = demo_dataset(demo, data_rng);

  GpSurrogate reference(bounds);
  reference.fit(data, derive_stream(seed, 1));

  Matrix grid(grid_size, 1);
  grid.col(0) = equispaced_grid(bounds.lower()[0], bounds.upper()[0], grid_size);

  const std::vector<SurrogateKind> presets = {
      SurrogateKind::kRf, SurrogateKind::kErt, SurrogateKind::kBwo,
      SurrogateKind::kBaggingOversampling, SurrogateKind::kRandomSplitBagging};

  write_file_or_clean_up(out_path, [&](std::ofstream& out) {
    out << "demo,seed,surrogate,kl\n";
    std::uint64_t stream = 2;
    for (SurrogateKind kind : presets) {
      const auto model =
          fitted_surrogate(kind, opts, data, bounds, derive_stream(seed, stream++));
      const Scalar kl = reverse ? kl_profile(*model, reference, grid)
                                : kl_profile(reference, *model, grid);
      out << demo.name << "," << seed << "," << to_string(kind) << ","
          << format_double(kl) << "\n";
    }
  });
  return 0;
}

int cmd_smo(const std::string& benchmark, const std::vector<std::string>& surrogate_names,
            long iterations, int repeats, std::uint64_t seed, const std::string& out_path,
            const std::string& summary_path, const ModelOptions& opts) {
  ExperimentConfig config;
  config.benchmark = benchmark;
  config.surrogates.clear();
  for (const auto& name : surrogate_names) {
    config.surrogates.push_back(parse_surrogate_kind(name));
  }
  config.repeats = repeats;
  config.iterations = iterations;
  config.seed = seed;
  config.num_trees = opts.num_trees;
  config.alpha = opts.alpha;
  config.beta = opts.beta;
  config.max_features = parse_max_features(opts.max_features);
  config.n_candidates = opts.n_candidates;
  config.n_init = opts.n_init;
  config.ei_xi = opts.ei_xi;
  config.noise_std = opts.noise_std;

  run_experiment(config, out_path, summary_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree-ensemble and GP surrogates for sequential model-based optimization"};
  app.require_subcommand(1);

  long stats_n = 5, stats_m = 5;
  CLI::App* stats = app.add_subcommand(
      "bootstrap-stats", "closed-form bootstrap membership and unique-count moments");
  stats->add_option("--n", stats_n, "dataset size N")->required();
  stats->add_option("--m", stats_m, "bootstrap sample size M")->required();

  std::string profile_surrogate = "bwo", profile_demo = "sine5", profile_out;
  std::string profile_config;
  std::uint64_t profile_seed = 0;
  long profile_grid = 1001;
  ModelOptions profile_opts;
  CLI::App* profile =
      app.add_subcommand("profile", "predictive mean/std profile over the demo domain");
  profile->add_option("--surrogate", profile_surrogate, "rf|ert|bwo|b+o|r+b|gp")
      ->capture_default_str();
  profile->add_option("--demo", profile_demo, "sine5|sine50|cubic10")->capture_default_str();
  profile->add_option("--seed", profile_seed, "master seed")->capture_default_str();
  profile->add_option("--grid", profile_grid, "grid size")->capture_default_str();
  profile->add_option("--out", profile_out, "output CSV")->required();
  add_model_options(profile, profile_opts, profile_config);

  std::string kl_demo = "sine5", kl_out, kl_config;
  std::uint64_t kl_seed = 0;
  long kl_grid = 1001;
  bool kl_reverse = false;
  ModelOptions kl_opts;
  CLI::App* kl = app.add_subcommand(
      "kl", "per-preset KL divergence of each tree ensemble from the GP reference");
  kl->add_option("--demo", kl_demo, "sine5|sine50|cubic10")->capture_default_str();
  kl->add_option("--seed", kl_seed, "master seed")->capture_default_str();
  kl->add_option("--grid", kl_grid, "grid size")->capture_default_str();
  kl->add_flag("--reverse", kl_reverse, "compute KL(GP || model) instead");
  kl->add_option("--out", kl_out, "output CSV")->required();
  add_model_options(kl, kl_opts, kl_config);

  std::string smo_benchmark = "branin2", smo_out, smo_summary, smo_config;
  std::vector<std::string> smo_surrogates = {"bwo"};
  long smo_iters = 500;
  int smo_repeats = 10;
  std::uint64_t smo_seed = 0;
  ModelOptions smo_opts;
  CLI::App* smo = app.add_subcommand("smo", "sequential model-based optimization runs");
  smo->add_option("--benchmark", smo_benchmark, "benchmark name")->capture_default_str();
  smo->add_option("--surrogate", smo_surrogates,
                  "surrogate kinds (repeatable or comma-separated)")
      ->delimiter(',')
      ->capture_default_str();
  smo->add_option("--iters", smo_iters, "SMO iterations T")->capture_default_str();
  smo->add_option("--repeats", smo_repeats, "independent repeats")->capture_default_str();
  smo->add_option("--seed", smo_seed, "master seed")->capture_default_str();
  smo->add_option("--out", smo_out, "output CSV")->required();
  smo->add_option("--summary", smo_summary, "output JSON summary");
  add_model_options(smo, smo_opts, smo_config);

  CLI11_PARSE(app, argc, argv);

  try {
    if (stats->parsed()) return cmd_bootstrap_stats(stats_n, stats_m);
    if (profile->parsed()) {
      if (!profile_config.empty()) apply_config_file(profile_config, *profile, profile_opts);
      return cmd_profile(profile_surrogate, profile_demo, profile_seed, profile_grid,
                         profile_out, profile_opts);
    }
    if (kl->parsed()) {
      if (!kl_config.empty()) apply_config_file(kl_config, *kl, kl_opts);
      return cmd_kl(kl_demo, kl_seed, kl_reverse, kl_grid, kl_out, kl_opts);
    }
    if (smo->parsed()) {
      if (!smo_config.empty()) apply_config_file(smo_config, *smo, smo_opts);
      return cmd_smo(smo_benchmark, smo_surrogates, smo_iters, smo_repeats, smo_seed,
                     smo_out, smo_summary, smo_opts);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
