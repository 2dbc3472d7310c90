#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ptrbf/config.hpp"
#include "ptrbf/dataset.hpp"
#include "ptrbf/init.hpp"
#include "ptrbf/normalize.hpp"
#include "ptrbf/stats.hpp"
#include "ptrbf/training.hpp"

namespace ptrbf {

/// Seeds for one run index. Every scheme in a run shares them, so the
/// dataset and the sample order are identical across schemes.
struct RunSeeds {
  std::uint64_t data = 0;
  std::uint64_t order = 0;
  std::uint64_t init = 0;
};

RunSeeds run_seeds(std::uint64_t base_seed, std::size_t run);

/// Training/validation split for a run: generated from the run's data seed,
/// or loaded from config.train_data / config.val_data when set.
std::pair<Dataset, Dataset> run_datasets(const ExperimentConfig& config, std::size_t run);

/// Data as a scheme sees it. The proposed scheme normalizes inputs and
/// targets with its own variance targets; the baselines keep targets as they
/// are and see raw inputs, or inputs standardized to
/// config.baseline_input_variance when that is nonzero. `scale`
/// maps errors back to the original target units.
struct PreparedData {
  Dataset train;
  Dataset val;
  ErrorScale scale;
  NormStats input_stats;
  std::optional<NormStats> output_stats;
};

PreparedData prepare_data(Scheme scheme, const Dataset& train, const Dataset& val,
                          const ExperimentConfig& config);

InitSpec init_spec_for(const ExperimentConfig& config, Scheme scheme);
TrainConfig train_config_for(const ExperimentConfig& config, Scheme scheme, std::size_t depth,
                             std::uint64_t shuffle_seed);
std::vector<LayerShape> shapes_for(const ExperimentConfig& config, std::size_t inputs,
                                   std::size_t outputs);

enum class CellStatus { Completed, Skipped, Failed };
std::string_view to_string(CellStatus status);

/// One (scheme, run) pair.
struct CellResult {
  Scheme scheme = Scheme::Proposed;
  std::size_t run = 0;
  CellStatus status = CellStatus::Completed;
  std::string reason;
  RunRecord record;
  std::optional<PtRbfNetwork> network;
};

/// Initializes and trains one scheme on prepared data. Unsupported
/// scheme/architecture pairs come back Skipped, other errors Failed.
CellResult run_cell(const ExperimentConfig& config, Scheme scheme, std::size_t run,
                    const Dataset& train, const Dataset& val, bool keep_network = false);

struct SchemeSummary {
  Scheme scheme = Scheme::Proposed;
  CellStatus status = CellStatus::Completed;
  std::string reason;
  /// Arithmetic mean of linear MSE over completed runs, in dB.
  std::vector<double> mean_train_db;
  std::vector<double> mean_val_db;
  /// First epoch (1-based) where the mean training curve is <= threshold.
  std::optional<std::size_t> crossing_epoch;
  double final_train_db = std::nan("");
  double final_val_db = std::nan("");
};

struct ComparisonReport {
  double threshold_db = -5.0;
  std::vector<SchemeSummary> schemes;
  std::vector<CellResult> cells;  // scheme-major, then run

  const SchemeSummary& summary(Scheme scheme) const;
  /// True when every cell completed or was skipped.
  bool ok() const;
};

/// First epoch (1-based) whose value is <= threshold.
std::optional<std::size_t> crossing_epoch(const std::vector<double>& curve_db, double threshold_db);

/// Mean of dB curves taken in linear MSE, converted back to dB.
std::vector<double> mean_curve_db(const std::vector<const std::vector<double>*>& curves);

/// Every scheme x run cell over a bounded worker pool (config.threads).
ComparisonReport run_comparison(const ExperimentConfig& config);

/// Writes curves.csv, mean_curves.csv and summary.csv into `dir`.
void write_comparison(const ComparisonReport& report, const std::filesystem::path& dir);

std::string curves_csv(const ComparisonReport& report);
std::string mean_curves_csv(const ComparisonReport& report);
std::string summary_csv(const ComparisonReport& report);

MomentLabResult run_validate_stats(const ExperimentConfig& config);
std::string moments_csv(const MomentLabResult& result);
std::string moments_table(const MomentLabResult& result);

/// Initializes a network for every configured scheme (run 0 data), writing
/// init_<scheme>.json, histogram.csv and param_stats.csv into `dir`.
/// Returns the number of schemes skipped as unsupported.
std::size_t dump_init(const ExperimentConfig& config, const std::filesystem::path& dir);

/// Histogram rows for one parameter array (real and imaginary parts).
struct ParamStats {
  std::size_t count = 0;
  Complex mean{};
  double variance = 0.0;  // total complex variance, population
};
ParamStats param_stats(std::span<const Complex> values);

std::string histogram_csv_header();
std::string histogram_rows(std::string_view scheme, std::size_t layer, std::string_view klass,
                           std::span<const Complex> values, std::size_t bins);

}  // namespace ptrbf
