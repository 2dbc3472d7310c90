#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ptrbf/init.hpp"
#include "ptrbf/network.hpp"
#include "ptrbf/training.hpp"

namespace ptrbf {

inline constexpr int kConfigFormatVersion = 1;

/// Settings shared by every subcommand. Text form:
///
///   ptrbf-config 1
///   # comment
///   key = value
///
/// Lists are comma separated. Unknown or repeated keys are errors.
struct ExperimentConfig {
  std::vector<std::size_t> architecture{64};
  std::vector<std::size_t> hidden_outputs;  // empty: next layer's neuron count
  std::vector<Scheme> schemes{Scheme::Proposed, Scheme::KMeans, Scheme::Constellation,
                              Scheme::Random};
  std::size_t runs = 10;
  std::size_t epochs = 200;
  std::size_t train_count = 3840;
  std::size_t val_count = 1280;
  double eb_n0_db = 26.0;
  std::uint64_t seed = 1;

  double c_sigma = 1.0;
  double mu_v = 1.0;
  double random_center_variance = 1.0;
  bool variance_floor = true;
  /// Complex variance the baseline schemes standardize their inputs to;
  /// 0 feeds them the raw inputs.
  double baseline_input_variance = 0.0;
  /// 1-based layer index -> rates, overriding the defaults for every scheme.
  std::map<std::size_t, LayerRates> rate_overrides;
  double threshold_db = -5.0;

  LayerShape stats_layer{16, 64, 4};
  std::size_t stats_trials = 100000;
  std::size_t stats_inputs_per_layer = 100;

  std::size_t threads = 1;
  std::filesystem::path train_data;
  std::filesystem::path val_data;

  void validate() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_string(const ExperimentConfig& config);

}  // namespace ptrbf
