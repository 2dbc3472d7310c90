#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ptrbf/complex.hpp"

namespace ptrbf {

struct DatasetMeta {
  std::uint64_t seed = 0;
  double eb_n0_db = std::nan("");
};

/// Paired complex input/target instances.
struct Dataset {
  std::vector<CVector> inputs;
  std::vector<CVector> targets;
  DatasetMeta meta;

  std::size_t size() const { return inputs.size(); }
  std::size_t input_width() const { return inputs.empty() ? 0 : inputs.front().size(); }
  std::size_t target_width() const { return targets.empty() ? 0 : targets.front().size(); }

  /// Equal counts, consistent widths, finite values.
  void validate() const;
};

/// First `count` instances and the remainder.
std::pair<Dataset, Dataset> split_dataset(const Dataset& data, std::size_t count);

/// Columnar text format:
///   # ptrbf-dataset 1
///   # seed=<u64>
///   # eb_n0_db=<double>
///   x0_re,x0_im,...,x{P-1}_im,d0_re,d0_im,...,d{R-1}_im
///   one row per instance, shortest round-trip decimals
std::string dataset_to_string(const Dataset& data);
Dataset dataset_from_string(const std::string& text);

void save_dataset(const Dataset& data, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace ptrbf
