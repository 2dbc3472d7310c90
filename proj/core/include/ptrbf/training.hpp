#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ptrbf/complex.hpp"
#include "ptrbf/dataset.hpp"
#include "ptrbf/init.hpp"
#include "ptrbf/network.hpp"

namespace ptrbf {

/// Learning rates for the four parameter classes of one layer.
struct LayerRates {
  double w = 0.1;
  double b = 0.1;
  double gamma = 0.1;
  double sigma = 0.1;

  friend bool operator==(const LayerRates&, const LayerRates&) = default;
};

/// Single hidden layer rates per scheme.
LayerRates shallow_rates(Scheme scheme);
/// Per-depth rates for deep networks: 0.100, 0.050, 0.033, 0.025, then 0.1/l.
std::vector<LayerRates> deep_rates(std::size_t depth);
/// shallow_rates for depth 1, deep_rates otherwise.
std::vector<LayerRates> default_rates(Scheme scheme, std::size_t depth);

struct TrainConfig {
  std::vector<LayerRates> rates;  // one entry per layer
  std::size_t epochs = 200;
  std::uint64_t shuffle_seed = 0;

  /// Rates must be finite and >= 0 (0 freezes a class), one entry per layer.
  void validate(std::size_t depth) const;
  /// FNV-1a over the fields; identifies the configuration in a RunRecord.
  std::uint64_t hash() const;
};

/// Split-complex gradients: Re holds dE/dRe(theta), Im holds dE/dIm(theta),
/// where E = 1/2 sum_o [Re(e_o)^2 + Im(e_o)^2] and e = y - target.
struct LayerGradients {
  CMatrix weights;
  CVector bias;
  CMatrix centers;
  CVector variances;
};

struct Gradients {
  std::vector<LayerGradients> layers;
};

/// Lower bound kept on every variance component after an update.
inline constexpr double kMinKernelVariance = 1e-6;
inline constexpr double kMseFloorDb = -300.0;

/// Mean over all scalar outputs of |target - prediction|^2.
double mse(std::span<const CVector> targets, std::span<const CVector> predictions);
/// 10 log10(mse), floored at kMseFloorDb.
double mse_db(double linear);
double db_to_linear(double db);

/// Squared error 1/2 |y - target|^2 summed over outputs.
double sample_loss(std::span<const Complex> output, std::span<const Complex> target);

Gradients backprop(const PtRbfNetwork& net, const ForwardTrace& trace,
                   std::span<const Complex> target);
/// Reuses the buffers held in `out`.
void backprop(const PtRbfNetwork& net, const ForwardTrace& trace, std::span<const Complex> target,
              Gradients& out);

/// theta <- theta - rate * grad for one layer.
void sgd_step(PtRbfNetwork& net, const Gradients& grads, const LayerRates& rates, std::size_t layer);
/// All layers, with config.rates[l] for layer l.
void sgd_step(PtRbfNetwork& net, const Gradients& grads, const TrainConfig& config);

/// Maps training-scale output errors back to reporting units, per axis.
/// For targets normalized with NormStats s this is {1 / s.scale_re(), 1 / s.scale_im()}.
struct ErrorScale {
  double re = 1.0;
  double im = 1.0;
};

struct RunRecord {
  std::vector<double> train_mse_db;
  std::vector<double> val_mse_db;
  double wall_seconds = 0.0;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;

  std::size_t epochs() const { return train_mse_db.size(); }
};

/// MSE of the network over a dataset, in reporting units (not dB).
double evaluate_mse(const PtRbfNetwork& net, const Dataset& data, ErrorScale scale = {});

struct TrainResult {
  PtRbfNetwork network;
  RunRecord record;
};

/// Per-sample SGD over a freshly shuffled training set each epoch. After
/// each epoch the full training and validation MSE are recorded (validation
/// entries are NaN when `val` is empty).
TrainResult train(PtRbfNetwork net, const Dataset& train_set, const Dataset& val_set,
                  const TrainConfig& config, ErrorScale scale = {});

/// CSV with columns epoch,train_mse_db,val_mse_db (epochs numbered from 1).
std::string run_record_to_csv(const RunRecord& record);
RunRecord run_record_from_csv(const std::string& text);

}  // namespace ptrbf
