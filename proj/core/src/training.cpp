#include "ptrbf/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <numeric>
#include <sstream>

#include "ptrbf/csv.hpp"
#include "ptrbf/errors.hpp"
#include "ptrbf/random.hpp"

namespace ptrbf {

LayerRates shallow_rates(Scheme scheme) {
  switch (scheme) {
    case Scheme::Random:
    case Scheme::Constellation: return {0.5, 0.5, 0.5, 0.5};
    case Scheme::KMeans:
    case Scheme::Proposed: return {0.1, 0.1, 0.4, 0.2};
  }
  throw ParameterError("unknown scheme");
}

std::vector<LayerRates> deep_rates(std::size_t depth) {
  static constexpr double kPrinted[] = {0.100, 0.050, 0.033, 0.025};
  std::vector<LayerRates> rates;
  for (std::size_t l = 0; l < depth; ++l) {
    const double r = l < 4 ? kPrinted[l] : 0.1 / static_cast<double>(l + 1);
    rates.push_back({r, r, r, r});
  }
  return rates;
}

std::vector<LayerRates> default_rates(Scheme scheme, std::size_t depth) {
  if (depth == 1) return {shallow_rates(scheme)};
  return deep_rates(depth);
}

void TrainConfig::validate(std::size_t depth) const {
  if (rates.size() != depth) {
    throw ParameterError("train config has " + std::to_string(rates.size()) +
                         " rate rows for a " + std::to_string(depth) + "-layer network");
  }
  for (const auto& r : rates) {
    for (const double v : {r.w, r.b, r.gamma, r.sigma}) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("learning rates must be finite and >= 0");
    }
  }
}

std::uint64_t TrainConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& r : rates) {
    for (const double v : {r.w, r.b, r.gamma, r.sigma}) mix(&v, sizeof v);
  }
  const std::uint64_t e = epochs;
  mix(&e, sizeof e);
  mix(&shuffle_seed, sizeof shuffle_seed);
  return h;
}

double mse(std::span<const CVector> targets, std::span<const CVector> predictions) {
  if (targets.empty()) throw ParameterError("mse: empty input");
  if (targets.size() != predictions.size()) throw DimensionError("mse: count mismatch");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].size() != predictions[i].size()) throw DimensionError("mse: width mismatch");
    for (std::size_t o = 0; o < targets[i].size(); ++o) sum += std::norm(targets[i][o] - predictions[i][o]);
    count += targets[i].size();
  }
  if (count == 0) throw ParameterError("mse: zero-width vectors");
  return sum / static_cast<double>(count);
}

double mse_db(double linear) {
  if (std::isnan(linear)) return linear;
  if (!(linear > 0.0)) return kMseFloorDb;
  return std::max(10.0 * std::log10(linear), kMseFloorDb);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double sample_loss(std::span<const Complex> output, std::span<const Complex> target) {
  if (output.size() != target.size()) throw DimensionError("sample_loss: width mismatch");
  double sum = 0.0;
  for (std::size_t o = 0; o < output.size(); ++o) sum += std::norm(output[o] - target[o]);
  return 0.5 * sum;
}

namespace {

void shape_like(const PtRbfLayer& layer, LayerGradients& g) {
  if (g.weights.rows() != layer.weights.rows() || g.weights.cols() != layer.weights.cols()) {
    g.weights = CMatrix(layer.weights.rows(), layer.weights.cols());
  }
  if (g.centers.rows() != layer.centers.rows() || g.centers.cols() != layer.centers.cols()) {
    g.centers = CMatrix(layer.centers.rows(), layer.centers.cols());
  }
  g.bias.resize(layer.bias.size());
  g.variances.resize(layer.variances.size());
}

void check_trace(const PtRbfNetwork& net, const ForwardTrace& trace, std::size_t target_width) {
  if (trace.layers.size() != net.depth() || trace.input.size() != net.inputs()) {
    throw ContractError("backprop: trace does not belong to this network");
  }
  for (std::size_t l = 0; l < net.depth(); ++l) {
    const auto& layer = net.layer(l);
    const auto& t = trace.layers[l];
    if (t.v.size() != layer.neurons() || t.phi.size() != layer.neurons() ||
        t.y.size() != layer.outputs()) {
      throw ContractError("backprop: stale trace for layer " + std::to_string(l + 1));
    }
  }
  if (target_width != net.outputs()) {
    throw DimensionError("backprop: target width " + std::to_string(target_width) +
                         ", network outputs " + std::to_string(net.outputs()));
  }
}

}  // namespace

void backprop(const PtRbfNetwork& net, const ForwardTrace& trace, std::span<const Complex> target,
              Gradients& out) {
  check_trace(net, trace, target.size());
  out.layers.resize(net.depth());

  // delta holds dE/dRe(y) + j dE/dIm(y) for the current layer's outputs.
  CVector delta(net.outputs());
  const auto& y_out = trace.output();
  for (std::size_t o = 0; o < delta.size(); ++o) delta[o] = y_out[o] - target[o];

  CVector dphi;
  CVector dv;
  CVector dprev;
  for (std::size_t l = net.depth(); l-- > 0;) {
    const auto& layer = net.layer(l);
    const auto& t = trace.layers[l];
    const auto& prev = trace.layer_input(l);
    auto& g = out.layers[l];
    shape_like(layer, g);
    const std::size_t n = layer.neurons();

    // y = W phi + b
    for (std::size_t o = 0; o < layer.outputs(); ++o) {
      g.bias[o] = delta[o];
      auto gw = g.weights.row(o);
      for (std::size_t m = 0; m < n; ++m) gw[m] = delta[o] * std::conj(t.phi[m]);
    }
    dphi = multiply_adjoint(layer.weights, delta);

    // phi = exp(-Re v) + j exp(-Im v); the clamp zeroes the slope past the ceiling.
    dv.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
      const double gr = t.v[m].real() < kKernelInputCeiling ? -t.phi[m].real() * dphi[m].real() : 0.0;
      const double gi = t.v[m].imag() < kKernelInputCeiling ? -t.phi[m].imag() * dphi[m].imag() : 0.0;
      dv[m] = {gr, gi};
    }

    // v = ||Re(prev - c)||^2 / Re s + j ||Im(prev - c)||^2 / Im s
    const bool need_prev = l > 0;
    dprev.assign(need_prev ? prev.size() : 0, Complex{});
    for (std::size_t m = 0; m < n; ++m) {
      const Complex s = layer.variances[m];
      const double kr = 2.0 * dv[m].real() / s.real();
      const double ki = 2.0 * dv[m].imag() / s.imag();
      g.variances[m] = {-dv[m].real() * t.v[m].real() / s.real(),
                        -dv[m].imag() * t.v[m].imag() / s.imag()};
      const auto c = layer.centers.row(m);
      auto gc = g.centers.row(m);
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double dr = prev[i].real() - c[i].real();
        const double di = prev[i].imag() - c[i].imag();
        gc[i] = {-kr * dr, -ki * di};
        if (need_prev) dprev[i] += Complex{kr * dr, ki * di};
      }
    }
    if (need_prev) delta.swap(dprev);
  }
}

Gradients backprop(const PtRbfNetwork& net, const ForwardTrace& trace,
                   std::span<const Complex> target) {
  Gradients out;
  backprop(net, trace, target, out);
  return out;
}

void sgd_step(PtRbfNetwork& net, const Gradients& grads, const LayerRates& rates, std::size_t l) {
  if (grads.layers.size() != net.depth()) throw DimensionError("sgd_step: gradient depth mismatch");
  auto& layer = net.mutable_layer(l);
  const auto& g = grads.layers[l];
  if (g.weights.size() != layer.weights.size() || g.centers.size() != layer.centers.size() ||
      g.bias.size() != layer.bias.size() || g.variances.size() != layer.variances.size()) {
    throw DimensionError("sgd_step: gradient shapes do not match layer " + std::to_string(l + 1));
  }
  auto update = [](std::span<Complex> theta, std::span<const Complex> grad, double rate) {
    if (rate == 0.0) return;
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= rate * grad[i];
  };
  update(layer.weights.elements(), g.weights.elements(), rates.w);
  update(layer.bias, g.bias, rates.b);
  update(layer.centers.elements(), g.centers.elements(), rates.gamma);
  update(layer.variances, g.variances, rates.sigma);
  for (auto& s : layer.variances) {
    s = {std::max(s.real(), kMinKernelVariance), std::max(s.imag(), kMinKernelVariance)};
  }
}

void sgd_step(PtRbfNetwork& net, const Gradients& grads, const TrainConfig& config) {
  config.validate(net.depth());
  for (std::size_t l = 0; l < net.depth(); ++l) sgd_step(net, grads, config.rates[l], l);
}

double evaluate_mse(const PtRbfNetwork& net, const Dataset& data, ErrorScale scale) {
  if (data.size() == 0) throw ParameterError("evaluate_mse: empty dataset");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto y = predict(net, data.inputs[i]);
    const auto& d = data.targets[i];
    if (d.size() != y.size()) throw DimensionError("evaluate_mse: target width mismatch");
    for (std::size_t o = 0; o < y.size(); ++o) {
      const double er = (y[o].real() - d[o].real()) * scale.re;
      const double ei = (y[o].imag() - d[o].imag()) * scale.im;
      sum += er * er + ei * ei;
    }
    count += y.size();
  }
  return sum / static_cast<double>(count);
}

TrainResult train(PtRbfNetwork net, const Dataset& train_set, const Dataset& val_set,
                  const TrainConfig& config, ErrorScale scale) {
  config.validate(net.depth());
  const auto started = std::chrono::steady_clock::now();
  RunRecord record;
  record.config_hash = config.hash();
  record.seed = config.shuffle_seed;
  if (config.epochs > 0) {
    if (train_set.size() == 0) throw ParameterError("train: empty training set");
    train_set.validate();
    if (train_set.input_width() != net.inputs() || train_set.target_width() != net.outputs()) {
      throw DimensionError("train: dataset widths do not match the network");
    }
  }

  Rng order_rng(config.shuffle_seed);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  ForwardTrace trace;
  Gradients grads;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    order_rng.shuffle(std::span<std::size_t>(order));
    for (const auto i : order) {
      network_forward(net, train_set.inputs[i], trace);
      backprop(net, trace, train_set.targets[i], grads);
      for (std::size_t l = 0; l < net.depth(); ++l) sgd_step(net, grads, config.rates[l], l);
    }
    record.train_mse_db.push_back(mse_db(evaluate_mse(net, train_set, scale)));
    record.val_mse_db.push_back(val_set.size() == 0 ? std::nan("")
                                                    : mse_db(evaluate_mse(net, val_set, scale)));
  }
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return {std::move(net), std::move(record)};
}

std::string run_record_to_csv(const RunRecord& record) {
  std::ostringstream out;
  out << "epoch,train_mse_db,val_mse_db\n";
  for (std::size_t e = 0; e < record.epochs(); ++e) {
    out << e + 1 << "," << format_double(record.train_mse_db[e]) << ","
        << format_double(record.val_mse_db[e]) << "\n";
  }
  return out.str();
}

RunRecord run_record_from_csv(const std::string& text) {
  const auto table = parse_csv(text);
  const auto epoch = table.column("epoch");
  const auto tr = table.column("train_mse_db");
  const auto va = table.column("val_mse_db");
  RunRecord record;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (std::stoull(table.rows[i][epoch]) != i + 1) throw IoError("run record: epochs out of order");
    record.train_mse_db.push_back(parse_double(table.rows[i][tr]));
    record.val_mse_db.push_back(parse_double(table.rows[i][va]));
  }
  return record;
}

}  // namespace ptrbf
