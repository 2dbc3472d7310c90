#include "ptrbf/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptrbf/errors.hpp"

namespace ptrbf {

namespace {

std::string dims(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void check_variance(Complex variance) {
  if (!(variance.real() > 0.0) || !(variance.imag() > 0.0)) {
    throw ParameterError("kernel variance components must be > 0");
  }
}

}  // namespace

void PtRbfLayer::validate() const {
  const std::size_t n = neurons();
  const std::size_t o = outputs();
  if (n == 0 || o == 0 || fan_in() == 0) {
    throw DimensionError("layer dimensions must be positive, centers " +
                         dims(centers.rows(), centers.cols()) + ", weights " +
                         dims(weights.rows(), weights.cols()));
  }
  if (weights.cols() != n) {
    throw DimensionError("weights " + dims(weights.rows(), weights.cols()) + " do not match " +
                         std::to_string(n) + " neurons");
  }
  if (bias.size() != o) {
    throw DimensionError("bias length " + std::to_string(bias.size()) + ", expected " +
                         std::to_string(o));
  }
  if (variances.size() != n) {
    throw DimensionError("variance length " + std::to_string(variances.size()) + ", expected " +
                         std::to_string(n));
  }
  for (const auto s : variances) {
    if (!(s.real() > 0.0) || !(s.imag() > 0.0) || !is_finite(s)) {
      throw ParameterError("layer variance components must be finite and > 0");
    }
  }
  if (!all_finite(weights.elements()) || !all_finite(bias) || !all_finite(centers.elements())) {
    throw ParameterError("layer holds non-finite parameters");
  }
}

std::vector<LayerShape> make_shapes(std::size_t inputs, std::span<const std::size_t> neurons,
                                    std::size_t outputs,
                                    std::span<const std::size_t> hidden_outputs) {
  if (neurons.empty()) throw ParameterError("architecture needs at least one layer");
  if (inputs == 0 || outputs == 0) throw ParameterError("network inputs/outputs must be > 0");
  if (!hidden_outputs.empty() && hidden_outputs.size() + 1 != neurons.size()) {
    throw DimensionError("hidden_outputs needs " + std::to_string(neurons.size() - 1) +
                         " entries, got " + std::to_string(hidden_outputs.size()));
  }
  std::vector<LayerShape> shapes;
  std::size_t fan_in = inputs;
  for (std::size_t l = 0; l < neurons.size(); ++l) {
    if (neurons[l] == 0) throw ParameterError("layer neuron count must be > 0");
    std::size_t out = outputs;
    if (l + 1 < neurons.size()) out = hidden_outputs.empty() ? neurons[l + 1] : hidden_outputs[l];
    if (out == 0) throw ParameterError("layer output width must be > 0");
    shapes.push_back({fan_in, neurons[l], out});
    fan_in = out;
  }
  return shapes;
}

PtRbfNetwork::PtRbfNetwork(std::size_t inputs, std::vector<PtRbfLayer> layers)
    : inputs_(inputs), layers_(std::move(layers)) {
  validate();
}

std::vector<LayerShape> PtRbfNetwork::shapes() const {
  std::vector<LayerShape> out;
  out.reserve(layers_.size());
  for (const auto& layer : layers_) out.push_back({layer.fan_in(), layer.neurons(), layer.outputs()});
  return out;
}

void PtRbfNetwork::validate() const {
  if (layers_.empty()) throw DimensionError("network needs at least one layer");
  std::size_t width = inputs_;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    layers_[l].validate();
    if (layers_[l].fan_in() != width) {
      throw DimensionError("layer " + std::to_string(l + 1) + " expects " +
                           std::to_string(layers_[l].fan_in()) + " inputs, previous width is " +
                           std::to_string(width));
    }
    width = layers_[l].outputs();
  }
}

Complex kernel_input(std::span<const Complex> prev_output, std::span<const Complex> center,
                     Complex variance) {
  check_variance(variance);
  const Complex d = split_squared_distance(prev_output, center);
  return {d.real() / variance.real(), d.imag() / variance.imag()};
}

Complex kernel(Complex v) {
  return {std::exp(-std::min(v.real(), kKernelInputCeiling)),
          std::exp(-std::min(v.imag(), kKernelInputCeiling))};
}

void layer_forward(const PtRbfLayer& layer, std::span<const Complex> prev_output, LayerTrace& out) {
  if (prev_output.size() != layer.fan_in()) {
    throw DimensionError("layer_forward: layer expects " + std::to_string(layer.fan_in()) +
                         " inputs, got " + std::to_string(prev_output.size()));
  }
  const std::size_t n = layer.neurons();
  out.v.resize(n);
  out.phi.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    out.v[m] = kernel_input(prev_output, layer.centers.row(m), layer.variances[m]);
    out.phi[m] = kernel(out.v[m]);
  }
  out.y.assign(layer.bias.begin(), layer.bias.end());
  for (std::size_t o = 0; o < layer.outputs(); ++o) {
    const auto w = layer.weights.row(o);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      re += w[m].real() * out.phi[m].real() - w[m].imag() * out.phi[m].imag();
      im += w[m].real() * out.phi[m].imag() + w[m].imag() * out.phi[m].real();
    }
    out.y[o] += Complex{re, im};
  }
}

LayerTrace layer_forward(const PtRbfLayer& layer, std::span<const Complex> prev_output) {
  LayerTrace out;
  layer_forward(layer, prev_output, out);
  return out;
}

void network_forward(const PtRbfNetwork& net, std::span<const Complex> input, ForwardTrace& out) {
  if (input.size() != net.inputs()) {
    throw DimensionError("network_forward: network expects " + std::to_string(net.inputs()) +
                         " inputs, got " + std::to_string(input.size()));
  }
  out.input.assign(input.begin(), input.end());
  out.layers.resize(net.depth());
  for (std::size_t l = 0; l < net.depth(); ++l) {
    layer_forward(net.layer(l), out.layer_input(l), out.layers[l]);
  }
}

ForwardTrace network_forward(const PtRbfNetwork& net, std::span<const Complex> input) {
  ForwardTrace out;
  network_forward(net, input, out);
  return out;
}

CVector predict(const PtRbfNetwork& net, std::span<const Complex> input) {
  if (input.size() != net.inputs()) {
    throw DimensionError("predict: network expects " + std::to_string(net.inputs()) +
                         " inputs, got " + std::to_string(input.size()));
  }
  CVector current(input.begin(), input.end());
  LayerTrace scratch;
  for (const auto& layer : net.layers()) {
    layer_forward(layer, current, scratch);
    current.swap(scratch.y);
  }
  return current;
}

}  // namespace ptrbf
