#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ptrbf/complex.hpp"

namespace ptrbf {

/// Per-axis ceiling applied to kernel inputs before exponentiation.
inline constexpr double kKernelInputCeiling = 700.0;

/// One PT-RBF layer. Shapes:
///   weights   [outputs x neurons]
///   bias      [outputs]
///   centers   [neurons x fan_in]
///   variances [neurons]
struct PtRbfLayer {
  CMatrix weights;
  CVector bias;
  CMatrix centers;
  CVector variances;

  std::size_t fan_in() const { return centers.cols(); }
  std::size_t neurons() const { return centers.rows(); }
  std::size_t outputs() const { return weights.rows(); }

  /// Throws DimensionError / ParameterError when shapes disagree, a variance
  /// component is not strictly positive, or any value is non-finite.
  void validate() const;

  friend bool operator==(const PtRbfLayer&, const PtRbfLayer&) = default;
};

/// Shape of one layer, used by the initializers.
struct LayerShape {
  std::size_t fan_in = 0;
  std::size_t neurons = 0;
  std::size_t outputs = 0;

  friend bool operator==(const LayerShape&, const LayerShape&) = default;
};

/// Builds the per-layer shapes for `inputs` network inputs, the given neuron
/// counts and `outputs` network outputs. Hidden layer l emits
/// `hidden_outputs[l]` values when given, otherwise as many values as layer
/// l+1 has neurons.
std::vector<LayerShape> make_shapes(std::size_t inputs, std::span<const std::size_t> neurons,
                                    std::size_t outputs,
                                    std::span<const std::size_t> hidden_outputs = {});

class PtRbfNetwork {
 public:
  PtRbfNetwork() = default;
  /// Validates every layer and the dimension chain.
  PtRbfNetwork(std::size_t inputs, std::vector<PtRbfLayer> layers);

  std::size_t inputs() const { return inputs_; }
  std::size_t outputs() const { return layers_.empty() ? 0 : layers_.back().outputs(); }
  std::size_t depth() const { return layers_.size(); }

  const std::vector<PtRbfLayer>& layers() const { return layers_; }
  const PtRbfLayer& layer(std::size_t l) const { return layers_.at(l); }
  PtRbfLayer& mutable_layer(std::size_t l) { return layers_.at(l); }

  std::vector<LayerShape> shapes() const;

  void validate() const;

  friend bool operator==(const PtRbfNetwork&, const PtRbfNetwork&) = default;

 private:
  std::size_t inputs_ = 0;
  std::vector<PtRbfLayer> layers_;
};

struct LayerTrace {
  CVector v;    // kernel inputs, one per neuron
  CVector phi;  // kernel outputs, one per neuron
  CVector y;    // layer outputs
};

/// Everything backprop needs from a forward pass.
struct ForwardTrace {
  CVector input;
  std::vector<LayerTrace> layers;

  const CVector& output() const { return layers.back().y; }
  /// Input seen by layer l (the network input for l == 0).
  const CVector& layer_input(std::size_t l) const { return l == 0 ? input : layers[l - 1].y; }
};

/// v = ||Re y - Re c||^2 / Re s + j ||Im y - Im c||^2 / Im s
Complex kernel_input(std::span<const Complex> prev_output, std::span<const Complex> center,
                     Complex variance);

/// phi = exp(-Re v) + j exp(-Im v), each axis clamped at kKernelInputCeiling.
Complex kernel(Complex v);

LayerTrace layer_forward(const PtRbfLayer& layer, std::span<const Complex> prev_output);

/// Same as above but reuses the buffers in `out`.
void layer_forward(const PtRbfLayer& layer, std::span<const Complex> prev_output, LayerTrace& out);

ForwardTrace network_forward(const PtRbfNetwork& net, std::span<const Complex> input);
void network_forward(const PtRbfNetwork& net, std::span<const Complex> input, ForwardTrace& out);

/// Output only; no trace kept.
CVector predict(const PtRbfNetwork& net, std::span<const Complex> input);

}  // namespace ptrbf
