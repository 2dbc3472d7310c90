#include "ptrbf/init.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ptrbf/errors.hpp"
#include "ptrbf/kmeans.hpp"

namespace ptrbf {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Random: return "random";
    case Scheme::KMeans: return "kmeans";
    case Scheme::Constellation: return "constellation";
    case Scheme::Proposed: return "proposed";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "random") return Scheme::Random;
  if (name == "kmeans" || name == "k-means") return Scheme::KMeans;
  if (name == "constellation") return Scheme::Constellation;
  if (name == "proposed") return Scheme::Proposed;
  throw ParameterError("unknown initialization scheme '" + std::string(name) + "'");
}

void InitSpec::validate() const {
  if (!(c_sigma > 0.0) || !std::isfinite(c_sigma)) {
    throw ParameterError("c_sigma must be positive and finite");
  }
  if (!(mu_v.real() > 0.0) || mu_v.real() != mu_v.imag() || !std::isfinite(mu_v.real())) {
    throw ParameterError("mu_v target needs equal, positive real and imaginary parts");
  }
  if (scheme == Scheme::Random &&
      (!(random_center_variance > 0.0) || !std::isfinite(random_center_variance))) {
    throw ParameterError("random scheme center variance must be > 0");
  }
}

namespace {

void check_shapes(std::span<const LayerShape> shapes) {
  if (shapes.empty()) throw ParameterError("initializer needs at least one layer shape");
  for (std::size_t l = 0; l < shapes.size(); ++l) {
    const auto& s = shapes[l];
    if (s.fan_in == 0 || s.neurons == 0 || s.outputs == 0) {
      throw ParameterError("layer " + std::to_string(l + 1) + " has a zero dimension");
    }
    if (l > 0 && s.fan_in != shapes[l - 1].outputs) {
      throw DimensionError("layer " + std::to_string(l + 1) + " fan-in does not match layer " +
                           std::to_string(l) + " outputs");
    }
  }
}

double floor_or_throw(double value, const InitSpec& spec, const char* what) {
  if (value > 0.0) return value;
  if (spec.variance_floor) return kDegenerateVarianceFloor;
  throw DegenerateError(std::string(what) + ": zero kernel variance (enable variance_floor to "
                        "substitute " + std::to_string(kDegenerateVarianceFloor) + ")");
}

PtRbfLayer zero_layer(const LayerShape& s) {
  PtRbfLayer layer;
  layer.weights = CMatrix(s.outputs, s.neurons);
  layer.bias = CVector(s.outputs);
  layer.centers = CMatrix(s.neurons, s.fan_in);
  layer.variances = CVector(s.neurons);
  return layer;
}

}  // namespace

PtRbfNetwork init_random(std::span<const LayerShape> shapes, const InitSpec& spec, Rng& rng) {
  check_shapes(shapes);
  InitSpec checked = spec;
  checked.scheme = Scheme::Random;
  checked.validate();
  const double s2 = spec.random_center_variance;
  std::vector<PtRbfLayer> layers;
  for (const auto& s : shapes) {
    PtRbfLayer layer = zero_layer(s);
    layer.centers = sample_complex_uniform(rng, {{}, s2}, s.neurons, s.fan_in);
    layer.weights = sample_complex_uniform(rng, {{}, 1.0}, s.outputs, s.neurons);
    std::fill(layer.variances.begin(), layer.variances.end(), Complex{s2 / 2.0, s2 / 2.0});
    layers.push_back(std::move(layer));
  }
  return PtRbfNetwork(shapes.front().fan_in, std::move(layers));
}

PtRbfNetwork init_kmeans(std::span<const LayerShape> shapes, std::span<const CVector> inputs,
                         const InitSpec& spec, Rng& rng) {
  check_shapes(shapes);
  if (shapes.size() != 1) {
    throw UnsupportedSchemeError("kmeans initialization: shallow only (network has " +
                                 std::to_string(shapes.size()) + " hidden layers)");
  }
  const auto& s = shapes.front();
  if (inputs.empty()) throw ParameterError("kmeans initialization needs an input dataset");
  for (const auto& x : inputs) {
    if (x.size() != s.fan_in) throw DimensionError("kmeans dataset width does not match fan-in");
  }
  const auto clusters = split_kmeans(inputs, s.neurons, rng);

  std::vector<std::size_t> order(s.neurons);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));

  PtRbfLayer layer = zero_layer(s);
  for (std::size_t m = 0; m < s.neurons; ++m) {
    const auto k = order[m];
    const auto src = clusters.centers.row(k);
    std::copy(src.begin(), src.end(), layer.centers.row(m).begin());
    layer.variances[m] = {floor_or_throw(clusters.real.mean_sq_distance[k], spec, "kmeans"),
                          floor_or_throw(clusters.imag.mean_sq_distance[k], spec, "kmeans")};
  }
  layer.weights = sample_complex_uniform(rng, {{}, 1.0}, s.outputs, s.neurons);
  std::vector<PtRbfLayer> layers;
  layers.push_back(std::move(layer));
  return PtRbfNetwork(s.fan_in, std::move(layers));
}

PtRbfNetwork init_constellation(std::span<const LayerShape> shapes, std::span<const Complex> alphabet,
                                const InitSpec& spec, Rng& rng) {
  check_shapes(shapes);
  if (alphabet.empty()) throw ParameterError("constellation initialization needs symbols");
  std::vector<PtRbfLayer> layers;
  for (const auto& s : shapes) {
    PtRbfLayer layer = zero_layer(s);
    for (auto& z : layer.centers.elements()) z = alphabet[rng.below(alphabet.size())];

    double max_re = 0.0;
    double max_im = 0.0;
    for (std::size_t i = 0; i < s.neurons; ++i) {
      for (std::size_t k = i + 1; k < s.neurons; ++k) {
        const Complex d = split_squared_distance(layer.centers.row(i), layer.centers.row(k));
        max_re = std::max(max_re, d.real());
        max_im = std::max(max_im, d.imag());
      }
    }
    const Complex sigma{floor_or_throw(0.5 * std::sqrt(max_re), spec, "constellation"),
                        floor_or_throw(0.5 * std::sqrt(max_im), spec, "constellation")};
    std::fill(layer.variances.begin(), layer.variances.end(), sigma);
    layers.push_back(std::move(layer));
  }
  return PtRbfNetwork(shapes.front().fan_in, std::move(layers));
}

double proposed_center_variance(const InitSpec& spec, std::size_t fan_in) {
  spec.validate();
  if (fan_in == 0) throw ParameterError("fan-in must be > 0");
  return spec.c_sigma * spec.mu_v.real() / static_cast<double>(fan_in);
}

double proposed_weight_variance(const InitSpec& spec, const LayerShape& shape) {
  spec.validate();
  if (shape.fan_in == 0 || shape.neurons == 0 || shape.outputs == 0) {
    throw ParameterError("layer shape has a zero dimension");
  }
  const double mu = spec.mu_v.real();
  return 5.0 * spec.c_sigma * std::exp(2.0 * mu) * static_cast<double>(shape.fan_in) /
         (12.0 * static_cast<double>(shape.neurons) * static_cast<double>(shape.outputs) * mu);
}

PtRbfNetwork init_proposed(std::span<const LayerShape> shapes, const InitSpec& spec, Rng& rng) {
  check_shapes(shapes);
  spec.validate();
  std::vector<PtRbfLayer> layers;
  for (const auto& s : shapes) {
    PtRbfLayer layer = zero_layer(s);
    layer.centers =
        sample_complex_uniform(rng, {{}, proposed_center_variance(spec, s.fan_in)}, s.neurons, s.fan_in);
    layer.weights =
        sample_complex_uniform(rng, {{}, proposed_weight_variance(spec, s)}, s.outputs, s.neurons);
    std::fill(layer.variances.begin(), layer.variances.end(), Complex{spec.c_sigma, spec.c_sigma});
    layers.push_back(std::move(layer));
  }
  return PtRbfNetwork(shapes.front().fan_in, std::move(layers));
}

PtRbfNetwork initialize(std::span<const LayerShape> shapes, const InitSpec& spec, Rng& rng,
                        std::span<const CVector> inputs) {
  switch (spec.scheme) {
    case Scheme::Random: return init_random(shapes, spec, rng);
    case Scheme::KMeans: return init_kmeans(shapes, inputs, spec, rng);
    case Scheme::Constellation: return init_constellation(shapes, spec.constellation, spec, rng);
    case Scheme::Proposed: return init_proposed(shapes, spec, rng);
  }
  throw ParameterError("unknown scheme");
}

}  // namespace ptrbf
