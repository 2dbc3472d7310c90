#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ptrbf/complex.hpp"
#include "ptrbf/dataset.hpp"
#include "ptrbf/init.hpp"

namespace ptrbf {

/// Relative gap between the real and imaginary variances above which the
/// per-component (asymmetric) normalization is used.
inline constexpr double kAsymmetryTolerance = 1e-9;

/// Affine map fitted on a set of complex vectors, pooled over all elements
/// (population moments). Applied per element:
///   symmetric:  z' = (z - mean) * sqrt(target / (var_re + var_im))
///   asymmetric: Re z' = (Re z - Re mean) * sqrt(target / (2 var_re)), same for Im
/// so that the complex variance of z' equals `target_variance` either way.
struct NormStats {
  Complex mean{};
  double var_re = 0.0;
  double var_im = 0.0;
  double target_variance = 1.0;
  std::size_t width = 0;  // P for inputs, R for outputs
  bool asymmetric = false;

  double variance() const { return var_re + var_im; }
  /// Multiplicative factor applied to each axis.
  double scale_re() const;
  double scale_im() const;

  Complex apply(Complex z) const;
  Complex invert(Complex z) const;
};

NormStats fit_normalizer(std::span<const CVector> samples, double target_variance);
std::vector<CVector> apply_normalizer(const NormStats& stats, std::span<const CVector> samples);

/// Inputs scaled to complex variance c_sigma Re(mu_v) / P.
std::pair<Dataset, NormStats> normalize_inputs(const Dataset& data, const InitSpec& spec);

/// Targets scaled to complex variance c_sigma Re(mu_v) / R.
std::pair<Dataset, NormStats> normalize_outputs(const Dataset& data, const InitSpec& spec);

/// Exact inverse of the map fitted by normalize_outputs.
CVector denormalize_outputs(std::span<const Complex> normalized, const NormStats& stats);

}  // namespace ptrbf
