#include "ptrbf/normalize.hpp"

#include <cmath>

#include "ptrbf/errors.hpp"

namespace ptrbf {

double NormStats::scale_re() const {
  return asymmetric ? std::sqrt(target_variance / (2.0 * var_re))
                    : std::sqrt(target_variance / variance());
}

double NormStats::scale_im() const {
  return asymmetric ? std::sqrt(target_variance / (2.0 * var_im))
                    : std::sqrt(target_variance / variance());
}

Complex NormStats::apply(Complex z) const {
  return {(z.real() - mean.real()) * scale_re(), (z.imag() - mean.imag()) * scale_im()};
}

Complex NormStats::invert(Complex z) const {
  return {z.real() / scale_re() + mean.real(), z.imag() / scale_im() + mean.imag()};
}

NormStats fit_normalizer(std::span<const CVector> samples, double target_variance) {
  if (!(target_variance > 0.0)) throw ParameterError("normalization target variance must be > 0");
  if (samples.empty() || samples.front().empty()) {
    throw DegenerateError("cannot normalize an empty dataset");
  }
  const std::size_t width = samples.front().size();
  double sum_re = 0.0;
  double sum_im = 0.0;
  std::size_t count = 0;
  for (const auto& x : samples) {
    if (x.size() != width) throw DimensionError("normalizer: ragged dataset");
    for (const auto z : x) {
      sum_re += z.real();
      sum_im += z.imag();
    }
    count += x.size();
  }
  const double n = static_cast<double>(count);
  NormStats stats;
  stats.mean = {sum_re / n, sum_im / n};
  // Second pass on centered values.
  double ss_re = 0.0;
  double ss_im = 0.0;
  for (const auto& x : samples) {
    for (const auto z : x) {
      const double dr = z.real() - stats.mean.real();
      const double di = z.imag() - stats.mean.imag();
      ss_re += dr * dr;
      ss_im += di * di;
    }
  }
  stats.var_re = ss_re / n;
  stats.var_im = ss_im / n;
  stats.target_variance = target_variance;
  stats.width = width;
  const double larger = std::max(stats.var_re, stats.var_im);
  if (!(stats.variance() > 0.0)) throw DegenerateError("dataset has zero variance");
  stats.asymmetric = std::abs(stats.var_re - stats.var_im) > kAsymmetryTolerance * larger;
  if (stats.asymmetric && (!(stats.var_re > 0.0) || !(stats.var_im > 0.0))) {
    throw DegenerateError("dataset has zero variance on one axis");
  }
  return stats;
}

std::vector<CVector> apply_normalizer(const NormStats& stats, std::span<const CVector> samples) {
  std::vector<CVector> out;
  out.reserve(samples.size());
  for (const auto& x : samples) {
    if (x.size() != stats.width) throw DimensionError("normalizer width mismatch");
    CVector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = stats.apply(x[i]);
    out.push_back(std::move(y));
  }
  return out;
}

std::pair<Dataset, NormStats> normalize_inputs(const Dataset& data, const InitSpec& spec) {
  spec.validate();
  const auto p = static_cast<double>(data.input_width());
  auto stats = fit_normalizer(data.inputs, spec.c_sigma * spec.mu_v.real() / p);
  Dataset out{apply_normalizer(stats, data.inputs), data.targets, data.meta};
  return {std::move(out), stats};
}

std::pair<Dataset, NormStats> normalize_outputs(const Dataset& data, const InitSpec& spec) {
  spec.validate();
  const auto r = static_cast<double>(data.target_width());
  auto stats = fit_normalizer(data.targets, spec.c_sigma * spec.mu_v.real() / r);
  Dataset out{data.inputs, apply_normalizer(stats, data.targets), data.meta};
  return {std::move(out), stats};
}

CVector denormalize_outputs(std::span<const Complex> normalized, const NormStats& stats) {
  CVector out(normalized.size());
  for (std::size_t i = 0; i < normalized.size(); ++i) out[i] = stats.invert(normalized[i]);
  return out;
}

}  // namespace ptrbf
