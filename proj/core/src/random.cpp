#include "ptrbf/random.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ptrbf/errors.hpp"

namespace ptrbf {

double Rng::gaussian() {
  if (spare_gaussian_) {
    const double g = *spare_gaussian_;
    spare_gaussian_.reset();
    return g;
  }
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_gaussian_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw ParameterError("Rng::below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return draw % n;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_variance(double variance) {
  if (!(variance >= 0.0) || !std::isfinite(variance)) {
    throw ParameterError("complex sampler: variance must be finite and >= 0, got " +
                         std::to_string(variance));
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t state = splitmix64(base);
  for (const auto tag : tags) state = splitmix64(state ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
  return state;
}

double uniform_half_width(double total_variance) {
  check_variance(total_variance);
  return std::sqrt(1.5 * total_variance);
}

Complex sample_complex_uniform(Rng& rng, const ComplexUniformSpec& spec) {
  const double a = uniform_half_width(spec.variance);
  const double re = rng.uniform(-a, a);
  const double im = rng.uniform(-a, a);
  return spec.mean + Complex{re, im};
}

CMatrix sample_complex_uniform(Rng& rng, const ComplexUniformSpec& spec, std::size_t rows,
                               std::size_t cols) {
  const double a = uniform_half_width(spec.variance);
  CMatrix out(rows, cols);
  for (auto& z : out.elements()) {
    const double re = rng.uniform(-a, a);
    const double im = rng.uniform(-a, a);
    z = spec.mean + Complex{re, im};
  }
  return out;
}

CVector sample_complex_uniform(Rng& rng, const ComplexUniformSpec& spec, std::size_t count) {
  const auto m = sample_complex_uniform(rng, spec, 1, count);
  return {m.elements().begin(), m.elements().end()};
}

Complex sample_complex_gaussian(Rng& rng, const ComplexUniformSpec& spec) {
  check_variance(spec.variance);
  const double sd = std::sqrt(0.5 * spec.variance);
  const double re = sd * rng.gaussian();
  const double im = sd * rng.gaussian();
  return spec.mean + Complex{re, im};
}

CMatrix sample_complex_gaussian(Rng& rng, const ComplexUniformSpec& spec, std::size_t rows,
                                std::size_t cols) {
  check_variance(spec.variance);
  CMatrix out(rows, cols);
  for (auto& z : out.elements()) z = sample_complex_gaussian(rng, spec);
  return out;
}

}  // namespace ptrbf
