#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <string_view>

#include "ptrbf/complex.hpp"

namespace ptrbf {

/// Seeded generator. The engine is std::mt19937_64, whose output sequence is
/// fixed by the standard; the transforms below are implemented here because
/// the std:: distributions are not portable bit-for-bit across libraries.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller; caches the second variate.
  double gaussian();

  /// Unbiased integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::optional<double> spare_gaussian_;
};

/// Mixes a base seed with stream tags into an independent child seed
/// (splitmix64 finalizer applied per tag).
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

/// Complex distribution with independent real/imaginary parts. `variance` is
/// the total complex variance Var[Re z] + Var[Im z]; each part gets half.
struct ComplexUniformSpec {
  Complex mean{0.0, 0.0};
  double variance = 1.0;
};

/// Half-width a of the per-component uniform law: a^2 / 3 = variance / 2.
double uniform_half_width(double total_variance);

CMatrix sample_complex_uniform(Rng& rng, const ComplexUniformSpec& spec, std::size_t rows,
                               std::size_t cols);
CVector sample_complex_uniform(Rng& rng, const ComplexUniformSpec& spec, std::size_t count);
Complex sample_complex_uniform(Rng& rng, const ComplexUniformSpec& spec);

/// Circular Gaussian counterpart, same variance convention. Not the default
/// for initialization.
CMatrix sample_complex_gaussian(Rng& rng, const ComplexUniformSpec& spec, std::size_t rows,
                                std::size_t cols);
Complex sample_complex_gaussian(Rng& rng, const ComplexUniformSpec& spec);

}  // namespace ptrbf
