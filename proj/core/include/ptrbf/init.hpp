#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptrbf/complex.hpp"
#include "ptrbf/network.hpp"
#include "ptrbf/random.hpp"

namespace ptrbf {

enum class Scheme { Random, KMeans, Constellation, Proposed };

std::string_view to_string(Scheme scheme);
/// Accepts "random", "kmeans" (or "k-means"), "constellation", "proposed".
Scheme parse_scheme(std::string_view name);

/// Replacement value for a degenerate (zero) variance component when
/// InitSpec::variance_floor is set.
inline constexpr double kDegenerateVarianceFloor = 1e-6;

struct InitSpec {
  Scheme scheme = Scheme::Proposed;
  /// Common value of Re and Im of every kernel variance (proposed scheme).
  double c_sigma = 1.0;
  /// Target mean of the kernel input; Re and Im must be equal.
  Complex mu_v{1.0, 1.0};
  /// Center variance for the random scheme.
  double random_center_variance = 1.0;
  /// Alphabet the constellation scheme draws centers from.
  CVector constellation;
  /// Replace zero variances with kDegenerateVarianceFloor instead of throwing.
  bool variance_floor = false;

  /// Checks the fields the selected scheme reads.
  void validate() const;
};

/// Random scheme: Gamma ~ CU(0, s2), W ~ CU(0, 1), b = 0, sigma = s2/2 (1 + j).
PtRbfNetwork init_random(std::span<const LayerShape> shapes, const InitSpec& spec, Rng& rng);

/// K-means scheme, single hidden layer only. Centers are the split K-means
/// centers of `inputs` (K = neurons) in random order; each variance is the
/// mean in-cluster squared distance of its real and imaginary clusters.
PtRbfNetwork init_kmeans(std::span<const LayerShape> shapes, std::span<const CVector> inputs,
                         const InitSpec& spec, Rng& rng);

/// Constellation scheme: every center entry drawn uniformly (with
/// replacement) from the alphabet; per layer one variance equal to half the
/// largest pairwise center distance on each axis; W = 0, b = 0.
PtRbfNetwork init_constellation(std::span<const LayerShape> shapes, std::span<const Complex> alphabet,
                                const InitSpec& spec, Rng& rng);

/// Variance-matched scheme.
PtRbfNetwork init_proposed(std::span<const LayerShape> shapes, const InitSpec& spec, Rng& rng);

/// Dispatches on spec.scheme. `inputs` feeds the K-means scheme, and
/// spec.constellation the constellation scheme.
PtRbfNetwork initialize(std::span<const LayerShape> shapes, const InitSpec& spec, Rng& rng,
                        std::span<const CVector> inputs = {});

/// c_sigma Re(mu_v) / fan_in
double proposed_center_variance(const InitSpec& spec, std::size_t fan_in);

/// 5 c_sigma exp(2 Re(mu_v)) fan_in / (12 neurons outputs Re(mu_v))
double proposed_weight_variance(const InitSpec& spec, const LayerShape& shape);

}  // namespace ptrbf
