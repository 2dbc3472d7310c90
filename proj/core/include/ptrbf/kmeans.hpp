#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ptrbf/complex.hpp"
#include "ptrbf/random.hpp"

namespace ptrbf {

inline constexpr std::size_t kKMeansMaxIterations = 100;

/// Lloyd's algorithm on real points stored row-major (count x dim).
struct KMeansResult {
  std::size_t dim = 0;
  std::vector<double> centers;          // K x dim, row-major
  std::vector<std::size_t> assignment;  // one cluster index per point
  std::vector<std::size_t> cluster_size;
  /// Mean squared distance of each cluster's members to its center (0 for empty).
  std::vector<double> mean_sq_distance;
  double inertia = 0.0;
  std::size_t iterations = 0;
  bool converged = false;

  std::size_t clusters() const { return cluster_size.size(); }
  std::span<const double> center(std::size_t k) const { return {centers.data() + k * dim, dim}; }
};

/// Seeds with K distinct data points chosen uniformly, iterates until the
/// assignment is stable or `max_iterations` updates have run. A cluster that
/// empties is re-seeded from a uniformly drawn data point.
KMeansResult lloyd_kmeans(std::span<const double> points, std::size_t dim, std::size_t k, Rng& rng,
                          std::size_t max_iterations = kKMeansMaxIterations);

/// K-means run separately on the real and the imaginary parts of the data.
/// Centers are paired by index: row k is C_re[k] + j C_im[k].
struct SplitKMeansResult {
  CMatrix centers;  // K x dim
  KMeansResult real;
  KMeansResult imag;
};

SplitKMeansResult split_kmeans(std::span<const CVector> data, std::size_t k, Rng& rng,
                               std::size_t max_iterations = kKMeansMaxIterations);

}  // namespace ptrbf
