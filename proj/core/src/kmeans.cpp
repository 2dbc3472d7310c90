#include "ptrbf/kmeans.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "ptrbf/errors.hpp"

namespace ptrbf {

namespace {

std::size_t nearest(std::span<const double> point, const std::vector<double>& centers,
                    std::size_t dim, std::size_t k) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < k; ++c) {
    const double d = squared_l2_distance(point, {centers.data() + c * dim, dim});
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

KMeansResult lloyd_kmeans(std::span<const double> points, std::size_t dim, std::size_t k, Rng& rng,
                          std::size_t max_iterations) {
  if (dim == 0 || points.empty() || points.size() % dim != 0) {
    throw DimensionError("lloyd_kmeans: point buffer is not a whole number of rows");
  }
  const std::size_t n = points.size() / dim;
  if (k == 0 || k > n) {
    throw ParameterError("lloyd_kmeans: K=" + std::to_string(k) + " must lie in [1, " +
                         std::to_string(n) + "]");
  }
  auto point = [&](std::size_t i) { return points.subspan(i * dim, dim); };

  KMeansResult r;
  r.dim = dim;
  r.centers.resize(k * dim);
  r.cluster_size.assign(k, 0);

  // Partial Fisher-Yates: the first k entries become distinct seeds.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(order[i], order[j]);
    const auto src = point(order[i]);
    std::copy(src.begin(), src.end(), r.centers.begin() + static_cast<std::ptrdiff_t>(i * dim));
  }

  r.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.assignment[i] = nearest(point(i), r.centers, dim, k);

  std::vector<double> sums(k * dim);
  while (r.iterations < max_iterations) {
    ++r.iterations;
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(r.cluster_size.begin(), r.cluster_size.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = r.assignment[i];
      ++r.cluster_size[c];
      const auto p = point(i);
      for (std::size_t d = 0; d < dim; ++d) sums[c * dim + d] += p[d];
    }
    bool reseeded = false;
    for (std::size_t c = 0; c < k; ++c) {
      if (r.cluster_size[c] == 0) {
        const auto p = point(static_cast<std::size_t>(rng.below(n)));
        std::copy(p.begin(), p.end(), r.centers.begin() + static_cast<std::ptrdiff_t>(c * dim));
        reseeded = true;
        continue;
      }
      const double inv = 1.0 / static_cast<double>(r.cluster_size[c]);
      for (std::size_t d = 0; d < dim; ++d) r.centers[c * dim + d] = sums[c * dim + d] * inv;
    }
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = nearest(point(i), r.centers, dim, k);
      if (c != r.assignment[i]) {
        r.assignment[i] = c;
        changed = true;
      }
    }
    if (!changed && !reseeded) {
      r.converged = true;
      break;
    }
  }

  // Final statistics against the final centers and assignment.
  std::fill(r.cluster_size.begin(), r.cluster_size.end(), 0);
  r.mean_sq_distance.assign(k, 0.0);
  r.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = r.assignment[i];
    const double d = squared_l2_distance(point(i), r.center(c));
    ++r.cluster_size[c];
    r.mean_sq_distance[c] += d;
    r.inertia += d;
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (r.cluster_size[c] > 0) r.mean_sq_distance[c] /= static_cast<double>(r.cluster_size[c]);
  }
  return r;
}

SplitKMeansResult split_kmeans(std::span<const CVector> data, std::size_t k, Rng& rng,
                               std::size_t max_iterations) {
  if (data.empty()) throw ParameterError("split_kmeans: empty dataset");
  const std::size_t dim = data.front().size();
  std::vector<double> re;
  std::vector<double> im;
  re.reserve(data.size() * dim);
  im.reserve(data.size() * dim);
  for (const auto& x : data) {
    if (x.size() != dim) throw DimensionError("split_kmeans: ragged dataset");
    for (const auto z : x) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
  }
  SplitKMeansResult out;
  out.real = lloyd_kmeans(re, dim, k, rng, max_iterations);
  out.imag = lloyd_kmeans(im, dim, k, rng, max_iterations);
  out.centers = CMatrix(k, dim);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = 0; d < dim; ++d) {
      out.centers(c, d) = {out.real.centers[c * dim + d], out.imag.centers[c * dim + d]};
    }
  }
  return out;
}

}  // namespace ptrbf
