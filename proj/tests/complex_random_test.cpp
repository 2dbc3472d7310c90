#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "ptrbf/complex.hpp"
#include "ptrbf/errors.hpp"
#include "ptrbf/random.hpp"

using namespace ptrbf;

TEST(CMatrix, MultiplyMatchesHandComputation) {
  CMatrix a(2, 2);
  a(0, 0) = {1, 1};
  a(0, 1) = {0, 2};
  a(1, 0) = {3, 0};
  a(1, 1) = {-1, -1};
  const CVector x{{1, 0}, {0, 1}};
  const auto y = multiply(a, x);
  EXPECT_EQ(y[0], Complex(-1, 1));  // (1+j) + 2j*j
  EXPECT_EQ(y[1], Complex(4, -1));  // 3 + (-1-j)j
  const auto z = multiply_adjoint(a, x);
  // conj(a)^T x
  EXPECT_EQ(z[0], Complex(1, -1) + Complex(3, 0) * Complex(0, 1));
  EXPECT_EQ(z[1], Complex(0, -2) + Complex(-1, 1) * Complex(0, 1));
}

TEST(CMatrix, SplitDistanceSeparatesAxes) {
  const CVector a{{1, 2}, {3, -1}};
  const CVector b{{0, 0}, {1, 1}};
  const auto d = split_squared_distance(a, b);
  EXPECT_DOUBLE_EQ(d.real(), 1 + 4);
  EXPECT_DOUBLE_EQ(d.imag(), 4 + 4);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
  Rng c(42), d(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(c.gaussian(), d.gaussian());
}

TEST(Rng, Mt19937ReferenceValue) {
  // 10000th output of a default-seeded mt19937_64, fixed by the C++ standard.
  Rng rng(5489u);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.next_u64();
  EXPECT_EQ(v, 9981545732273789042ULL);
}

TEST(Rng, UniformAndGaussianMoments) {
  Rng rng(7);
  const int n = 200000;
  double su = 0, su2 = 0, sg = 0, sg2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    su2 += u * u;
    const double g = rng.gaussian();
    sg += g;
    sg2 += g * g;
  }
  EXPECT_NEAR(su / n, 0.5, 0.005);
  EXPECT_NEAR(su2 / n - 0.25, 1.0 / 12.0, 0.002);
  EXPECT_NEAR(sg / n, 0.0, 0.01);
  EXPECT_NEAR(sg2 / n, 1.0, 0.01);
}

TEST(Rng, BelowCoversRangeUniformly) {
  Rng rng(3);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) counts[rng.below(7)]++;
  for (const int c : counts) EXPECT_NEAR(c, n / 7.0, 4 * std::sqrt(n / 7.0));
}

TEST(Rng, ShuffleIsAPermutation) {
  Rng rng(11);
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  rng.shuffle(std::span<int>(v));
  EXPECT_EQ(std::set<int>(v.begin(), v.end()).size(), 50u);
}

TEST(DeriveSeed, TagsGiveDistinctStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t r = 0; r < 100; ++r) {
    for (std::uint64_t t = 0; t < 4; ++t) seen.insert(derive_seed(1, {r, t}));
  }
  EXPECT_EQ(seen.size(), 400u);
  EXPECT_EQ(derive_seed(9, {1, 2}), derive_seed(9, {1, 2}));
  EXPECT_NE(derive_seed(9, {1, 2}), derive_seed(9, {2, 1}));
}

TEST(ComplexUniform, HalfWidthGivesTotalVariance) {
  EXPECT_DOUBLE_EQ(uniform_half_width(2.0), std::sqrt(3.0));
  Rng rng(5);
  const auto z = sample_complex_uniform(rng, {{0.5, -1.0}, 0.8}, 200000);
  Complex mean{};
  for (const auto v : z) mean += v;
  mean /= static_cast<double>(z.size());
  double vr = 0, vi = 0;
  for (const auto v : z) {
    vr += std::pow(v.real() - mean.real(), 2);
    vi += std::pow(v.imag() - mean.imag(), 2);
  }
  vr /= z.size();
  vi /= z.size();
  EXPECT_NEAR(mean.real(), 0.5, 0.01);
  EXPECT_NEAR(mean.imag(), -1.0, 0.01);
  EXPECT_NEAR(vr, 0.4, 0.01);
  EXPECT_NEAR(vi, 0.4, 0.01);
  const double a = uniform_half_width(0.8);
  for (const auto v : z) {
    ASSERT_LE(std::abs(v.real() - 0.5), a);
    ASSERT_LE(std::abs(v.imag() + 1.0), a);
  }
}

TEST(ComplexUniform, ZeroVarianceIsThePointMass) {
  Rng rng(1);
  EXPECT_EQ(sample_complex_uniform(rng, {{2, 3}, 0.0}), Complex(2, 3));
  EXPECT_THROW(sample_complex_uniform(rng, {{}, -1.0}), ParameterError);
}

TEST(ComplexGaussian, TotalVarianceConvention) {
  Rng rng(8);
  const auto m = sample_complex_gaussian(rng, {{}, 2.0}, 400, 500);
  double s = 0;
  for (const auto v : m.elements()) s += std::norm(v);
  EXPECT_NEAR(s / m.size(), 2.0, 0.03);
}
