#include <gtest/gtest.h>

#include <cmath>

#include "ptrbf/errors.hpp"
#include "ptrbf/normalize.hpp"
#include "ptrbf/qam.hpp"

using namespace ptrbf;

namespace {

struct Moments {
  Complex mean;
  double variance;
};

Moments pooled(const std::vector<CVector>& rows) {
  Complex s{};
  std::size_t n = 0;
  for (const auto& r : rows) {
    for (const auto z : r) {
      s += z;
      ++n;
    }
  }
  const Complex m = s / static_cast<double>(n);
  double v = 0.0;
  for (const auto& r : rows) {
    for (const auto z : r) v += std::norm(z - m);
  }
  return {m, v / static_cast<double>(n)};
}

Dataset task_data() {
  TaskConfig tc;
  tc.count = 2000;
  tc.seed = 77;
  return gen_dataset(tc);
}

}  // namespace

TEST(Normalize, InputContract) {
  const auto data = task_data();
  for (const double c : {1.0, 0.5, 3.0}) {
    InitSpec spec;
    spec.c_sigma = c;
    spec.mu_v = {2.0, 2.0};
    const auto [out, stats] = normalize_inputs(data, spec);
    const auto m = pooled(out.inputs);
    EXPECT_LE(std::abs(m.mean), 1e-12);
    const double target = c * 2.0 / 16.0;
    EXPECT_NEAR(m.variance / target, 1.0, 1e-10);
    EXPECT_EQ(out.targets, data.targets);
  }
}

TEST(Normalize, OutputContract) {
  const auto data = task_data();
  InitSpec spec;
  const auto [out, stats] = normalize_outputs(data, spec);
  const auto m = pooled(out.targets);
  EXPECT_LE(std::abs(m.mean), 1e-12);
  EXPECT_NEAR(m.variance / (1.0 / 4.0), 1.0, 1e-10);
  EXPECT_EQ(stats.width, 4u);
}

TEST(Normalize, InverseRecoversTargets) {
  const auto data = task_data();
  InitSpec spec;
  const auto [out, stats] = normalize_outputs(data, spec);
  for (std::size_t i = 0; i < 50; ++i) {
    const auto back = denormalize_outputs(out.targets[i], stats);
    for (std::size_t o = 0; o < back.size(); ++o) {
      EXPECT_NEAR(back[o].real(), data.targets[i][o].real(), 1e-12);
      EXPECT_NEAR(back[o].imag(), data.targets[i][o].imag(), 1e-12);
    }
  }
}

TEST(Normalize, AsymmetricComponentsScaledSeparately) {
  std::vector<CVector> rows;
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) rows.push_back({{3.0 * rng.gaussian(), 0.5 * rng.gaussian()}});
  const auto stats = fit_normalizer(rows, 2.0);
  EXPECT_TRUE(stats.asymmetric);
  const auto out = apply_normalizer(stats, rows);
  double vr = 0, vi = 0;
  for (const auto& r : out) {
    vr += r[0].real() * r[0].real();
    vi += r[0].imag() * r[0].imag();
  }
  const auto m = pooled(out);
  EXPECT_NEAR(m.variance, 2.0, 1e-10);
  EXPECT_NEAR(vr / 1000 - m.mean.real() * m.mean.real(), 1.0, 1e-10);
  EXPECT_NEAR(vi / 1000 - m.mean.imag() * m.mean.imag(), 1.0, 1e-10);
}

TEST(Normalize, ConstantDataIsDegenerate) {
  std::vector<CVector> rows(10, CVector{{1, 2}, {1, 2}});
  EXPECT_THROW(fit_normalizer(rows, 1.0), DegenerateError);
}

TEST(Normalize, StatsFromTrainingApplyToValidation) {
  const auto data = task_data();
  const auto [train, val] = split_dataset(data, 1500);
  InitSpec spec;
  const auto [ntrain, stats] = normalize_inputs(train, spec);
  const auto nval = apply_normalizer(stats, val.inputs);
  ASSERT_EQ(nval.size(), 500u);
  EXPECT_EQ(stats.apply(val.inputs[0][0]), nval[0][0]);
}
