#include <gtest/gtest.h>

#include <cmath>

#include "ptrbf/errors.hpp"
#include "ptrbf/init.hpp"
#include "ptrbf/stats.hpp"

using namespace ptrbf;

TEST(ClosedForm, DefaultsGiveUnitMeanKernelInput) {
  // P = 16, c_sigma = 1: inputs and centers both carry total variance 1/16.
  const auto half = ComponentVariances::from_total(1.0 / 16);
  const auto mu = expected_v_closed(16, 1.0, half, half);
  EXPECT_DOUBLE_EQ(mu.real(), 1.0);
  EXPECT_DOUBLE_EQ(mu.imag(), 1.0);
}

TEST(ClosedForm, KernelInputVariance) {
  const double s4 = sigma4_from_variance(1.0 / 16, Sigma4Convention::TotalVariance);
  EXPECT_NEAR(var_v_closed(16, 1.0, s4), 0.15, 1e-15);
  EXPECT_DOUBLE_EQ(sigma4_from_variance(0.5, Sigma4Convention::ComponentVariance), 0.0625);
}

TEST(ClosedForm, OutputVarianceCancelsToTarget) {
  Rng rng(20);
  for (int i = 0; i < 20; ++i) {
    InitSpec spec;
    spec.c_sigma = rng.uniform(0.2, 5.0);
    const double mu = rng.uniform(0.2, 4.0);
    spec.mu_v = {mu, mu};
    const LayerShape s{1 + rng.below(64), 1 + rng.below(128), 1 + rng.below(16)};
    const double var_w = proposed_weight_variance(spec, s);
    const double s4 = std::pow(proposed_center_variance(spec, s.fan_in), 2);
    const double var_y = var_y_closed(s.neurons, s.fan_in, spec.c_sigma, mu, var_w, s4);
    const double expected = spec.c_sigma * mu / static_cast<double>(s.outputs);
    EXPECT_NEAR(var_y / expected, 1.0, 1e-12);
  }
}

TEST(ClosedForm, RejectsBadArguments) {
  EXPECT_THROW(var_v_closed(4, 0.0, 1.0), ParameterError);
  EXPECT_THROW(var_v_closed(4, 1.0, -1.0), ParameterError);
}

TEST(Report, RelativeDeviation) {
  const auto r = make_report("x", {2, 0}, {2.1, 0}, 10, 0.1);
  EXPECT_NEAR(r.relative_deviation, 0.05, 1e-12);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(make_report("x", {2, 0}, {2.5, 0}, 10, 0.1).pass);
}

TEST(MonteCarlo, DefaultLayerMatchesClosedForms) {
  MomentLabConfig cfg;
  Rng rng(1);
  const auto r = mc_estimate(cfg, rng);
  EXPECT_EQ(r.mean_v.samples, 100000u);
  EXPECT_TRUE(r.mean_v.pass) << r.mean_v.monte_carlo;
  EXPECT_TRUE(r.var_v.pass) << r.var_v.monte_carlo;
  EXPECT_TRUE(r.var_y.pass) << r.var_y.monte_carlo;
  EXPECT_EQ(r.convention, Sigma4Convention::TotalVariance);
  EXPECT_NEAR(r.var_y.closed_form.real(), 0.25, 1e-12);
}

TEST(MonteCarlo, ThreadCountDoesNotChangeResult) {
  MomentLabConfig cfg;
  cfg.trials = 20000;
  Rng a(9), b(9);
  const auto one = mc_estimate(cfg, a);
  cfg.threads = 3;
  const auto three = mc_estimate(cfg, b);
  EXPECT_EQ(one.mean_v.monte_carlo, three.mean_v.monte_carlo);
  EXPECT_EQ(one.var_v.monte_carlo, three.var_v.monte_carlo);
  EXPECT_EQ(one.var_y.monte_carlo, three.var_y.monte_carlo);
}

TEST(MonteCarlo, TooFewTrialsRejected) {
  MomentLabConfig cfg;
  cfg.trials = 100;
  Rng rng(1);
  EXPECT_THROW(mc_estimate(cfg, rng), ParameterError);
}
