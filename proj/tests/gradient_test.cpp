#include <gtest/gtest.h>

#include <cmath>

#include "ptrbf/errors.hpp"
#include "ptrbf/training.hpp"
#include "test_support.hpp"

using namespace ptrbf;

TEST(Backprop, MatchesCentralDifferences) {
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = check::random_network(rng, 1 + trial % 4, 16);
    const auto x = check::random_vector(rng, net.inputs(), 1.0 / net.inputs());
    const auto d = check::random_vector(rng, net.outputs(), 1.0);
    worst = std::max(worst, check::max_gradient_error(net, x, d));
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(Backprop, ZeroErrorGivesZeroGradient) {
  Rng rng(3);
  const auto net = check::random_network(rng, 2, 6);
  const auto x = check::random_vector(rng, net.inputs(), 0.2);
  const auto g = backprop(net, network_forward(net, x), predict(net, x));
  for (const auto& layer : g.layers) {
    for (const auto w : layer.weights.elements()) EXPECT_EQ(w, Complex{});
    for (const auto c : layer.centers.elements()) EXPECT_EQ(c, Complex{});
  }
}

TEST(Backprop, StaleTraceIsRejected) {
  Rng rng(5);
  const auto net = check::random_network(rng, 2, 6);
  const auto other = check::random_network(rng, 3, 6);
  const auto x = check::random_vector(rng, other.inputs(), 0.2);
  const auto trace = network_forward(other, x);
  const CVector d(net.outputs());
  EXPECT_THROW(backprop(net, trace, d), ContractError);
}

TEST(Backprop, SaturatedKernelHasNoSlope) {
  PtRbfLayer layer{CMatrix(1, 1, {1, 1}), CVector(1), CMatrix(1, 1, {100, 100}), CVector(1, {1, 1})};
  const PtRbfNetwork net(1, {layer});
  const CVector x{{0, 0}};
  const CVector d{{1, 1}};
  const auto g = backprop(net, network_forward(net, x), d);
  EXPECT_EQ(g.layers[0].centers(0, 0), Complex{});
  EXPECT_EQ(g.layers[0].variances[0], Complex{});
}

TEST(Sgd, VarianceStaysAboveFloor) {
  PtRbfLayer layer{CMatrix(1, 1, {1, 0}), CVector(1), CMatrix(1, 1), CVector(1, {1e-3, 1e-3})};
  PtRbfNetwork net(1, {layer});
  Gradients g;
  g.layers.push_back({CMatrix(1, 1), CVector(1), CMatrix(1, 1), CVector(1, {10.0, 10.0})});
  sgd_step(net, g, LayerRates{1, 1, 1, 1}, 0);
  EXPECT_EQ(net.layer(0).variances[0], Complex(kMinKernelVariance, kMinKernelVariance));
}

TEST(Sgd, StepMovesAgainstGradient) {
  Rng rng(9);
  auto net = check::random_network(rng, 1, 5);
  const auto x = check::random_vector(rng, net.inputs(), 0.2);
  const auto d = check::random_vector(rng, net.outputs(), 1.0);
  const double before = sample_loss(predict(net, x), d);
  const auto g = backprop(net, network_forward(net, x), d);
  sgd_step(net, g, LayerRates{1e-3, 1e-3, 1e-3, 1e-3}, 0);
  EXPECT_LT(sample_loss(predict(net, x), d), before);
}

TEST(Mse, DecibelConversions) {
  EXPECT_DOUBLE_EQ(mse_db(0.1), -10.0);
  EXPECT_DOUBLE_EQ(db_to_linear(-20.0), 0.01);
  EXPECT_EQ(mse_db(0.0), kMseFloorDb);
  const std::vector<CVector> t{{{1, 0}, {0, 1}}};
  const std::vector<CVector> p{{{0, 0}, {0, 0}}};
  EXPECT_DOUBLE_EQ(mse(t, p), 1.0);
}

TEST(Rates, TablesAsPublished) {
  EXPECT_EQ(shallow_rates(Scheme::Random), (LayerRates{0.5, 0.5, 0.5, 0.5}));
  EXPECT_EQ(shallow_rates(Scheme::Constellation), (LayerRates{0.5, 0.5, 0.5, 0.5}));
  EXPECT_EQ(shallow_rates(Scheme::KMeans), (LayerRates{0.1, 0.1, 0.4, 0.2}));
  EXPECT_EQ(shallow_rates(Scheme::Proposed), (LayerRates{0.1, 0.1, 0.4, 0.2}));
  const auto deep = deep_rates(4);
  EXPECT_DOUBLE_EQ(deep[0].w, 0.1);
  EXPECT_DOUBLE_EQ(deep[1].gamma, 0.05);
  EXPECT_DOUBLE_EQ(deep[2].sigma, 0.033);
  EXPECT_DOUBLE_EQ(deep[3].b, 0.025);
  EXPECT_EQ(default_rates(Scheme::Proposed, 1)[0], shallow_rates(Scheme::Proposed));
}

namespace {

Dataset toy_regression(Rng& rng, std::size_t count) {
  Dataset data;
  for (std::size_t i = 0; i < count; ++i) {
    const Complex x{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    data.inputs.push_back({x});
    data.targets.push_back({Complex{0.5, -0.3} * x + Complex{0.1, 0.0}});
  }
  return data;
}

}  // namespace

TEST(Train, ZeroEpochsLeaveNetworkUnchanged) {
  Rng rng(1);
  const auto net = check::random_network(rng, 2, 4);
  Dataset empty;
  TrainConfig tc{default_rates(Scheme::Proposed, 2), 0, 7};
  const auto r = train(net, empty, empty, tc);
  EXPECT_EQ(r.network, net);
  EXPECT_EQ(r.record.epochs(), 0u);
}

TEST(Train, ToyRegressionLossDecreases) {
  Rng rng(12);
  const auto data = toy_regression(rng, 200);
  const auto shapes = make_shapes(1, std::vector<std::size_t>{4}, 1);
  InitSpec spec;
  auto net = init_proposed(shapes, spec, rng);
  TrainConfig tc{{LayerRates{0.005, 0.005, 0.005, 0.005}}, 10, 3};
  const auto r = train(net, data, Dataset{}, tc);
  ASSERT_EQ(r.record.epochs(), 10u);
  for (std::size_t e = 1; e < 10; ++e) EXPECT_LT(r.record.train_mse_db[e], r.record.train_mse_db[e - 1]);
  EXPECT_TRUE(std::isnan(r.record.val_mse_db[0]));
}

TEST(Train, DeterministicGivenSeed) {
  Rng rng(12);
  const auto data = toy_regression(rng, 100);
  const auto shapes = make_shapes(1, std::vector<std::size_t>{4}, 1);
  Rng init_rng(4);
  const auto net = init_proposed(shapes, InitSpec{}, init_rng);
  TrainConfig tc{{LayerRates{}}, 5, 99};
  const auto a = train(net, data, data, tc);
  const auto b = train(net, data, data, tc);
  EXPECT_EQ(a.network, b.network);
  EXPECT_EQ(a.record.train_mse_db, b.record.train_mse_db);
  EXPECT_EQ(a.record.config_hash, b.record.config_hash);
  tc.shuffle_seed = 100;
  EXPECT_NE(tc.hash(), a.record.config_hash);
}

TEST(Train, RejectsBadRates) {
  Rng rng(1);
  const auto net = check::random_network(rng, 2, 4);
  TrainConfig tc{{LayerRates{}}, 1, 0};
  Dataset empty;
  EXPECT_THROW(train(net, empty, empty, tc), ParameterError);
  tc.rates = {LayerRates{}, LayerRates{-1, 0, 0, 0}};
  EXPECT_THROW(train(net, empty, empty, tc), ParameterError);
}

TEST(Train, ErrorScaleReportsOriginalUnits) {
  Rng rng(1);
  const auto net = check::random_network(rng, 1, 3);
  Dataset d;
  d.inputs.push_back(check::random_vector(rng, net.inputs(), 0.1));
  d.targets.push_back(CVector(net.outputs()));
  const double base = evaluate_mse(net, d);
  const double scaled = evaluate_mse(net, d, ErrorScale{2.0, 2.0});
  EXPECT_NEAR(scaled, 4.0 * base, 1e-12 * base);
}
