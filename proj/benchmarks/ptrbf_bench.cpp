#include <benchmark/benchmark.h>

#include "ptrbf/init.hpp"
#include "ptrbf/kmeans.hpp"
#include "ptrbf/qam.hpp"
#include "ptrbf/stats.hpp"
#include "ptrbf/training.hpp"

using namespace ptrbf;

namespace {

PtRbfNetwork make_net(const std::vector<std::size_t>& neurons) {
  Rng rng(1);
  return init_proposed(make_shapes(16, neurons, 4), InitSpec{}, rng);
}

std::vector<std::size_t> arch(const benchmark::State& state) {
  return state.range(1) == 0 ? std::vector<std::size_t>{static_cast<std::size_t>(state.range(0))}
                             : std::vector<std::size_t>{static_cast<std::size_t>(state.range(0)),
                                                        static_cast<std::size_t>(state.range(1))};
}

}  // namespace

static void BM_Forward(benchmark::State& state) {
  const auto net = make_net(arch(state));
  Rng rng(2);
  const auto x = sample_complex_uniform(rng, {{}, 1.0 / 16}, 16);
  ForwardTrace trace;
  for (auto _ : state) {
    network_forward(net, x, trace);
    benchmark::DoNotOptimize(trace.output().data());
  }
}
BENCHMARK(BM_Forward)->Args({64, 0})->Args({48, 16})->Args({256, 0});

static void BM_SgdSample(benchmark::State& state) {
  auto net = make_net(arch(state));
  Rng rng(2);
  const auto x = sample_complex_uniform(rng, {{}, 1.0 / 16}, 16);
  const auto d = sample_complex_uniform(rng, {{}, 0.25}, 4);
  const auto rates = default_rates(Scheme::Proposed, net.depth());
  ForwardTrace trace;
  Gradients grads;
  for (auto _ : state) {
    network_forward(net, x, trace);
    backprop(net, trace, d, grads);
    for (std::size_t l = 0; l < net.depth(); ++l) sgd_step(net, grads, rates[l], l);
    benchmark::DoNotOptimize(net.layer(0).weights(0, 0));
  }
}
BENCHMARK(BM_SgdSample)->Args({64, 0})->Args({48, 16});

static void BM_TrainEpoch(benchmark::State& state) {
  TaskConfig tc;
  tc.count = 3840;
  const auto data = gen_dataset(tc);
  const auto net = make_net({64});
  TrainConfig cfg{default_rates(Scheme::Proposed, 1), 1, 3};
  for (auto _ : state) {
    auto r = train(net, data, Dataset{}, cfg);
    benchmark::DoNotOptimize(r.record.train_mse_db.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
}
BENCHMARK(BM_TrainEpoch)->Unit(benchmark::kMillisecond);

static void BM_SplitKMeans(benchmark::State& state) {
  TaskConfig tc;
  tc.count = 3840;
  const auto data = gen_dataset(tc);
  for (auto _ : state) {
    Rng rng(4);
    auto r = split_kmeans(data.inputs, static_cast<std::size_t>(state.range(0)), rng);
    benchmark::DoNotOptimize(r.centers.elements().data());
  }
}
BENCHMARK(BM_SplitKMeans)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_MomentLab(benchmark::State& state) {
  MomentLabConfig cfg;
  cfg.trials = 10000;
  for (auto _ : state) {
    Rng rng(5);
    auto r = mc_estimate(cfg, rng);
    benchmark::DoNotOptimize(r.var_y.monte_carlo);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.trials));
}
BENCHMARK(BM_MomentLab)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
