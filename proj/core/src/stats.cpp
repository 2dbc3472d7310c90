#include "ptrbf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "ptrbf/errors.hpp"
#include "ptrbf/init.hpp"

namespace ptrbf {

namespace {

void check_c_sigma(double c_sigma) {
  if (!(c_sigma > 0.0) || !std::isfinite(c_sigma)) throw ParameterError("c_sigma must be > 0");
}

void check_nonnegative(double value, const char* what) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ParameterError(std::string(what) + " must be finite and >= 0");
  }
}

}  // namespace

Complex expected_v_closed(std::size_t fan_in, double c_sigma, ComponentVariances prev,
                          ComponentVariances center) {
  check_c_sigma(c_sigma);
  for (const double v : {prev.re, prev.im, center.re, center.im}) check_nonnegative(v, "variance");
  const double k = static_cast<double>(fan_in) / c_sigma;
  return {k * (prev.re + center.re), k * (prev.im + center.im)};
}

double var_v_closed(std::size_t fan_in, double c_sigma, double sigma4_gamma) {
  check_c_sigma(c_sigma);
  check_nonnegative(sigma4_gamma, "sigma4_gamma");
  return 12.0 / 5.0 / (c_sigma * c_sigma) * static_cast<double>(fan_in) * sigma4_gamma;
}

double var_y_closed(std::size_t neurons, std::size_t fan_in, double c_sigma, double mu_v,
                    double var_w, double sigma4_gamma) {
  check_c_sigma(c_sigma);
  check_nonnegative(var_w, "var_w");
  check_nonnegative(sigma4_gamma, "sigma4_gamma");
  if (!std::isfinite(mu_v)) throw ParameterError("mu_v must be finite");
  return 12.0 / 5.0 / (c_sigma * c_sigma) * std::exp(-2.0 * mu_v) * static_cast<double>(neurons) *
         static_cast<double>(fan_in) * var_w * sigma4_gamma;
}

std::string_view to_string(Sigma4Convention convention) {
  return convention == Sigma4Convention::TotalVariance ? "total" : "component";
}

double sigma4_from_variance(double total_center_variance, Sigma4Convention convention) {
  const double s2 = convention == Sigma4Convention::TotalVariance ? total_center_variance
                                                                  : total_center_variance / 2.0;
  return s2 * s2;
}

MomentReport make_report(std::string quantity, Complex closed_form, Complex monte_carlo,
                         std::size_t samples, double tolerance) {
  MomentReport r;
  r.quantity = std::move(quantity);
  r.closed_form = closed_form;
  r.monte_carlo = monte_carlo;
  r.samples = samples;
  r.tolerance = tolerance;
  const double scale = std::abs(closed_form);
  r.relative_deviation = scale > 0.0 ? std::abs(monte_carlo - closed_form) / scale
                                     : std::abs(monte_carlo - closed_form);
  r.pass = r.relative_deviation <= tolerance;
  return r;
}

namespace {

/// Sums gathered from one layer draw.
struct BlockSums {
  double sum_v_re = 0.0;
  double sum_v_im = 0.0;
  double cond_var_v = 0.0;  // mean over neurons of Var_x[Re v_m] + Var_x[Im v_m]
  double cond_var_y = 0.0;  // mean over outputs of Var_x[y_o]
  // Raw moments for the pooled diagnostic.
  double sum_v_re2 = 0.0;
  double sum_v_im2 = 0.0;
  Complex sum_y{};
  double sum_y_norm = 0.0;
};

BlockSums run_block(const MomentLabConfig& cfg, const InitSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  const auto& shape = cfg.layer;
  const std::vector<LayerShape> shapes{shape};
  const auto net = init_proposed(shapes, spec, rng);
  const auto& layer = net.layer(0);
  const ComplexUniformSpec input_law{{}, proposed_center_variance(spec, shape.fan_in)};

  const std::size_t n = cfg.inputs_per_layer;
  std::vector<double> sum_vr(shape.neurons, 0.0), sum_vr2(shape.neurons, 0.0);
  std::vector<double> sum_vi(shape.neurons, 0.0), sum_vi2(shape.neurons, 0.0);
  std::vector<Complex> sum_y(shape.outputs);
  std::vector<double> sum_y2(shape.outputs, 0.0);

  BlockSums out;
  LayerTrace trace;
  for (std::size_t t = 0; t < n; ++t) {
    const auto x = sample_complex_uniform(rng, input_law, shape.fan_in);
    layer_forward(layer, x, trace);
    for (std::size_t m = 0; m < shape.neurons; ++m) {
      const double vr = trace.v[m].real();
      const double vi = trace.v[m].imag();
      sum_vr[m] += vr;
      sum_vr2[m] += vr * vr;
      sum_vi[m] += vi;
      sum_vi2[m] += vi * vi;
    }
    for (std::size_t o = 0; o < shape.outputs; ++o) {
      sum_y[o] += trace.y[o];
      sum_y2[o] += std::norm(trace.y[o]);
    }
  }
  const double dn = static_cast<double>(n);
  auto unbiased = [dn](double s, double s2) { return (s2 - s * s / dn) / (dn - 1.0); };
  for (std::size_t m = 0; m < shape.neurons; ++m) {
    out.sum_v_re += sum_vr[m];
    out.sum_v_im += sum_vi[m];
    out.sum_v_re2 += sum_vr2[m];
    out.sum_v_im2 += sum_vi2[m];
    out.cond_var_v += unbiased(sum_vr[m], sum_vr2[m]) + unbiased(sum_vi[m], sum_vi2[m]);
  }
  out.cond_var_v /= static_cast<double>(shape.neurons);
  for (std::size_t o = 0; o < shape.outputs; ++o) {
    out.sum_y += sum_y[o];
    out.sum_y_norm += sum_y2[o];
    out.cond_var_y += (sum_y2[o] - std::norm(sum_y[o]) / dn) / (dn - 1.0);
  }
  out.cond_var_y /= static_cast<double>(shape.outputs);
  return out;
}

}  // namespace

MomentLabResult mc_estimate(const MomentLabConfig& cfg, Rng& rng) {
  if (cfg.trials < kMinMonteCarloTrials) {
    throw ParameterError("mc_estimate needs at least " + std::to_string(kMinMonteCarloTrials) +
                         " trials");
  }
  if (cfg.inputs_per_layer < 2) throw ParameterError("inputs_per_layer must be >= 2");
  InitSpec spec;
  spec.c_sigma = cfg.c_sigma;
  spec.mu_v = {cfg.mu_v, cfg.mu_v};
  spec.validate();
  const auto& shape = cfg.layer;
  if (shape.fan_in == 0 || shape.neurons == 0 || shape.outputs == 0) {
    throw ParameterError("mc_estimate: layer shape has a zero dimension");
  }

  const std::size_t blocks = (cfg.trials + cfg.inputs_per_layer - 1) / cfg.inputs_per_layer;
  std::vector<std::uint64_t> seeds(blocks);
  const std::uint64_t base = rng.next_u64();
  for (std::size_t b = 0; b < blocks; ++b) seeds[b] = derive_seed(base, {b});

  std::vector<BlockSums> results(blocks);
  const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.threads, blocks));
  if (workers == 1) {
    for (std::size_t b = 0; b < blocks; ++b) results[b] = run_block(cfg, spec, seeds[b]);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t b = w; b < blocks; b += workers) results[b] = run_block(cfg, spec, seeds[b]);
      });
    }
    for (auto& t : pool) t.join();
  }

  // Aggregate in block order so the result does not depend on scheduling.
  BlockSums total;
  for (const auto& r : results) {
    total.sum_v_re += r.sum_v_re;
    total.sum_v_im += r.sum_v_im;
    total.sum_v_re2 += r.sum_v_re2;
    total.sum_v_im2 += r.sum_v_im2;
    total.cond_var_v += r.cond_var_v;
    total.cond_var_y += r.cond_var_y;
    total.sum_y += r.sum_y;
    total.sum_y_norm += r.sum_y_norm;
  }
  const std::size_t samples = blocks * cfg.inputs_per_layer;
  const double n_v = static_cast<double>(samples * shape.neurons);
  const double n_y = static_cast<double>(samples * shape.outputs);
  const Complex mean_v{total.sum_v_re / n_v, total.sum_v_im / n_v};
  const double var_v = total.cond_var_v / static_cast<double>(blocks);
  const double var_y = total.cond_var_y / static_cast<double>(blocks);

  MomentLabResult out;
  out.var_v_pooled = (total.sum_v_re2 / n_v - mean_v.real() * mean_v.real()) +
                     (total.sum_v_im2 / n_v - mean_v.imag() * mean_v.imag());
  out.var_y_pooled = total.sum_y_norm / n_y - std::norm(total.sum_y / n_y);

  const double center_var = proposed_center_variance(spec, shape.fan_in);
  const auto center = ComponentVariances::from_total(center_var);
  // The normalized input has the same law as the centers.
  const Complex mu_closed = expected_v_closed(shape.fan_in, cfg.c_sigma, center, center);

  const double cf_total =
      var_v_closed(shape.fan_in, cfg.c_sigma, sigma4_from_variance(center_var, Sigma4Convention::TotalVariance));
  const double cf_component = var_v_closed(
      shape.fan_in, cfg.c_sigma, sigma4_from_variance(center_var, Sigma4Convention::ComponentVariance));
  out.var_v_ratio_total = var_v / cf_total;
  out.var_v_ratio_component = var_v / cf_component;
  out.convention = std::abs(std::log(out.var_v_ratio_total)) <= std::abs(std::log(out.var_v_ratio_component))
                       ? Sigma4Convention::TotalVariance
                       : Sigma4Convention::ComponentVariance;
  const double sigma4 = sigma4_from_variance(center_var, out.convention);

  const double var_w = proposed_weight_variance(spec, shape);
  const double cf_var_y =
      var_y_closed(shape.neurons, shape.fan_in, cfg.c_sigma, mu_closed.real(), var_w, sigma4);

  out.mean_v = make_report("mean_v", mu_closed, mean_v, samples, kMeanVTolerance);
  out.var_v = make_report("var_v", var_v_closed(shape.fan_in, cfg.c_sigma, sigma4), var_v, samples,
                          kVarVTolerance);
  out.var_y = make_report("var_y", cf_var_y, var_y, samples, kVarYTolerance);
  return out;
}

}  // namespace ptrbf
