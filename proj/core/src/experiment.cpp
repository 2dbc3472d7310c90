#include "ptrbf/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include "ptrbf/csv.hpp"
#include "ptrbf/errors.hpp"
#include "ptrbf/qam.hpp"
#include "ptrbf/serialize.hpp"

namespace ptrbf {

RunSeeds run_seeds(std::uint64_t base_seed, std::size_t run) {
  return {derive_seed(base_seed, {run, 1}), derive_seed(base_seed, {run, 2}),
          derive_seed(base_seed, {run, 3})};
}

std::pair<Dataset, Dataset> run_datasets(const ExperimentConfig& config, std::size_t run) {
  if (!config.train_data.empty()) {
    return {load_dataset(config.train_data), load_dataset(config.val_data)};
  }
  TaskConfig task;
  task.count = config.train_count + config.val_count;
  task.eb_n0_db = config.eb_n0_db;
  task.seed = run_seeds(config.seed, run).data;
  return split_dataset(gen_dataset(task), config.train_count);
}

PreparedData prepare_data(Scheme scheme, const Dataset& train, const Dataset& val,
                          const ExperimentConfig& config) {
  PreparedData out;
  if (scheme == Scheme::Proposed) {
    const auto spec = init_spec_for(config, scheme);
    auto [train_x, in_stats] = normalize_inputs(train, spec);
    auto [train_xd, out_stats] = normalize_outputs(train_x, spec);
    out.train = std::move(train_xd);
    out.val = Dataset{apply_normalizer(in_stats, val.inputs), apply_normalizer(out_stats, val.targets),
                      val.meta};
    out.scale = {1.0 / out_stats.scale_re(), 1.0 / out_stats.scale_im()};
    out.input_stats = in_stats;
    out.output_stats = out_stats;
    return out;
  }
  if (config.baseline_input_variance == 0.0) {
    out.train = train;
    out.val = val;
    return out;
  }
  out.input_stats = fit_normalizer(train.inputs, config.baseline_input_variance);
  out.train = Dataset{apply_normalizer(out.input_stats, train.inputs), train.targets, train.meta};
  out.val = Dataset{apply_normalizer(out.input_stats, val.inputs), val.targets, val.meta};
  return out;
}

namespace {

/// Distinct target values of the training set; for QAM data this is the alphabet.
CVector target_alphabet(const Dataset& train) {
  std::set<std::pair<double, double>> seen;
  CVector out;
  for (const auto& d : train.targets) {
    for (const auto z : d) {
      if (seen.emplace(z.real(), z.imag()).second) out.push_back(z);
    }
  }
  return out;
}

std::string sanitize(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

}  // namespace

InitSpec init_spec_for(const ExperimentConfig& config, Scheme scheme) {
  InitSpec spec;
  spec.scheme = scheme;
  spec.c_sigma = config.c_sigma;
  spec.mu_v = {config.mu_v, config.mu_v};
  spec.random_center_variance = config.random_center_variance;
  spec.variance_floor = config.variance_floor;
  return spec;
}

TrainConfig train_config_for(const ExperimentConfig& config, Scheme scheme, std::size_t depth,
                             std::uint64_t shuffle_seed) {
  TrainConfig tc;
  tc.rates = default_rates(scheme, depth);
  for (const auto& [layer, rates] : config.rate_overrides) {
    if (layer >= 1 && layer <= depth) tc.rates[layer - 1] = rates;
  }
  tc.epochs = config.epochs;
  tc.shuffle_seed = shuffle_seed;
  return tc;
}

std::vector<LayerShape> shapes_for(const ExperimentConfig& config, std::size_t inputs,
                                   std::size_t outputs) {
  return make_shapes(inputs, config.architecture, outputs, config.hidden_outputs);
}

std::string_view to_string(CellStatus status) {
  switch (status) {
    case CellStatus::Completed: return "completed";
    case CellStatus::Skipped: return "skipped";
    case CellStatus::Failed: return "failed";
  }
  return "unknown";
}

CellResult run_cell(const ExperimentConfig& config, Scheme scheme, std::size_t run,
                    const Dataset& train, const Dataset& val, bool keep_network) {
  CellResult cell;
  cell.scheme = scheme;
  cell.run = run;
  try {
    const auto seeds = run_seeds(config.seed, run);
    const auto data = prepare_data(scheme, train, val, config);
    auto spec = init_spec_for(config, scheme);
    if (scheme == Scheme::Constellation) spec.constellation = target_alphabet(train);
    const auto shapes = shapes_for(config, data.train.input_width(), data.train.target_width());
    Rng init_rng(seeds.init);
    auto net = initialize(shapes, spec, init_rng, data.train.inputs);
    const auto tc = train_config_for(config, scheme, net.depth(), seeds.order);
    auto result = ptrbf::train(std::move(net), data.train, data.val, tc, data.scale);
    cell.record = std::move(result.record);
    if (keep_network) cell.network = std::move(result.network);
  } catch (const UnsupportedSchemeError& e) {
    cell.status = CellStatus::Skipped;
    cell.reason = sanitize(e.what());
  } catch (const std::exception& e) {
    cell.status = CellStatus::Failed;
    cell.reason = sanitize(e.what());
  }
  return cell;
}

std::optional<std::size_t> crossing_epoch(const std::vector<double>& curve_db, double threshold_db) {
  for (std::size_t e = 0; e < curve_db.size(); ++e) {
    if (curve_db[e] <= threshold_db) return e + 1;
  }
  return std::nullopt;
}

std::vector<double> mean_curve_db(const std::vector<const std::vector<double>*>& curves) {
  if (curves.empty()) return {};
  const std::size_t epochs = curves.front()->size();
  std::vector<double> out(epochs);
  for (std::size_t e = 0; e < epochs; ++e) {
    double sum = 0.0;
    for (const auto* c : curves) sum += db_to_linear(c->at(e));
    out[e] = mse_db(sum / static_cast<double>(curves.size()));
  }
  return out;
}

const SchemeSummary& ComparisonReport::summary(Scheme scheme) const {
  for (const auto& s : schemes) {
    if (s.scheme == scheme) return s;
  }
  throw ParameterError("comparison report has no scheme '" + std::string(to_string(scheme)) + "'");
}

bool ComparisonReport::ok() const {
  return std::none_of(cells.begin(), cells.end(),
                      [](const CellResult& c) { return c.status == CellStatus::Failed; });
}

ComparisonReport run_comparison(const ExperimentConfig& config) {
  config.validate();
  std::vector<std::pair<Dataset, Dataset>> datasets;
  datasets.reserve(config.runs);
  for (std::size_t r = 0; r < config.runs; ++r) datasets.push_back(run_datasets(config, r));

  ComparisonReport report;
  report.threshold_db = config.threshold_db;
  const std::size_t total = config.schemes.size() * config.runs;
  report.cells.resize(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const auto scheme = config.schemes[i / config.runs];
      const auto run = i % config.runs;
      report.cells[i] = run_cell(config, scheme, run, datasets[run].first, datasets[run].second);
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(config.threads, total));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t s = 0; s < config.schemes.size(); ++s) {
    SchemeSummary summary;
    summary.scheme = config.schemes[s];
    std::vector<const std::vector<double>*> train_curves;
    std::vector<const std::vector<double>*> val_curves;
    for (std::size_t r = 0; r < config.runs; ++r) {
      const auto& cell = report.cells[s * config.runs + r];
      if (cell.status == CellStatus::Completed) {
        train_curves.push_back(&cell.record.train_mse_db);
        val_curves.push_back(&cell.record.val_mse_db);
      } else if (summary.reason.empty()) {
        summary.status = cell.status;
        summary.reason = cell.reason;
      }
    }
    if (train_curves.empty() && summary.status == CellStatus::Completed) summary.status = CellStatus::Failed;
    if (!train_curves.empty()) {
      summary.mean_train_db = mean_curve_db(train_curves);
      summary.mean_val_db = mean_curve_db(val_curves);
      summary.crossing_epoch = crossing_epoch(summary.mean_train_db, config.threshold_db);
      if (!summary.mean_train_db.empty()) {
        summary.final_train_db = summary.mean_train_db.back();
        summary.final_val_db = summary.mean_val_db.back();
      }
    }
    report.schemes.push_back(std::move(summary));
  }
  return report;
}

std::string curves_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << "scheme,run,epoch,train_mse_db,val_mse_db\n";
  for (const auto& cell : report.cells) {
    if (cell.status != CellStatus::Completed) continue;
    for (std::size_t e = 0; e < cell.record.epochs(); ++e) {
      out << to_string(cell.scheme) << "," << cell.run << "," << e + 1 << ","
          << format_double(cell.record.train_mse_db[e]) << ","
          << format_double(cell.record.val_mse_db[e]) << "\n";
    }
  }
  return out.str();
}

std::string mean_curves_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << "scheme,epoch,train_mse_db,val_mse_db\n";
  for (const auto& s : report.schemes) {
    for (std::size_t e = 0; e < s.mean_train_db.size(); ++e) {
      out << to_string(s.scheme) << "," << e + 1 << "," << format_double(s.mean_train_db[e]) << ","
          << format_double(s.mean_val_db[e]) << "\n";
    }
  }
  return out.str();
}

std::string summary_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << "scheme,status,reason,completed_runs,final_train_mse_db,final_val_mse_db,crossing_epoch,"
         "threshold_db\n";
  for (const auto& s : report.schemes) {
    const auto completed = std::count_if(report.cells.begin(), report.cells.end(), [&](const CellResult& c) {
      return c.scheme == s.scheme && c.status == CellStatus::Completed;
    });
    out << to_string(s.scheme) << "," << to_string(s.status) << "," << s.reason << "," << completed
        << "," << format_double(s.final_train_db) << "," << format_double(s.final_val_db) << ","
        << (s.crossing_epoch ? std::to_string(*s.crossing_epoch) : "none") << ","
        << format_double(report.threshold_db) << "\n";
  }
  return out.str();
}

void write_comparison(const ComparisonReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_text_file(dir / "curves.csv", curves_csv(report));
  write_text_file(dir / "mean_curves.csv", mean_curves_csv(report));
  write_text_file(dir / "summary.csv", summary_csv(report));
}

MomentLabResult run_validate_stats(const ExperimentConfig& config) {
  MomentLabConfig lab;
  lab.layer = config.stats_layer;
  lab.c_sigma = config.c_sigma;
  lab.mu_v = config.mu_v;
  lab.trials = config.stats_trials;
  lab.inputs_per_layer = config.stats_inputs_per_layer;
  lab.threads = config.threads;
  Rng rng(config.seed);
  return mc_estimate(lab, rng);
}

std::string moments_csv(const MomentLabResult& r) {
  std::ostringstream out;
  out << "quantity,closed_form_re,closed_form_im,monte_carlo_re,monte_carlo_im,samples,"
         "relative_deviation,tolerance,pass,convention\n";
  for (const auto* m : {&r.mean_v, &r.var_v, &r.var_y}) {
    out << m->quantity << "," << format_double(m->closed_form.real()) << ","
        << format_double(m->closed_form.imag()) << "," << format_double(m->monte_carlo.real()) << ","
        << format_double(m->monte_carlo.imag()) << "," << m->samples << ","
        << format_double(m->relative_deviation) << "," << format_double(m->tolerance) << ","
        << (m->pass ? "true" : "false") << "," << to_string(r.convention) << "\n";
  }
  return out.str();
}

std::string moments_table(const MomentLabResult& r) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(5);
  out << "quantity   closed-form          monte-carlo          rel.dev   tol     result\n";
  for (const auto* m : {&r.mean_v, &r.var_v, &r.var_y}) {
    std::ostringstream cf, mc;
    cf.setf(std::ios::fixed);
    mc.setf(std::ios::fixed);
    cf.precision(5);
    mc.precision(5);
    cf << m->closed_form.real();
    mc << m->monte_carlo.real();
    if (m->closed_form.imag() != 0.0 || m->monte_carlo.imag() != 0.0) {
      cf << "+j" << m->closed_form.imag();
      mc << "+j" << m->monte_carlo.imag();
    }
    out << m->quantity;
    out << std::string(11 - std::min<std::size_t>(10, m->quantity.size()), ' ');
    out << cf.str() << std::string(21 - std::min<std::size_t>(20, cf.str().size()), ' ');
    out << mc.str() << std::string(21 - std::min<std::size_t>(20, mc.str().size()), ' ');
    out << m->relative_deviation << "   " << m->tolerance << " " << (m->pass ? "PASS" : "FAIL")
        << "\n";
  }
  out << "sigma^4 convention: " << to_string(r.convention) << " (Var[v] mc/closed: total "
      << r.var_v_ratio_total << ", component " << r.var_v_ratio_component << ")\n";
  out << "pooled over layer draws (diagnostic): Var[v] " << r.var_v_pooled << ", Var[y] "
      << r.var_y_pooled << "\n";
  out << "samples: " << r.mean_v.samples << "\n";
  return out.str();
}

ParamStats param_stats(std::span<const Complex> values) {
  ParamStats s;
  s.count = values.size();
  if (values.empty()) return s;
  Complex sum{};
  for (const auto z : values) sum += z;
  s.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (const auto z : values) ss += std::norm(z - s.mean);
  s.variance = ss / static_cast<double>(values.size());
  return s;
}

std::string histogram_csv_header() { return "scheme,layer,class,component,bin,lo,hi,count\n"; }

std::string histogram_rows(std::string_view scheme, std::size_t layer, std::string_view klass,
                           std::span<const Complex> values, std::size_t bins) {
  std::ostringstream out;
  if (values.empty() || bins == 0) return {};
  for (const bool real : {true, false}) {
    std::vector<double> xs(values.size());
    std::transform(values.begin(), values.end(), xs.begin(),
                   [real](Complex z) { return real ? z.real() : z.imag(); });
    const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const std::size_t nbins = hi > lo ? bins : 1;
    std::vector<std::size_t> counts(nbins, 0);
    for (const double x : xs) {
      std::size_t b = hi > lo ? static_cast<std::size_t>((x - lo) / (hi - lo) * static_cast<double>(nbins)) : 0;
      counts[std::min(b, nbins - 1)]++;
    }
    const double width = (hi - lo) / static_cast<double>(nbins);
    for (std::size_t b = 0; b < nbins; ++b) {
      const double b_lo = lo + width * static_cast<double>(b);
      const double b_hi = b + 1 == nbins ? hi : lo + width * static_cast<double>(b + 1);
      out << scheme << "," << layer << "," << klass << "," << (real ? "re" : "im") << "," << b << ","
          << format_double(b_lo) << "," << format_double(b_hi) << "," << counts[b] << "\n";
    }
  }
  return out.str();
}

namespace {

double expected_param_variance(const ExperimentConfig& config, Scheme scheme, const LayerShape& shape,
                               std::string_view klass) {
  const auto spec = init_spec_for(config, scheme);
  const bool w = klass == "weights";
  const bool c = klass == "centers";
  switch (scheme) {
    case Scheme::Proposed:
      if (w) return proposed_weight_variance(spec, shape);
      if (c) return proposed_center_variance(spec, shape.fan_in);
      return 0.0;
    case Scheme::Random:
      if (w) return 1.0;
      if (c) return config.random_center_variance;
      return 0.0;
    case Scheme::KMeans:
      if (w) return 1.0;
      return klass == "bias" ? 0.0 : std::nan("");
    case Scheme::Constellation:
      if (w || klass == "bias") return 0.0;
      return klass == "variances" ? 0.0 : std::nan("");
  }
  return std::nan("");
}

}  // namespace

std::size_t dump_init(const ExperimentConfig& config, const std::filesystem::path& dir) {
  config.validate();
  std::filesystem::create_directories(dir);
  const auto [train, val] = run_datasets(config, 0);
  const auto seeds = run_seeds(config.seed, 0);
  std::ostringstream hist;
  std::ostringstream stats;
  hist << histogram_csv_header();
  stats << "scheme,layer,class,count,mean_re,mean_im,variance,expected_variance\n";
  std::size_t skipped = 0;
  for (const auto scheme : config.schemes) {
    const auto data = prepare_data(scheme, train, val, config);
    auto spec = init_spec_for(config, scheme);
    if (scheme == Scheme::Constellation) spec.constellation = target_alphabet(train);
    const auto shapes = shapes_for(config, data.train.input_width(), data.train.target_width());
    Rng rng(seeds.init);
    PtRbfNetwork net;
    try {
      net = initialize(shapes, spec, rng, data.train.inputs);
    } catch (const UnsupportedSchemeError&) {
      ++skipped;
      continue;
    }
    const auto name = to_string(scheme);
    save_network(net, dir / ("init_" + std::string(name) + ".json"));
    for (std::size_t l = 0; l < net.depth(); ++l) {
      const auto& layer = net.layer(l);
      const std::pair<std::string_view, std::span<const Complex>> classes[] = {
          {"weights", layer.weights.elements()},
          {"bias", layer.bias},
          {"centers", layer.centers.elements()},
          {"variances", layer.variances},
      };
      for (const auto& [klass, values] : classes) {
        hist << histogram_rows(name, l + 1, klass, values, 32);
        const auto s = param_stats(values);
        stats << name << "," << l + 1 << "," << klass << "," << s.count << ","
              << format_double(s.mean.real()) << "," << format_double(s.mean.imag()) << ","
              << format_double(s.variance) << ",";
        // Data-dependent classes have no closed-form variance: left empty.
        if (const double e = expected_param_variance(config, scheme, shapes[l], klass); !std::isnan(e)) {
          stats << format_double(e);
        }
        stats << "\n";
      }
    }
  }
  write_text_file(dir / "histogram.csv", hist.str());
  write_text_file(dir / "param_stats.csv", stats.str());
  return skipped;
}

}  // namespace ptrbf
