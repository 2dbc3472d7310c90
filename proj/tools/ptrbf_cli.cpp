// ptrbf: train, compare and inspect PT-RBF networks.
//
// Exit codes: 0 success, 1 a check failed, 2 bad arguments or config, 3 I/O.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "ptrbf/config.hpp"
#include "ptrbf/csv.hpp"
#include "ptrbf/dataset.hpp"
#include "ptrbf/errors.hpp"
#include "ptrbf/experiment.hpp"
#include "ptrbf/serialize.hpp"

namespace fs = std::filesystem;
using namespace ptrbf;

namespace {

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::optional<std::size_t> threads;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config_path, "config file (ptrbf-config 1)")->check(CLI::ExistingFile);
  app->add_option("--seed", c.seed, "base seed, overrides the config");
  app->add_option("--out", c.out, "output directory")->capture_default_str();
  app->add_option("--threads", c.threads, "worker threads, overrides the config")
      ->check(CLI::PositiveNumber);
}

ExperimentConfig resolve(const Common& c) {
  ExperimentConfig cfg = c.config_path.empty() ? ExperimentConfig{} : load_config(c.config_path);
  if (c.seed) cfg.seed = *c.seed;
  if (c.threads) cfg.threads = *c.threads;
  cfg.validate();
  return cfg;
}

void print_summary(const ComparisonReport& report) {
  std::printf("%-14s %-10s %14s %14s %10s\n", "scheme", "status", "final train dB", "final val dB",
              "crossing");
  for (const auto& s : report.schemes) {
    const std::string crossing = s.crossing_epoch ? std::to_string(*s.crossing_epoch) : "none";
    std::printf("%-14s %-10s %14.3f %14.3f %10s", std::string(to_string(s.scheme)).c_str(),
                std::string(to_string(s.status)).c_str(), s.final_train_db, s.final_val_db,
                crossing.c_str());
    if (!s.reason.empty()) std::printf("  (%s)", s.reason.c_str());
    std::printf("\n");
  }
}

int cmd_train(const Common& c, const std::string& scheme_name, std::size_t run) {
  const auto cfg = resolve(c);
  const auto scheme = parse_scheme(scheme_name);
  const auto [train, val] = run_datasets(cfg, run);
  const auto cell = run_cell(cfg, scheme, run, train, val, /*keep_network=*/true);
  if (cell.status != CellStatus::Completed) {
    std::cerr << "ptrbf train: " << to_string(cell.status) << ": " << cell.reason << "\n";
    return cell.status == CellStatus::Skipped ? 1 : 2;
  }
  const fs::path out(c.out);
  fs::create_directories(out);
  ComparisonReport single;
  single.cells.push_back(cell);
  write_text_file(out / "learning_curve.csv", curves_csv(single));
  save_network(*cell.network, out / "network.json");
  std::printf("%s run %zu: final train %.3f dB, val %.3f dB, %zu epochs, %.2f s\n",
              scheme_name.c_str(), run, cell.record.train_mse_db.back(), cell.record.val_mse_db.back(),
              cell.record.epochs(), cell.record.wall_seconds);
  return 0;
}

int cmd_compare(const Common& c) {
  const auto cfg = resolve(c);
  const auto report = run_comparison(cfg);
  write_comparison(report, c.out);
  print_summary(report);
  return report.ok() ? 0 : 1;
}

int cmd_validate_stats(const Common& c) {
  const auto cfg = resolve(c);
  const auto result = run_validate_stats(cfg);
  fs::create_directories(c.out);
  write_text_file(fs::path(c.out) / "moments.csv", moments_csv(result));
  std::cout << moments_table(result);
  const bool pass = result.mean_v.pass && result.var_v.pass && result.var_y.pass;
  return pass ? 0 : 1;
}

int cmd_init_dump(const Common& c) {
  const auto cfg = resolve(c);
  const auto skipped = dump_init(cfg, c.out);
  std::printf("wrote initial networks to %s (%zu scheme(s) skipped as unsupported)\n", c.out.c_str(),
              skipped);
  return 0;
}

int cmd_gen_data(const Common& c, std::size_t run) {
  const auto cfg = resolve(c);
  const auto [train, val] = run_datasets(cfg, run);
  const fs::path out(c.out);
  fs::create_directories(out);
  save_dataset(train, out / "train.csv");
  save_dataset(val, out / "val.csv");
  std::printf("wrote %zu training and %zu validation instances to %s\n", train.size(), val.size(),
              c.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PT-RBF complex-valued networks: training, initialization and statistics"};
  app.require_subcommand(1);

  Common train_opts, compare_opts, stats_opts, dump_opts, gen_opts;
  std::string scheme = "proposed";
  std::size_t train_run = 0;
  std::size_t gen_run = 0;

  auto* train_cmd = app.add_subcommand("train", "train one network and write its learning curve");
  add_common(train_cmd, train_opts);
  train_cmd->add_option("--scheme", scheme, "proposed, kmeans, constellation or random")
      ->capture_default_str();
  train_cmd->add_option("--run", train_run, "run index (selects data, order and init seeds)");

  auto* compare_cmd = app.add_subcommand("compare", "train every scheme over paired runs");
  add_common(compare_cmd, compare_opts);

  auto* stats_cmd = app.add_subcommand("validate-stats", "Monte-Carlo check of the moment formulas");
  add_common(stats_cmd, stats_opts);

  auto* dump_cmd = app.add_subcommand("init-dump", "write initialized networks and histograms");
  add_common(dump_cmd, dump_opts);

  auto* gen_cmd = app.add_subcommand("gen-data", "write the training and validation sets");
  add_common(gen_cmd, gen_opts);
  gen_cmd->add_option("--run", gen_run, "run index");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train_cmd) return cmd_train(train_opts, scheme, train_run);
    if (*compare_cmd) return cmd_compare(compare_opts);
    if (*stats_cmd) return cmd_validate_stats(stats_opts);
    if (*dump_cmd) return cmd_init_dump(dump_opts);
    if (*gen_cmd) return cmd_gen_data(gen_opts, gen_run);
  } catch (const IoError& e) {
    std::cerr << "ptrbf: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ptrbf: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ptrbf: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
