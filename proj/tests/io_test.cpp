#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "ptrbf/config.hpp"
#include "ptrbf/csv.hpp"
#include "ptrbf/dataset.hpp"
#include "ptrbf/errors.hpp"
#include "ptrbf/qam.hpp"
#include "ptrbf/serialize.hpp"
#include "test_support.hpp"

using namespace ptrbf;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "ptrbf_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Csv, DoublesRoundTripExactly) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double x = std::ldexp(rng.uniform(-1, 1), static_cast<int>(rng.below(200)) - 100);
    ASSERT_EQ(parse_double(format_double(x)), x);
  }
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_TRUE(std::isnan(parse_double("nan")));
  EXPECT_EQ(parse_double("-inf"), -std::numeric_limits<double>::infinity());
  EXPECT_THROW(parse_double("1.0x"), IoError);
}

TEST(Csv, ParsesCommentsHeaderAndRows) {
  const auto t = parse_csv("# a\n# b\nx,y\n1,2\n3,4\n");
  EXPECT_EQ(t.comments.size(), 2u);
  EXPECT_EQ(t.column("y"), 1u);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1][0], "3");
  EXPECT_THROW(t.column("z"), IoError);
  EXPECT_THROW(parse_csv("x,y\n1\n"), IoError);
}

TEST(DatasetFile, RoundTripIsBitExact) {
  TaskConfig tc;
  tc.count = 64;
  tc.seed = 3;
  const auto data = gen_dataset(tc);
  const auto back = dataset_from_string(dataset_to_string(data));
  EXPECT_EQ(back.inputs, data.inputs);
  EXPECT_EQ(back.targets, data.targets);
  EXPECT_EQ(back.meta.seed, 3u);
  EXPECT_EQ(back.meta.eb_n0_db, 26.0);
  const auto path = scratch("data.csv");
  save_dataset(data, path);
  EXPECT_EQ(load_dataset(path).inputs, data.inputs);
}

TEST(DatasetFile, RejectsMalformedHeader) {
  EXPECT_THROW(dataset_from_string("# ptrbf-dataset 1\nx0_im,x0_re,d0_re,d0_im\n1,2,3,4\n"), IoError);
  EXPECT_THROW(load_dataset(scratch("missing.csv").string() + ".none"), IoError);
}

TEST(NetworkFile, RoundTripIsBitExact) {
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    const auto net = check::random_network(rng, 1 + i % 4, 9);
    EXPECT_EQ(network_from_string(network_to_string(net)), net);
  }
  const auto net = check::random_network(rng, 2, 5);
  const auto path = scratch("net.json");
  save_network(net, path);
  EXPECT_EQ(load_network(path), net);
}

TEST(NetworkFile, ErrorsCarryThePath) {
  try {
    load_network("/nonexistent/dir/net.json");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/net.json"), std::string::npos);
  }
  EXPECT_THROW(network_from_string("{\"format\":\"other\"}"), IoError);
}

TEST(RunRecordCsv, RoundTrip) {
  RunRecord r;
  r.train_mse_db = {-1.5, -2.25, -3.0};
  r.val_mse_db = {-1.0, std::nan(""), -2.0};
  const auto csv = run_record_to_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "epoch,train_mse_db,val_mse_db");
  const auto back = run_record_from_csv(csv);
  EXPECT_EQ(back.train_mse_db, r.train_mse_db);
  EXPECT_TRUE(std::isnan(back.val_mse_db[1]));
}

TEST(Config, DefaultsRoundTrip) {
  ExperimentConfig c;
  c.architecture = {48, 16};
  c.rate_overrides[2] = {0.01, 0.02, 0.03, 0.04};
  const auto back = parse_config(config_to_string(c));
  EXPECT_EQ(config_to_string(back), config_to_string(c));
  EXPECT_EQ(back.rate_overrides.at(2), c.rate_overrides.at(2));
}

TEST(Config, ParsesValuesAndComments) {
  const auto c = parse_config(
      "# leading comment\n"
      "ptrbf-config 1\n"
      "architecture = 24, 24, 16   # three layers\n"
      "schemes = proposed, random\n"
      "runs = 3\n"
      "eb_n0_db = 20.5\n");
  EXPECT_EQ(c.architecture, (std::vector<std::size_t>{24, 24, 16}));
  EXPECT_EQ(c.schemes, (std::vector<Scheme>{Scheme::Proposed, Scheme::Random}));
  EXPECT_EQ(c.runs, 3u);
  EXPECT_EQ(c.eb_n0_db, 20.5);
}

TEST(Config, FailsFast) {
  EXPECT_THROW(parse_config("architecture = 4\n"), ParameterError);
  EXPECT_THROW(parse_config("ptrbf-config 1\nbogus = 1\n"), ParameterError);
  EXPECT_THROW(parse_config("ptrbf-config 1\nruns = 1\nruns = 2\n"), ParameterError);
  EXPECT_THROW(parse_config("ptrbf-config 1\nruns = 0\n"), ParameterError);
  EXPECT_THROW(parse_config("ptrbf-config 1\narchitecture =\n"), ParameterError);
  EXPECT_THROW(parse_config("ptrbf-config 1\nrates.layer2 = 1,1,1,1\n"), ParameterError);
  EXPECT_THROW(parse_config("ptrbf-config 1\nseed = -4\n"), ParameterError);
  EXPECT_THROW(load_config("/nonexistent.cfg"), IoError);
}
