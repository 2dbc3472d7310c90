#include "ptrbf/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "ptrbf/csv.hpp"
#include "ptrbf/errors.hpp"

namespace ptrbf {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> items;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    const auto item = trim(s.substr(start, comma == s.npos ? s.npos : comma - start));
    if (!item.empty()) items.push_back(item);
    if (comma == s.npos) break;
    start = comma + 1;
  }
  return items;
}

std::uint64_t to_u64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto r = std::from_chars(value.data(), value.data() + value.size(), out);
  if (r.ec != std::errc{} || r.ptr != value.data() + value.size()) {
    throw ParameterError("config: '" + std::string(key) + "' expects an unsigned integer, got '" +
                         std::string(value) + "'");
  }
  return out;
}

double to_double(std::string_view key, std::string_view value) {
  try {
    return parse_double(value);
  } catch (const IoError&) {
    throw ParameterError("config: '" + std::string(key) + "' expects a number, got '" +
                         std::string(value) + "'");
  }
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ParameterError("config: '" + std::string(key) + "' expects true/false");
}

std::vector<std::size_t> to_sizes(std::string_view key, std::string_view value) {
  std::vector<std::size_t> out;
  for (const auto item : split_list(value)) out.push_back(to_u64(key, item));
  return out;
}

template <typename T>
std::string join(const std::vector<T>& items) {
  std::ostringstream out;
  for (std::size_t i = 0; i < items.size(); ++i) out << (i ? ", " : "") << items[i];
  return out.str();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (architecture.empty()) throw ParameterError("config: architecture must list at least one layer");
  for (const auto n : architecture) {
    if (n == 0) throw ParameterError("config: neuron counts must be > 0");
  }
  if (!hidden_outputs.empty() && hidden_outputs.size() + 1 != architecture.size()) {
    throw ParameterError("config: hidden_outputs needs one entry per hidden layer but the last");
  }
  if (schemes.empty()) throw ParameterError("config: schemes must not be empty");
  if (runs == 0) throw ParameterError("config: runs must be >= 1");
  if (train_count == 0) throw ParameterError("config: train_count must be >= 1");
  if (!(c_sigma > 0.0)) throw ParameterError("config: c_sigma must be > 0");
  if (!(mu_v > 0.0)) throw ParameterError("config: mu_v must be > 0");
  if (!(random_center_variance > 0.0)) throw ParameterError("config: random_center_variance must be > 0");
  if (!(baseline_input_variance >= 0.0)) throw ParameterError("config: baseline_input_variance must be >= 0");
  for (const auto& [layer, rates] : rate_overrides) {
    if (layer == 0 || layer > architecture.size()) {
      throw ParameterError("config: rates.layer" + std::to_string(layer) + " is outside the architecture");
    }
  }
  if (threads == 0) throw ParameterError("config: threads must be >= 1");
  if (train_data.empty() != val_data.empty()) {
    throw ParameterError("config: train_data and val_data must be given together");
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string, std::less<>> seen;
  bool header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == text.npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line != "ptrbf-config " + std::to_string(kConfigFormatVersion)) {
        throw ParameterError("config: first line must be 'ptrbf-config " +
                             std::to_string(kConfigFormatVersion) + "'");
      }
      header = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == line.npos) {
      throw ParameterError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!seen.emplace(key).second) {
      throw ParameterError("config line " + std::to_string(line_no) + ": duplicate key '" +
                           std::string(key) + "'");
    }
    if (key == "architecture") cfg.architecture = to_sizes(key, value);
    else if (key == "hidden_outputs") cfg.hidden_outputs = to_sizes(key, value);
    else if (key == "schemes") {
      cfg.schemes.clear();
      for (const auto item : split_list(value)) cfg.schemes.push_back(parse_scheme(item));
    }
    else if (key == "runs") cfg.runs = to_u64(key, value);
    else if (key == "epochs") cfg.epochs = to_u64(key, value);
    else if (key == "train_count") cfg.train_count = to_u64(key, value);
    else if (key == "val_count") cfg.val_count = to_u64(key, value);
    else if (key == "eb_n0_db") cfg.eb_n0_db = to_double(key, value);
    else if (key == "seed") cfg.seed = to_u64(key, value);
    else if (key == "c_sigma") cfg.c_sigma = to_double(key, value);
    else if (key == "mu_v") cfg.mu_v = to_double(key, value);
    else if (key == "random_center_variance") cfg.random_center_variance = to_double(key, value);
    else if (key == "variance_floor") cfg.variance_floor = to_bool(key, value);
    else if (key == "baseline_input_variance") cfg.baseline_input_variance = to_double(key, value);
    else if (key == "threshold_db") cfg.threshold_db = to_double(key, value);
    else if (key == "stats_fan_in") cfg.stats_layer.fan_in = to_u64(key, value);
    else if (key == "stats_neurons") cfg.stats_layer.neurons = to_u64(key, value);
    else if (key == "stats_outputs") cfg.stats_layer.outputs = to_u64(key, value);
    else if (key == "stats_trials") cfg.stats_trials = to_u64(key, value);
    else if (key == "stats_inputs_per_layer") cfg.stats_inputs_per_layer = to_u64(key, value);
    else if (key == "threads") cfg.threads = to_u64(key, value);
    else if (key == "train_data") cfg.train_data = std::string(value);
    else if (key == "val_data") cfg.val_data = std::string(value);
    else if (key.starts_with("rates.layer")) {
      const auto layer = to_u64(key, key.substr(11));
      const auto items = split_list(value);
      if (items.size() != 4) {
        throw ParameterError("config: '" + std::string(key) + "' expects w, b, gamma, sigma");
      }
      cfg.rate_overrides[layer] = {to_double(key, items[0]), to_double(key, items[1]),
                                   to_double(key, items[2]), to_double(key, items[3])};
    } else {
      throw ParameterError("config line " + std::to_string(line_no) + ": unknown key '" +
                           std::string(key) + "'");
    }
  }
  if (!header) throw ParameterError("config: empty file");
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ParameterError& e) {
    throw ParameterError(path.string() + ": " + e.what());
  }
}

std::string config_to_string(const ExperimentConfig& c) {
  std::ostringstream out;
  std::vector<std::string> schemes;
  for (const auto s : c.schemes) schemes.emplace_back(to_string(s));
  out << "ptrbf-config " << kConfigFormatVersion << "\n";
  out << "architecture = " << join(c.architecture) << "\n";
  if (!c.hidden_outputs.empty()) out << "hidden_outputs = " << join(c.hidden_outputs) << "\n";
  out << "schemes = " << join(schemes) << "\n";
  out << "runs = " << c.runs << "\n";
  out << "epochs = " << c.epochs << "\n";
  out << "train_count = " << c.train_count << "\n";
  out << "val_count = " << c.val_count << "\n";
  out << "eb_n0_db = " << format_double(c.eb_n0_db) << "\n";
  out << "seed = " << c.seed << "\n";
  out << "c_sigma = " << format_double(c.c_sigma) << "\n";
  out << "mu_v = " << format_double(c.mu_v) << "\n";
  out << "random_center_variance = " << format_double(c.random_center_variance) << "\n";
  out << "variance_floor = " << (c.variance_floor ? "true" : "false") << "\n";
  out << "baseline_input_variance = " << format_double(c.baseline_input_variance) << "\n";
  for (const auto& [layer, r] : c.rate_overrides) {
    out << "rates.layer" << layer << " = " << format_double(r.w) << ", " << format_double(r.b)
        << ", " << format_double(r.gamma) << ", " << format_double(r.sigma) << "\n";
  }
  out << "threshold_db = " << format_double(c.threshold_db) << "\n";
  out << "stats_fan_in = " << c.stats_layer.fan_in << "\n";
  out << "stats_neurons = " << c.stats_layer.neurons << "\n";
  out << "stats_outputs = " << c.stats_layer.outputs << "\n";
  out << "stats_trials = " << c.stats_trials << "\n";
  out << "stats_inputs_per_layer = " << c.stats_inputs_per_layer << "\n";
  out << "threads = " << c.threads << "\n";
  if (!c.train_data.empty()) out << "train_data = " << c.train_data.string() << "\n";
  if (!c.val_data.empty()) out << "val_data = " << c.val_data.string() << "\n";
  return out.str();
}

}  // namespace ptrbf
