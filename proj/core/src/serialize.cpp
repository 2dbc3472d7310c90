#include "ptrbf/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ptrbf/errors.hpp"

namespace ptrbf {

namespace {

using nlohmann::json;

json encode(std::span<const Complex> values) {
  json re = json::array();
  json im = json::array();
  for (const auto z : values) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

CVector decode(const json& node, std::size_t expected, const char* what) {
  const auto& re = node.at("re");
  const auto& im = node.at("im");
  if (re.size() != expected || im.size() != expected) {
    throw IoError(std::string("network file: '") + what + "' has " + std::to_string(re.size()) +
                  "/" + std::to_string(im.size()) + " values, expected " +
                  std::to_string(expected));
  }
  CVector out(expected);
  for (std::size_t i = 0; i < expected; ++i) out[i] = {re[i].get<double>(), im[i].get<double>()};
  return out;
}

CMatrix decode_matrix(const json& node, std::size_t rows, std::size_t cols, const char* what) {
  const auto flat = decode(node, rows * cols, what);
  CMatrix out(rows, cols);
  std::copy(flat.begin(), flat.end(), out.elements().begin());
  return out;
}

}  // namespace

std::string network_to_string(const PtRbfNetwork& net) {
  json layers = json::array();
  for (const auto& layer : net.layers()) {
    layers.push_back({
        {"fan_in", layer.fan_in()},
        {"neurons", layer.neurons()},
        {"outputs", layer.outputs()},
        {"weights", encode(layer.weights.elements())},
        {"bias", encode(layer.bias)},
        {"centers", encode(layer.centers.elements())},
        {"variances", encode(layer.variances)},
    });
  }
  const json doc = {
      {"format", "ptrbf-network"},
      {"version", kNetworkFormatVersion},
      {"inputs", net.inputs()},
      {"outputs", net.outputs()},
      {"layers", std::move(layers)},
  };
  return doc.dump(1) + "\n";
}

PtRbfNetwork network_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("network file: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "ptrbf-network") {
      throw IoError("network file: not a ptrbf-network document");
    }
    const int version = doc.at("version").get<int>();
    if (version != kNetworkFormatVersion) {
      throw IoError("network file: unsupported version " + std::to_string(version));
    }
    std::vector<PtRbfLayer> layers;
    for (const auto& node : doc.at("layers")) {
      const auto fan_in = node.at("fan_in").get<std::size_t>();
      const auto neurons = node.at("neurons").get<std::size_t>();
      const auto outputs = node.at("outputs").get<std::size_t>();
      PtRbfLayer layer;
      layer.weights = decode_matrix(node.at("weights"), outputs, neurons, "weights");
      layer.bias = decode(node.at("bias"), outputs, "bias");
      layer.centers = decode_matrix(node.at("centers"), neurons, fan_in, "centers");
      layer.variances = decode(node.at("variances"), neurons, "variances");
      layers.push_back(std::move(layer));
    }
    return PtRbfNetwork(doc.at("inputs").get<std::size_t>(), std::move(layers));
  } catch (const json::exception& e) {
    throw IoError(std::string("network file: ") + e.what());
  }
}

void save_network(const PtRbfNetwork& net, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << network_to_string(net);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

PtRbfNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return network_from_string(buffer.str());
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace ptrbf
