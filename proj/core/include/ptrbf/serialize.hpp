#pragma once

#include <filesystem>
#include <string>

#include "ptrbf/network.hpp"

namespace ptrbf {

/// Versioned JSON document. Every parameter array is stored as parallel
/// "re"/"im" lists of shortest round-trip decimals, so load(save(net)) is
/// bit-exact.
inline constexpr int kNetworkFormatVersion = 1;

std::string network_to_string(const PtRbfNetwork& net);
PtRbfNetwork network_from_string(const std::string& text);

void save_network(const PtRbfNetwork& net, const std::filesystem::path& path);
PtRbfNetwork load_network(const std::filesystem::path& path);

}  // namespace ptrbf
