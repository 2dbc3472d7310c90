#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ptrbf {

/// Shortest decimal that parses back to the same double; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_double(double value);
double parse_double(std::string_view text);

/// Minimal comma-separated table. Lines starting with '#' before the header
/// are kept as comments; no quoting (none of our fields contain commas).
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws IoError when absent.
  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

/// Writes `content` to `path`, surfacing failures with the path in the message.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace ptrbf
