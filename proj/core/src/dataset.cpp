#include "ptrbf/dataset.hpp"

#include <fstream>
#include <sstream>

#include "ptrbf/csv.hpp"
#include "ptrbf/errors.hpp"

namespace ptrbf {

void Dataset::validate() const {
  if (inputs.size() != targets.size()) {
    throw DimensionError("dataset has " + std::to_string(inputs.size()) + " inputs but " +
                         std::to_string(targets.size()) + " targets");
  }
  const auto p = input_width();
  const auto r = target_width();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].size() != p || targets[i].size() != r) {
      throw DimensionError("dataset instance " + std::to_string(i) + " has inconsistent width");
    }
    if (!all_finite(inputs[i]) || !all_finite(targets[i])) {
      throw ParameterError("dataset instance " + std::to_string(i) + " is not finite");
    }
  }
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& data, std::size_t count) {
  if (count > data.size()) throw ParameterError("split_dataset: count exceeds dataset size");
  const auto mid = static_cast<std::ptrdiff_t>(count);
  Dataset head{{data.inputs.begin(), data.inputs.begin() + mid},
               {data.targets.begin(), data.targets.begin() + mid}, data.meta};
  Dataset tail{{data.inputs.begin() + mid, data.inputs.end()},
               {data.targets.begin() + mid, data.targets.end()}, data.meta};
  return {std::move(head), std::move(tail)};
}

std::string dataset_to_string(const Dataset& data) {
  data.validate();
  std::ostringstream out;
  out << "# ptrbf-dataset 1\n";
  out << "# seed=" << data.meta.seed << "\n";
  out << "# eb_n0_db=" << format_double(data.meta.eb_n0_db) << "\n";
  bool first = true;
  auto column = [&](const std::string& name) {
    out << (first ? "" : ",") << name;
    first = false;
  };
  for (std::size_t i = 0; i < data.input_width(); ++i) {
    column("x" + std::to_string(i) + "_re");
    column("x" + std::to_string(i) + "_im");
  }
  for (std::size_t i = 0; i < data.target_width(); ++i) {
    column("d" + std::to_string(i) + "_re");
    column("d" + std::to_string(i) + "_im");
  }
  out << "\n";
  for (std::size_t n = 0; n < data.size(); ++n) {
    first = true;
    for (const auto z : data.inputs[n]) {
      column(format_double(z.real()));
      column(format_double(z.imag()));
    }
    for (const auto z : data.targets[n]) {
      column(format_double(z.real()));
      column(format_double(z.imag()));
    }
    out << "\n";
  }
  return out.str();
}

Dataset dataset_from_string(const std::string& text) {
  const auto table = parse_csv(text);
  if (table.comments.empty() || table.comments.front() != " ptrbf-dataset 1") {
    throw IoError("dataset: missing '# ptrbf-dataset 1' header");
  }
  Dataset data;
  for (const auto& c : table.comments) {
    if (c.rfind(" seed=", 0) == 0) data.meta.seed = std::stoull(c.substr(6));
    if (c.rfind(" eb_n0_db=", 0) == 0) data.meta.eb_n0_db = parse_double(c.substr(10));
  }
  std::size_t p = 0;
  std::size_t r = 0;
  for (const auto& name : table.header) {
    if (name.size() > 3 && name.compare(name.size() - 3, 3, "_re") == 0) {
      if (name.front() == 'x') ++p;
      else if (name.front() == 'd') ++r;
      else throw IoError("dataset: unexpected column '" + name + "'");
    }
  }
  if (table.header.size() != 2 * (p + r) || p == 0 || r == 0) {
    throw IoError("dataset: header must hold re/im pairs for x and d columns");
  }
  auto expect = [&](std::size_t at, const std::string& name) {
    if (table.header[at] != name) {
      throw IoError("dataset: column " + std::to_string(at) + " is '" + table.header[at] +
                    "', expected '" + name + "'");
    }
  };
  for (std::size_t i = 0; i < p; ++i) {
    expect(2 * i, "x" + std::to_string(i) + "_re");
    expect(2 * i + 1, "x" + std::to_string(i) + "_im");
  }
  for (std::size_t i = 0; i < r; ++i) {
    expect(2 * (p + i), "d" + std::to_string(i) + "_re");
    expect(2 * (p + i) + 1, "d" + std::to_string(i) + "_im");
  }
  for (const auto& row : table.rows) {
    CVector x(p);
    CVector d(r);
    for (std::size_t i = 0; i < p; ++i) x[i] = {parse_double(row[2 * i]), parse_double(row[2 * i + 1])};
    for (std::size_t i = 0; i < r; ++i) {
      d[i] = {parse_double(row[2 * (p + i)]), parse_double(row[2 * (p + i) + 1])};
    }
    data.inputs.push_back(std::move(x));
    data.targets.push_back(std::move(d));
  }
  data.validate();
  return data;
}

void save_dataset(const Dataset& data, const std::filesystem::path& path) {
  write_text_file(path, dataset_to_string(data));
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return dataset_from_string(buffer.str());
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace ptrbf
