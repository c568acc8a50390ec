#include "ncig/cli/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ncig::cli {

const std::vector<std::string>& table_columns() {
  static const std::vector<std::string> columns{
      "param",           "gamma_disk",          "gamma_quantum",       "gamma_separable",
      "gamma_entangled", "ratio",               "std_error_disk",      "std_error_quantum",
      "std_error_separable", "std_error_entangled", "std_error_ratio"};
  return columns;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<double> row_values(const SweepRow& row) {
  const RegionVolumes& v = row.volumes;
  return {row.param,
          v.disk.value,
          v.quantum.value,
          v.separable.value,
          v.entangled.value,
          v.ratio,
          v.disk.std_error,
          v.quantum.std_error,
          v.separable.std_error,
          v.entangled.std_error,
          v.ratio_std_error};
}

std::string render_table(const SweepTable& table, TableFormat format) {
  const auto& columns = table_columns();
  if (format == TableFormat::Csv) {
    std::ostringstream out;
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    out << '\n';
    for (const SweepRow& row : table.rows) {
      const auto values = row_values(row);
      for (std::size_t c = 0; c < values.size(); ++c) out << (c ? "," : "") << format_number(values[c]);
      out << '\n';
    }
    return out.str();
  }

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SweepRow& row : table.rows) {
    const auto values = row_values(row);
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < values.size(); ++c) {
      if (std::isfinite(values[c])) {
        // Round through the 9-digit text form so CSV and JSON carry the same numbers.
        obj[columns[c]] = std::stod(format_number(values[c]));
      } else {
        obj[columns[c]] = nullptr;
      }
    }
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  file << contents;
  file.flush();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
}

void emit_table(const SweepTable& table, TableFormat format, const std::filesystem::path& path) {
  write_text_file(path, render_table(table, format));
}

}  // namespace ncig::cli
