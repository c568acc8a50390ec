#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ncig/errors.hpp"
#include "ncig/volume.hpp"

namespace ncig::cli {

class IoError : public Error {
 public:
  using Error::Error;
};

enum class TableFormat { Csv, Json };

// Column order shared by CSV headers and JSON keys.
const std::vector<std::string>& table_columns();

// 9 significant digits; "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double v);

// One value per column, in table_columns() order.
std::vector<double> row_values(const SweepRow& row);

std::string render_table(const SweepTable& table, TableFormat format);

// Throws IoError when the file cannot be written.
void emit_table(const SweepTable& table, TableFormat format, const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace ncig::cli
