#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ycalc/path.hpp"

namespace ycalc {

/// IEEE-754 double with 17 significant digits ("%.17g"); inf/nan spelled
/// "inf", "-inf", "nan".
std::string format_double(double v);

/// Minimal CSV table: a header and rows of doubles.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string str() const;
};

/// `t,x1,...,xd`, one row per node.
CsvTable path_table(const Path& path);
/// Parse a table produced by path_table back into a Path on a uniform grid.
Path parse_path_csv(std::string_view text);

/// Write text to `file` atomically (temporary sibling, then rename).
void write_file_atomic(const std::filesystem::path& file, std::string_view content);

}  // namespace ycalc
