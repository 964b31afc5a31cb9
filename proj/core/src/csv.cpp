#include "ycalc/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ycalc/errors.hpp"

namespace ycalc {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

CsvTable path_table(const Path& path) {
  CsvTable t;
  t.header.push_back("t");
  for (std::size_t k = 0; k < path.dim(); ++k) t.header.push_back("x" + std::to_string(k + 1));
  t.rows.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    std::vector<double> row;
    row.push_back(path.grid().node(i));
    for (std::size_t k = 0; k < path.dim(); ++k) row.push_back(path.node(i, k));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Path parse_path_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw DomainError("path csv: empty input");
  std::size_t cols = 1;
  for (char c : line) cols += (c == ',');
  require(cols >= 2, "path csv: need a time column and at least one value column");
  std::vector<double> times;
  std::vector<std::vector<double>> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    require(row.size() == cols, "path csv: ragged row");
    times.push_back(row[0]);
    vals.emplace_back(row.begin() + 1, row.end());
  }
  require(times.size() >= 2, "path csv: need at least two rows");
  Grid g(times.front(), times.back(), times.size() - 1);
  Mat v(static_cast<Eigen::Index>(cols - 1), static_cast<Eigen::Index>(times.size()));
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (std::size_t k = 0; k + 1 < cols; ++k) {
      v(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = vals[i][k];
    }
  }
  return Path(g, std::move(v));
}

void write_file_atomic(const std::filesystem::path& file, std::string_view content) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) throw Error("rename to " + file.string() + " failed: " + ec.message());
}

}  // namespace ycalc
