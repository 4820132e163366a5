#include "hsc/csvio.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hsc {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {
std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}
}  // namespace

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : out_(path), columns_(header.size()), path_(path) {
  if (!out_)
    throw std::runtime_error("CsvWriter: cannot open " + path.string());
  out_ << join(header) << '\n';
}

void CsvWriter::write_row(const std::vector<std::string>& row) {
  if (row.size() != columns_)
    throw std::runtime_error("CsvWriter: column count mismatch in " +
                             path_.string());
  out_ << join(row) << '\n';
  if (!out_)
    throw std::runtime_error("CsvWriter: write failed for " + path_.string());
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

void write_plot_data(const std::filesystem::path& path,
                     const std::vector<std::pair<double, double>>& points) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_plot_data: cannot open " + path.string());
  for (const auto& [x, y] : points)
    out << format_double(x) << ' ' << format_double(y) << '\n';
}

}  // namespace hsc
