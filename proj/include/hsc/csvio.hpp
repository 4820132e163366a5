#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace hsc {

/// Decimal with 17 significant digits; round-trips doubles exactly.
std::string format_double(double x);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path,
            const std::vector<std::string>& header);
  void write_row(const std::vector<std::string>& row);

 private:
  std::ofstream out_;
  size_t columns_ = 0;
  std::filesystem::path path_;
};

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

/// Two-column whitespace-separated data file for gnuplot.
void write_plot_data(const std::filesystem::path& path,
                     const std::vector<std::pair<double, double>>& points);

}  // namespace hsc
