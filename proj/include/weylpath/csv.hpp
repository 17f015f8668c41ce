#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace weylpath {

/// 9 significant digits, the one number format every CSV uses.
std::string format_number(double value);

/// Writes '#' comment lines, one header row and numeric rows.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);

    void comment(const std::string& line);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    /// Row whose first cell is a label.
    void row(const std::string& label, const std::vector<double>& values);

    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::ofstream out_;
    std::size_t columns_ = 0;
};

} // namespace weylpath
