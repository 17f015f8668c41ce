#include "weylpath/csv.hpp"

#include <cstdio>

#include "weylpath/error.hpp"

namespace weylpath {

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value == 0.0 ? 0.0 : value); // no "-0"
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : path_(path), out_(path) {
    if (!out_) {
        throw ConfigError("cannot open '" + path + "' for writing");
    }
}

void CsvWriter::comment(const std::string& line) { out_ << "# " << line << '\n'; }

void CsvWriter::header(const std::vector<std::string>& columns) {
    columns_ = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out_ << (i ? "," : "") << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        out_ << (i ? "," : "") << format_number(values[i]);
    }
    out_ << '\n';
}

void CsvWriter::row(const std::string& label, const std::vector<double>& values) {
    out_ << label;
    for (double v : values) {
        out_ << ',' << format_number(v);
    }
    out_ << '\n';
}

} // namespace weylpath
