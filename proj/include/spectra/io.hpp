#pragma once
// CSV and JSON serialization. CSV carries a header row and reals with 17
// significant digits so emit-then-parse round-trips bit-exactly; complex
// values become paired re/im columns.

#include <complex>
#include <string>
#include <vector>

namespace spectra::io {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_full(double x);

void write_csv(const Table& table, const std::string& path);
Table read_csv(const std::string& path);

/// Append paired re/im columns for a complex series.
void add_complex_columns(Table& table, const std::string& base_name);

}  // namespace spectra::io
