#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hmmforge::cli {

/// One numeric column of a comma-separated file. `column` is a zero-based index
/// or a header name; a first line whose selected field is not a number is
/// treated as a header. Blank lines are skipped. Throws ParseError.
std::vector<double> read_csv_column(const std::filesystem::path& path, const std::string& column);

std::string timestamps_csv(const std::vector<double>& stamps);

}  // namespace hmmforge::cli
