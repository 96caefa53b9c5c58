#include "csv.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <string_view>

#include <fmt/format.h>

#include "hmmforge/error.hpp"
#include "hmmforge/model_io.hpp"

namespace hmmforge::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto comma = line.find(',');
    out.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) return out;
    line.remove_prefix(comma + 1);
  }
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::vector<double> read_csv_column(const std::filesystem::path& path, const std::string& column) {
  const auto text = read_file(path);
  std::optional<std::size_t> index;
  if (!column.empty() && std::all_of(column.begin(), column.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    index = std::stoul(column);
  }
  std::vector<double> values;
  bool first = true;
  std::size_t line_no = 0;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    const auto line = trim(rest.substr(0, nl));
    rest.remove_prefix(nl == std::string_view::npos ? rest.size() : nl + 1);
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line);
    if (first) {
      first = false;
      if (!index) {
        const auto it = std::find(fields.begin(), fields.end(), column);
        if (it == fields.end()) {
          throw Error(ErrorKind::ParseError, fmt::format("{}: no column named '{}'", path.string(), column));
        }
        index = static_cast<std::size_t>(it - fields.begin());
        continue;
      }
      if (*index < fields.size() && !to_double(fields[*index])) continue;  // header
    }
    if (*index >= fields.size()) {
      throw Error(ErrorKind::ParseError, fmt::format("{}:{}: missing column {}", path.string(), line_no, *index));
    }
    const auto v = to_double(fields[*index]);
    if (!v) {
      throw Error(ErrorKind::ParseError,
                  fmt::format("{}:{}: '{}' is not a number", path.string(), line_no, fields[*index]));
    }
    values.push_back(*v);
  }
  return values;
}

std::string timestamps_csv(const std::vector<double>& stamps) {
  std::string out = "timestamp\n";
  for (double t : stamps) {
    out += format_real(t);
    out += '\n';
  }
  return out;
}

}  // namespace hmmforge::cli
