#include "stemcpd/csv.hpp"

#include <charconv>
#include <cmath>

namespace stemcpd::csv {

std::string format(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::optional<double> parse_double(std::string_view field) {
  if (field == "nan") {
    return std::nan("");
  }
  if (field == "inf" || field == "+inf") {
    return HUGE_VAL;
  }
  if (field == "-inf") {
    return -HUGE_VAL;
  }
  if (!field.empty() && field.front() == '+') {
    field.remove_prefix(1);
  }
  double value = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end) {
    return std::nullopt;
  }
  return value;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return fields;
}

std::vector<std::vector<std::string>> read_rows(std::istream& in,
                                                std::vector<std::string>* comments) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view view = trim(line);
    if (view.empty()) {
      continue;
    }
    if (view.front() == '#') {
      if (comments) {
        comments->emplace_back(trim(view.substr(1)));
      }
      continue;
    }
    rows.push_back(split(view));
  }
  return rows;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += fields[i];
  }
  return out;
}

}  // namespace stemcpd::csv
