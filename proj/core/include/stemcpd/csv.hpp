#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stemcpd::csv {

/// Shortest decimal form that parses back to the same double; "nan", "inf",
/// "-inf" for non-finite values.
std::string format(double value);

/// Strict parse of a whole field; nullopt if it is not a number.
std::optional<double> parse_double(std::string_view field);

/// Splits on commas and trims surrounding whitespace and a trailing '\r'.
std::vector<std::string> split(std::string_view line);

/// Reads data lines, skipping blank lines and lines starting with '#'.
/// `comments` (if given) receives the '#' lines without the marker.
std::vector<std::vector<std::string>> read_rows(std::istream& in,
                                                std::vector<std::string>* comments = nullptr);

std::string join(const std::vector<std::string>& fields);

}  // namespace stemcpd::csv
