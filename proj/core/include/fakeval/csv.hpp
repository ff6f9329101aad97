#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fakeval::csv {

// Splits a document into lines, dropping a trailing '\r' from each and
// ignoring blank trailing lines.
std::vector<std::string_view> lines(std::string_view text);

// Plain comma split; quoting is not supported.
std::vector<std::string_view> fields(std::string_view line);

// Strict parsers: the whole field must be consumed.
bool parse_double(std::string_view field, double& out);
bool parse_int(std::string_view field, std::int64_t& out);

// Shortest representation that parses back to the same double.
std::string format_double(double value);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace fakeval::csv
