#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace attrib::csv {

// RFC-4180-style table: header row required, '"' quoting with doubled
// escapes, both LF and CRLF records accepted.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table read_file(const std::filesystem::path& path);
Table parse(const std::string& text);

std::string escape_field(const std::string& field);

// Missing-value convention shared by ingestion and export: empty or NA.
bool is_missing(const std::string& token);

// Shortest round-trip formatting of a double (17 significant digits).
std::string format_double(double v);

}  // namespace attrib::csv
