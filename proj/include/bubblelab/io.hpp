#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace bubble::io {

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

// Write through a temporary file in the same directory and rename over the
// target. Throws IoError.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Index of a column; throws IoError if absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;
};

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::filesystem::path& path);

// Column set of the simulate output.
const std::vector<std::string>& trajectory_header();

}  // namespace bubble::io
