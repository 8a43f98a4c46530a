#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace orlicz::cli {

/// Numeric CSV table: a header row followed by comma-separated values.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  /// Throws InvalidArgument naming the column when it is absent.
  const std::vector<double>& column(const std::string& name) const;
};

/// Throws InvalidArgument on a missing file, an empty file, a ragged row or
/// a cell that is not a finite number; the message names the line.
Table read_csv(const std::filesystem::path& path);
Table parse_csv(const std::string& text, const std::string& origin = "<input>");

}  // namespace orlicz::cli
