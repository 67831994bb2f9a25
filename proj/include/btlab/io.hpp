#pragma once

#include <string>
#include <vector>

#include "btlab/common.hpp"

namespace btlab {

inline constexpr int kSchemaVersion = 1;

/// Write a file atomically (temp file + rename).
void atomic_write(const std::string& path, const std::string& content);

void ensure_dir(const std::string& path);

/// CSV cell formatting: 17 significant digits (round-trip exact doubles).
std::string csv_num(double v);

struct CsvWriter {
  std::string buffer;
  /// '#'-prefixed comment lines ahead of the header; carries the schema
  /// version and the resolved config so every emitted file is self-describing.
  void preamble(const std::string& text);
  void header(const std::vector<std::string>& cols);
  void row(const std::vector<std::string>& cells);
  void save(const std::string& path) const;  // atomic
};

}  // namespace btlab
