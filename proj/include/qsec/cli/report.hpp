#pragma once

#include <string>
#include <vector>

namespace qsec {

struct SuiteRow {
  std::string file;
  std::string experiment;
  double advantage = 0.0;
  double ci95 = 0.0;
  bool pass = false;
  // Non-empty when the file could not be read.
  std::string error;
};

struct SuiteSummary {
  std::vector<SuiteRow> rows;
  std::size_t passed() const;
  std::string to_markdown() const;
  std::string to_csv() const;
};

// Reads every .json and .csv report in the directory, sorted by file name. Files that
// fail to parse become error rows. Throws std::invalid_argument if dir is not a directory.
SuiteSummary report_suite(const std::string& dir);

}  // namespace qsec
