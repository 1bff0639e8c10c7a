#include "qsec/cli/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qsec {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

SuiteRow read_json(const fs::path& p) {
  std::ifstream in(p);
  nlohmann::json j = nlohmann::json::parse(in);
  SuiteRow row;
  row.experiment = j.at("game").get<std::string>();
  row.advantage = j.at("advantage").get<double>();
  row.ci95 = j.at("ci95").get<double>();
  row.pass = j.at("pass").get<bool>();
  return row;
}

SuiteRow read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::string header;
  std::string line;
  if (!std::getline(in, header) || !std::getline(in, line)) throw std::runtime_error("expected a header and one row");
  std::vector<std::string> names = split_csv(trim(header));
  std::vector<std::string> cells = split_csv(trim(line));
  if (names.size() != cells.size()) throw std::runtime_error("row width does not match the header");
  auto cell = [&](const std::string& name) -> const std::string& {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::runtime_error("missing column " + name);
    return cells[static_cast<std::size_t>(it - names.begin())];
  };
  SuiteRow row;
  row.experiment = cell("experiment");
  row.advantage = std::stod(cell("advantage"));
  row.ci95 = std::stod(cell("ci95"));
  const std::string& pass = cell("pass");
  if (pass != "true" && pass != "false") throw std::runtime_error("pass must be true or false");
  row.pass = pass == "true";
  return row;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

}  // namespace

std::size_t SuiteSummary::passed() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.error.empty() && r.pass; }));
}

std::string SuiteSummary::to_markdown() const {
  std::ostringstream os;
  os << "| file | experiment | advantage | ci95 | result |\n";
  os << "|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      os << "| " << r.file << " | | | | ERROR: " << r.error << " |\n";
    } else {
      os << "| " << r.file << " | " << r.experiment << " | " << fmt(r.advantage) << " | " << fmt(r.ci95) << " | "
         << (r.pass ? "PASS" : "FAIL") << " |\n";
    }
  }
  os << "\n" << passed() << "/" << rows.size() << " passed\n";
  return os.str();
}

std::string SuiteSummary::to_csv() const {
  std::ostringstream os;
  os << "file,experiment,advantage,ci95,pass,error\n";
  for (const auto& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    os << r.file << ',' << r.experiment << ',' << fmt(r.advantage) << ',' << fmt(r.ci95) << ','
       << (r.pass ? "true" : "false") << ',' << err << '\n';
  }
  return os.str();
}

SuiteSummary report_suite(const std::string& dir) {
  if (!fs::is_directory(dir)) throw std::invalid_argument("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension();
    if (ext == ".json" || ext == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  SuiteSummary summary;
  for (const auto& f : files) {
    SuiteRow row;
    try {
      row = f.extension() == ".json" ? read_json(f) : read_csv(f);
    } catch (const std::exception& e) {
      row = SuiteRow{};
      row.error = e.what();
    }
    row.file = f.filename().string();
    summary.rows.push_back(std::move(row));
  }
  return summary;
}

}  // namespace qsec
