#include "bvlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "bvlab/errors.hpp"
#include "json.hpp"

namespace bvlab {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  // Shortest precision that round-trips.
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

ExperimentReport::ExperimentReport(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {}

void ExperimentReport::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw ContractError("report row width does not match columns");
  rows_.push_back(std::move(row));
}

double ExperimentReport::number(std::size_t row, const std::string& column) const {
  const auto it = std::find(columns_.begin(), columns_.end(), column);
  if (it == columns_.end()) throw ContractError("no column " + column);
  const Cell& c = rows_.at(row)[static_cast<std::size_t>(it - columns_.begin())];
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  throw ContractError("column " + column + " is not numeric");
}

std::vector<double> ExperimentReport::column(const std::string& column) const {
  std::vector<double> out;
  for (std::size_t r = 0; r < rows_.size(); ++r) out.push_back(number(r, column));
  return out;
}

void ExperimentReport::set_meta(const std::string& key, double value) { meta_[key] = format_number(value); }

bool ExperimentReport::any_flag() const {
  return std::any_of(flags_.begin(), flags_.end(), [](const auto& kv) { return kv.second; });
}

namespace {

std::string render(const ExperimentReport::Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (const char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

}  // namespace

void ExperimentReport::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << render(row[i]);
    out << '\n';
  }
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

std::string ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  j["columns"] = columns_;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c)) {
        // JSON has no inf/nan; keep them as strings.
        if (std::isfinite(*d))
          r.push_back(*d);
        else
          r.push_back(format_number(*d));
      } else if (const auto* i = std::get_if<std::int64_t>(&c)) {
        r.push_back(*i);
      } else {
        r.push_back(std::get<std::string>(c));
      }
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["notes"] = notes_;
  j["meta"] = meta_;
  j["flags"] = flags_;
  return j.dump(2);
}

}  // namespace bvlab
