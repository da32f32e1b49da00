#pragma once

// Tabular experiment output with CSV and JSON writers. Numbers are printed with
// round-trip precision so identical runs give identical bytes.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace bvlab {

class ExperimentReport {
 public:
  using Cell = std::variant<std::int64_t, double, std::string>;

  ExperimentReport() = default;
  ExperimentReport(std::string name, std::vector<std::string> columns);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  void add_row(std::vector<Cell> row);  // throws ContractError on width mismatch
  double number(std::size_t row, const std::string& column) const;
  std::vector<double> column(const std::string& column) const;

  void note(std::string text) { notes_.push_back(std::move(text)); }
  const std::vector<std::string>& notes() const { return notes_; }

  void set_meta(const std::string& key, const std::string& value) { meta_[key] = value; }
  void set_meta(const std::string& key, double value);
  const std::map<std::string, std::string>& meta() const { return meta_; }

  // Named boolean flags; a raised flag marks a failed tripwire.
  void set_flag(const std::string& key, bool raised) { flags_[key] = raised; }
  const std::map<std::string, bool>& flags() const { return flags_; }
  bool any_flag() const;

  void write_csv(std::ostream& out) const;
  std::string to_csv() const;
  std::string to_json() const;

 private:
  std::string name_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::string> notes_;
  std::map<std::string, std::string> meta_;
  std::map<std::string, bool> flags_;
};

// Shortest "%.17g" style rendering used by every writer.
std::string format_number(double v);

}  // namespace bvlab
