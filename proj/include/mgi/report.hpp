#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mgi {

// One verified identity or computed quantity inside a suite run.
struct CheckRecord {
  std::string id;        // stable check identifier, unique within a suite
  std::string anchor;    // the identity or formula being checked, as text
  std::string expected;
  std::string observed;
  bool pass = true;
  long long wall_ms = 0;
};

// Machine-readable result of a verification suite. Field ordering in every
// rendering is fixed so that identical inputs give byte-identical output.
class Report {
 public:
  Report() = default;
  explicit Report(std::string suite) : suite_(std::move(suite)) {}

  const std::string& suite() const { return suite_; }
  void set_param(const std::string& key, const std::string& value);
  const std::vector<std::pair<std::string, std::string>>& params() const {
    return params_;
  }

  void add(CheckRecord r);
  void add(const std::string& id, const std::string& anchor,
           const std::string& expected, const std::string& observed);
  void add_bool(const std::string& id, const std::string& anchor, bool ok);

  const std::vector<CheckRecord>& records() const { return records_; }
  bool all_pass() const;
  std::size_t failure_count() const;

  long long wall_ms = 0;

  std::string to_json() const;
  std::string to_csv() const;
  std::string to_markdown() const;

 private:
  std::string suite_;
  std::vector<std::pair<std::string, std::string>> params_;
  std::vector<CheckRecord> records_;
};

// Renders several suite reports as one aggregate document.
std::string reports_to_json(const std::vector<Report>& reports);
std::string reports_to_csv(const std::vector<Report>& reports);
std::string reports_to_markdown(const std::vector<Report>& reports);

}  // namespace mgi
