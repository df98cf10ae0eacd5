#include "mgi/report.hpp"

#include <sstream>

#include "json.hpp"

namespace mgi {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json record_to_json(const CheckRecord& r) {
  ordered_json j;
  j["check"] = r.id;
  j["anchor"] = r.anchor;
  j["expected"] = r.expected;
  j["observed"] = r.observed;
  j["pass"] = r.pass;
  j["wall_ms"] = r.wall_ms;
  return j;
}

ordered_json report_to_json_obj(const Report& rep) {
  ordered_json j;
  j["suite"] = rep.suite();
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : rep.params()) params[k] = v;
  j["parameters"] = params;
  ordered_json records = ordered_json::array();
  for (const CheckRecord& r : rep.records()) records.push_back(record_to_json(r));
  j["records"] = records;
  j["pass"] = rep.all_pass();
  j["failures"] = rep.failure_count();
  j["wall_ms"] = rep.wall_ms;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

void report_to_csv_rows(const Report& rep, std::ostringstream& os) {
  for (const CheckRecord& r : rep.records()) {
    os << csv_escape(rep.suite()) << "," << csv_escape(r.id) << ","
       << csv_escape(r.anchor) << "," << csv_escape(r.expected) << ","
       << csv_escape(r.observed) << "," << (r.pass ? "pass" : "FAIL") << ","
       << r.wall_ms << "\n";
  }
}

void report_to_md_rows(const Report& rep, std::ostringstream& os) {
  os << "## suite: " << rep.suite() << "\n\n";
  if (!rep.params().empty()) {
    for (const auto& [k, v] : rep.params()) os << "- " << k << ": " << v << "\n";
    os << "\n";
  }
  os << "| check | anchor | expected | observed | pass |\n";
  os << "|---|---|---|---|---|\n";
  for (const CheckRecord& r : rep.records()) {
    std::string anchor = r.anchor;
    for (auto pos = anchor.find('|'); pos != std::string::npos;
         pos = anchor.find('|', pos + 2))
      anchor.replace(pos, 1, "\\|");
    os << "| " << r.id << " | " << anchor << " | " << r.expected << " | "
       << r.observed << " | " << (r.pass ? "pass" : "**FAIL**") << " |\n";
  }
  os << "\n**result: " << (rep.all_pass() ? "PASS" : "FAIL") << "** ("
     << rep.records().size() << " checks, " << rep.failure_count()
     << " failures)\n";
}

}  // namespace

void Report::set_param(const std::string& key, const std::string& value) {
  for (auto& [k, v] : params_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  params_.emplace_back(key, value);
}

void Report::add(CheckRecord r) { records_.push_back(std::move(r)); }

void Report::add(const std::string& id, const std::string& anchor,
                 const std::string& expected, const std::string& observed) {
  records_.push_back({id, anchor, expected, observed, expected == observed, 0});
}

void Report::add_bool(const std::string& id, const std::string& anchor, bool ok) {
  records_.push_back({id, anchor, "true", ok ? "true" : "false", ok, 0});
}

bool Report::all_pass() const {
  for (const CheckRecord& r : records_)
    if (!r.pass) return false;
  return true;
}

std::size_t Report::failure_count() const {
  std::size_t n = 0;
  for (const CheckRecord& r : records_)
    if (!r.pass) ++n;
  return n;
}

std::string Report::to_json() const { return report_to_json_obj(*this).dump(2) + "\n"; }

std::string Report::to_csv() const {
  std::ostringstream os;
  os << "suite,check,anchor,expected,observed,pass,wall_ms\n";
  report_to_csv_rows(*this, os);
  return os.str();
}

std::string Report::to_markdown() const {
  std::ostringstream os;
  report_to_md_rows(*this, os);
  return os.str();
}

std::string reports_to_json(const std::vector<Report>& reports) {
  ordered_json j;
  j["suite"] = "all";
  ordered_json arr = ordered_json::array();
  bool pass = true;
  std::size_t failures = 0;
  long long wall = 0;
  for (const Report& r : reports) {
    arr.push_back(report_to_json_obj(r));
    pass = pass && r.all_pass();
    failures += r.failure_count();
    wall += r.wall_ms;
  }
  j["reports"] = arr;
  j["pass"] = pass;
  j["failures"] = failures;
  j["wall_ms"] = wall;
  return j.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<Report>& reports) {
  std::ostringstream os;
  os << "suite,check,anchor,expected,observed,pass,wall_ms\n";
  for (const Report& r : reports) report_to_csv_rows(r, os);
  return os.str();
}

std::string reports_to_markdown(const std::vector<Report>& reports) {
  std::ostringstream os;
  os << "# verification reports\n\n";
  for (const Report& r : reports) {
    report_to_md_rows(r, os);
    os << "\n";
  }
  return os.str();
}

}  // namespace mgi
