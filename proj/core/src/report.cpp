#include "clonekit/report.hpp"

#include <algorithm>
#include <sstream>

namespace clonekit {

void ExperimentReport::add_pass(const std::string& id, const std::string& details) {
  checks.push_back({id, CheckResult::Status::pass, "", details});
}

void ExperimentReport::add_fail(const std::string& id, const std::string& details) {
  checks.push_back({id, CheckResult::Status::fail, "", details});
}

void ExperimentReport::add_skip(const std::string& id, const std::string& reason) {
  checks.push_back({id, CheckResult::Status::skip, reason, ""});
}

void ExperimentReport::add(const std::string& id, bool pass, const std::string& details) {
  if (pass)
    add_pass(id, details);
  else
    add_fail(id, details);
}

int ExperimentReport::failures() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.status == CheckResult::Status::fail;
  }));
}

int ExperimentReport::skips() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.status == CheckResult::Status::skip;
  }));
}

int ExperimentReport::exit_code() const {
  if (failures() > 0)
    return 2;
  if (skips() > 0)
    return 3;
  return 0;
}

namespace {

const char* status_name(CheckResult::Status s) {
  switch (s) {
  case CheckResult::Status::pass:
    return "pass";
  case CheckResult::Status::fail:
    return "fail";
  case CheckResult::Status::skip:
    return "skip";
  }
  return "?";
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace

nlohmann::json report_to_json(const ExperimentReport& report, bool include_timings) {
  std::vector<CheckResult> sorted = report.checks;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  nlohmann::json j;
  j["experiment"] = report.experiment;
  j["parameters"] = report.parameters;
  j["seed"] = report.seed;
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : sorted) {
    nlohmann::json e;
    e["id"] = c.id;
    e["status"] = status_name(c.status);
    if (!c.reason.empty())
      e["reason"] = c.reason;
    if (!c.details.empty())
      e["details"] = c.details;
    j["checks"].push_back(e);
  }
  j["summary"] = {{"checks", report.checks.size()},
                  {"failures", report.failures()},
                  {"skips", report.skips()}};
  j["digest"] = report_digest(report);
  if (include_timings)
    j["timings_ms"] = report.timings_ms;
  return j;
}

std::string report_digest(const ExperimentReport& report) {
  std::vector<CheckResult> sorted = report.checks;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  nlohmann::json j;
  j["experiment"] = report.experiment;
  j["parameters"] = report.parameters;
  j["seed"] = report.seed;
  j["checks"] = nlohmann::json::array();
  for (const CheckResult& c : sorted)
    j["checks"].push_back({{"id", c.id},
                           {"status", status_name(c.status)},
                           {"reason", c.reason},
                           {"details", c.details}});
  std::ostringstream os;
  os << std::hex << fnv1a(j.dump());
  return os.str();
}

std::string report_to_text(const ExperimentReport& report) {
  std::vector<CheckResult> sorted = report.checks;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  std::ostringstream os;
  os << "experiment: " << report.experiment << " (seed " << report.seed << ")\n";
  for (const CheckResult& c : sorted) {
    os << "  [" << status_name(c.status) << "] " << c.id;
    if (!c.reason.empty())
      os << " -- " << c.reason;
    if (!c.details.empty())
      os << " -- " << c.details;
    os << "\n";
  }
  os << "summary: " << report.checks.size() << " checks, " << report.failures()
     << " failures, " << report.skips() << " skipped; digest " << report_digest(report) << "\n";
  return os.str();
}

} // namespace clonekit
