#ifndef CLONEKIT_REPORT_HPP
#define CLONEKIT_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace clonekit {

struct CheckResult {
  enum class Status { pass, fail, skip };
  std::string id;
  Status status = Status::pass;
  std::string reason;  // required for skips
  std::string details;
};

// A reproducible experiment record. Checks are kept sorted by id so the
// serialization is independent of completion order; timings default to zero
// so reports are byte-identical at equal seed and budgets.
struct ExperimentReport {
  std::string experiment;
  nlohmann::json parameters;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  std::map<std::string, double> timings_ms;

  void add_pass(const std::string& id, const std::string& details = "");
  void add_fail(const std::string& id, const std::string& details = "");
  void add_skip(const std::string& id, const std::string& reason);
  void add(const std::string& id, bool pass, const std::string& details = "");

  int failures() const;
  int skips() const;
  // 0 all pass, 2 any fail, 3 skips but no fails
  int exit_code() const;
};

// Canonical form: checks sorted by id, timings omitted; the digest is
// FNV-1a 64 over this form.
nlohmann::json report_to_json(const ExperimentReport& report, bool include_timings = false);
std::string report_digest(const ExperimentReport& report);
std::string report_to_text(const ExperimentReport& report);

} // namespace clonekit

#endif
