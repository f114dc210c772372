#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sgk {

struct ReportLine {
  bool pass;
  std::string check;  // "<suite>.<check>"
  std::string detail;
};

/// Ordered list of PASS/FAIL lines. Lines keep insertion order; all suites run
/// sequentially so that order is reproducible.
class Report {
 public:
  Report() = default;
  explicit Report(std::string suite) : suite_(std::move(suite)) {}

  const std::string& suite() const { return suite_; }
  void add(bool pass, const std::string& check, const std::string& detail = {});
  void merge(const Report& other);

  const std::vector<ReportLine>& lines() const { return lines_; }
  std::size_t pass_count() const;
  std::size_t fail_count() const;
  bool ok() const { return fail_count() == 0; }
  /// First failing line, if any.
  const ReportLine* first_failure() const;

  std::string text() const;
  std::string summary_json(std::optional<double> elapsed_seconds = std::nullopt) const;

 private:
  std::string suite_;
  std::vector<ReportLine> lines_;
};

}  // namespace sgk
