#include "sgk/report.hpp"

#include <cstdio>
#include <sstream>

namespace sgk {

void Report::add(bool pass, const std::string& check, const std::string& detail) {
  std::string name = suite_.empty() ? check : suite_ + "." + check;
  lines_.push_back({pass, std::move(name), detail});
}

void Report::merge(const Report& other) {
  lines_.insert(lines_.end(), other.lines_.begin(), other.lines_.end());
}

std::size_t Report::pass_count() const {
  std::size_t n = 0;
  for (const auto& l : lines_) n += l.pass ? 1 : 0;
  return n;
}

std::size_t Report::fail_count() const { return lines_.size() - pass_count(); }

const ReportLine* Report::first_failure() const {
  for (const auto& l : lines_)
    if (!l.pass) return &l;
  return nullptr;
}

std::string Report::text() const {
  std::ostringstream os;
  for (const auto& l : lines_) {
    os << (l.pass ? "PASS " : "FAIL ") << l.check;
    if (!l.detail.empty()) os << ' ' << l.detail;
    os << '\n';
  }
  return os.str();
}

std::string Report::summary_json(std::optional<double> elapsed_seconds) const {
  std::ostringstream os;
  os << "{\"pass\":" << pass_count() << ",\"fail\":" << fail_count() << ",\"elapsed\":";
  if (elapsed_seconds) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", *elapsed_seconds);
    os << buf;
  } else {
    os << "null";
  }
  os << "}";
  return os.str();
}

}  // namespace sgk
