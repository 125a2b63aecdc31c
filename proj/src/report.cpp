#include "fgpd/report.hpp"

#include <algorithm>
#include <sstream>

namespace fgpd {

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::malformed:
      return "malformed";
    case Severity::violation:
      return "violation";
    case Severity::derived:
      return "derived";
  }
  return "unknown";
}

void ValidationReport::add(std::string rule, std::vector<std::string> witness,
                           std::string message, Severity severity) {
  violations_.push_back(
      {std::move(rule), std::move(witness), std::move(message), severity});
}

void ValidationReport::merge(const ValidationReport& other) {
  violations_.insert(violations_.end(), other.violations_.begin(),
                     other.violations_.end());
}

bool ValidationReport::has(std::string_view rule) const {
  return count(rule) > 0;
}

bool ValidationReport::has_malformed() const {
  return std::any_of(violations_.begin(), violations_.end(), [](auto& v) {
    return v.severity == Severity::malformed;
  });
}

std::size_t ValidationReport::count(std::string_view rule) const {
  return static_cast<std::size_t>(
      std::count_if(violations_.begin(), violations_.end(),
                    [&](auto& v) { return v.rule == rule; }));
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (auto const& v : violations_) {
    out << v.rule << " [";
    for (std::size_t i = 0; i < v.witness.size(); ++i) {
      out << (i ? ", " : "") << v.witness[i];
    }
    out << "]";
    if (!v.message.empty()) {
      out << ": " << v.message;
    }
    if (v.severity != Severity::violation) {
      out << " (" << fgpd::to_string(v.severity) << ")";
    }
    out << '\n';
  }
  return out.str();
}

namespace {
std::string summarize(const ValidationReport& r) {
  std::string s = "invalid structure";
  if (!r.ok()) {
    s += ": " + r.violations().front().rule;
    if (r.size() > 1) {
      s += " (+" + std::to_string(r.size() - 1) + " more)";
    }
  }
  return s;
}
}  // namespace

InvalidStructureError::InvalidStructureError(ValidationReport report)
    : Error(summarize(report)), report_(std::move(report)) {}

}  // namespace fgpd
