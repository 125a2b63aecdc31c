#ifndef FGPD_REPORT_HPP_
#define FGPD_REPORT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "fgpd/types.hpp"

namespace fgpd {

enum class Severity {
  malformed,  // a table is not well formed (out of range, off its domain)
  violation,  // an axiom or law fails
  derived,    // a consequence of the axioms fails; never expected alone
};

std::string_view to_string(Severity s);

struct Violation {
  std::string rule;
  std::vector<std::string> witness;
  std::string message;
  Severity severity = Severity::violation;

  bool operator==(const Violation&) const = default;
};

// Collects every violation found by a validator, not just the first.
class ValidationReport {
 public:
  ValidationReport() = default;

  bool ok() const { return violations_.empty(); }
  explicit operator bool() const { return ok(); }

  void add(std::string rule, std::vector<std::string> witness,
           std::string message, Severity severity = Severity::violation);
  void merge(const ValidationReport& other);

  const std::vector<Violation>& violations() const { return violations_; }
  std::size_t size() const { return violations_.size(); }

  bool has(std::string_view rule) const;
  bool has_malformed() const;
  std::size_t count(std::string_view rule) const;

  // One line per violation: "<rule> [w1, w2]: message".
  std::string to_string() const;

 private:
  std::vector<Violation> violations_;
};

// Thrown by constructors whose output failed its own validator.
class InvalidStructureError : public Error {
 public:
  explicit InvalidStructureError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace fgpd

#endif  // FGPD_REPORT_HPP_
