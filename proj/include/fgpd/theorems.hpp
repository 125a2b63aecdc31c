#ifndef FGPD_THEOREMS_HPP_
#define FGPD_THEOREMS_HPP_

// Exhaustive checks of the structural theorems on seeded random instances.
// Reports are deterministic for a given seed and size.

#include <cstdint>
#include <string>
#include <vector>

namespace fgpd {

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::size_t max_size = 16;  // points per bundle
  std::size_t groupoids = 20;
  std::size_t bundles = 30;
  std::size_t pairs = 15;
  std::size_t families = 5;
  std::size_t hs = 10;
};

struct TheoremResult {
  std::string id;
  std::string statement;
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::vector<std::string> failures;  // first few, with witnesses
  std::size_t failure_count = 0;

  bool passed() const { return failure_count == 0; }
};

struct SuiteReport {
  SuiteOptions options;
  std::vector<TheoremResult> results;

  bool passed() const;
  std::string to_text() const;
  std::string to_json() const;  // canonical, sorted keys
};

// Ids in suite order.
std::vector<std::string> theorem_ids();

SuiteReport run_theorem_suite(const SuiteOptions& options);

}  // namespace fgpd

#endif  // FGPD_THEOREMS_HPP_
