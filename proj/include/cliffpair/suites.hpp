// Randomized verification suites behind `cliffpair suite`.
#ifndef CLIFFPAIR_SUITES_HPP
#define CLIFFPAIR_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace cliffpair {

enum class ReportFormat { text, kv };

struct PropertyResult {
  std::string suite, name;
  int cases = 0, passed = 0;
  std::string first_failure;  // "case <i>: <detail>"

  bool ok() const { return passed == cases; }
};

struct SuiteReport {
  std::vector<PropertyResult> properties;
  bool ok() const;
  std::string str(ReportFormat format) const;
};

std::vector<std::string> suite_names();  // excluding "all"
bool is_suite(const std::string& name);
/// Runs every property of `name` ("all" for every suite). Heavy properties run
/// ceil(n / divisor) cases. Cases are sharded over CLIFFPAIR_THREADS workers; the
/// report is assembled in case order, so it depends only on (name, seed, n).
SuiteReport run_suite(const std::string& name, std::uint64_t seed, int n);

/// Worker count from CLIFFPAIR_THREADS (default: hardware concurrency, at least 1).
int worker_count();

}  // namespace cliffpair

#endif
