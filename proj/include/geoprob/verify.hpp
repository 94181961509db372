#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geoprob::verify {

struct Options {
  unsigned threads = 0;        // 0 = hardware concurrency
  std::ostream* log = nullptr; // optional progress stream
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

int criterion_count();

/// Runs one numbered criterion of the verification suite.
CriterionResult run_criterion(int id, const Options& opts = {});

/// Runs the whole suite in order. Long-running; see the individual
/// criteria for scale.
std::vector<CriterionResult> run_all(const Options& opts = {});

bool all_passed(const std::vector<CriterionResult>& results);

/// One "PASS criterion 3: ..." line.
std::string format_result(const CriterionResult& r);

}  // namespace geoprob::verify
