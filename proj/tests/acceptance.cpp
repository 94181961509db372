// Acceptance suite: runs every verification criterion at full scale and
// prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <cstring>
#include <iostream>

#include "geoprob/verify.hpp"

int main(int argc, char** argv) {
  geoprob::verify::Options opts;
  opts.log = &std::cout;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      opts.threads = static_cast<unsigned>(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: geoprob_acceptance [--criterion N] [--threads N]\n";
      return 2;
    }
  }

  std::vector<geoprob::verify::CriterionResult> results;
  if (only > 0) {
    results.push_back(geoprob::verify::run_criterion(only, opts));
    std::cout << geoprob::verify::format_result(results.back()) << std::endl;
  } else {
    results = geoprob::verify::run_all(opts);
  }
  const bool ok = geoprob::verify::all_passed(results);
  std::cout << (ok ? "acceptance: all criteria passed"
                   : "acceptance: FAILURES present")
            << std::endl;
  return ok ? 0 : 1;
}
