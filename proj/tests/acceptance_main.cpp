#include <cstdio>

#include "squarepeg/verify.hpp"

int main() {
  squarepeg::VerifyOptions options;
  options.on_result = [](const squarepeg::CriterionResult& r) {
    std::puts(squarepeg::format_result_line(r).c_str());
    std::fflush(stdout);
  };
  const auto results = squarepeg::run_acceptance(options);
  const bool ok = squarepeg::all_passed(results);
  std::puts(ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return ok ? 0 : 1;
}
