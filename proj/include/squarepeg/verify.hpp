#pragma once

#include <functional>
#include <string>
#include <vector>

namespace squarepeg {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  int threads = 0;  // 0 picks a sensible hardware default
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options = {});

bool all_passed(const std::vector<CriterionResult>& results);
std::string format_result_line(const CriterionResult& result);

}  // namespace squarepeg
