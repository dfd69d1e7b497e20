#pragma once

// The acceptance suite: twelve criteria, each a bundle of exact checks
// against brute-force or independent closed-form evaluations.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace padicsym {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  int threads = 1;
  std::int64_t mc_samples = 100'000;
};

inline constexpr int kCriterionCount = 12;

CriterionResult run_criterion(int id, const AcceptanceOptions& opts);

/// Runs every criterion in order; on_result is called as each one finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  C7  isotropy  (1.2 s)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace padicsym
