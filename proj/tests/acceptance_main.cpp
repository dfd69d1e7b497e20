// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <iostream>
#include <thread>

#include "padicsym/acceptance.hpp"

int main() {
  padicsym::AcceptanceOptions opts;
  opts.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool all = true;
  padicsym::run_acceptance(opts, [&](const padicsym::CriterionResult& r) {
    all = all && r.pass;
    std::cout << padicsym::format_result(r) << std::endl;
  });
  return all ? 0 : 1;
}
