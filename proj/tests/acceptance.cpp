// Runs every acceptance criterion once and prints one line per criterion.
// Exit status is nonzero when any gating criterion fails.

#include <cstdio>

#include "bellforge/reproduce.hpp"

int main() {
  bellforge::ReproOptions opt;
  opt.scope = bellforge::ReproScope::All;
  opt.on_check = [](const bellforge::ReproCheck& c) {
    const char* verdict = c.status == "pass" ? "PASS" : (c.status == "flag" ? "FLAG" : "FAIL");
    std::printf("criterion %2d %s  %-34s computed %.7f  expected %s  %.3f s\n", c.id, verdict, c.name.c_str(),
                c.computed, c.published.c_str(), c.runtime_s);
    std::printf("              %s\n", c.detail.c_str());
    std::fflush(stdout);
  };
  const auto report = bellforge::run_reproduction(opt);
  int failed = 0;
  for (const auto& c : report.checks) failed += c.ok() ? 0 : 1;
  std::printf("%zu criteria, %d failed\n", report.checks.size(), failed);
  return failed == 0 ? 0 : 1;
}
