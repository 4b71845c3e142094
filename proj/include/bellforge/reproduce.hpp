#pragma once

// The reproduction suite: one check per acceptance criterion, each with the
// published value, the computed value, its tolerance and wall time.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bellforge/io.hpp"

namespace bellforge {

enum class ReproScope { Fast, All };

struct ReproCheck {
  int id = 0;
  std::string name;
  std::string published;
  double computed = 0.0;
  double tolerance = 0.0;
  // "pass", "fail", or "flag" (reported mismatch on a non-gating check).
  std::string status;
  bool gating = true;
  double runtime_s = 0.0;
  double budget_s = 0.0;
  std::string detail;

  bool ok() const { return status != "fail"; }
};

struct ReproReport {
  ReproScope scope = ReproScope::All;
  std::uint64_t seed = 0;
  std::vector<ReproCheck> checks;

  bool ok() const;
};

struct ReproOptions {
  ReproScope scope = ReproScope::All;
  std::uint64_t seed = 0;
  // Ids to run; empty means all.
  std::vector<int> only;
  std::function<void(const ReproCheck&)> on_check;
};

ReproReport run_reproduction(const ReproOptions& options = {});

std::string render(const ReproReport& r);
Json to_json(const ReproReport& r);
std::string to_string(ReproScope s);

}  // namespace bellforge
