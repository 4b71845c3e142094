#pragma once

// Structural audit of an inequality document as written.

#include <optional>
#include <string>
#include <vector>

#include "bellforge/io.hpp"
#include "bellforge/lhv_certifier.hpp"
#include "bellforge/term_algebra.hpp"

namespace bellforge {

struct DuplicateRow {
  SignPattern pattern;
  int count = 0;
};

struct LintReport {
  std::string label;
  int n = 0;
  std::size_t rows = 0;
  std::size_t distinct = 0;
  std::vector<DuplicateRow> duplicates;
  // Coverage over the rows as written (duplicates count twice).
  MassReport coverage;
  // Rotations of present patterns that are absent.
  std::vector<SignPattern> missing_rotations;
  bool orbit_closed = true;
  // Rows whose weight differs from 2^zeros / 2^N.
  std::vector<SignPattern> off_weight;
  // Unwrapped mirror status of the de-duplicated inequality; empty above the
  // enumeration ceiling.
  std::optional<MirrorReport> mirror;

  // Complete and disjoint coverage.
  bool ok() const noexcept;
};

LintReport lint(const InequalityDocument& doc, int mirror_max_parties = 10);

std::string render(const LintReport& r);
Json to_json(const LintReport& r);

}  // namespace bellforge
