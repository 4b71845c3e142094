#pragma once

// Constructs inequalities: the full two-setting seed, sibling-block merging,
// the random cyclic-orbit generator and removal of the two extreme terms.

#include <cstdint>
#include <string>
#include <vector>

#include "bellforge/term_algebra.hpp"

namespace bellforge {

inline constexpr int kSeedMaxParties = 12;

// All 2^N ZERO-free patterns, weight 1/2^N each, bound 1.
BellInequality full_seed(int n, int max_parties = kSeedMaxParties);

// The 2^|positions| patterns that equal `base` outside `positions` and carry
// every sign combination at `positions` (0-based party indices).
std::vector<SignPattern> sibling_block(const SignPattern& base, std::span<const int> positions);

// Replaces `block` by one term with ZERO at `positions` and weight scaled by
// 2^|positions|. Throws BlockIncomplete unless block is exactly a sibling
// block of terms present in `ineq`, WeightMismatch unless weights and signs agree.
BellInequality pair_reduce(const BellInequality& ineq, std::span<const SignPattern> block,
                           std::span<const int> positions);

struct GeneratorConfig {
  int n = 5;
  int k = 1;
  std::uint64_t seed = 0;
  long max_draws = 1000000;
  // Consecutive rejections after which the acceptable orbits are enumerated
  // and sampled directly (same law as rejection sampling, bounded cost).
  long stall_draws = 2000;
  // When no k-ZERO orbit fits any more, cover the remaining strings with
  // ZERO-free orbits instead of reporting an incomplete set.
  bool fill_residual = true;
};

struct GeneratorResult {
  BellInequality inequality;
  bool complete = false;
  long draws = 0;
  int orbits = 0;           // k-ZERO orbits accepted
  int residual_orbits = 0;  // ZERO-free orbits added by the residual fill
  std::int64_t mass = 0;
  std::string diagnostic;
};

// Seeded with the all-PLUS and all-MINUS strings; accepts a drawn k-ZERO
// pattern iff its whole cyclic orbit covers strings disjoint from everything
// accepted so far. Identical configs give identical output.
GeneratorResult generate_cp_set(const GeneratorConfig& cfg);

// Removes the all-PLUS and all-MINUS ZERO-free terms. Throws ExtremesAbsent.
BellInequality drop_extremes(const BellInequality& ineq);

// Weight the builder assigns to a pattern: 2^zeros / 2^N.
Rational builder_weight(const SignPattern& p);

}  // namespace bellforge
