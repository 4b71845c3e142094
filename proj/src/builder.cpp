#include "bellforge/builder.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>

namespace bellforge {

Rational builder_weight(const SignPattern& p) {
  return Rational(std::int64_t{1} << p.zero_count(), std::int64_t{1} << p.size());
}

BellInequality full_seed(int n, int max_parties) {
  if (n < 2) throw InvalidConfig("the seed needs at least two parties");
  if (n > max_parties) {
    throw NTooLarge("seed enumeration limited to N <= " + std::to_string(max_parties));
  }
  std::vector<BellTerm> terms;
  terms.reserve(std::size_t{1} << n);
  for (std::uint32_t code = 0; code < (1u << n); ++code) {
    terms.push_back({SignPattern::from_code(n, code), Rational(1, std::int64_t{1} << n)});
  }
  return BellInequality(n, std::move(terms), Rational(1), "seed n=" + std::to_string(n));
}

namespace {

std::uint32_t position_mask(int n, std::span<const int> positions) {
  std::uint32_t mask = 0;
  for (int j : positions) {
    if (j < 0 || j >= n) throw InvalidConfig("party index out of range");
    if (mask >> j & 1u) throw InvalidConfig("repeated party index");
    mask |= 1u << j;
  }
  if (mask == 0) throw InvalidConfig("no positions to merge");
  return mask;
}

}  // namespace

std::vector<SignPattern> sibling_block(const SignPattern& base, std::span<const int> positions) {
  const std::uint32_t mask = position_mask(base.size(), positions);
  std::vector<SignPattern> block;
  std::uint32_t sub = 0;
  do {
    block.push_back(SignPattern::from_masks(base.size(), base.support_mask() | mask,
                                            (base.minus_mask() & ~mask) | sub));
    sub = (sub - mask) & mask;
  } while (sub != 0);
  std::sort(block.begin(), block.end());
  return block;
}

BellInequality pair_reduce(const BellInequality& ineq, std::span<const SignPattern> block,
                           std::span<const int> positions) {
  const int n = ineq.parties();
  const std::uint32_t mask = position_mask(n, positions);
  if (block.empty()) throw BlockIncomplete("empty block");
  for (const auto& p : block) {
    if (p.size() != n) throw LengthMismatch("block pattern length differs from party count");
  }

  std::vector<SignPattern> given(block.begin(), block.end());
  std::sort(given.begin(), given.end());
  const auto expected = sibling_block(block.front(), positions);
  if (given != expected) {
    throw BlockIncomplete("block must be the " + std::to_string(expected.size()) +
                          " sign fillings of the merged positions");
  }

  std::optional<BellTerm> first;
  for (const auto& p : expected) {
    const auto term = ineq.find(p);
    if (!term) throw BlockIncomplete("pattern " + p.str() + " is not a term of the inequality");
    if (first && (term->weight != first->weight || term->sign != first->sign)) {
      throw WeightMismatch("block terms " + first->pattern.str() + " and " + p.str() +
                           " carry different weights or signs");
    }
    if (!first) first = term;
  }

  std::vector<BellTerm> terms;
  for (const auto& t : ineq.terms()) {
    if (!std::binary_search(expected.begin(), expected.end(), t.pattern)) terms.push_back(t);
  }
  const SignPattern merged = SignPattern::from_masks(n, block.front().support_mask() & ~mask,
                                                     block.front().minus_mask() & ~mask);
  terms.push_back({merged, first->weight * Rational(std::int64_t{1} << std::popcount(mask)), first->sign});
  return BellInequality(n, std::move(terms), ineq.bound(), ineq.label());
}

namespace {

class CoverageSet {
 public:
  explicit CoverageSet(int n) : hits_(std::size_t{1} << n, 0) {}

  // True when every orbit member's covered strings are free and pairwise disjoint.
  bool fits(const std::vector<SignPattern>& orbit) {
    std::vector<std::uint32_t> touched;
    bool ok = true;
    for (const auto& p : orbit) {
      for_each_covered(p, [&](std::uint32_t code) {
        if (!ok) return;
        if (hits_[code]) {
          ok = false;
          return;
        }
        hits_[code] = 2;
        touched.push_back(code);
      });
      if (!ok) break;
    }
    for (auto code : touched) hits_[code] = 0;
    return ok;
  }

  void add(const std::vector<SignPattern>& orbit) {
    for (const auto& p : orbit) {
      for_each_covered(p, [&](std::uint32_t code) {
        hits_[code] = 1;
        ++mass_;
      });
    }
  }

  std::int64_t mass() const noexcept { return mass_; }
  bool covered(std::uint32_t code) const { return hits_[code] != 0; }

 private:
  std::vector<std::uint8_t> hits_;
  std::int64_t mass_ = 0;
};

SignPattern draw_candidate(int n, int k, std::mt19937_64& rng) {
  std::vector<int> parties(n);
  for (int j = 0; j < n; ++j) parties[j] = j;
  std::uint32_t zeros = 0;
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(parties[i], parties[pick(rng)]);
    zeros |= 1u << parties[i];
  }
  const std::uint32_t full = (1u << n) - 1u;
  const std::uint32_t support = full & ~zeros;
  const auto minus = static_cast<std::uint32_t>(rng()) & support;
  return SignPattern::from_masks(n, support, minus);
}

// Every k-ZERO pattern, canonically ordered.
std::vector<SignPattern> all_candidates(int n, int k) {
  std::vector<SignPattern> out;
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t zeros = 0; zeros <= full; ++zeros) {
    if (std::popcount(zeros) != k) continue;
    const std::uint32_t support = full & ~zeros;
    std::uint32_t minus = 0;
    do {
      out.push_back(SignPattern::from_masks(n, support, minus));
      minus = (minus - support) & support;
    } while (minus != 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

GeneratorResult generate_cp_set(const GeneratorConfig& cfg) {
  const int n = cfg.n;
  if (n < 2 || n > 20) throw InvalidConfig("generator supports 2 <= N <= 20");
  if (cfg.k < 1 || cfg.k >= n) throw InvalidConfig("generator needs 1 <= k < N");
  if (cfg.max_draws <= 0 || cfg.stall_draws <= 0) throw InvalidConfig("draw budgets must be positive");

  const std::int64_t total = std::int64_t{1} << n;
  std::mt19937_64 rng(cfg.seed);
  CoverageSet coverage(n);
  std::set<SignPattern> accepted;
  GeneratorResult result;

  const std::uint32_t full = (1u << n) - 1u;
  const std::vector<SignPattern> extremes{SignPattern::from_code(n, 0), SignPattern::from_code(n, full)};
  for (const auto& e : extremes) {
    coverage.add({e});
    accepted.insert(e);
  }

  const auto accept = [&](const std::vector<SignPattern>& orbit) {
    coverage.add(orbit);
    accepted.insert(orbit.begin(), orbit.end());
    ++result.orbits;
  };

  long rejections = 0;
  bool exhausted_candidates = false;
  while (coverage.mass() < total && result.draws < cfg.max_draws) {
    if (rejections >= cfg.stall_draws) {
      // Rejection sampling has stalled: enumerate the orbits that still fit
      // and draw uniformly among them.
      std::vector<std::vector<SignPattern>> fitting;
      std::set<SignPattern> seen;
      for (const auto& c : all_candidates(n, cfg.k)) {
        if (seen.count(c)) continue;
        auto orbit = cyclic_orbit(c);
        seen.insert(orbit.begin(), orbit.end());
        if (coverage.fits(orbit)) fitting.push_back(std::move(orbit));
      }
      if (fitting.empty()) {
        exhausted_candidates = true;
        break;
      }
      std::uniform_int_distribution<std::size_t> pick(0, fitting.size() - 1);
      accept(fitting[pick(rng)]);
      ++result.draws;
      rejections = 0;
      continue;
    }
    ++result.draws;
    const auto orbit = cyclic_orbit(draw_candidate(n, cfg.k, rng));
    if (coverage.fits(orbit)) {
      accept(orbit);
      rejections = 0;
    } else {
      ++rejections;
    }
  }

  if (coverage.mass() < total && exhausted_candidates && cfg.fill_residual) {
    // Accepted coverage is rotation closed, so whatever is left splits into
    // whole orbits of ZERO-free strings.
    for (std::uint32_t code = 0; code <= full; ++code) {
      if (coverage.covered(code)) continue;
      const auto orbit = cyclic_orbit(SignPattern::from_code(n, code));
      coverage.add(orbit);
      accepted.insert(orbit.begin(), orbit.end());
      ++result.residual_orbits;
    }
  }

  std::vector<BellTerm> terms;
  for (const auto& p : accepted) terms.push_back({p, builder_weight(p)});
  const std::string label = "cp-set n=" + std::to_string(n) + " k=" + std::to_string(cfg.k) +
                            " seed=" + std::to_string(cfg.seed);
  result.inequality = BellInequality(n, std::move(terms), Rational(1), label);
  result.mass = coverage.mass();
  result.complete = result.mass == total;
  if (result.complete) {
    result.diagnostic = std::to_string(result.orbits) + " orbits with " + std::to_string(cfg.k) + " ZEROs";
    if (result.residual_orbits > 0) {
      result.diagnostic += ", " + std::to_string(result.residual_orbits) + " ZERO-free residual orbits";
    }
  } else if (exhausted_candidates) {
    result.diagnostic = "no orbit with " + std::to_string(cfg.k) + " ZEROs fits; " +
                        std::to_string(total - result.mass) + " strings uncovered";
  } else {
    result.diagnostic = "draw budget of " + std::to_string(cfg.max_draws) + " exhausted with " +
                        std::to_string(total - result.mass) + " strings uncovered";
  }
  return result;
}

BellInequality drop_extremes(const BellInequality& ineq) {
  const int n = ineq.parties();
  const SignPattern plus = SignPattern::from_code(n, 0);
  const SignPattern minus = SignPattern::from_code(n, (1u << n) - 1u);
  if (!ineq.contains(plus) || !ineq.contains(minus)) {
    throw ExtremesAbsent("inequality lacks the all-PLUS or all-MINUS term");
  }
  std::vector<BellTerm> terms;
  for (const auto& t : ineq.terms()) {
    if (!(t.pattern == plus) && !(t.pattern == minus)) terms.push_back(t);
  }
  const std::string label = ineq.label().empty() ? "" : ineq.label() + " without extremes";
  return BellInequality(n, std::move(terms), ineq.bound(), label);
}

}  // namespace bellforge
