#pragma once

// Exact local-realistic bounds by enumerating all 4^N deterministic
// assignments. Assignment codes follow Assignment: bit 2j is A_1^{j+1}, bit
// 2j+1 is A_2^{j+1}, set bit = -1. Enumeration runs in natural code order and
// witnesses are the lowest code attaining each extreme.

#include <cstdint>
#include <vector>

#include "bellforge/term_algebra.hpp"

namespace bellforge {

inline constexpr int kCertifyMaxParties = 14;

struct BoundReport {
  bool wrapped = true;
  // Wrapped: max of sum_t w_t |eval_t|. Unwrapped: max of |sum_t sign_t w_t eval_t|.
  Rational max_abs{0};
  // Extremes of the unwrapped expression sum_t sign_t w_t eval_t.
  Rational signed_min{0};
  Rational signed_max{0};
  // Unwrapped value is exactly +bound or -bound on every assignment.
  bool is_mirror = false;
  std::uint64_t plus_count = 0;   // assignments with unwrapped value == +bound
  std::uint64_t minus_count = 0;  // assignments with unwrapped value == -bound
  std::uint64_t assignments = 0;
  Assignment witness_max_abs;
  Assignment witness_min;
  Assignment witness_max;
};

// OpenMP-parallel over disjoint code ranges. Throws NTooLarge above `max_parties`.
BoundReport certify_bound(const BellInequality& ineq, bool wrapped = true,
                          int max_parties = kCertifyMaxParties);
// Single-threaded reference with identical results.
BoundReport certify_bound_serial(const BellInequality& ineq, bool wrapped = true,
                                 int max_parties = kCertifyMaxParties);

struct MirrorReport {
  bool mirror = false;
  std::uint64_t plus_count = 0;
  std::uint64_t minus_count = 0;
  std::uint64_t assignments = 0;
};

MirrorReport mirror_check(const BellInequality& ineq, int max_parties = kCertifyMaxParties);

// Factorizable vertex tensor: entry(i_1..i_N) = prod_j v_j(i_j) with
// v_j = (A_1^j, A_2^j, 1) and i_j in {1,2,3}; party 1 is the most significant digit.
class VertexTensor {
 public:
  VertexTensor(int n, std::vector<int> entries);

  int parties() const noexcept { return n_; }
  const std::vector<int>& entries() const noexcept { return entries_; }
  // index entries in {1,2,3}.
  int at(std::span<const int> index) const;

 private:
  int n_;
  std::vector<int> entries_;
};

VertexTensor vertex_tensor(const Assignment& a);

// Contraction with PLUS -> v(1)+v(2), MINUS -> v(1)-v(2), ZERO -> v(3).
std::int64_t contract(const VertexTensor& t, const SignPattern& p);

}  // namespace bellforge
