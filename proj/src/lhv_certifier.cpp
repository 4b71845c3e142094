#include "bellforge/lhv_certifier.hpp"

#include <bit>
#include <limits>
#include <numeric>

namespace bellforge {

namespace {

struct IntTerm {
  std::uint32_t support;
  std::uint32_t minus;
  std::int64_t weight;  // weight * scale
  int sign;
  int order;
};

struct Integerized {
  int n = 0;
  std::int64_t scale = 1;
  std::int64_t bound = 0;
  std::vector<IntTerm> terms;
};

Integerized integerize(const BellInequality& ineq, int max_parties) {
  const int n = ineq.parties();
  if (n > max_parties) throw NTooLarge("vertex enumeration limited to N <= " + std::to_string(max_parties));
  Integerized out;
  out.n = n;
  out.scale = ineq.bound().denominator();
  for (const auto& t : ineq.terms()) out.scale = std::lcm(out.scale, t.weight.denominator());
  out.bound = (ineq.bound() * out.scale).numerator();
  for (const auto& t : ineq.terms()) {
    const Rational w = t.weight * out.scale;
    out.terms.push_back({t.pattern.support_mask(), t.pattern.minus_mask(), w.numerator(), t.sign, t.pattern.order()});
  }
  return out;
}

struct Extremes {
  std::int64_t max_abs = std::numeric_limits<std::int64_t>::min();
  std::uint64_t max_abs_code = 0;
  std::int64_t min = std::numeric_limits<std::int64_t>::max();
  std::uint64_t min_code = 0;
  std::int64_t max = std::numeric_limits<std::int64_t>::min();
  std::uint64_t max_code = 0;
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;
  std::uint64_t count = 0;

  // Ties keep the lower code; chunks are merged in code order.
  void merge(const Extremes& o) {
    if (o.count == 0) return;
    if (o.max_abs > max_abs) {
      max_abs = o.max_abs;
      max_abs_code = o.max_abs_code;
    }
    if (o.min < min) {
      min = o.min;
      min_code = o.min_code;
    }
    if (o.max > max) {
      max = o.max;
      max_code = o.max_code;
    }
    plus += o.plus;
    minus += o.minus;
    count += o.count;
  }
};

Extremes scan_range(const Integerized& q, bool wrapped, std::uint64_t begin, std::uint64_t end) {
  Extremes e;
  for (std::uint64_t code = begin; code < end; ++code) {
    std::uint32_t equal = 0;
    std::uint32_t first_negative = 0;
    for (int j = 0; j < q.n; ++j) {
      const auto a1 = static_cast<std::uint32_t>(code >> (2 * j)) & 1u;
      const auto a2 = static_cast<std::uint32_t>(code >> (2 * j + 1)) & 1u;
      equal |= (a1 == a2 ? 1u : 0u) << j;
      first_negative |= a1 << j;
    }
    std::int64_t signed_value = 0;
    std::int64_t wrapped_value = 0;
    for (const auto& t : q.terms) {
      if ((~equal & t.support) != t.minus) continue;
      const std::int64_t magnitude = t.weight << t.order;
      wrapped_value += magnitude;
      const bool negative = std::popcount(first_negative & t.support) & 1;
      signed_value += (negative != (t.sign < 0)) ? -magnitude : magnitude;
    }
    const std::int64_t abs_value = wrapped ? wrapped_value : (signed_value < 0 ? -signed_value : signed_value);
    if (abs_value > e.max_abs) {
      e.max_abs = abs_value;
      e.max_abs_code = code;
    }
    if (signed_value < e.min) {
      e.min = signed_value;
      e.min_code = code;
    }
    if (signed_value > e.max) {
      e.max = signed_value;
      e.max_code = code;
    }
    if (signed_value == q.bound) ++e.plus;
    if (signed_value == -q.bound) ++e.minus;
    ++e.count;
  }
  return e;
}

BoundReport finish(const Integerized& q, bool wrapped, const Extremes& e) {
  BoundReport r;
  r.wrapped = wrapped;
  r.max_abs = Rational(e.max_abs, q.scale);
  r.signed_min = Rational(e.min, q.scale);
  r.signed_max = Rational(e.max, q.scale);
  r.plus_count = e.plus;
  r.minus_count = e.minus;
  r.assignments = e.count;
  r.is_mirror = e.plus + e.minus == e.count;
  r.witness_max_abs = Assignment(q.n, e.max_abs_code);
  r.witness_min = Assignment(q.n, e.min_code);
  r.witness_max = Assignment(q.n, e.max_code);
  return r;
}

constexpr std::uint64_t kChunks = 256;
constexpr std::uint64_t kParallelAssignments = 1u << 12;

}  // namespace

BoundReport certify_bound(const BellInequality& ineq, bool wrapped, int max_parties) {
  const auto q = integerize(ineq, max_parties);
  const std::uint64_t total = std::uint64_t{1} << (2 * q.n);
  if (total < kParallelAssignments) return finish(q, wrapped, scan_range(q, wrapped, 0, total));

  std::vector<Extremes> parts(kChunks);
  const std::uint64_t step = (total + kChunks - 1) / kChunks;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(kChunks); ++c) {
    const std::uint64_t begin = std::min(total, static_cast<std::uint64_t>(c) * step);
    const std::uint64_t end = std::min(total, begin + step);
    parts[c] = scan_range(q, wrapped, begin, end);
  }
  Extremes all;
  for (const auto& p : parts) all.merge(p);
  return finish(q, wrapped, all);
}

BoundReport certify_bound_serial(const BellInequality& ineq, bool wrapped, int max_parties) {
  const auto q = integerize(ineq, max_parties);
  return finish(q, wrapped, scan_range(q, wrapped, 0, std::uint64_t{1} << (2 * q.n)));
}

MirrorReport mirror_check(const BellInequality& ineq, int max_parties) {
  const auto r = certify_bound(ineq, false, max_parties);
  return {r.is_mirror, r.plus_count, r.minus_count, r.assignments};
}

VertexTensor::VertexTensor(int n, std::vector<int> entries) : n_(n), entries_(std::move(entries)) {
  std::size_t expected = 1;
  for (int j = 0; j < n; ++j) expected *= 3;
  if (entries_.size() != expected) throw DimensionMismatch("vertex tensor needs 3^N entries");
}

int VertexTensor::at(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != n_) throw LengthMismatch("index length differs from party count");
  std::size_t flat = 0;
  for (int i : index) {
    if (i < 1 || i > 3) throw InvalidConfig("vertex tensor indices are 1, 2 or 3");
    flat = flat * 3 + static_cast<std::size_t>(i - 1);
  }
  return entries_[flat];
}

VertexTensor vertex_tensor(const Assignment& a) {
  const int n = a.parties();
  std::vector<int> entries{1};
  for (int j = 0; j < n; ++j) {
    const int v[3] = {a.value(j, 1), a.value(j, 2), 1};
    std::vector<int> next;
    next.reserve(entries.size() * 3);
    for (int e : entries) {
      for (int k = 0; k < 3; ++k) next.push_back(e * v[k]);
    }
    entries = std::move(next);
  }
  return VertexTensor(n, std::move(entries));
}

std::int64_t contract(const VertexTensor& t, const SignPattern& p) {
  const int n = t.parties();
  if (p.size() != n) throw LengthMismatch("pattern length differs from tensor order");
  std::int64_t total = 0;
  std::size_t flat = 0;
  for (const int e : t.entries()) {
    // Decode the base-3 digits of `flat`, party 1 most significant.
    std::int64_t coeff = 1;
    std::size_t rest = flat;
    for (int j = n - 1; j >= 0 && coeff != 0; --j) {
      const int digit = static_cast<int>(rest % 3);
      rest /= 3;
      switch (p.at(j)) {
        case Symbol::Plus: coeff *= digit == 2 ? 0 : 1; break;
        case Symbol::Minus: coeff *= digit == 2 ? 0 : (digit == 0 ? 1 : -1); break;
        case Symbol::Zero: coeff *= digit == 2 ? 1 : 0; break;
      }
    }
    total += coeff * e;
    ++flat;
  }
  return total;
}

}  // namespace bellforge
