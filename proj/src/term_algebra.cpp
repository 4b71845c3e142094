#include "bellforge/term_algebra.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace bellforge {

char to_char(Symbol s) {
  switch (s) {
    case Symbol::Plus: return '+';
    case Symbol::Minus: return '-';
    case Symbol::Zero: return '0';
  }
  return '?';
}

SignPattern::SignPattern(std::span<const Symbol> symbols) {
  if (symbols.size() < 1 || symbols.size() > static_cast<std::size_t>(kMaxParties)) {
    throw InvalidPattern("pattern length must be in [1, " + std::to_string(kMaxParties) + "]");
  }
  n_ = static_cast<int>(symbols.size());
  for (int j = 0; j < n_; ++j) {
    switch (symbols[j]) {
      case Symbol::Plus: support_ |= 1u << j; break;
      case Symbol::Minus:
        support_ |= 1u << j;
        minus_ |= 1u << j;
        break;
      case Symbol::Zero: break;
    }
  }
  if (support_ == 0) throw InvalidPattern("the all-ZERO pattern is not a Bell term");
}

SignPattern SignPattern::parse(std::string_view text) {
  std::vector<Symbol> symbols;
  symbols.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '+': symbols.push_back(Symbol::Plus); break;
      case '-': symbols.push_back(Symbol::Minus); break;
      case '0': symbols.push_back(Symbol::Zero); break;
      default:
        throw InvalidPattern("unexpected character '" + std::string(1, c) + "' in pattern \"" +
                             std::string(text) + "\"");
    }
  }
  return SignPattern(symbols);
}

SignPattern SignPattern::from_code(int n, std::uint32_t code) {
  return from_masks(n, (1u << n) - 1u, code);
}

SignPattern SignPattern::from_masks(int n, std::uint32_t support, std::uint32_t minus) {
  if (n < 1 || n > kMaxParties) throw InvalidPattern("pattern length out of range");
  const std::uint32_t full = (1u << n) - 1u;
  if ((support & ~full) != 0 || (minus & ~support) != 0) {
    throw InvalidPattern("inconsistent pattern masks");
  }
  if (support == 0) throw InvalidPattern("the all-ZERO pattern is not a Bell term");
  SignPattern p;
  p.n_ = n;
  p.support_ = support;
  p.minus_ = minus;
  return p;
}

Symbol SignPattern::at(int j) const {
  if (j < 0 || j >= n_) throw InvalidPattern("pattern index out of range");
  if (!(support_ >> j & 1u)) return Symbol::Zero;
  return (minus_ >> j & 1u) ? Symbol::Minus : Symbol::Plus;
}

int SignPattern::order() const noexcept { return std::popcount(support_); }

SignPattern SignPattern::rotated(int shift) const {
  shift %= n_;
  if (shift < 0) shift += n_;
  const auto rot = [&](std::uint32_t m) {
    if (shift == 0) return m;
    return ((m << shift) | (m >> (n_ - shift))) & full_mask();
  };
  SignPattern p = *this;
  p.support_ = rot(support_);
  p.minus_ = rot(minus_);
  return p;
}

std::string SignPattern::str() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int j = 0; j < n_; ++j) s[j] = to_char(at(j));
  return s;
}

std::strong_ordering SignPattern::operator<=>(const SignPattern& other) const {
  const int common = std::min(n_, other.n_);
  for (int j = 0; j < common; ++j) {
    const auto a = static_cast<int>(at(j));
    const auto b = static_cast<int>(other.at(j));
    if (a != b) return a <=> b;
  }
  return n_ <=> other.n_;
}

Assignment::Assignment(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n < 1 || n > 31) throw InvalidConfig("assignment party count out of range");
  if (n < 32 && (bits >> (2 * n)) != 0) throw InvalidConfig("assignment has stray bits");
}

Assignment Assignment::from_values(std::span<const std::array<int, 2>> values) {
  std::uint64_t bits = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    for (int m = 0; m < 2; ++m) {
      const int v = values[j][m];
      if (v != 1 && v != -1) throw InvalidConfig("assignment entries must be +1 or -1");
      if (v == -1) bits |= std::uint64_t{1} << (2 * j + m);
    }
  }
  return Assignment(static_cast<int>(values.size()), bits);
}

int Assignment::value(int party, int setting) const {
  if (party < 0 || party >= n_ || (setting != 1 && setting != 2)) {
    throw InvalidConfig("assignment index out of range");
  }
  return (bits_ >> (2 * party + (setting - 1)) & 1u) ? -1 : 1;
}

std::uint32_t Assignment::equal_mask() const noexcept {
  std::uint32_t m = 0;
  for (int j = 0; j < n_; ++j) {
    const auto pair = (bits_ >> (2 * j)) & 3u;
    if (pair == 0 || pair == 3) m |= 1u << j;
  }
  return m;
}

std::uint32_t Assignment::first_negative_mask() const noexcept {
  std::uint32_t m = 0;
  for (int j = 0; j < n_; ++j) {
    if ((bits_ >> (2 * j)) & 1u) m |= 1u << j;
  }
  return m;
}

std::string Assignment::str() const {
  std::string s;
  for (int j = 0; j < n_; ++j) {
    if (j) s += ' ';
    s += value(j, 1) > 0 ? '+' : '-';
    s += value(j, 2) > 0 ? '+' : '-';
  }
  return s;
}

BellInequality::BellInequality(int n, std::vector<BellTerm> terms, Rational bound,
                               std::string label)
    : n_(n), terms_(std::move(terms)), bound_(bound), label_(std::move(label)) {
  if (n < 1 || n > kMaxParties) throw InvalidInequality("party count out of range");
  if (bound_ <= 0) throw InvalidInequality("bound must be positive");
  for (const auto& t : terms_) {
    if (t.pattern.size() != n) {
      throw InvalidInequality("term " + t.pattern.str() + " has length " +
                              std::to_string(t.pattern.size()) + ", expected " +
                              std::to_string(n));
    }
    if (t.weight <= 0) throw InvalidInequality("term " + t.pattern.str() + " has non-positive weight");
    if (t.sign != 1 && t.sign != -1) throw InvalidInequality("term sign must be +1 or -1");
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const BellTerm& a, const BellTerm& b) { return a.pattern < b.pattern; });
  const auto dup = std::adjacent_find(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) {
    return a.pattern == b.pattern;
  });
  if (dup != terms_.end()) throw InvalidInequality("pattern " + dup->pattern.str() + " appears twice");
}

bool BellInequality::contains(const SignPattern& p) const { return find(p).has_value(); }

std::optional<BellTerm> BellInequality::find(const SignPattern& p) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), p,
                                   [](const BellTerm& t, const SignPattern& q) { return t.pattern < q; });
  if (it != terms_.end() && it->pattern == p) return *it;
  return std::nullopt;
}

BellInequality BellInequality::with_label(std::string label) const {
  BellInequality copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

bool BellInequality::operator==(const BellInequality& other) const {
  if (n_ != other.n_ || bound_ != other.bound_ || terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& a = terms_[i];
    const auto& b = other.terms_[i];
    if (!(a.pattern == b.pattern) || a.weight != b.weight || a.sign != b.sign) return false;
  }
  return true;
}

std::vector<SignPattern> covered_strings(const SignPattern& pattern) {
  std::vector<SignPattern> out;
  out.reserve(std::size_t{1} << pattern.zero_count());
  for_each_covered(pattern, [&](std::uint32_t code) {
    out.push_back(SignPattern::from_code(pattern.size(), code));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(Completeness c) {
  switch (c) {
    case Completeness::Complete: return "complete";
    case Completeness::ExtremesDropped: return "extremes-dropped";
    case Completeness::Defective: return "defective";
  }
  return "?";
}

MassReport audit_coverage(int n, std::span<const BellTerm> terms) {
  if (n < 1 || n > 26) throw NTooLarge("coverage audit limited to N <= 26");
  std::vector<std::uint8_t> hits(std::size_t{1} << n, 0);
  MassReport report;
  for (const auto& t : terms) {
    if (t.pattern.size() != n) throw LengthMismatch("term length differs from party count");
    report.mass += std::int64_t{1} << t.pattern.zero_count();
    for_each_covered(t.pattern, [&](std::uint32_t code) {
      if (hits[code] < 255) ++hits[code];
    });
  }
  for (std::uint32_t code = 0; code < hits.size(); ++code) {
    if (hits[code] == 0) report.uncovered.push_back(code);
    if (hits[code] > 1) report.overlapping.push_back(code);
  }
  report.disjoint = report.overlapping.empty();
  const std::int64_t total = std::int64_t{1} << n;
  if (report.disjoint && report.mass == total) {
    report.completeness = Completeness::Complete;
  } else if (report.disjoint && report.mass == total - 2 && report.uncovered.size() == 2 &&
             report.uncovered[0] == 0 && report.uncovered[1] == static_cast<std::uint32_t>(total - 1)) {
    report.completeness = Completeness::ExtremesDropped;
  } else {
    report.completeness = Completeness::Defective;
  }
  return report;
}

MassReport mass(const BellInequality& ineq) {
  auto report = audit_coverage(ineq.parties(), ineq.terms());
  if (!report.disjoint) {
    throw OverlapError("full string " +
                       SignPattern::from_code(ineq.parties(), report.overlapping.front()).str() +
                       " is covered by more than one term");
  }
  return report;
}

std::vector<SignPattern> cyclic_orbit(const SignPattern& pattern) {
  std::set<SignPattern> orbit;
  for (int s = 0; s < pattern.size(); ++s) orbit.insert(pattern.rotated(s));
  return {orbit.begin(), orbit.end()};
}

std::int64_t evaluate_term(const SignPattern& pattern, const Assignment& a) {
  if (pattern.size() != a.parties()) throw LengthMismatch("pattern and assignment lengths differ");
  // (A1 + A2) = 2 A1 when the outcomes agree, (A1 - A2) = 2 A1 when they differ.
  const std::uint32_t support = pattern.support_mask();
  if ((~a.equal_mask() & support) != pattern.minus_mask()) return 0;
  const int negatives = std::popcount(a.first_negative_mask() & support);
  const std::int64_t magnitude = std::int64_t{1} << pattern.order();
  return (negatives % 2) ? -magnitude : magnitude;
}

}  // namespace bellforge
