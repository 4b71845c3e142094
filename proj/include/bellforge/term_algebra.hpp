#pragma once

// Sign patterns, Bell terms and inequalities.
//
// A sign pattern is a string over {+, -, 0} of length N. Position j selects
// the bracket (A_1^j + A_2^j) for '+', (A_1^j - A_2^j) for '-', and drops
// party j for '0'. A ZERO-free pattern is a "full string"; a pattern with z
// ZEROs covers the 2^z full strings obtained by filling every ZERO with '+'
// or '-'. Internally a pattern is two bitmasks over party indices
// (bit j <-> party j+1): `support` marks non-ZERO positions and `minus`
// marks MINUS positions. A full string is identified by its minus mask.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bellforge/errors.hpp"
#include "bellforge/rational.hpp"

namespace bellforge {

inline constexpr int kMaxParties = 30;

enum class Symbol : std::uint8_t { Plus = 0, Minus = 1, Zero = 2 };

char to_char(Symbol s);

class SignPattern {
 public:
  SignPattern() = default;
  explicit SignPattern(std::span<const Symbol> symbols);

  // Accepts '+', '-', '0'. Throws InvalidPattern.
  static SignPattern parse(std::string_view text);
  // ZERO-free pattern of length n whose MINUS positions are the set bits of `code`.
  static SignPattern from_code(int n, std::uint32_t code);
  static SignPattern from_masks(int n, std::uint32_t support, std::uint32_t minus);

  int size() const noexcept { return n_; }
  Symbol at(int j) const;
  std::uint32_t support_mask() const noexcept { return support_; }
  std::uint32_t minus_mask() const noexcept { return minus_; }
  std::uint32_t zero_mask() const noexcept { return full_mask() & ~support_; }
  std::uint32_t full_mask() const noexcept { return n_ == 32 ? ~0u : ((1u << n_) - 1u); }
  int zero_count() const noexcept { return n_ - order(); }
  // Number of parties entering the correlation (non-ZERO positions).
  int order() const noexcept;
  bool is_full() const noexcept { return support_ == full_mask(); }

  // Pattern whose symbol at position (j + shift) mod N is this pattern's symbol at j.
  SignPattern rotated(int shift) const;
  std::string str() const;

  bool operator==(const SignPattern&) const = default;
  // Lexicographic over symbols with PLUS < MINUS < ZERO.
  std::strong_ordering operator<=>(const SignPattern& other) const;

 private:
  int n_ = 0;
  std::uint32_t support_ = 0;
  std::uint32_t minus_ = 0;
};

struct BellTerm {
  SignPattern pattern;
  Rational weight{1};
  // Prefix used only by the unwrapped (no-modulus) form; +1 or -1.
  int sign = +1;
};

// The 2N predetermined local outcomes A_m^j in {+1,-1}. Bit 2j of `bits`
// holds A_1^{j+1}, bit 2j+1 holds A_2^{j+1}; a set bit means -1.
class Assignment {
 public:
  Assignment() = default;
  Assignment(int n, std::uint64_t bits);
  // values[j] = {A_1^{j+1}, A_2^{j+1}}.
  static Assignment from_values(std::span<const std::array<int, 2>> values);

  int parties() const noexcept { return n_; }
  std::uint64_t bits() const noexcept { return bits_; }
  // setting is 1 or 2, party is 0-based.
  int value(int party, int setting) const;
  // Parties whose two outcomes agree (bit j set when A_1^j == A_2^j).
  std::uint32_t equal_mask() const noexcept;
  // Parties with A_1^j == -1.
  std::uint32_t first_negative_mask() const noexcept;
  std::string str() const;

 private:
  int n_ = 0;
  std::uint64_t bits_ = 0;
};

class BellInequality {
 public:
  BellInequality() = default;
  // Sorts terms canonically. Throws InvalidInequality on repeated patterns,
  // non-positive weight or bound, bad sign, or a length mismatch.
  BellInequality(int n, std::vector<BellTerm> terms, Rational bound = Rational(1),
                 std::string label = {});

  int parties() const noexcept { return n_; }
  const std::vector<BellTerm>& terms() const noexcept { return terms_; }
  const Rational& bound() const noexcept { return bound_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool contains(const SignPattern& p) const;
  std::optional<BellTerm> find(const SignPattern& p) const;

  BellInequality with_label(std::string label) const;

  bool operator==(const BellInequality& other) const;

 private:
  int n_ = 0;
  std::vector<BellTerm> terms_;
  Rational bound_{1};
  std::string label_;
};

// All ZERO-free strings covered by `pattern`, canonically ordered.
std::vector<SignPattern> covered_strings(const SignPattern& pattern);

// Calls fn(code) for the minus-mask code of every covered full string.
template <class Fn>
void for_each_covered(const SignPattern& pattern, Fn&& fn) {
  const std::uint32_t zeros = pattern.zero_mask();
  std::uint32_t sub = 0;
  do {
    fn(pattern.minus_mask() | sub);
    sub = (sub - zeros) & zeros;
  } while (sub != 0);
}

enum class Completeness { Complete, ExtremesDropped, Defective };

std::string to_string(Completeness c);

struct MassReport {
  std::int64_t mass = 0;
  bool disjoint = true;
  Completeness completeness = Completeness::Defective;
  // Full strings covered by no term (codes, ascending).
  std::vector<std::uint32_t> uncovered;
  // Full strings covered more than once (codes, ascending).
  std::vector<std::uint32_t> overlapping;
};

// Coverage audit of an arbitrary term list; never throws on overlap.
MassReport audit_coverage(int n, std::span<const BellTerm> terms);

// Total covered count of `ineq`; throws OverlapError when two terms share a
// covered full string.
MassReport mass(const BellInequality& ineq);

// Distinct cyclic rotations, canonically ordered.
std::vector<SignPattern> cyclic_orbit(const SignPattern& pattern);

// Product of the selected brackets. Always an integer: 0 or +-2^order.
std::int64_t evaluate_term(const SignPattern& pattern, const Assignment& a);

}  // namespace bellforge
