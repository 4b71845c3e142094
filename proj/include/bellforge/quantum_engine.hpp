#pragma once

// Dense N-qubit states, correlation tensors and implicit Bell operators.
//
// Basis ordering: party 1 is the most significant qubit, so party j
// (0-based) lives on bit (N-1-j) of a basis index. Density matrices are
// never formed; a mixed state is a convex list of pure states.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "bellforge/term_algebra.hpp"

namespace bellforge {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

inline constexpr int kMaxQubits = 12;
inline constexpr double kNormTolerance = 1e-10;

class PureState {
 public:
  PureState() = default;
  // Throws InvalidState unless amplitudes.size() == 2^n and, when
  // `normalize` is false, the norm is 1 within kNormTolerance.
  PureState(int n, Amplitudes amplitudes, bool normalize = false);

  static PureState basis(int n, std::uint64_t index);
  // Normalized complex Gaussian vector.
  static PureState random(int n, std::mt19937_64& rng);

  int qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  const Amplitudes& amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(std::uint64_t index) const { return amplitudes_.at(index); }

 private:
  int n_ = 0;
  Amplitudes amplitudes_;
};

class MixedState {
 public:
  struct Component {
    double probability;
    PureState state;
  };

  MixedState() = default;
  MixedState(const PureState& pure);  // NOLINT(google-explicit-constructor)
  // Probabilities must be positive and sum to 1 within kNormTolerance.
  explicit MixedState(std::vector<Component> components);

  int qubits() const noexcept { return components_.empty() ? 0 : components_.front().state.qubits(); }
  const std::vector<Component>& components() const noexcept { return components_; }

 private:
  std::vector<Component> components_;
};

// Row-major 2x2 complex matrix.
using Mat2 = std::array<Complex, 4>;
// Bloch vector (x, y, z).
using Direction = std::array<double, 3>;

Mat2 pauli(int k);
Mat2 observable(const Direction& n);

struct PartySetting {
  Direction first;
  Direction second;
};

class SettingSet {
 public:
  SettingSet() = default;
  // Every direction must have unit norm within 1e-12.
  explicit SettingSet(std::vector<PartySetting> parties);
  // Each party gets first = (sin a1, 0, cos a1), second = (sin a2, 0, cos a2),
  // with angles measured from the z axis in the XZ plane.
  static SettingSet from_xz_angles(std::span<const std::array<double, 2>> angles);

  int parties() const noexcept { return static_cast<int>(parties_.size()); }
  const PartySetting& party(int j) const { return parties_.at(j); }
  const std::vector<PartySetting>& all() const noexcept { return parties_; }

 private:
  std::vector<PartySetting> parties_;
};

// Pauli string on basis-index bits: X on xmask-only bits, Z on zmask-only
// bits, Y where both are set.
struct PauliString {
  std::uint32_t xmask = 0;
  std::uint32_t zmask = 0;
};

// Pauli string for per-party indices in {0,1,2,3} (party 1 first).
PauliString pauli_string(std::span<const int> index);

// <psi| P |psi>; real for Hermitian P.
double pauli_expectation(const PauliString& p, std::span<const Complex> psi);

// Implicit operator  sum_t sign_t * weight_t * prod_j F_{t,j}  where
// F_{t,j} = A_1^j + A_2^j (PLUS), A_1^j - A_2^j (MINUS), identity (ZERO).
class BellOperator {
 public:
  BellOperator(const BellInequality& ineq, const SettingSet& settings);

  int qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << n_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  // out = sum_t signs[t] * O_t * in. OpenMP-parallel over amplitudes.
  void apply(std::span<const int> signs, std::span<const Complex> in, std::span<Complex> out) const;
  // Straight-line reference for apply().
  void apply_serial(std::span<const int> signs, std::span<const Complex> in,
                    std::span<Complex> out) const;

  // <psi| O_t |psi> for every term t, in term order.
  std::vector<double> expectations(std::span<const Complex> psi) const;
  // Probability-weighted expectations over the mixture's components.
  std::vector<double> expectations(const MixedState& rho) const;

  // Upper bound on |sum_t sign_t <O_t>|: sum_t weight_t * prod_j ||F_{t,j}||.
  double norm_bound() const noexcept { return norm_bound_; }

 private:
  struct Factor {
    std::uint32_t bit;
    Mat2 op;
  };
  struct Term {
    double weight;
    std::vector<Factor> factors;
    // Set when every factor is a scaled single Pauli matrix.
    std::optional<PauliString> pauli;
    Complex pauli_coefficient{0.0, 0.0};
  };

  void apply_term(const Term& t, std::span<const Complex> in, std::span<Complex> scratch) const;
  void apply_term_serial(const Term& t, std::span<const Complex> in, std::span<Complex> scratch) const;

  int n_ = 0;
  std::vector<Term> terms_;
  double norm_bound_ = 0.0;
  bool all_pauli_ = false;
};

// Applies a 2x2 matrix to the qubit at basis-index bit `bit`.
void apply_local(const Mat2& op, std::uint32_t bit, std::span<Complex> v);
void apply_local_serial(const Mat2& op, std::uint32_t bit, std::span<Complex> v);

// Dimension check helper shared by the module.
void require_qubits(int expected, int actual, const char* what);

// T_{k_1..k_N} = Tr[rho sigma_{k_1} x ... x sigma_{k_N}], sigma_0 = identity.
double correlation_tensor(const PureState& psi, std::span<const int> index);
double correlation_tensor(const MixedState& rho, std::span<const int> index);

// Dense table of T over an index alphabet (subset of {0,1,2,3}, ascending),
// enumerated with party 1 as the most significant digit.
class CorrelationTable {
 public:
  CorrelationTable(const MixedState& rho, std::vector<int> alphabet);
  static CorrelationTable build_serial(const MixedState& rho, std::vector<int> alphabet);

  int qubits() const noexcept { return n_; }
  const std::vector<int>& alphabet() const noexcept { return alphabet_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double at(std::span<const int> index) const;
  std::size_t flat_index(std::span<const int> index) const;

 private:
  CorrelationTable() = default;
  int n_ = 0;
  std::vector<int> alphabet_;
  std::array<int, 4> digit_of_{-1, -1, -1, -1};
  std::vector<double> values_;
};

// Sum over terms of weight * |<prod of brackets>|.
double bell_value(const BellInequality& ineq, const MixedState& rho, const SettingSet& settings);
// Same quantity evaluated from a precomputed correlation table; the table's
// alphabet must contain every Pauli index the settings touch.
double bell_value(const BellInequality& ineq, const CorrelationTable& table, const SettingSet& settings);

// Sum_t weight_t * 2^order_t: no quantum or classical value can exceed it.
double algebraic_ceiling(const BellInequality& ineq);

Amplitudes bell_operator_apply(const BellInequality& ineq, const SettingSet& settings,
                               std::span<const int> signs, std::span<const Complex> v);

struct EigenOptions {
  int starts = 24;             // random starting states for sign resolution
  std::uint64_t seed = 0;
  int max_sign_rounds = 200;
  bool exhaustive_signs = false;  // enumerate all 2^T sign vectors (T <= 20)
  int krylov_dim = 40;
  double tolerance = 1e-11;
  long max_matvecs = 100000;
};

struct EigenResult {
  // Wrapped Bell value of `state`; equals bell_value(ineq, state, settings).
  double value = 0.0;
  // Largest eigenvalue of the signed operator for `signs`.
  double eigenvalue = 0.0;
  PureState state;
  std::vector<int> signs;
  long matvecs = 0;
};

// Maximizes the wrapped Bell value over pure states at fixed settings by
// alternating sign fixing with extremal eigenpair extraction.
EigenResult max_eigenvalue(const BellInequality& ineq, const SettingSet& settings,
                           const EigenOptions& options = {},
                           std::span<const PureState> warm_starts = {});

// Bloch-vector flip on every qubit: sigma_y^{xN} applied to conj(psi).
PureState not_map(const PureState& psi);
MixedState not_map(const MixedState& rho);
// (|psi><psi| + NOT(|psi><psi|)) / 2.
MixedState not_mixture(const PureState& psi);

// Five-qubit state with the printed coefficients a..g (not normalized).
Amplitudes printed_state_amplitudes();
// The same state normalized.
PureState printed_state();

}  // namespace bellforge
