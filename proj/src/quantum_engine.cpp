#include "bellforge/quantum_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <string>

#include <omp.h>

#include "bellforge/eigensolver.hpp"

namespace bellforge {

namespace {

// Below this dimension the OpenMP kernels run on the calling thread.
constexpr std::size_t kParallelDimension = 1u << 10;

constexpr Complex kI{0.0, 1.0};

Complex i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// P|i> = phase(i) |i ^ xmask>.
inline Complex pauli_phase(const PauliString& p, std::uint64_t i, const Complex& y_phase) {
  return (std::popcount(static_cast<std::uint32_t>(i) & p.zmask) & 1) ? -y_phase : y_phase;
}

inline Complex y_phase_of(const PauliString& p) { return i_power(std::popcount(p.xmask & p.zmask)); }

double direction_norm(const Direction& d) { return std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]); }

Direction combine(const Direction& a, const Direction& b, double sign) {
  return {a[0] + sign * b[0], a[1] + sign * b[1], a[2] + sign * b[2]};
}

}  // namespace

void require_qubits(int expected, int actual, const char* what) {
  if (expected != actual) {
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(expected) +
                            " parties, got " + std::to_string(actual));
  }
}

PureState::PureState(int n, Amplitudes amplitudes, bool normalize)
    : n_(n), amplitudes_(std::move(amplitudes)) {
  if (n < 1 || n > kMaxQubits) throw InvalidState("qubit count must be in [1, 12]");
  if (amplitudes_.size() != (std::size_t{1} << n)) {
    throw InvalidState("expected " + std::to_string(std::size_t{1} << n) + " amplitudes, got " +
                       std::to_string(amplitudes_.size()));
  }
  double norm2 = 0.0;
  for (const auto& a : amplitudes_) norm2 += std::norm(a);
  if (normalize) {
    if (!(norm2 > 0.0)) throw InvalidState("cannot normalize the zero vector");
    const double s = 1.0 / std::sqrt(norm2);
    for (auto& a : amplitudes_) a *= s;
  } else if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw InvalidState("state norm^2 is " + std::to_string(norm2) + ", expected 1");
  }
}

PureState PureState::basis(int n, std::uint64_t index) {
  Amplitudes a(std::size_t{1} << n, Complex{});
  a.at(index) = 1.0;
  return PureState(n, std::move(a));
}

PureState PureState::random(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Amplitudes a(std::size_t{1} << n);
  for (auto& c : a) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    c = {re, im};
  }
  return PureState(n, std::move(a), true);
}

MixedState::MixedState(const PureState& pure) : components_{{1.0, pure}} {}

MixedState::MixedState(std::vector<Component> components) : components_(std::move(components)) {
  if (components_.empty()) throw InvalidState("mixture has no components");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.probability > 0.0)) throw InvalidState("mixture probabilities must be positive");
    require_qubits(components_.front().state.qubits(), c.state.qubits(), "mixture component");
    total += c.probability;
  }
  if (std::abs(total - 1.0) > kNormTolerance) throw InvalidState("mixture probabilities must sum to 1");
}

Mat2 pauli(int k) {
  switch (k) {
    case 0: return {Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{1, 0}};
    case 1: return {Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{0, 0}};
    case 2: return {Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0}};
    case 3: return {Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{-1, 0}};
    default: throw InvalidConfig("Pauli index must be in {0,1,2,3}");
  }
}

Mat2 observable(const Direction& n) {
  return {Complex{n[2], 0.0}, Complex{n[0], -n[1]}, Complex{n[0], n[1]}, Complex{-n[2], 0.0}};
}

SettingSet::SettingSet(std::vector<PartySetting> parties) : parties_(std::move(parties)) {
  for (const auto& p : parties_) {
    for (const auto* d : {&p.first, &p.second}) {
      if (std::abs(direction_norm(*d) - 1.0) > 1e-12) throw InvalidConfig("measurement direction is not a unit vector");
    }
  }
}

SettingSet SettingSet::from_xz_angles(std::span<const std::array<double, 2>> angles) {
  std::vector<PartySetting> parties;
  parties.reserve(angles.size());
  for (const auto& a : angles) {
    parties.push_back({{std::sin(a[0]), 0.0, std::cos(a[0])}, {std::sin(a[1]), 0.0, std::cos(a[1])}});
  }
  return SettingSet(std::move(parties));
}

PauliString pauli_string(std::span<const int> index) {
  const int n = static_cast<int>(index.size());
  PauliString p;
  for (int j = 0; j < n; ++j) {
    const std::uint32_t bit = 1u << (n - 1 - j);
    switch (index[j]) {
      case 0: break;
      case 1: p.xmask |= bit; break;
      case 2:
        p.xmask |= bit;
        p.zmask |= bit;
        break;
      case 3: p.zmask |= bit; break;
      default: throw InvalidConfig("correlation index entries must be in {0,1,2,3}");
    }
  }
  return p;
}

double pauli_expectation(const PauliString& p, std::span<const Complex> psi) {
  const Complex yp = y_phase_of(p);
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < psi.size(); ++i) {
    s += std::conj(psi[i ^ p.xmask]) * pauli_phase(p, i, yp) * psi[i];
  }
  return s.real();
}

void apply_local(const Mat2& op, std::uint32_t bit, std::span<Complex> v) {
  const std::int64_t dim = static_cast<std::int64_t>(v.size());
#pragma omp parallel for schedule(static) if (v.size() >= kParallelDimension)
  for (std::int64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const Complex a = v[i];
    const Complex b = v[i | bit];
    v[i] = op[0] * a + op[1] * b;
    v[i | bit] = op[2] * a + op[3] * b;
  }
}

void apply_local_serial(const Mat2& op, std::uint32_t bit, std::span<Complex> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i & bit) continue;
    const Complex a = v[i];
    const Complex b = v[i | bit];
    v[i] = op[0] * a + op[1] * b;
    v[i | bit] = op[2] * a + op[3] * b;
  }
}

BellOperator::BellOperator(const BellInequality& ineq, const SettingSet& settings) : n_(ineq.parties()) {
  require_qubits(n_, settings.parties(), "settings");
  if (n_ > kMaxQubits) throw NTooLarge("quantum engine supports at most 12 qubits");
  all_pauli_ = true;
  for (const auto& bt : ineq.terms()) {
    Term t;
    t.weight = to_double(bt.weight);
    double norm_product = 1.0;
    PauliString ps;
    Complex coefficient{1.0, 0.0};
    bool single_pauli = true;
    for (int j = 0; j < n_; ++j) {
      const Symbol s = bt.pattern.at(j);
      if (s == Symbol::Zero) continue;
      const auto& party = settings.party(j);
      const Direction d = combine(party.first, party.second, s == Symbol::Plus ? 1.0 : -1.0);
      const std::uint32_t bit = 1u << (n_ - 1 - j);
      t.factors.push_back({bit, observable(d)});
      norm_product *= direction_norm(d);
      int nonzero = 0;
      int axis = 0;
      for (int k = 0; k < 3; ++k) {
        if (d[k] != 0.0) {
          ++nonzero;
          axis = k;
        }
      }
      if (nonzero > 1) {
        single_pauli = false;
      } else if (nonzero == 0) {
        coefficient = 0.0;
      } else {
        coefficient *= d[axis];
        if (axis == 0 || axis == 1) ps.xmask |= bit;
        if (axis == 1 || axis == 2) ps.zmask |= bit;
      }
    }
    if (single_pauli) {
      t.pauli = ps;
      t.pauli_coefficient = coefficient * y_phase_of(ps);
    } else {
      all_pauli_ = false;
    }
    norm_bound_ += t.weight * norm_product;
    terms_.push_back(std::move(t));
  }
}

void BellOperator::apply_term(const Term& t, std::span<const Complex> in, std::span<Complex> scratch) const {
  std::copy(in.begin(), in.end(), scratch.begin());
  for (const auto& f : t.factors) apply_local(f.op, f.bit, scratch);
}

void BellOperator::apply_term_serial(const Term& t, std::span<const Complex> in,
                                     std::span<Complex> scratch) const {
  std::copy(in.begin(), in.end(), scratch.begin());
  for (const auto& f : t.factors) apply_local_serial(f.op, f.bit, scratch);
}

void BellOperator::apply(std::span<const int> signs, std::span<const Complex> in, std::span<Complex> out) const {
  if (signs.size() != terms_.size()) throw DimensionMismatch("one sign per term is required");
  if (in.size() != dimension() || out.size() != dimension()) throw DimensionMismatch("vector dimension mismatch");
  const std::int64_t dim = static_cast<std::int64_t>(dimension());

  if (all_pauli_) {
    // Gather form: every output amplitude sums its term contributions in term order.
    const std::size_t count = terms_.size();
    std::vector<Complex> coef(count);
    std::vector<std::uint32_t> xs(count);
    std::vector<std::uint32_t> zs(count);
    for (std::size_t t = 0; t < count; ++t) {
      coef[t] = terms_[t].pauli_coefficient * (terms_[t].weight * signs[t]);
      xs[t] = terms_[t].pauli->xmask;
      zs[t] = terms_[t].pauli->zmask;
    }
#pragma omp parallel for schedule(static) if (dimension() >= kParallelDimension)
    for (std::int64_t j = 0; j < dim; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < count; ++t) {
        const auto i = static_cast<std::uint32_t>(j) ^ xs[t];
        const Complex term = coef[t] * in[i];
        acc += (std::popcount(i & zs[t]) & 1) ? -term : term;
      }
      out[j] = acc;
    }
    return;
  }

  std::fill(out.begin(), out.end(), Complex{});
  Amplitudes scratch(dimension());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const Term& term = terms_[t];
    const double scale = term.weight * signs[t];
    if (term.pauli) {
      const Complex c = term.pauli_coefficient * scale;
#pragma omp parallel for schedule(static) if (dimension() >= kParallelDimension)
      for (std::int64_t i = 0; i < dim; ++i) {
        const bool odd = std::popcount(static_cast<std::uint32_t>(i) & term.pauli->zmask) & 1;
        out[static_cast<std::uint64_t>(i) ^ term.pauli->xmask] += (odd ? -c : c) * in[i];
      }
      continue;
    }
    apply_term(term, in, scratch);
#pragma omp parallel for schedule(static) if (dimension() >= kParallelDimension)
    for (std::int64_t i = 0; i < dim; ++i) out[i] += scale * scratch[i];
  }
}

void BellOperator::apply_serial(std::span<const int> signs, std::span<const Complex> in,
                                std::span<Complex> out) const {
  if (signs.size() != terms_.size()) throw DimensionMismatch("one sign per term is required");
  if (in.size() != dimension() || out.size() != dimension()) throw DimensionMismatch("vector dimension mismatch");
  std::fill(out.begin(), out.end(), Complex{});
  Amplitudes scratch(dimension());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    apply_term_serial(terms_[t], in, scratch);
    const double scale = terms_[t].weight * signs[t];
    for (std::size_t i = 0; i < scratch.size(); ++i) out[i] += scale * scratch[i];
  }
}

std::vector<double> BellOperator::expectations(std::span<const Complex> psi) const {
  if (psi.size() != dimension()) throw DimensionMismatch("state dimension mismatch");
  std::vector<double> e(terms_.size());
  Amplitudes scratch(dimension());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const Term& term = terms_[t];
    if (term.pauli) {
      // pauli_coefficient already carries the Y phase; divide it back out.
      const Complex yp = y_phase_of(*term.pauli);
      e[t] = term.weight * (term.pauli_coefficient / yp).real() * pauli_expectation(*term.pauli, psi);
      continue;
    }
    apply_term(term, psi, scratch);
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < psi.size(); ++i) s += std::conj(psi[i]) * scratch[i];
    e[t] = term.weight * s.real();
  }
  return e;
}

std::vector<double> BellOperator::expectations(const MixedState& rho) const {
  require_qubits(n_, rho.qubits(), "state");
  std::vector<double> total(terms_.size(), 0.0);
  for (const auto& c : rho.components()) {
    const auto e = expectations(c.state.amplitudes());
    for (std::size_t t = 0; t < e.size(); ++t) total[t] += c.probability * e[t];
  }
  return total;
}

double correlation_tensor(const PureState& psi, std::span<const int> index) {
  require_qubits(psi.qubits(), static_cast<int>(index.size()), "correlation index");
  return pauli_expectation(pauli_string(index), psi.amplitudes());
}

double correlation_tensor(const MixedState& rho, std::span<const int> index) {
  double s = 0.0;
  for (const auto& c : rho.components()) s += c.probability * correlation_tensor(c.state, index);
  return s;
}

namespace {

void validate_alphabet(const std::vector<int>& alphabet) {
  if (alphabet.empty() || !std::is_sorted(alphabet.begin(), alphabet.end()) ||
      std::adjacent_find(alphabet.begin(), alphabet.end()) != alphabet.end()) {
    throw InvalidConfig("alphabet must be a non-empty ascending subset of {0,1,2,3}");
  }
  for (int k : alphabet) {
    if (k < 0 || k > 3) throw InvalidConfig("alphabet entries must be in {0,1,2,3}");
  }
}

std::size_t table_size(int n, std::size_t base) {
  std::size_t s = 1;
  for (int j = 0; j < n; ++j) s *= base;
  return s;
}

double table_entry(const MixedState& rho, const std::vector<int>& alphabet, std::size_t flat, int n) {
  std::vector<int> index(n);
  for (int j = n - 1; j >= 0; --j) {
    index[j] = alphabet[flat % alphabet.size()];
    flat /= alphabet.size();
  }
  const PauliString p = pauli_string(index);
  double s = 0.0;
  for (const auto& c : rho.components()) s += c.probability * pauli_expectation(p, c.state.amplitudes());
  return s;
}

}  // namespace

CorrelationTable::CorrelationTable(const MixedState& rho, std::vector<int> alphabet)
    : n_(rho.qubits()), alphabet_(std::move(alphabet)) {
  validate_alphabet(alphabet_);
  for (std::size_t d = 0; d < alphabet_.size(); ++d) digit_of_[alphabet_[d]] = static_cast<int>(d);
  const std::size_t size = table_size(n_, alphabet_.size());
  values_.assign(size, 0.0);
  const auto count = static_cast<std::int64_t>(size);
#pragma omp parallel for schedule(static) if (size >= 256)
  for (std::int64_t f = 0; f < count; ++f) {
    values_[f] = table_entry(rho, alphabet_, static_cast<std::size_t>(f), n_);
  }
}

CorrelationTable CorrelationTable::build_serial(const MixedState& rho, std::vector<int> alphabet) {
  CorrelationTable t;
  t.n_ = rho.qubits();
  t.alphabet_ = std::move(alphabet);
  validate_alphabet(t.alphabet_);
  for (std::size_t d = 0; d < t.alphabet_.size(); ++d) t.digit_of_[t.alphabet_[d]] = static_cast<int>(d);
  const std::size_t size = table_size(t.n_, t.alphabet_.size());
  t.values_.resize(size);
  for (std::size_t f = 0; f < size; ++f) t.values_[f] = table_entry(rho, t.alphabet_, f, t.n_);
  return t;
}

std::size_t CorrelationTable::flat_index(std::span<const int> index) const {
  require_qubits(n_, static_cast<int>(index.size()), "correlation index");
  std::size_t flat = 0;
  for (int k : index) {
    if (k < 0 || k > 3 || digit_of_[k] < 0) throw InvalidConfig("index outside the table alphabet");
    flat = flat * alphabet_.size() + static_cast<std::size_t>(digit_of_[k]);
  }
  return flat;
}

double CorrelationTable::at(std::span<const int> index) const { return values_[flat_index(index)]; }

double bell_value(const BellInequality& ineq, const MixedState& rho, const SettingSet& settings) {
  require_qubits(ineq.parties(), rho.qubits(), "state");
  const BellOperator op(ineq, settings);
  double total = 0.0;
  for (double e : op.expectations(rho)) total += std::abs(e);
  return total;
}

double bell_value(const BellInequality& ineq, const CorrelationTable& table, const SettingSet& settings) {
  const int n = ineq.parties();
  require_qubits(n, table.qubits(), "correlation table");
  require_qubits(n, settings.parties(), "settings");
  const std::size_t base = table.alphabet().size();
  std::vector<std::size_t> stride(n);
  {
    std::size_t s = 1;
    for (int j = n - 1; j >= 0; --j) {
      stride[j] = s;
      s *= base;
    }
  }
  const std::array<int, 4> digit = [&] {
    std::array<int, 4> d{-1, -1, -1, -1};
    for (std::size_t i = 0; i < base; ++i) d[table.alphabet()[i]] = static_cast<int>(i);
    return d;
  }();
  if (digit[0] < 0) throw InvalidConfig("correlation table needs index 0");

  double total = 0.0;
  struct Slot {
    int party;
    Direction coeff;
  };
  std::vector<Slot> slots;
  for (const auto& term : ineq.terms()) {
    slots.clear();
    std::size_t base_flat = 0;
    for (int j = 0; j < n; ++j) {
      const Symbol s = term.pattern.at(j);
      if (s == Symbol::Zero) {
        base_flat += static_cast<std::size_t>(digit[0]) * stride[j];
        continue;
      }
      const auto& p = settings.party(j);
      slots.push_back({j, combine(p.first, p.second, s == Symbol::Plus ? 1.0 : -1.0)});
    }
    // Depth-first expansion over the x/y/z components of each non-ZERO factor.
    double expectation = 0.0;
    const auto recurse = [&](auto&& self, std::size_t depth, std::size_t flat, double coeff) -> void {
      if (depth == slots.size()) {
        expectation += coeff * table.values()[flat];
        return;
      }
      const Slot& slot = slots[depth];
      for (int axis = 0; axis < 3; ++axis) {
        const double c = slot.coeff[axis];
        if (c == 0.0) continue;
        const int d = digit[axis + 1];
        if (d < 0) throw InvalidConfig("settings use a Pauli index missing from the table");
        self(self, depth + 1, flat + static_cast<std::size_t>(d) * stride[slot.party], coeff * c);
      }
    };
    recurse(recurse, 0, base_flat, 1.0);
    total += to_double(term.weight) * std::abs(expectation);
  }
  return total;
}

double algebraic_ceiling(const BellInequality& ineq) {
  double total = 0.0;
  for (const auto& t : ineq.terms()) total += to_double(t.weight) * std::ldexp(1.0, t.pattern.order());
  return total;
}

Amplitudes bell_operator_apply(const BellInequality& ineq, const SettingSet& settings,
                               std::span<const int> signs, std::span<const Complex> v) {
  const BellOperator op(ineq, settings);
  if (v.size() != op.dimension()) throw DimensionMismatch("vector dimension mismatch");
  Amplitudes out(op.dimension());
  op.apply(signs, v, out);
  return out;
}

namespace {

struct StartOutcome {
  double value = -1.0;
  double eigenvalue = 0.0;
  Amplitudes state;
  std::vector<int> signs;
  long matvecs = 0;
};

std::vector<int> signs_of(const std::vector<double>& e, const std::vector<int>* previous) {
  std::vector<int> s(e.size());
  for (std::size_t t = 0; t < e.size(); ++t) {
    if (e[t] > 0.0) s[t] = 1;
    else if (e[t] < 0.0) s[t] = -1;
    else s[t] = previous ? (*previous)[t] : 1;
  }
  return s;
}

double abs_sum(const std::vector<double>& e) {
  double s = 0.0;
  for (double x : e) s += std::abs(x);
  return s;
}

LanczosOptions lanczos_options(const EigenOptions& o) {
  LanczosOptions l;
  l.krylov_dim = o.krylov_dim;
  l.tolerance = o.tolerance;
  l.max_matvecs = o.max_matvecs;
  return l;
}

StartOutcome resolve_signs(const BellOperator& op, Amplitudes start, const EigenOptions& options) {
  StartOutcome out;
  auto e = op.expectations(start);
  std::vector<int> signs = signs_of(e, nullptr);
  out.value = abs_sum(e);
  out.state = start;
  out.signs = signs;
  Amplitudes v = std::move(start);
  const auto lanczos = lanczos_options(options);
  for (int round = 0; round < options.max_sign_rounds; ++round) {
    const LinearOperator apply = [&](std::span<const Complex> in, std::span<Complex> res) {
      op.apply(signs, in, res);
    };
    auto pair = largest_eigenpair(apply, v, lanczos);
    out.matvecs += pair.matvecs;
    v = std::move(pair.vector);
    e = op.expectations(v);
    const double value = abs_sum(e);
    if (value >= out.value) {
      out.value = value;
      out.state = v;
      out.signs = signs;
      out.eigenvalue = pair.value;
    }
    auto next = signs_of(e, &signs);
    if (next == signs) break;
    signs = std::move(next);
  }
  return out;
}

}  // namespace

EigenResult max_eigenvalue(const BellInequality& ineq, const SettingSet& settings, const EigenOptions& options,
                           std::span<const PureState> warm_starts) {
  const BellOperator op(ineq, settings);
  const int n = op.qubits();
  const std::size_t terms = op.term_count();
  if (terms == 0) throw InvalidInequality("inequality has no terms");

  std::vector<StartOutcome> outcomes;

  if (options.exhaustive_signs) {
    if (terms > 20) throw NTooLarge("exhaustive sign enumeration limited to 20 terms");
    std::mt19937_64 rng(options.seed);
    const Amplitudes start = PureState::random(n, rng).amplitudes();
    const std::int64_t count = std::int64_t{1} << terms;
    outcomes.resize(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(outcomes.size());
    const auto lanczos = lanczos_options(options);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t code = 0; code < count; ++code) {
      try {
        std::vector<int> signs(terms);
        for (std::size_t t = 0; t < terms; ++t) signs[t] = (code >> t & 1) ? -1 : 1;
        const LinearOperator apply = [&](std::span<const Complex> in, std::span<Complex> res) {
          op.apply(signs, in, res);
        };
        auto pair = largest_eigenpair(apply, start, lanczos);
        auto& o = outcomes[static_cast<std::size_t>(code)];
        o.value = abs_sum(op.expectations(pair.vector));
        o.eigenvalue = pair.value;
        o.state = std::move(pair.vector);
        o.signs = std::move(signs);
        o.matvecs = pair.matvecs;
      } catch (...) {
        errors[static_cast<std::size_t>(code)] = std::current_exception();
      }
    }
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  } else {
    std::vector<Amplitudes> starts;
    for (const auto& w : warm_starts) {
      require_qubits(n, w.qubits(), "warm start");
      starts.push_back(w.amplitudes());
    }
    std::mt19937_64 rng(options.seed);
    for (int s = 0; s < options.starts; ++s) starts.push_back(PureState::random(n, rng).amplitudes());
    if (starts.empty()) throw InvalidConfig("max_eigenvalue needs at least one start");
    outcomes.resize(starts.size());
    std::vector<std::exception_ptr> errors(starts.size());
    const auto count = static_cast<std::int64_t>(starts.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t s = 0; s < count; ++s) {
      try {
        outcomes[s] = resolve_signs(op, starts[s], options);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    }
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  // First start wins ties so the result is independent of thread scheduling.
  std::size_t best = 0;
  long matvecs = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    matvecs += outcomes[i].matvecs;
    if (outcomes[i].value > outcomes[best].value + 1e-13) best = i;
  }
  auto& b = outcomes[best];
  EigenResult result;
  result.value = b.value;
  result.eigenvalue = b.eigenvalue;
  result.state = PureState(n, std::move(b.state), true);
  result.signs = std::move(b.signs);
  result.matvecs = matvecs;
  return result;
}

PureState not_map(const PureState& psi) {
  const int n = psi.qubits();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const Complex global = i_power(n);
  Amplitudes out(psi.dimension());
  for (std::uint64_t i = 0; i < psi.dimension(); ++i) {
    const bool odd = std::popcount(i) & 1;
    out[i ^ full] = (odd ? -global : global) * std::conj(psi.amplitude(i));
  }
  return PureState(n, std::move(out), true);
}

MixedState not_map(const MixedState& rho) {
  std::vector<MixedState::Component> comps;
  for (const auto& c : rho.components()) comps.push_back({c.probability, not_map(c.state)});
  return MixedState(std::move(comps));
}

MixedState not_mixture(const PureState& psi) { return MixedState({{0.5, psi}, {0.5, not_map(psi)}}); }

Amplitudes printed_state_amplitudes() {
  constexpr double a = 0.462854, b = 0.161096, c = 0.19409, d = 0.181191, e = 0.220891, f = 0.107669,
                   g = 0.039699;
  Amplitudes amp(32, Complex{});
  const auto put = [&](const char* ket, double v) {
    amp[std::stoul(ket, nullptr, 2)] += v;
  };
  put("00000", a);
  for (const char* k : {"00011", "00110", "01100", "11000", "10001"}) put(k, b);
  for (const char* k : {"00101", "01010", "10100", "01001", "10010"}) put(k, c);
  for (const char* k : {"00111", "01110", "11100", "11001", "10011"}) put(k, d);
  for (const char* k : {"01011", "10110", "11010", "10101"}) put(k, e);
  put("01101", -e);
  for (const char* k : {"01111", "10111", "11011", "11101", "11110"}) put(k, f);
  put("11111", g);
  return amp;
}

PureState printed_state() { return PureState(5, printed_state_amplitudes(), true); }

}  // namespace bellforge
