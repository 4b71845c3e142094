#include "bellforge/sufficient_condition.hpp"

#include <cmath>
#include <numbers>

namespace bellforge {

ConditionIndexSet condition_indices(const BellInequality& ineq) {
  ConditionIndexSet out;
  for (const auto& t : ineq.terms()) {
    std::vector<int> tuple(ineq.parties());
    for (int j = 0; j < ineq.parties(); ++j) {
      switch (t.pattern.at(j)) {
        case Symbol::Plus: tuple[j] = 1; break;
        case Symbol::Minus: tuple[j] = 3; break;
        case Symbol::Zero: tuple[j] = 0; break;
      }
    }
    out.push_back(std::move(tuple));
  }
  return out;
}

double condition_value(const MixedState& rho, const ConditionIndexSet& indices) {
  double total = 0.0;
  for (const auto& idx : indices) {
    require_qubits(rho.qubits(), static_cast<int>(idx.size()), "condition tuple");
    const double t = correlation_tensor(rho, idx);
    total += t * t;
  }
  return total;
}

namespace {

Mat2 haar_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Complex a{g(rng), g(rng)};
  Complex b{g(rng), g(rng)};
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  a /= norm;
  b /= norm;
  return {a, -std::conj(b), b, std::conj(a)};
}

MixedState map_components(const MixedState& rho, const auto& fn) {
  std::vector<MixedState::Component> comps;
  for (const auto& c : rho.components()) comps.push_back({c.probability, fn(c.state)});
  return MixedState(std::move(comps));
}

}  // namespace

PureState random_local_frame(const PureState& psi, std::mt19937_64& rng) {
  Amplitudes a = psi.amplitudes();
  for (int j = 0; j < psi.qubits(); ++j) apply_local_serial(haar_su2(rng), 1u << j, a);
  return PureState(psi.qubits(), std::move(a), true);
}

PureState hadamard_all(const PureState& psi) {
  const double r = 1.0 / std::sqrt(2.0);
  const Mat2 h{Complex{r, 0}, Complex{r, 0}, Complex{r, 0}, Complex{-r, 0}};
  Amplitudes a = psi.amplitudes();
  for (int j = 0; j < psi.qubits(); ++j) apply_local_serial(h, 1u << j, a);
  return PureState(psi.qubits(), std::move(a), true);
}

MixedState hadamard_all(const MixedState& rho) {
  return map_components(rho, [](const PureState& s) { return hadamard_all(s); });
}

FrameSweep condition_frame_sweep(const MixedState& rho, const ConditionIndexSet& indices, int frames,
                                 std::uint64_t seed) {
  if (frames < 0) throw InvalidConfig("frame count must be non-negative");
  FrameSweep out;
  out.frames = frames;
  out.identity_frame = condition_value(rho, indices);

  std::vector<double> values(frames);
#pragma omp parallel for schedule(dynamic)
  for (int f = 0; f < frames; ++f) {
    // One generator per frame so the sweep does not depend on scheduling.
    std::seed_seq seq{seed, static_cast<std::uint64_t>(f)};
    std::mt19937_64 rng(seq);
    std::vector<Mat2> unitaries;
    for (int j = 0; j < rho.qubits(); ++j) unitaries.push_back(haar_su2(rng));
    const auto rotated = map_components(rho, [&](const PureState& s) {
      Amplitudes a = s.amplitudes();
      for (int j = 0; j < s.qubits(); ++j) apply_local_serial(unitaries[j], 1u << j, a);
      return PureState(s.qubits(), std::move(a), true);
    });
    values[f] = condition_value(rotated, indices);
  }
  out.max_value = out.identity_frame;
  for (int f = 0; f < frames; ++f) {
    if (values[f] > out.max_value) {
      out.max_value = values[f];
      out.max_frame = f + 1;
    }
  }
  return out;
}

double trig_vector_norm_max(const BellInequality& ineq, int grid) {
  const int n = ineq.parties();
  if (grid < 1) throw InvalidConfig("grid needs at least one point");
  double points = 1.0;
  for (int j = 0; j < n; ++j) points *= grid;
  if (points > 5e7) throw NTooLarge("angle grid too large");
  const auto total = static_cast<std::int64_t>(points);

  std::vector<double> c(grid);
  std::vector<double> s(grid);
  for (int g = 0; g < grid; ++g) {
    const double theta = std::numbers::pi * g / grid;
    c[g] = std::cos(theta);
    s[g] = std::sin(theta);
  }
  std::vector<double> scale;
  for (const auto& t : ineq.terms()) scale.push_back(to_double(t.weight) * std::ldexp(1.0, t.pattern.order()));

  double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(static)
  for (std::int64_t point = 0; point < total; ++point) {
    std::vector<int> digit(n);
    std::int64_t rest = point;
    for (int j = 0; j < n; ++j) {
      digit[j] = static_cast<int>(rest % grid);
      rest /= grid;
    }
    double norm2 = 0.0;
    for (std::size_t t = 0; t < scale.size(); ++t) {
      const auto& p = ineq.terms()[t].pattern;
      double v = scale[t];
      for (int j = 0; j < n; ++j) {
        const Symbol sym = p.at(j);
        if (sym == Symbol::Plus) v *= c[digit[j]];
        else if (sym == Symbol::Minus) v *= s[digit[j]];
      }
      norm2 += v * v;
    }
    best = std::max(best, std::sqrt(norm2));
  }
  return best;
}

}  // namespace bellforge
