#include "bellforge/optimizer.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bellforge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Direction bloch(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

std::vector<int> alphabet_for(Parametrization p) {
  if (p == Parametrization::Bloch) return {0, 1, 2, 3};
  return {0, 1, 3};
}

// Maximizes f on [lo, hi]; returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tolerance, int max_iters = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iters && b - a > tolerance; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

// Coordinate ascent on a fixed correlation table.
FixedStateResult ascend(const BellInequality& ineq, const CorrelationTable& table, std::vector<double> params,
                        Parametrization p, const LineSearchConfig& cfg) {
  const auto objective = [&](const std::vector<double>& x) {
    return bell_value(ineq, table, settings_from_parameters(p, x));
  };
  double value = objective(params);
  FixedStateResult out;
  const double step = kTwoPi / cfg.grid_points;
  for (; out.sweeps < cfg.max_sweeps; ++out.sweeps) {
    const double sweep_start = value;
    for (std::size_t i = 0; i < params.size(); ++i) {
      std::vector<double> x = params;
      const auto along = [&](double t) {
        x[i] = t;
        return objective(x);
      };
      double best_t = params[i];
      double best = value;
      for (int g = 0; g < cfg.grid_points; ++g) {
        const double t = g * step;
        const double v = along(t);
        if (v > best) {
          best = v;
          best_t = t;
        }
      }
      const auto [t, v] = golden_max(along, best_t - step, best_t + step, cfg.tolerance);
      if (v > best) {
        best = v;
        best_t = t;
      }
      if (best > value) {
        value = best;
        params[i] = std::remainder(best_t, kTwoPi);
        if (params[i] < 0) params[i] += kTwoPi;
      }
    }
    if (value - sweep_start <= cfg.sweep_eps) {
      ++out.sweeps;
      break;
    }
  }
  out.value = value;
  out.settings = settings_from_parameters(p, params);
  out.parameters = std::move(params);
  return out;
}

std::vector<double> random_parameters(int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::vector<double> x(count);
  for (auto& a : x) a = angle(rng);
  return x;
}

}  // namespace

SettingSet settings_from_angles(std::span<const double> phis) {
  std::vector<PartySetting> parties;
  for (double phi : phis) {
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    parties.push_back({{s, 0.0, c}, {-s, 0.0, c}});
  }
  return SettingSet(std::move(parties));
}

int parameters_per_party(Parametrization p) {
  switch (p) {
    case Parametrization::Mirror: return 1;
    case Parametrization::XZ: return 2;
    case Parametrization::Bloch: return 4;
  }
  return 0;
}

SettingSet settings_from_parameters(Parametrization p, std::span<const double> params) {
  const int per = parameters_per_party(p);
  if (params.size() % per != 0) throw InvalidConfig("parameter count does not match the parametrization");
  if (p == Parametrization::Mirror) return settings_from_angles(params);
  std::vector<PartySetting> parties;
  for (std::size_t i = 0; i < params.size(); i += per) {
    if (p == Parametrization::XZ) {
      parties.push_back({bloch(params[i], 0.0), bloch(params[i + 1], 0.0)});
    } else {
      parties.push_back({bloch(params[i], params[i + 1]), bloch(params[i + 2], params[i + 3])});
    }
  }
  return SettingSet(std::move(parties));
}

void assert_below_ceiling(const BellInequality& ineq, double value) {
  const double ceiling = algebraic_ceiling(ineq);
  if (value > ceiling * (1.0 + 1e-9) + 1e-12) {
    throw std::logic_error("optimizer value " + std::to_string(value) + " exceeds the algebraic ceiling " +
                           std::to_string(ceiling));
  }
}

ScanResult scan_symmetric(const BellInequality& ineq, const ScanConfig& cfg) {
  if (cfg.grid_points < 3 || !(cfg.tolerance > 0)) throw InvalidConfig("scan needs >= 3 grid points and tolerance > 0");
  const int n = ineq.parties();
  ScanResult out;
  std::vector<PureState> warm;

  EigenOptions eigen = cfg.eigen;
  const auto evaluate = [&](double phi) {
    const std::vector<double> phis(n, phi);
    auto r = max_eigenvalue(ineq, settings_from_angles(phis), eigen, warm);
    assert_below_ceiling(ineq, r.value);
    out.samples.emplace_back(phi, r.value);
    warm.assign(1, r.state);
    return r;
  };

  const double half_pi = std::numbers::pi / 2.0;
  const double h = half_pi / (cfg.grid_points - 1);
  int best = 0;
  std::vector<PureState> grid_states;
  std::vector<double> grid_values;
  for (int g = 0; g < cfg.grid_points; ++g) {
    auto r = evaluate(g * h);
    grid_values.push_back(r.value);
    grid_states.push_back(std::move(r.state));
    if (grid_values[g] > grid_values[best]) best = g;
  }
  out.phi = best * h;
  out.value = grid_values[best];
  out.state = grid_states[best];

  // Golden-section on the bracket around the best sample, following the
  // grid's branch from its state only; the winning angle is evaluated once
  // more so the returned state matches it.
  eigen.starts = 0;
  warm.assign(1, out.state);
  const double lo = std::max(0.0, (best - 1) * h);
  const double hi = std::min(half_pi, (best + 1) * h);
  const auto [phi, value] =
      golden_max([&](double x) { return evaluate(x).value; }, lo, hi, cfg.tolerance, cfg.refine_iters);
  if (value > out.value) {
    warm.assign(1, out.state);
    auto r = evaluate(phi);
    if (r.value >= out.value) {
      out.phi = phi;
      out.value = r.value;
      out.state = std::move(r.state);
    }
  }
  return out;
}

FixedStateResult fixed_state_optimize(const BellInequality& ineq, const MixedState& rho, std::span<const double> init,
                                      Parametrization p, const LineSearchConfig& cfg) {
  require_qubits(ineq.parties(), rho.qubits(), "state");
  if (static_cast<int>(init.size()) != ineq.parties() * parameters_per_party(p)) {
    throw InvalidConfig("expected " + std::to_string(ineq.parties() * parameters_per_party(p)) + " initial parameters");
  }
  if (cfg.grid_points < 3) throw InvalidConfig("line search needs >= 3 grid points");
  const CorrelationTable table(rho, alphabet_for(p));
  auto out = ascend(ineq, table, {init.begin(), init.end()}, p, cfg);
  assert_below_ceiling(ineq, out.value);
  return out;
}

FixedStateResult fixed_state_optimize_restarts(const BellInequality& ineq, const MixedState& rho, int restarts,
                                               std::uint64_t seed, Parametrization p, const LineSearchConfig& cfg) {
  require_qubits(ineq.parties(), rho.qubits(), "state");
  if (restarts < 1) throw InvalidConfig("need at least one restart");
  const CorrelationTable table(rho, alphabet_for(p));
  const int count = ineq.parties() * parameters_per_party(p);
  std::vector<std::vector<double>> inits;
  std::mt19937_64 rng(seed);
  for (int r = 0; r < restarts; ++r) inits.push_back(random_parameters(count, rng));

  std::vector<FixedStateResult> results(restarts);
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < restarts; ++r) results[r] = ascend(ineq, table, inits[r], p, cfg);
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].value > results[best].value) best = r;
  }
  assert_below_ceiling(ineq, results[best].value);
  return results[best];
}

SeeSawResult see_saw(const BellInequality& ineq, const SeeSawConfig& cfg) {
  if (cfg.restarts < 1 || cfg.max_rounds < 1 || !(cfg.convergence_eps > 0)) {
    throw InvalidConfig("see-saw needs positive restarts, rounds and epsilon");
  }
  const int n = ineq.parties();
  const int count = n * parameters_per_party(cfg.parametrization);
  const std::vector<int> alphabet = alphabet_for(cfg.parametrization);

  std::vector<SeeSawResult> results(cfg.restarts);
  std::vector<std::exception_ptr> errors(cfg.restarts);
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < cfg.restarts; ++r) {
    try {
      std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(r)};
      std::mt19937_64 rng(seq);
      SeeSawResult& out = results[r];
      out.best_restart = r;
      out.parameters = random_parameters(count, rng);
      out.state = PureState::random(n, rng);
      out.settings = settings_from_parameters(cfg.parametrization, out.parameters);
      out.value = bell_value(ineq, out.state, out.settings);
      out.budget_exhausted = true;
      for (int round = 0; round < cfg.max_rounds; ++round) {
        const PureState warm[] = {out.state};
        auto eig = max_eigenvalue(ineq, out.settings, cfg.eigen, warm);
        const CorrelationTable table(eig.state, alphabet);
        auto step = ascend(ineq, table, out.parameters, cfg.parametrization, cfg.line);
        const double previous = out.value;
        out.state = std::move(eig.state);
        out.parameters = std::move(step.parameters);
        out.settings = std::move(step.settings);
        out.value = step.value;
        out.trajectory.push_back(out.value);
        if (out.value - previous < cfg.convergence_eps) {
          out.budget_exhausted = false;
          break;
        }
      }
    } catch (...) {
      errors[r] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].value > results[best].value) best = r;
  }
  assert_below_ceiling(ineq, results[best].value);
  return std::move(results[best]);
}

}  // namespace bellforge
