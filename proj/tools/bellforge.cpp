// bellforge: build, certify and violate multipartite Bell inequalities.

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "bellforge/builder.hpp"
#include "bellforge/catalog.hpp"
#include "bellforge/io.hpp"
#include "bellforge/lhv_certifier.hpp"
#include "bellforge/lint.hpp"
#include "bellforge/optimizer.hpp"
#include "bellforge/reproduce.hpp"
#include "bellforge/sufficient_condition.hpp"

namespace bf = bellforge;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kParse = 3 };

struct Common {
  std::string ineq;
  std::string state;
  std::string out;
  std::uint64_t seed = 0;
  int threads = 0;
};

// --ineq takes a JSON file or, failing that, a catalog name.
bf::InequalityDocument load_document(const std::string& spec) {
  if (spec.empty()) throw bf::InvalidConfig("--ineq is required");
  if (!std::filesystem::exists(spec)) {
    for (const auto& e : bf::catalog()) {
      if (e.name == spec) return e.document();
    }
    throw bf::ParseError(spec, "no such file or catalog entry");
  }
  const auto j = bf::read_json_file(spec);
  try {
    return bf::document_from_json(j);
  } catch (const bf::ParseError& e) {
    throw bf::ParseError(spec, e.what());
  }
}

bf::BellInequality load_inequality(const std::string& spec) { return load_document(spec).inequality(); }

bf::PureState load_state(const std::string& path) {
  const auto j = bf::read_json_file(path);
  try {
    return bf::state_from_json(j);
  } catch (const bf::ParseError& e) {
    throw bf::ParseError(path, e.what());
  }
}

void emit(const bf::Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    bf::write_json_file(path, j);
  }
}

std::string fixed(double v, int digits = 9) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

void apply_threads(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv("BELLFORGE_THREADS")) {
      try {
        threads = std::stoi(env);
      } catch (const std::exception&) {
        throw bf::InvalidConfig(std::string("BELLFORGE_THREADS is not an integer: ") + env);
      }
    }
  }
  if (threads > 0) omp_set_num_threads(threads);
}

int cmd_build(const Common& c, int n, int k, bool drop, long max_draws) {
  bf::GeneratorConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.seed = c.seed;
  cfg.max_draws = max_draws;
  auto r = bf::generate_cp_set(cfg);
  std::cerr << r.diagnostic << " (" << r.draws << " draws, mass " << r.mass << ")\n";
  if (!r.complete) return kCheckFailed;
  const auto ineq = drop ? bf::drop_extremes(r.inequality) : r.inequality;
  emit(bf::to_json(ineq), c.out);
  return kOk;
}

int cmd_catalog(const Common& c, bool list, const std::string& name) {
  if (list || name.empty()) {
    for (const auto& e : bf::catalog()) {
      std::cout << std::left << std::setw(18) << e.name << " n=" << e.n << "  rows=" << std::setw(4) << e.rows.size()
                << ' ' << e.description << '\n';
    }
    return kOk;
  }
  emit(bf::to_json(bf::catalog_entry(name).document()), c.out);
  return kOk;
}

bf::Json assignment_json(const bf::Assignment& a) {
  bf::Json parties = bf::Json::array();
  for (int j = 0; j < a.parties(); ++j) parties.push_back({a.value(j, 1), a.value(j, 2)});
  return {{"bits", a.bits()}, {"values", parties}};
}

int cmd_certify(const Common& c, bool wrapped, bool mirror) {
  const auto ineq = load_inequality(c.ineq);
  const auto r = bf::certify_bound(ineq, wrapped);
  const bool holds = r.max_abs <= ineq.bound();
  bf::Json j{{"label", ineq.label()},
             {"n", ineq.parties()},
             {"form", wrapped ? "wrapped" : "unwrapped"},
             {"bound", bf::to_string(ineq.bound())},
             {"max_abs", bf::to_string(r.max_abs)},
             {"signed_min", bf::to_string(r.signed_min)},
             {"signed_max", bf::to_string(r.signed_max)},
             {"assignments", r.assignments},
             {"holds", holds},
             {"witness_max_abs", assignment_json(r.witness_max_abs)}};
  if (mirror) {
    j["mirror"] = {{"mirror", r.is_mirror}, {"plus", r.plus_count}, {"minus", r.minus_count}};
  }
  std::cout << (ineq.label().empty() ? "inequality" : ineq.label()) << ": " << (wrapped ? "wrapped" : "unwrapped")
            << " max " << bf::to_string(r.max_abs) << " over " << r.assignments << " assignments, claimed bound "
            << bf::to_string(ineq.bound()) << (holds ? " holds" : " VIOLATED") << '\n';
  if (mirror) {
    std::cout << "mirror: " << (r.is_mirror ? "yes" : "no") << " (+bound on " << r.plus_count << ", -bound on "
              << r.minus_count << ")\n";
  }
  if (!c.out.empty()) emit(j, c.out);
  return holds && (!mirror || r.is_mirror) ? kOk : kCheckFailed;
}

int cmd_violate(const Common& c, bool symmetric, int restarts, bool bloch, const std::string& report) {
  const auto ineq = load_inequality(c.ineq);
  const auto p = bloch ? bf::Parametrization::Bloch : bf::Parametrization::XZ;
  bf::Json j{{"label", ineq.label()}, {"n", ineq.parties()}, {"bound", bf::to_string(ineq.bound())}};
  double value = 0.0;
  if (symmetric) {
    bf::ScanConfig cfg;
    cfg.eigen.seed = c.seed;
    const auto r = bf::scan_symmetric(ineq, cfg);
    value = r.value;
    const std::vector<double> phis(ineq.parties(), r.phi);
    j["mode"] = "symmetric";
    j["phi"] = r.phi;
    j["settings"] = bf::to_json(bf::settings_from_angles(phis));
    j["state"] = bf::to_json(r.state);
    std::cout << "symmetric scan: phi " << fixed(r.phi, 6) << '\n';
  } else if (!c.state.empty()) {
    const auto psi = load_state(c.state);
    const auto r = bf::fixed_state_optimize_restarts(ineq, psi, restarts, c.seed, p);
    value = r.value;
    j["mode"] = "fixed-state";
    j["settings"] = bf::to_json(r.settings);
  } else {
    bf::SeeSawConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = c.seed;
    cfg.parametrization = p;
    const auto r = bf::see_saw(ineq, cfg);
    value = r.value;
    j["mode"] = "see-saw";
    j["best_restart"] = r.best_restart;
    j["budget_exhausted"] = r.budget_exhausted;
    j["settings"] = bf::to_json(r.settings);
    j["state"] = bf::to_json(r.state);
    std::cout << "see-saw: best restart " << r.best_restart << " of " << restarts << '\n';
  }
  const double bound = bf::to_double(ineq.bound());
  j["value"] = value;
  j["ratio"] = value / bound;
  j["violated"] = value > bound + 1e-9;
  j["tolerance"] = 1e-9;
  std::cout << "value " << fixed(value) << "  bound " << bf::to_string(ineq.bound()) << "  ratio "
            << fixed(value / bound) << (value > bound + 1e-9 ? "  violation\n" : "  no violation\n");
  const std::string& path = report.empty() ? c.out : report;
  if (!path.empty()) emit(j, path);
  return kOk;
}

std::vector<std::vector<int>> parse_indices(const std::vector<std::string>& texts, int n) {
  std::vector<std::vector<int>> out;
  for (const auto& t : texts) {
    std::vector<int> idx;
    for (char ch : t) {
      if (ch == ',' || ch == ' ') continue;
      if (ch < '0' || ch > '3') throw bf::InvalidConfig("tensor index digits are 0..3: " + t);
      idx.push_back(ch - '0');
    }
    if (static_cast<int>(idx.size()) != n) throw bf::InvalidConfig("index " + t + " needs " + std::to_string(n) + " digits");
    out.push_back(std::move(idx));
  }
  return out;
}

int cmd_tensor(const Common& c, const std::vector<std::string>& index_texts, bool mixture, bool all) {
  if (c.state.empty()) throw bf::InvalidConfig("--state is required");
  const auto psi = load_state(c.state);
  const int n = psi.qubits();
  const bf::MixedState rho = mixture ? bf::not_mixture(psi) : bf::MixedState(psi);
  auto indices = parse_indices(index_texts, n);
  if (indices.empty()) {
    if (n > 6) throw bf::InvalidConfig("give --index for more than 6 qubits");
    std::vector<int> idx(n);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * n)); ++code) {
      for (int j = 0; j < n; ++j) idx[j] = static_cast<int>(code >> (2 * (n - 1 - j))) & 3;
      indices.push_back(idx);
    }
  }
  bf::Json entries = bf::Json::array();
  for (const auto& idx : indices) {
    const double t = bf::correlation_tensor(rho, idx);
    if (!all && index_texts.empty() && std::abs(t) < 1e-12) continue;
    std::string key;
    for (int k : idx) key += static_cast<char>('0' + k);
    std::cout << key << ' ' << fixed(t, 12) << '\n';
    entries.push_back({{"index", key}, {"value", t}});
  }
  if (!c.out.empty()) emit({{"n", n}, {"not_mixture", mixture}, {"entries", entries}}, c.out);
  return kOk;
}

int cmd_condition(const Common& c, int frames, bool hadamard) {
  const auto ineq = load_inequality(c.ineq);
  if (c.state.empty()) throw bf::InvalidConfig("--state is required");
  auto psi = load_state(c.state);
  if (hadamard) psi = bf::hadamard_all(psi);
  const auto indices = bf::condition_indices(ineq);
  const auto sweep = bf::condition_frame_sweep(psi, indices, frames, c.seed);
  const bool screened = sweep.identity_frame <= 1.0;
  std::cout << "condition value " << fixed(sweep.identity_frame) << " over " << indices.size() << " tuples"
            << (screened ? " (<= 1: no violation with XZ mirror settings in this frame)\n" : " (> 1: inconclusive)\n");
  if (frames > 0) {
    std::cout << "max over " << sweep.frames << " frames " << fixed(sweep.max_value) << " (frame " << sweep.max_frame
              << ")\n";
  }
  if (!c.out.empty()) {
    emit({{"label", ineq.label()},
          {"tuples", indices.size()},
          {"identity_frame", sweep.identity_frame},
          {"max_value", sweep.max_value},
          {"max_frame", sweep.max_frame},
          {"frames", sweep.frames},
          {"hadamard", hadamard},
          {"screened", screened}},
         c.out);
  }
  return kOk;
}

int cmd_lint(const Common& c) {
  const auto doc = load_document(c.ineq);
  const auto r = bf::lint(doc);
  std::cout << bf::render(r);
  if (!c.out.empty()) emit(bf::to_json(r), c.out);
  return r.ok() ? kOk : kCheckFailed;
}

int cmd_reproduce(const Common& c, const std::string& scope, const std::vector<int>& only, const std::string& report) {
  bf::ReproOptions opt;
  opt.scope = scope == "fast" ? bf::ReproScope::Fast : bf::ReproScope::All;
  opt.seed = c.seed;
  opt.only = only;
  opt.on_check = [](const bf::ReproCheck& ch) {
    std::cerr << "[" << ch.status << "] " << ch.id << ' ' << ch.name << " (" << fixed(ch.runtime_s, 2) << " s)\n";
  };
  const auto r = bf::run_reproduction(opt);
  std::cout << bf::render(r);
  const std::string& path = report.empty() ? c.out : report;
  if (!path.empty()) emit(bf::to_json(r), path);
  return r.ok() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bellforge: multipartite Bell inequalities with lower-order correlations"};
  app.require_subcommand(1);
  Common c;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", c.out, "Write the JSON document here ('-' for stdout)");
    sub->add_option("--seed", c.seed, "Seed for every random choice")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker cap (falls back to BELLFORGE_THREADS)");
  };

  int n = 5;
  int k = 1;
  bool drop = false;
  long max_draws = 1000000;
  auto* build = app.add_subcommand("build", "Random complete set of cyclic orbits");
  build->add_option("--n", n, "Parties")->capture_default_str();
  build->add_option("--k", k, "ZEROs per candidate")->capture_default_str();
  build->add_flag("--drop-extremes", drop, "Remove the all-PLUS and all-MINUS terms");
  build->add_option("--max-draws", max_draws, "Candidate budget")->capture_default_str();
  add_common(build);

  bool list = false;
  std::string name;
  auto* cat = app.add_subcommand("catalog", "Built-in inequalities as printed");
  cat->add_flag("--list", list, "List entries");
  cat->add_option("name", name, "Entry to export");
  add_common(cat);

  bool wrapped = false;
  bool mirror = false;
  auto* certify = app.add_subcommand("certify", "Exact local bound by vertex enumeration");
  certify->add_option("--ineq", c.ineq, "Inequality file or catalog name")->required();
  certify->add_flag("--wrapped", wrapped, "Sum of absolute term values instead of the signed form");
  certify->add_flag("--mirror", mirror, "Require the signed form to be +-bound everywhere");
  add_common(certify);

  bool symmetric = false;
  bool bloch = false;
  int restarts = 16;
  std::string report;
  auto* violate = app.add_subcommand("violate", "Quantum value by see-saw, symmetric scan or fixed state");
  violate->add_option("--ineq", c.ineq, "Inequality file or catalog name")->required();
  violate->add_option("--state", c.state, "Optimize settings for this state only");
  violate->add_flag("--symmetric", symmetric, "Scan identical mirror settings on every party");
  violate->add_option("--restarts", restarts, "Random restarts")->capture_default_str()->check(CLI::PositiveNumber);
  violate->add_flag("--bloch", bloch, "Full Bloch-sphere settings instead of the XZ plane");
  violate->add_option("--report", report, "Report file (defaults to --out)");
  add_common(violate);

  std::vector<std::string> index_texts;
  bool mixture = false;
  bool all_entries = false;
  auto* tensor = app.add_subcommand("tensor", "Correlation tensor entries of a state");
  tensor->add_option("--state", c.state, "State file")->required();
  tensor->add_option("--index", index_texts, "Index such as 11110 (repeatable); default all nonzero entries");
  tensor->add_flag("--not-mixture", mixture, "Use the mixture of the state with its NOT image");
  tensor->add_flag("--all", all_entries, "Print zero entries too");
  add_common(tensor);

  int frames = 0;
  bool hadamard = false;
  auto* condition = app.add_subcommand("condition", "Sum-of-squares sufficient condition");
  condition->add_option("--ineq", c.ineq, "Inequality file or catalog name")->required();
  condition->add_option("--state", c.state, "State file")->required();
  condition->add_option("--frames", frames, "Random local frames to sample")->capture_default_str();
  condition->add_flag("--hadamard", hadamard, "Rotate every qubit by a Hadamard first");
  add_common(condition);

  auto* lint = app.add_subcommand("lint", "Coverage, duplicates, orbit closure and mirror status");
  lint->add_option("--ineq", c.ineq, "Inequality file or catalog name")->required();
  add_common(lint);

  std::string scope = "all";
  std::vector<int> only;
  auto* repro = app.add_subcommand("reproduce", "Run every published-value check");
  repro->add_option("--scope", scope, "all or fast (skips nine-party items)")
      ->capture_default_str()
      ->check(CLI::IsMember({"all", "fast"}));
  repro->add_option("--only", only, "Check ids to run");
  repro->add_option("--report", report, "Report file (defaults to --out)");
  add_common(repro);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    apply_threads(c.threads);
    if (*build) return cmd_build(c, n, k, drop, max_draws);
    if (*cat) return cmd_catalog(c, list, name);
    if (*certify) return cmd_certify(c, wrapped, mirror);
    if (*violate) return cmd_violate(c, symmetric, restarts, bloch, report);
    if (*tensor) return cmd_tensor(c, index_texts, mixture, all_entries);
    if (*condition) return cmd_condition(c, frames, hadamard);
    if (*lint) return cmd_lint(c);
    if (*repro) return cmd_reproduce(c, scope, only, report);
  } catch (const bf::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const bf::InvalidConfig& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}
