#include "certmenu/equilibrium.hpp"
#include "certmenu/obedience.hpp"
#include "certmenu/optimizer.hpp"
#include "certmenu/oracle.hpp"
#include "certmenu/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <array>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace certmenu;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitDisagreement = 3;

struct CliInputs {
  std::string config_path;
  std::string mu;
  std::string pi_star;
  std::string acceptance;  // comma list or "naive"
  std::string solver_path;
  bool allow_uninformative = false;
  bool single_item = false;
  bool alternates = false;
  int grid_size = 0;  // 0: keep the config's value
  std::string output = "json";
};

RunConfig build_config(const CliInputs& in) {
  RunConfig config;
  bool have_config = false;
  if (!in.config_path.empty()) {
    std::ifstream file(in.config_path);
    if (!file) throw std::invalid_argument("cannot open config file: " + in.config_path);
    Json doc;
    try {
      file >> doc;
    } catch (const std::exception& e) {
      throw std::invalid_argument("config is not valid JSON: " + std::string(e.what()));
    }
    config = parse_config(doc);
    have_config = true;
  }

  if (in.allow_uninformative) config.allow_uninformative = true;
  if (in.single_item) config.single_item = true;
  if (!in.solver_path.empty()) config.solver_path = in.solver_path;
  if (in.grid_size > 0) config.naive_grid_size = in.grid_size;

  if (!in.mu.empty() || !in.pi_star.empty()) {
    if (in.mu.empty() || in.pi_star.empty()) {
      throw std::invalid_argument("--mu and --pi-star must be given together");
    }
    Rat mu = parse_rat(in.mu);
    Rat pi_star = parse_rat(in.pi_star);
    if (mu <= 0 || mu >= 1 || pi_star <= 0 || pi_star >= 1) {
      throw std::invalid_argument("mu and pi* must lie strictly in (0,1)");
    }
    config.params = MarketParams::from_threshold(std::move(mu), std::move(pi_star));
  } else if (!have_config) {
    throw std::invalid_argument("provide --config or --mu/--pi-star");
  }

  if (!in.acceptance.empty()) {
    if (in.acceptance == "naive") {
      config.naive = true;
      config.acceptance.reset();
    } else {
      std::vector<Signal> signals;
      std::stringstream stream(in.acceptance);
      std::string token;
      while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        signals.push_back(Signal::parse(token));
      }
      config.naive = false;
      config.acceptance = AcceptanceSet(std::move(signals), config.allow_uninformative);
    }
  }
  if (!config.naive && !config.acceptance) {
    throw std::invalid_argument("provide --acceptance (or \"naive\")");
  }
  if (config.solver_path != "lp" && config.solver_path != "closed-form" &&
      config.solver_path != "support-enum" && config.solver_path != "all") {
    throw std::invalid_argument("--solver-path must be lp, closed-form, support-enum, or all");
  }
  return config;
}

SolveResult closed_form_result(const AcceptanceSet& set, const MarketParams& p) {
  if (set.size() != 2) {
    throw std::invalid_argument("closed-form path needs exactly two accepted signals");
  }
  const Signal& e_l = set.signals()[0];
  const Signal& e_h = set.signals()[1];
  auto candidates = closed_form_binary(e_h, e_l, p);
  const BinaryMenuCandidate& primary = candidates.front();
  SolveResult result{primary.menu,
                     welfare(primary.menu, set, p),
                     RegimeLabel::degenerate,
                     SolverPath::closed_form,
                     primary.revenue,
                     set,
                     primary.x,
                     primary.y};
  result.regime = classify(result, set);
  return result;
}

SolveResult run_solver(const RunConfig& config, const std::string& path) {
  if (config.naive) return naive_receiver_solve(config.params, config.naive_grid_size);
  const AcceptanceSet& set = *config.acceptance;
  if (config.single_item) return solve_single_item(set, config.params);
  if (path == "support-enum") return enumerate_support_menus(set, config.params);
  if (path == "closed-form") return closed_form_result(set, config.params);
  return solve_revenue_max(set, config.params);
}

std::string fixed6(const Rat& value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", to_double(value));
  return buffer;
}

void print_table(const SolveResult& result) {
  std::cout << "regime          " << to_string(result.regime) << "\n";
  std::cout << "solver path     " << to_string(result.solver_path) << "\n";
  std::cout << "revenue         " << fixed6(result.welfare.revenue) << "  ("
            << format_rat(result.welfare.revenue) << ")\n";
  std::cout << "rent high       " << fixed6(result.welfare.rent_high) << "  ("
            << format_rat(result.welfare.rent_high) << ")\n";
  std::cout << "rent low        " << fixed6(result.welfare.rent_low) << "\n";
  if (result.welfare.receiver_payoff) {
    std::cout << "receiver payoff " << fixed6(*result.welfare.receiver_payoff) << "\n";
  }
  std::cout << "accept prob h   " << fixed6(result.welfare.accept_prob_h) << "\n";
  std::cout << "accept prob l   " << fixed6(result.welfare.accept_prob_l) << "\n";
  auto print_option = [](const char* name, const PricedExperiment& option) {
    std::cout << name << "  price " << format_rat(option.price) << "  atoms {";
    bool first = true;
    if (!option.experiment.is_none()) {
      for (const auto& [signal, mass] : option.experiment.atoms()) {
        if (!first) std::cout << ", ";
        std::cout << signal.str() << ": " << format_rat(mass);
        first = false;
      }
    }
    std::cout << "}\n";
  };
  print_option("high option   ", result.menu.high());
  print_option("low option    ", result.menu.low());
}

Json optimistic_to_json(const std::array<OptimisticOutcome, 2>& outcomes) {
  Json list = Json::array();
  for (const OptimisticOutcome& outcome : outcomes) {
    Json item;
    item["regime"] = std::string(to_string(outcome.label));
    item["menu"] = to_json(outcome.menu);
    item["revenue"] = format_rat(outcome.revenue);
    if (outcome.receiver_payoff) item["receiver_payoff"] = format_rat(*outcome.receiver_payoff);
    list.push_back(std::move(item));
  }
  Json out;
  out["outcomes"] = std::move(list);
  return out;
}

int cmd_solve(const CliInputs& in) {
  RunConfig config = build_config(in);

  // An optimistic receiver admits exactly two outcomes; report both.
  if (!config.params.pessimistic()) {
    std::cout << optimistic_to_json(optimistic_receiver_outcomes(config.params)).dump(2) << "\n";
    return kExitOk;
  }

  if (config.solver_path == "all") {
    std::vector<std::pair<std::string, SolveResult>> runs;
    runs.emplace_back("lp", run_solver(config, "lp"));
    if (!config.naive && !config.single_item) {
      runs.emplace_back("support-enum", run_solver(config, "support-enum"));
      const AcceptanceSet& set = *config.acceptance;
      if (set.size() == 2 && set.signals()[0] < Signal(Rat(1)) &&
          set.signals()[1] > Signal(Rat(1))) {
        runs.emplace_back("closed-form", run_solver(config, "closed-form"));
      }
    }
    bool agree = true;
    for (const auto& [name, result] : runs) {
      if (result.welfare.revenue != runs.front().second.welfare.revenue) agree = false;
    }
    Json out;
    out["paths"] = Json::object();
    for (const auto& [name, result] : runs) out["paths"][name] = to_json(result);
    out["agree"] = agree;
    std::cout << out.dump(2) << "\n";
    return agree ? kExitOk : kExitDisagreement;
  }

  SolveResult result = run_solver(config, config.solver_path);
  Json out = to_json(result);

  if (in.alternates) {
    // Every revenue-maximizing vertex, not just the canonical one; genuine
    // multiplicity occurs at parameter boundaries such as inf(E) = 1/mu.
    if (config.naive || config.single_item || !config.acceptance) {
      throw std::invalid_argument("--alternates applies to plain acceptance-set solves");
    }
    if (config.acceptance->size() > 6) {
      throw std::invalid_argument("--alternates enumerates vertices for at most six signals");
    }
    LpInstance lp = build_lp(*config.acceptance, config.params);
    Json list = Json::array();
    for (const LpSolution& vertex : optimal_vertices(lp)) {
      Menu menu = materialize_menu(vertex.x, vertex.y, *config.acceptance);
      WelfareAccount account = welfare(menu, *config.acceptance, config.params);
      Json item;
      item["menu"] = to_json(menu);
      item["revenue"] = format_rat(account.revenue);
      item["rent_high"] = format_rat(account.rent_high);
      list.push_back(std::move(item));
    }
    out["alternates"] = std::move(list);
  }

  if (in.output == "table") {
    print_table(result);
    if (in.alternates) {
      std::cout << "optimal vertices " << out["alternates"].size() << "\n";
    }
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_classify(const CliInputs& in) {
  RunConfig config = build_config(in);
  if (!config.params.pessimistic()) {
    std::cout << optimistic_to_json(optimistic_receiver_outcomes(config.params)).dump(2) << "\n";
    return kExitOk;
  }
  SolveResult result = run_solver(config, config.solver_path == "all" ? "lp" : config.solver_path);

  Json out;
  out["regime"] = std::string(to_string(result.regime));
  if (config.acceptance) {
    SeparatingClass sep = separating_threshold(*config.acceptance, config.params);
    out["separating_threshold"] = sep == SeparatingClass::must_separate   ? "must-separate"
                                  : sep == SeparatingClass::may_separate ? "may-separate"
                                                                         : "cannot-separate";
  }
  out["one_over_mu"] = format_rat(Rat(1) / config.params.mu());
  out["one_over_odds"] = format_rat(Rat(1) / config.params.odds());
  out["revenue"] = format_rat(result.welfare.revenue);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

struct SweepSpec {
  std::string param;  // mu | pi_star | e_star
  std::string from;
  std::string to;
  int steps = 1;
};

int cmd_sweep(const CliInputs& in, const SweepSpec& sweep) {
  RunConfig base = build_config(in);
  if (sweep.steps < 1) throw std::invalid_argument("--steps must be at least 1");
  if (sweep.param != "mu" && sweep.param != "pi_star" && sweep.param != "e_star") {
    throw std::invalid_argument("--param must be mu, pi_star, or e_star");
  }
  const Rat from = parse_rat(sweep.from);
  const Rat to = parse_rat(sweep.to);

  std::vector<Rat> points;
  for (int i = 0; i < sweep.steps; ++i) {
    points.push_back(sweep.steps == 1 ? from : from + (to - from) * i / (sweep.steps - 1));
  }

  // Validate the whole range up front so a bad sweep fails before output.
  std::vector<RunConfig> configs;
  for (const Rat& value : points) {
    RunConfig config = base;
    if (sweep.param == "mu") {
      if (value <= 0 || value >= 1) throw std::invalid_argument("mu sweep leaves (0,1)");
      config.params = MarketParams::from_threshold(value, base.params.pi_star());
      if (config.naive && value >= base.params.pi_star()) {
        throw std::invalid_argument("mu sweep violates mu < pi* required by the naive receiver");
      }
    } else if (sweep.param == "pi_star") {
      if (value <= 0 || value >= 1) throw std::invalid_argument("pi_star sweep leaves (0,1)");
      config.params = MarketParams::from_threshold(base.params.mu(), value);
      if (config.naive && base.params.mu() >= value) {
        throw std::invalid_argument("pi_star sweep violates mu < pi*");
      }
    } else {
      if (value <= 0) throw std::invalid_argument("e_star sweep needs positive signals");
      config.naive = false;
      config.acceptance = AcceptanceSet({Signal(value)}, config.allow_uninformative);
    }
    configs.push_back(std::move(config));
  }

  // Rows are independent; compute them concurrently, emit in input order.
  std::vector<std::future<SolveResult>> futures;
  for (const RunConfig& config : configs) {
    futures.push_back(std::async(std::launch::async, [&config] {
      return run_solver(config, config.solver_path == "all" ? "lp" : config.solver_path);
    }));
  }

  std::cout << "param,value,revenue,rent_high,receiver_payoff,regime\n";
  for (std::size_t i = 0; i < futures.size(); ++i) {
    SolveResult result = futures[i].get();
    const WelfareAccount& w = result.welfare;
    std::cout << sweep.param << "," << format_rat(points[i]) << "," << format_rat(w.revenue) << ","
              << format_rat(w.rent_high) << ","
              << (w.receiver_payoff ? format_rat(*w.receiver_payoff) : "") << ","
              << to_string(result.regime) << "\n";
  }
  return kExitOk;
}

// Invariants checked per verify trial, in reporting order.
constexpr const char* kInvariantNames[] = {
    "cross-solver identity", "oracle sandwich",        "full high-type acceptance",
    "zero low-type rent",    "support bounds",         "obedient optimal menus",
};
constexpr int kInvariantCount = 6;

struct TrialOutcome {
  int passed = 0;  // number of invariants that held, in order
  std::string failed_invariant;
};

TrialOutcome run_trial(std::uint64_t instance_seed, int resolution) {
  RandomInstance instance = random_instance(instance_seed);
  const AcceptanceSet& set = instance.acceptance;
  const MarketParams& p = instance.params;
  TrialOutcome outcome;

  SolveResult result = solve_revenue_max(set, p);
  LpInstance lp = build_lp(set, p);
  if (vertex_enumerate(lp).objective != result.certificate ||
      enumerate_support_menus(set, p).certificate != result.certificate) {
    outcome.failed_invariant = "cross-solver identity";
    return outcome;
  }
  ++outcome.passed;

  GridSpec spec;
  spec.resolution = resolution;
  spec.seed = instance_seed;
  if (grid_search_menus(set, p, spec).objective > result.certificate) {
    outcome.failed_invariant = "grid oracle exceeded the exact optimum";
    return outcome;
  }
  ++outcome.passed;

  Rat sum_x(0);
  int supp_x = 0, supp_y = 0;
  for (const Rat& v : result.x) {
    sum_x += v;
    supp_x += v > 0 ? 1 : 0;
  }
  for (const Rat& v : result.y) supp_y += v > 0 ? 1 : 0;

  if (result.certificate > 0 && sum_x != 1) {
    outcome.failed_invariant = "positive revenue without full high-type acceptance";
    return outcome;
  }
  ++outcome.passed;
  if (result.welfare.rent_low != 0) {
    outcome.failed_invariant = "low type earned rent";
    return outcome;
  }
  ++outcome.passed;
  if (supp_x > 3 || supp_y > 2) {
    outcome.failed_invariant = "support bounds";
    return outcome;
  }
  ++outcome.passed;
  if (!check_obedience(result.menu, set, p).overall) {
    outcome.failed_invariant = "optimal menu not obedient";
    return outcome;
  }
  ++outcome.passed;
  return outcome;
}

int cmd_verify(int trials, int resolution, std::uint64_t seed) {
  if (trials < 1) {
    std::cerr << "verify: --trials must be at least 1\n";
    return kExitConfigError;
  }
  if (resolution < 8) {
    std::cerr << "verify: --resolution must be at least 8\n";
    return kExitConfigError;
  }

  // Trials are independent; run them concurrently and report in seed order.
  const unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  std::vector<TrialOutcome> outcomes(trials);
  std::vector<std::future<void>> futures;
  for (unsigned w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (int t = static_cast<int>(w); t < trials; t += static_cast<int>(workers)) {
        outcomes[t] = run_trial(seed + static_cast<std::uint64_t>(t), resolution);
      }
    }));
  }
  for (auto& f : futures) f.get();

  for (int t = 0; t < trials; ++t) {
    if (outcomes[t].failed_invariant.empty()) continue;
    const std::uint64_t instance_seed = seed + static_cast<std::uint64_t>(t);
    RandomInstance instance = random_instance(instance_seed);
    Json failing;
    failing["seed"] = instance_seed;
    failing["mu"] = format_rat(instance.params.mu());
    failing["pi_star"] = format_rat(instance.params.pi_star());
    Json atoms = Json::array();
    for (const Signal& e : instance.acceptance.signals()) atoms.push_back(e.str());
    failing["acceptance"] = atoms;
    failing["failed_invariant"] = outcomes[t].failed_invariant;
    std::cerr << failing.dump(2) << "\n";
    std::cerr << "replay with: certmenu verify --trials 1 --seed " << instance_seed << "\n";
    return kExitVerifyFailure;
  }

  for (int i = 0; i < kInvariantCount; ++i) {
    int held = 0;
    for (const TrialOutcome& outcome : outcomes) held += outcome.passed > i ? 1 : 0;
    std::printf("%-28s %d/%d\n", kInvariantNames[i], held, trials);
  }
  std::cout << "all invariants hold\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revenue-maximizing certification menus: solver, sweeps, verification"};
  app.require_subcommand(1);

  CliInputs inputs;
  SweepSpec sweep;
  int trials = 100;
  int resolution = 24;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", inputs.config_path, "JSON run configuration");
    cmd->add_option("--mu", inputs.mu, "prior probability of the high type");
    cmd->add_option("--pi-star", inputs.pi_star, "acceptance threshold");
    cmd->add_option("--acceptance", inputs.acceptance, "comma-separated signals, or \"naive\"");
    cmd->add_option("--solver-path", inputs.solver_path, "lp | closed-form | support-enum | all");
    cmd->add_flag("--allow-uninformative", inputs.allow_uninformative, "permit e = 1 in the acceptance set");
    cmd->add_flag("--single-item", inputs.single_item, "restrict the certifier to one menu item");
    cmd->add_flag("--alternates", inputs.alternates, "also list every revenue-maximizing vertex");
    cmd->add_option("--grid-size", inputs.grid_size, "atoms in the naive-receiver grid");
    cmd->add_option("--output", inputs.output, "json | table");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one instance");
  add_common(solve);

  CLI::App* classify_cmd = app.add_subcommand("classify", "solve and report the regime");
  add_common(classify_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep a parameter, emit CSV");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--param", sweep.param, "mu | pi_star | e_star")->required();
  sweep_cmd->add_option("--from", sweep.from, "range start")->required();
  sweep_cmd->add_option("--to", sweep.to, "range end")->required();
  sweep_cmd->add_option("--steps", sweep.steps, "grid points")->required();

  CLI::App* verify = app.add_subcommand("verify", "randomized cross-solver verification");
  verify->add_option("--trials", trials, "number of random instances");
  verify->add_option("--resolution", resolution, "grid oracle resolution");
  verify->add_option("--seed", seed, "base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (solve->parsed()) return cmd_solve(inputs);
    if (classify_cmd->parsed()) return cmd_classify(inputs);
    if (sweep_cmd->parsed()) return cmd_sweep(inputs, sweep);
    if (verify->parsed()) return cmd_verify(trials, resolution, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerifyFailure;
  }
  return kExitConfigError;
}
