#include "increments/cli.hpp"

#include "increments/csv.hpp"
#include "increments/generator.hpp"
#include "increments/laplace.hpp"
#include "increments/monte_carlo.hpp"
#include "increments/volterra.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace increments::cli {

namespace {

using Json = nlohmann::ordered_json;

struct CommonOptions {
  std::string format = "csv";
  std::string output;
  std::string config;
  bool timing = false;
};

void add_common(CLI::App& sub, CommonOptions& common) {
  sub.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub.add_option("--output", common.output, "Write the artifact to this path instead of stdout");
  sub.add_option("--config", common.config, "Flat key=value file; keys are long flag names");
  sub.add_flag("--timing", common.timing, "Add wall time to the JSON metadata block");
}

Json metadata(std::string_view command, Json parameters) {
  Json meta;
  meta["command"] = command;
  meta["version"] = kVersion;
  meta["parameters"] = std::move(parameters);
  return meta;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

class Report {
public:
  void at_most(std::string name, double value, double threshold) {
    checks_.push_back({std::move(name), value, threshold, value <= threshold});
  }
  const std::vector<Check>& checks() const noexcept { return checks_; }
  bool passed() const noexcept {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
  }

private:
  std::vector<Check> checks_;
};

struct VerifyOptions {
  std::string suite = "all";
  double rate = 1.0;
  unsigned n_max = 12;
  std::uint64_t paths = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

void verify_laplace(const VerifyOptions& o, Report& report) {
  using namespace laplace;
  for (unsigned n = 0; n <= o.n_max; ++n) {
    const std::string tag = "[n=" + std::to_string(n) + "]";
    report.at_most("laplace.recursion_residual" + tag,
                   recursion_residual(n, o.rate).relative_error(), 1e-12);
    report.at_most("laplace.integrable_form" + tag,
                   integrable_form_residual(n, o.rate).relative_error(), 1e-12);
    report.at_most("laplace.value_at_zero" + tag,
                   std::abs(hat_closed_form(n, o.rate)(0.0) * o.rate - 1.0), 1e-12);
    if (n >= 2) {
      report.at_most("laplace.cross_term_identity" + tag, cross_term_identity_check(n, o.rate),
                     1e-12);
    }
  }
  for (unsigned n = 0; n <= std::min(o.n_max, 10u); ++n) {
    double worst = 0.0;
    for (double t : {0.1, 1.0, 5.0, 10.0}) {
      const double exact = invert_exact(n, o.rate, t);
      const double numeric = invert_numeric(hat_closed_form(n, o.rate), t);
      worst = std::max(worst, std::abs(numeric - exact) / exact);
    }
    report.at_most("laplace.inversion[n=" + std::to_string(n) + "]", worst, 1e-8);
  }
}

void verify_generator(const VerifyOptions& o, Report& report) {
  using namespace generator;
  const auto law = AtomicJumpLaw::unit(o.rate);
  monte_carlo::PathStream stream(o.seed, 0);
  double worst_semigroup = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = 5.0 * stream.uniform_open();
    const double s = 5.0 * stream.uniform_open();
    const double p = 5.0 * stream.uniform_open();
    worst_semigroup = std::max(worst_semigroup, semigroup_residual(law, t, s, p));
  }
  report.at_most("generator.semigroup_residual", worst_semigroup, 1e-12);

  double worst_transform = 0.0;
  const double t_limit = 5.0 / law.total_rate();
  for (double t : {0.0, 0.25 * t_limit, 0.5 * t_limit, t_limit}) {
    const auto pmf = pmf_from_generator(law, t, 60);
    for (double p = 0.0; p <= 5.0; p += 0.25) {
      double series = 0.0;
      for (std::size_t n = 0; n < pmf.size(); ++n) {
        series += pmf[n] * std::exp(-p * static_cast<double>(n));
      }
      worst_transform = std::max(worst_transform, std::abs(g_of(law, t, p) - series));
    }
  }
  report.at_most("generator.transform_consistency", worst_transform, 1e-10);
}

void verify_routes(const VerifyOptions& o, Report& report) {
  const auto pmf = generator::pmf_from_generator(AtomicJumpLaw::unit(o.rate), 1.0, 30);
  double worst = 0.0;
  for (unsigned n = 0; n <= 30; ++n) {
    worst = std::max(worst, std::abs(pmf[n] - laplace::invert_exact(n, o.rate, 1.0)));
  }
  report.at_most("routes.generator_vs_laplace", worst, 1e-12);
}

void verify_solver(const VerifyOptions& o, Report& report) {
  using namespace volterra;
  const auto model = poisson_model(o.rate);
  const TimeGrid grid(5.0 / o.rate, 1000);
  const auto table = solve_up_to(model, grid, 5, Scheme::trapezoid);
  double worst = 0.0;
  double worst_residual = 0.0;
  for (unsigned n = 0; n <= 5; ++n) {
    for (std::size_t j = 0; j < grid.num_nodes(); ++j) {
      worst = std::max(worst,
                       std::abs(table.at(n, j) - laplace::invert_exact(n, o.rate, grid.node(j))));
    }
    worst_residual = std::max(worst_residual, residual_norm(table, n));
  }
  report.at_most("solver.max_error_vs_closed_form", worst, 5e-4);
  report.at_most("solver.self_consistency_residual", worst_residual, 1e-12);
}

void verify_montecarlo(const VerifyOptions& o, Report& report) {
  const monte_carlo::SimConfig config(AtomicJumpLaw::unit(o.rate), 1.0, o.paths, o.seed,
                                      o.workers);
  const auto pmf = monte_carlo::empirical_pmf(config, 1.0, 8);
  double worst_z = 0.0;
  for (unsigned n = 0; n <= 8; ++n) {
    const double exact = laplace::invert_exact(n, o.rate, 1.0);
    // Binomial standard error of the oracle value.
    const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(o.paths));
    worst_z = std::max(worst_z, std::abs(pmf.estimates[n] - exact) / se);
  }
  report.at_most("montecarlo.pmf_z_score", worst_z, 4.0);
}

// ---------------------------------------------------------------------------

class Runner {
public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& raw_args);

private:
  void emit(const CommonOptions& common, const std::string& body) const {
    if (common.output.empty()) {
      out_ << body;
      return;
    }
    std::ofstream file(common.output, std::ios::binary);
    if (!file) {
      throw std::runtime_error("cannot open output file '" + common.output + "'");
    }
    file << body;
  }

  std::string finish_json(Json doc, const CommonOptions& common) const {
    if (common.timing) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
      doc["metadata"]["wall_time_seconds"] = elapsed.count();
    }
    return doc.dump(2) + "\n";
  }

  std::ostream& out_;
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("INCREMENTS_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const auto value = std::strtoull(env, &end, 10);
    if (*end != '\0') {
      throw std::invalid_argument("INCREMENTS_SEED must be an unsigned integer");
    }
    return value;
  }
  return 0;
}

int Runner::run(const std::vector<std::string>& raw_args) {
  CLI::App app{"Counting-process toolkit: Volterra marching, Laplace recursion, generator "
               "transforms and Monte Carlo checks",
               "increments"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // solve
  CommonOptions solve_common;
  double solve_rate = 0.0;
  double solve_t_max = 0.0;
  std::size_t solve_steps = 0;
  unsigned solve_n_max = 0;
  std::string solve_scheme = "trapezoid";
  auto* solve = app.add_subcommand("solve", "March the probability integral equation on a grid");
  solve->add_option("--lambda", solve_rate, "Event rate")->required();
  solve->add_option("--t-max", solve_t_max, "Grid horizon")->required();
  solve->add_option("--steps", solve_steps, "Number of grid steps")->required();
  solve->add_option("--n-max", solve_n_max, "Largest count to solve for")->required();
  solve->add_option("--scheme", solve_scheme, "Quadrature scheme")
      ->check(CLI::IsMember({"trapezoid", "rectangle"}))
      ->capture_default_str();
  add_common(*solve, solve_common);

  // laplace
  CommonOptions laplace_common;
  double laplace_rate = 0.0;
  unsigned laplace_n_max = 0;
  std::optional<double> laplace_t;
  unsigned laplace_nodes = laplace::kDefaultTalbotNodes;
  auto* lap = app.add_subcommand("laplace", "Closed-form transforms and their inversion");
  lap->add_option("--lambda", laplace_rate, "Event rate")->required();
  lap->add_option("--n-max", laplace_n_max, "Largest count")->required();
  lap->add_option("--t", laplace_t, "Invert exactly and numerically at this time");
  lap->add_option("--nodes", laplace_nodes, "Talbot node count")->capture_default_str();
  add_common(*lap, laplace_common);

  // generator
  CommonOptions gen_common;
  std::string gen_law;
  double gen_t = 0.0;
  unsigned gen_n_max = 0;
  std::optional<double> gen_p;
  auto* gen = app.add_subcommand("generator", "Count pmf and transform from a jump law");
  gen->add_option("--law", gen_law, "Jump atoms as size:rate[,size:rate...]")->required();
  gen->add_option("--t", gen_t, "Time")->required();
  gen->add_option("--n-max", gen_n_max, "Largest count")->required();
  gen->add_option("--p", gen_p, "Also report eta(p) and g(t; p)");
  add_common(*gen, gen_common);

  // simulate
  CommonOptions sim_common;
  std::string sim_law;
  double sim_t_max = 0.0;
  std::uint64_t sim_paths = 0;
  std::optional<std::uint64_t> sim_seed;
  double sim_t = 0.0;
  unsigned sim_n_max = 0;
  unsigned sim_workers = 1;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo count pmf");
  sim->add_option("--law", sim_law, "Jump atoms as size:rate[,size:rate...]")->required();
  sim->add_option("--t-max", sim_t_max, "Simulation horizon")->required();
  sim->add_option("--paths", sim_paths, "Number of sample paths")->required();
  sim->add_option("--seed", sim_seed, "64-bit seed (default: $INCREMENTS_SEED, else 0)");
  sim->add_option("--t", sim_t, "Time at which counts are tabulated")->required();
  sim->add_option("--n-max", sim_n_max, "Largest tabulated count")->required();
  sim->add_option("--workers", sim_workers, "Worker threads")->capture_default_str();
  add_common(*sim, sim_common);

  // verify
  CommonOptions verify_common;
  VerifyOptions verify_options;
  std::optional<std::uint64_t> verify_seed;
  auto* ver = app.add_subcommand("verify", "Run numerical checks; exit 1 on any failure");
  ver->add_option("--suite", verify_options.suite, "Which checks to run")
      ->check(CLI::IsMember({"laplace", "generator", "routes", "solver", "montecarlo", "all"}))
      ->capture_default_str();
  ver->add_option("--lambda", verify_options.rate, "Event rate")->capture_default_str();
  ver->add_option("--n-max", verify_options.n_max, "Largest n for the Laplace identities")
      ->capture_default_str();
  ver->add_option("--paths", verify_options.paths, "Monte Carlo paths")->capture_default_str();
  ver->add_option("--seed", verify_seed, "64-bit seed (default: $INCREMENTS_SEED, else 0)");
  ver->add_option("--workers", verify_options.workers, "Worker threads")->capture_default_str();
  add_common(*ver, verify_common);

  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << '\n';
    return kUsageError;
  }
  // CLI11 consumes arguments from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out_, err_);
    return kSuccess;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out_, err_);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out_, err_);
    return kUsageError;
  }

  try {
    if (solve->parsed()) {
      const auto scheme = volterra::parse_scheme(solve_scheme);
      const auto table = volterra::solve_up_to(volterra::poisson_model(solve_rate),
                                               volterra::TimeGrid(solve_t_max, solve_steps),
                                               solve_n_max, scheme);
      if (solve_common.format == "csv") {
        std::ostringstream body;
        volterra::write_csv(body, table);
        emit(solve_common, body.str());
      } else {
        Json doc;
        doc["metadata"] = metadata("solve", {{"lambda", solve_rate},
                                             {"t_max", solve_t_max},
                                             {"steps", solve_steps},
                                             {"n_max", solve_n_max},
                                             {"scheme", solve_scheme}});
        Json t = Json::array();
        for (std::size_t j = 0; j < table.grid().num_nodes(); ++j) {
          t.push_back(table.grid().node(j));
        }
        doc["t"] = std::move(t);
        Json rows = Json::array();
        for (unsigned n = 0; n <= solve_n_max; ++n) {
          const auto row = table.row(n);
          rows.push_back(Json{{"n", n}, {"f", std::vector<double>(row.begin(), row.end())}});
        }
        doc["rows"] = std::move(rows);
        emit(solve_common, finish_json(std::move(doc), solve_common));
      }
      return kSuccess;
    }

    if (lap->parsed()) {
      if (laplace_t && !(*laplace_t > 0.0)) {
        throw std::invalid_argument("--t must be positive for numerical inversion");
      }
      std::ostringstream csv;
      csv << "n,value_at_zero" << (laplace_t ? ",exact,numeric,rel_err" : "") << '\n';
      Json transforms = Json::array();
      for (unsigned n = 0; n <= laplace_n_max; ++n) {
        const auto f_hat = laplace::hat_closed_form(n, laplace_rate);
        Json entry;
        entry["n"] = n;
        entry["f_hat"] = Json::parse(laplace::to_json(f_hat));
        entry["value_at_zero"] = f_hat(0.0);
        csv << n << ',' << format_number(f_hat(0.0));
        if (laplace_t) {
          const double exact = laplace::invert_exact(n, laplace_rate, *laplace_t);
          const double numeric = laplace::invert_numeric(f_hat, *laplace_t, laplace_nodes);
          const double rel = std::abs(numeric - exact) / exact;
          entry["exact"] = exact;
          entry["numeric"] = numeric;
          entry["rel_err"] = rel;
          csv << ',' << format_number(exact) << ',' << format_number(numeric) << ','
              << format_number(rel);
        }
        csv << '\n';
        transforms.push_back(std::move(entry));
      }
      if (laplace_common.format == "csv") {
        emit(laplace_common, csv.str());
      } else {
        Json params{{"lambda", laplace_rate}, {"n_max", laplace_n_max}, {"nodes", laplace_nodes}};
        if (laplace_t) {
          params["t"] = *laplace_t;
        }
        Json doc;
        doc["metadata"] = metadata("laplace", std::move(params));
        doc["transforms"] = std::move(transforms);
        emit(laplace_common, finish_json(std::move(doc), laplace_common));
      }
      return kSuccess;
    }

    if (gen->parsed()) {
      const auto law = AtomicJumpLaw::parse(gen_law);
      const auto pmf = generator::pmf_from_generator(law, gen_t, gen_n_max);
      if (gen_common.format == "csv") {
        std::ostringstream body;
        body << "n,pmf\n";
        for (std::size_t n = 0; n < pmf.size(); ++n) {
          body << n << ',' << format_number(pmf[n]) << '\n';
        }
        emit(gen_common, body.str());
      } else {
        Json params{{"law", law.to_string()}, {"t", gen_t}, {"n_max", gen_n_max}};
        Json doc;
        if (gen_p) {
          params["p"] = *gen_p;
        }
        doc["metadata"] = metadata("generator", std::move(params));
        doc["pmf"] = pmf;
        if (gen_p) {
          doc["eta"] = generator::eta(law, *gen_p);
          doc["g"] = generator::g_of(law, gen_t, *gen_p);
        }
        emit(gen_common, finish_json(std::move(doc), gen_common));
      }
      return kSuccess;
    }

    if (sim->parsed()) {
      const auto law = AtomicJumpLaw::parse(sim_law);
      const std::uint64_t seed = sim_seed ? *sim_seed : default_seed();
      const monte_carlo::SimConfig config(law, sim_t_max, sim_paths, seed, sim_workers);
      const auto pmf = monte_carlo::empirical_pmf(config, sim_t, sim_n_max);
      if (sim_common.format == "csv") {
        std::ostringstream body;
        monte_carlo::write_csv(body, pmf);
        emit(sim_common, body.str());
      } else {
        Json doc;
        doc["metadata"] = metadata("simulate", {{"law", law.to_string()},
                                                {"t_max", sim_t_max},
                                                {"paths", sim_paths},
                                                {"seed", seed},
                                                {"t", sim_t},
                                                {"n_max", sim_n_max}});
        Json rows = Json::array();
        for (std::size_t n = 0; n < pmf.counts.size(); ++n) {
          rows.push_back(Json{{"n", n},
                              {"count", pmf.counts[n]},
                              {"estimate", pmf.estimates[n]},
                              {"std_err", pmf.std_err[n]}});
        }
        doc["rows"] = std::move(rows);
        doc["tail_count"] = pmf.tail_count;
        emit(sim_common, finish_json(std::move(doc), sim_common));
      }
      return kSuccess;
    }

    // verify
    verify_options.seed = verify_seed ? *verify_seed : default_seed();
    if (!(verify_options.rate > 0.0)) {
      throw std::invalid_argument("--lambda must be positive");
    }
    Report report;
    const std::string& suite = verify_options.suite;
    const auto wants = [&suite](std::string_view name) { return suite == "all" || suite == name; };
    if (wants("laplace")) {
      verify_laplace(verify_options, report);
    }
    if (wants("generator")) {
      verify_generator(verify_options, report);
    }
    if (wants("routes")) {
      verify_routes(verify_options, report);
    }
    if (wants("solver")) {
      verify_solver(verify_options, report);
    }
    if (wants("montecarlo")) {
      verify_montecarlo(verify_options, report);
    }
    if (verify_common.format == "csv") {
      std::ostringstream body;
      body << "check,value,threshold,pass\n";
      for (const auto& c : report.checks()) {
        body << c.name << ',' << format_number(c.value) << ',' << format_number(c.threshold)
             << ',' << (c.pass ? "true" : "false") << '\n';
      }
      emit(verify_common, body.str());
    } else {
      Json doc;
      doc["metadata"] = metadata("verify", {{"suite", suite},
                                            {"lambda", verify_options.rate},
                                            {"n_max", verify_options.n_max},
                                            {"paths", verify_options.paths},
                                            {"seed", verify_options.seed}});
      Json checks = Json::array();
      for (const auto& c : report.checks()) {
        checks.push_back(Json{{"check", c.name},
                              {"value", c.value},
                              {"threshold", c.threshold},
                              {"pass", c.pass}});
      }
      doc["checks"] = std::move(checks);
      doc["passed"] = report.passed();
      emit(verify_common, finish_json(std::move(doc), verify_common));
    }
    for (const auto& c : report.checks()) {
      if (!c.pass) {
        err_ << "FAILED " << c.name << ": " << format_number(c.value) << " > "
             << format_number(c.threshold) << '\n';
      }
    }
    return report.passed() ? kSuccess : kCheckFailure;
  } catch (const std::invalid_argument& e) {
    err_ << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << '\n';
    return kCheckFailure;
  }
}

} // namespace

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (!path) {
    return args;
  }
  std::ifstream file(*path);
  if (!file) {
    throw std::invalid_argument("cannot read config file '" + *path + "'");
  }
  const auto given = [&args](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&flag](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  std::vector<std::string> expanded = args;
  std::string line;
  int line_number = 0;
  while (std::getline(file, line)) {
    ++line_number;
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') {
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(*path + ":" + std::to_string(line_number) +
                                  ": expected key=value");
    }
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty() || key == "config") {
      throw std::invalid_argument(*path + ":" + std::to_string(line_number) + ": bad key");
    }
    const std::string flag = "--" + key;
    if (given(flag)) {
      continue;
    }
    // Switches such as --timing take no value on the command line.
    if (value == "true") {
      expanded.push_back(flag);
    } else if (value != "false") {
      expanded.push_back(flag);
      expanded.push_back(value);
    }
  }
  return expanded;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(out, err).run(args);
}

} // namespace increments::cli
