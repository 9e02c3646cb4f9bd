// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Optional argv[1]: path to the CLI binary, used to run
// `simulate` as separate processes for the determinism criterion.

#include "increments/cli.hpp"
#include "increments/generator.hpp"
#include "increments/laplace.hpp"
#include "increments/monte_carlo.hpp"
#include "increments/volterra.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

using namespace increments;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;
  std::function<Outcome()> body;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Outcome laplace_recursion() {
  double worst = 0.0;
  for (double rate : {0.5, 1.0, 2.0, 3.0}) {
    for (unsigned n = 0; n <= 12; ++n) {
      worst = std::max(worst, laplace::recursion_residual(n, rate).relative_error());
    }
  }
  return {worst <= 1e-12, "max relative coefficient " + sci(worst) + " (limit 1e-12)"};
}

Outcome cross_term() {
  double worst = 0.0;
  for (double rate : {1.0, 2.0}) {
    for (unsigned n = 2; n <= 12; ++n) {
      worst = std::max(worst, laplace::cross_term_identity_check(n, rate));
    }
  }
  return {worst <= 1e-12, "max relative coefficient " + sci(worst) + " (limit 1e-12)"};
}

Outcome inversion() {
  double worst = 0.0;
  for (unsigned n = 0; n <= 10; ++n) {
    for (double t : {0.1, 1.0, 5.0, 10.0}) {
      const double exact = laplace::invert_exact(n, 1.0, t);
      const double numeric = laplace::invert_numeric(laplace::hat_closed_form(n, 1.0), t);
      worst = std::max(worst, std::abs(numeric - exact) / exact);
    }
  }
  return {worst <= 1e-8, "max relative error " + sci(worst) + " (limit 1e-8)"};
}

double solver_error(std::size_t steps) {
  const auto table = volterra::solve_up_to(volterra::poisson_model(1.0),
                                           volterra::TimeGrid(5.0, steps), 5,
                                           volterra::Scheme::trapezoid);
  double worst = 0.0;
  for (unsigned n = 0; n <= 5; ++n) {
    for (std::size_t j = 0; j < table.grid().num_nodes(); ++j) {
      worst = std::max(worst,
                       std::abs(table.at(n, j) - oracle::poisson_pmf(n, table.grid().node(j))));
    }
  }
  return worst;
}

Outcome solver_vs_closed_form() {
  const double at_dt = solver_error(1000);      // dt = 0.005
  const double at_half_dt = solver_error(2000); // dt = 0.0025
  const double ratio = at_dt / at_half_dt;
  const bool pass = at_dt <= 5e-4 && ratio >= 3.0 && ratio <= 4.8;
  return {pass, "max error " + sci(at_dt) + " (limit 5e-4), halving ratio " + sci(ratio) +
                    " (range [3.0, 4.8])"};
}

Outcome mass_condition() {
  double worst = 0.0;
  for (double rate : {1.0, 2.0}) {
    const volterra::TimeGrid grid(40.0 / rate, 40000);
    volterra::PmfTable table(grid, 5);
    for (unsigned n = 0; n <= 5; ++n) {
      std::vector<double> row(grid.num_nodes());
      for (std::size_t j = 0; j < row.size(); ++j) {
        row[j] = oracle::poisson_pmf(n, rate * grid.node(j));
      }
      table.append_row(n, std::move(row));
      worst = std::max(worst, std::abs(volterra::tail_mass_integral(table, n) - 1.0 / rate));
    }
  }
  return {worst <= 1e-6, "max |mass - 1/lambda| " + sci(worst) + " (limit 1e-6)"};
}

Outcome generator_route() {
  oracle::Sampler sampler(20240601);
  double worst_semigroup = 0.0;
  double worst_transform = 0.0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<JumpAtom> atoms{{1, sampler.uniform(0.05, 3.0)}};
    if (sampler.uniform(0.0, 1.0) < 0.5) {
      atoms.push_back({2, sampler.uniform(0.05, 2.0)});
    }
    const AtomicJumpLaw law(std::move(atoms));
    const double t = sampler.uniform(0.0, 5.0);
    const double s = sampler.uniform(0.0, 5.0);
    const double p = sampler.uniform(0.0, 5.0);
    worst_semigroup = std::max(worst_semigroup, generator::semigroup_residual(law, t, s, p));

    // Transform consistency on the same law with Λt <= 5.
    const double horizon = sampler.uniform(0.0, 5.0 / law.total_rate());
    const auto pmf = generator::pmf_from_generator(law, horizon, 60);
    double series = 0.0;
    for (unsigned n = 0; n <= 60; ++n) {
      series += pmf[n] * std::exp(-p * static_cast<double>(n));
    }
    worst_transform =
        std::max(worst_transform, std::abs(generator::g_of(law, horizon, p) - series));
  }
  const bool pass = worst_semigroup <= 1e-12 && worst_transform <= 1e-10;
  return {pass, "semigroup " + sci(worst_semigroup) + " (limit 1e-12), transform " +
                    sci(worst_transform) + " (limit 1e-10)"};
}

Outcome route_equivalence() {
  const auto pmf = generator::pmf_from_generator(AtomicJumpLaw::unit(1.0), 1.0, 30);
  double worst = 0.0;
  for (unsigned n = 0; n <= 30; ++n) {
    worst = std::max(worst, std::abs(pmf[n] - laplace::invert_exact(n, 1.0, 1.0)));
  }
  return {worst <= 1e-12, "max |difference| " + sci(worst) + " (limit 1e-12)"};
}

Outcome monte_carlo_oracle() {
  constexpr std::uint64_t kPaths = 1000000;
  constexpr std::uint64_t kSeed = 20250101;
  const monte_carlo::SimConfig config(AtomicJumpLaw::unit(1.0), 4.0, kPaths, kSeed);

  const auto pmf = monte_carlo::empirical_pmf(config, 1.0, 8);
  double worst_z = 0.0;
  for (unsigned n = 0; n <= 8; ++n) {
    const double z = std::abs(pmf.estimates[n] - oracle::poisson_pmf(n, 1.0)) / pmf.std_err[n];
    worst_z = std::max(worst_z, z);
  }

  double worst_stationarity = 0.0;
  for (auto [s, u] : {std::pair{1.0, 1.0}, std::pair{1.0, 3.0}, std::pair{0.5, 2.25}}) {
    worst_stationarity =
        std::max(worst_stationarity, monte_carlo::stationarity_check(config, s, u, 10).max_z);
  }
  const double correlation = monte_carlo::increment_correlation(config, 1.0);
  const double correlation_band = 4.0 / std::sqrt(static_cast<double>(kPaths));

  const bool pass = worst_z <= 4.0 && worst_stationarity <= 4.0 &&
                    std::abs(correlation) <= correlation_band;
  return {pass, "pmf max z " + sci(worst_z) + ", stationarity max z " + sci(worst_stationarity) +
                    " (limit 4), increment correlation " + sci(correlation) + " (band " +
                    sci(correlation_band) + ")"};
}

std::string capture_process(const std::string& command) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) {
    return {};
  }
  std::string output;
  std::array<char, 4096> buffer{};
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe.get())) {
    output.append(buffer.data(), got);
  }
  return output;
}

Outcome determinism(const std::string& cli_path) {
  const std::vector<std::string> args{"simulate", "--law", "1:1.0", "--t-max", "5", "--paths",
                                      "100000", "--seed", "42", "--t", "1", "--n-max", "8"};
  std::ostringstream first;
  std::ostringstream second;
  std::ostringstream sink;
  const int code_a = cli::run(args, first, sink);
  const int code_b = cli::run(args, second, sink);
  bool pass = code_a == 0 && code_b == 0 && first.str() == second.str() && !first.str().empty();
  std::string detail = "in-process runs " + std::string(pass ? "identical" : "differ");

  if (!cli_path.empty()) {
    std::string command = "'" + cli_path + "'";
    for (const auto& a : args) {
      command += " " + a;
    }
    const std::string a = capture_process(command);
    const std::string b = capture_process(command);
    const bool same = !a.empty() && a == b && a == first.str();
    pass = pass && same;
    detail += ", separate processes " + std::string(same ? "identical" : "differ");
  }
  return {pass, detail + " (" + std::to_string(first.str().size()) + " bytes)"};
}

} // namespace

int main(int argc, char** argv) {
  const std::string cli_path = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria{
      {1, "Laplace recursion residual, n <= 12, lambda in {0.5, 1, 2, 3}", 1.0, laplace_recursion},
      {2, "Induction cross-term identity, n = 2..12, lambda in {1, 2}", 1.0, cross_term},
      {3, "Talbot inversion vs exact, n <= 10, t in {0.1, 1, 5, 10}", 1.0, inversion},
      {4, "Volterra marching vs closed form and second-order convergence", 10.0,
       solver_vs_closed_form},
      {5, "Mass condition: integral of f_n equals 1/lambda", 1.0, mass_condition},
      {6, "Generator route: semigroup and transform consistency", 5.0, generator_route},
      {7, "Route equivalence: generator pmf vs Laplace inversion", 1.0, route_equivalence},
      {8, "Monte Carlo oracle: pmf, stationarity, independence at 4 sigma", 60.0,
       monte_carlo_oracle},
      {9, "Determinism of repeated simulate invocations", 60.0,
       [&cli_path] { return determinism(cli_path); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    const bool in_time = elapsed.count() < c.time_limit_s;
    const bool pass = outcome.pass && in_time;
    failures += pass ? 0 : 1;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.title << " -- "
              << outcome.detail << "; " << sci(elapsed.count()) << " s (limit "
              << c.time_limit_s << " s)" << (in_time ? "" : " TOO SLOW") << '\n';
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}
