#include "increments/volterra.hpp"

#include "increments/csv.hpp"
#include "increments/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace increments::volterra {

namespace {

constexpr double kValueSlack = 1e-9;

// Σ_k f_k(t_i) f_{n-k}(t_j - t_i) summed over interior nodes i = 1..j-1.
// Every row in 0..n must be readable; row n only at nodes < j.
double interior_convolution(const std::vector<std::span<const double>>& rows, unsigned n,
                            std::size_t j) {
  double sum = 0.0;
  for (unsigned k = 0; k <= n; ++k) {
    const auto& left = rows[k];
    const auto& right = rows[n - k];
    for (std::size_t i = 1; i < j; ++i) {
      sum += left[i] * right[j - i];
    }
  }
  return sum;
}

// Integrand value Σ_k f_k(τ) f_{n-k}(t_j - τ) at τ = t_at with t_j - τ = t_rest.
double endpoint_integrand(const std::vector<std::span<const double>>& rows, unsigned n,
                          std::size_t at, std::size_t rest) {
  double sum = 0.0;
  for (unsigned k = 0; k <= n; ++k) {
    sum += rows[k][at] * rows[n - k][rest];
  }
  return sum;
}

std::vector<std::span<const double>> readable_rows(const PmfTable& table, unsigned n) {
  std::vector<std::span<const double>> rows;
  rows.reserve(n + 1);
  for (unsigned k = 0; k <= n; ++k) {
    rows.push_back(table.row(k));
  }
  return rows;
}

double seed_value(const ProcessModel& model, unsigned n, double t, Scheme scheme) {
  if (scheme == Scheme::trapezoid && model.short_time_pmf_second_order) {
    return model.short_time_pmf_second_order(n, t);
  }
  return model.short_time_pmf(n, t);
}

} // namespace

TimeGrid::TimeGrid(double t_max, std::size_t num_steps)
    : t_max_(t_max), num_steps_(num_steps), dt_(0.0) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("t_max must be positive and finite");
  }
  if (num_steps < 2) {
    throw std::invalid_argument("num_steps must be at least 2");
  }
  dt_ = t_max / static_cast<double>(num_steps);
}

double TimeGrid::node(std::size_t j) const noexcept {
  if (j >= num_steps_) {
    return t_max_;
  }
  return static_cast<double>(j) * dt_;
}

TimeGrid build_grid(double t_max, std::size_t num_steps) { return TimeGrid(t_max, num_steps); }

ProcessModel poisson_model(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("rate must be positive and finite");
  }
  ProcessModel model;
  model.rate = rate;
  model.f0_at = [rate](double t) { return std::exp(-rate * t); };
  model.short_time_pmf = [rate](unsigned n, double t) {
    const double x = rate * t;
    switch (n) {
    case 0: return 1.0 - x;
    case 1: return x;
    default: return 0.0;
    }
  };
  // Taylor coefficients of (x^n / n!) e^{-x} through x^2.
  model.short_time_pmf_second_order = [rate](unsigned n, double t) {
    const double x = rate * t;
    switch (n) {
    case 0: return 1.0 - x + 0.5 * x * x;
    case 1: return x - x * x;
    case 2: return 0.5 * x * x;
    default: return 0.0;
    }
  };
  return model;
}

Scheme parse_scheme(std::string_view name) {
  if (name == "trapezoid") {
    return Scheme::trapezoid;
  }
  if (name == "rectangle") {
    return Scheme::rectangle;
  }
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

std::string_view to_string(Scheme scheme) noexcept {
  return scheme == Scheme::trapezoid ? "trapezoid" : "rectangle";
}

PmfTable::PmfTable(TimeGrid grid, unsigned n_max, Scheme scheme)
    : grid_(grid), n_max_(n_max), scheme_(scheme) {
  rows_.reserve(n_max + 1u);
}

std::span<const double> PmfTable::row(unsigned n) const {
  if (n >= rows_.size()) {
    throw StateError("row " + std::to_string(n) + " has not been filled");
  }
  return rows_[n];
}

void PmfTable::append_row(unsigned n, std::vector<double> values) {
  if (n > n_max_) {
    throw std::invalid_argument("row index exceeds n_max");
  }
  if (n != rows_.size()) {
    throw StateError("rows must be filled in order; expected row " +
                     std::to_string(rows_.size()) + ", got " + std::to_string(n));
  }
  if (values.size() != grid_.num_nodes()) {
    throw std::invalid_argument("row length does not match the grid");
  }
  const double origin = n == 0 ? 1.0 : 0.0;
  if (values.front() != origin) {
    throw std::domain_error("row " + std::to_string(n) + " must start at " +
                            std::to_string(origin));
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double v = values[j];
    if (!(v >= -kValueSlack && v <= 1.0 + kValueSlack)) {
      throw std::domain_error("row " + std::to_string(n) + " value at node " +
                              std::to_string(j) + " outside [0, 1]: " + format_number(v));
    }
  }
  rows_.push_back(std::move(values));
}

std::vector<double> seed_row_zero(const ProcessModel& model, const TimeGrid& grid) {
  std::vector<double> row(grid.num_nodes());
  for (std::size_t j = 0; j < row.size(); ++j) {
    row[j] = model.f0_at(grid.node(j));
  }
  row[0] = 1.0;
  return row;
}

PmfTable march_row(PmfTable table, const ProcessModel& model, unsigned n, Scheme scheme) {
  if (n == 0) {
    throw std::invalid_argument("row 0 is seeded from the model, not marched");
  }
  if (table.rows_filled() != n) {
    throw StateError("march_row(" + std::to_string(n) + ") requires exactly rows 0.." +
                     std::to_string(n - 1) + " to be filled");
  }
  const TimeGrid& grid = table.grid();
  const double dt = grid.dt();
  const std::size_t nodes = grid.num_nodes();

  std::vector<double> unknown(nodes, 0.0);
  unknown[1] = seed_value(model, n, grid.node(1), scheme);

  auto rows = readable_rows(table, n - 1);
  rows.emplace_back(unknown);
  const double f0_origin = rows[0][0];

  for (std::size_t j = 2; j < nodes; ++j) {
    // Both rules place weight dt f_0(0) on f_n(t_j): trapezoid splits it
    // across τ = 0 and τ = t_j, the right-endpoint rule puts it all at t_j.
    const double coefficient = grid.node(j) - dt * f0_origin;
    if (coefficient <= 0.0) {
      throw InternalError("vanishing coefficient at node " + std::to_string(j));
    }
    unknown[j] = dt * interior_convolution(rows, n, j) / coefficient;
  }
  table.append_row(n, std::move(unknown));
  return table;
}

PmfTable solve_up_to(const ProcessModel& model, const TimeGrid& grid, unsigned n_max,
                     Scheme scheme) {
  PmfTable table(grid, n_max, scheme);
  table.append_row(0, seed_row_zero(model, grid));
  for (unsigned n = 1; n <= n_max; ++n) {
    table = march_row(std::move(table), model, n, scheme);
  }
  return table;
}

std::vector<double> residual_profile(const PmfTable& table, unsigned n) {
  const auto rows = readable_rows(table, n);
  const TimeGrid& grid = table.grid();
  const double dt = grid.dt();
  std::vector<double> residual(grid.num_nodes(), 0.0);
  for (std::size_t j = 1; j < residual.size(); ++j) {
    double quadrature = interior_convolution(rows, n, j);
    const double at_end = endpoint_integrand(rows, n, j, 0);
    if (table.scheme() == Scheme::trapezoid) {
      quadrature += 0.5 * (endpoint_integrand(rows, n, 0, j) + at_end);
    } else {
      quadrature += at_end;
    }
    residual[j] = std::abs(grid.node(j) * rows[n][j] - dt * quadrature);
  }
  return residual;
}

double residual_norm(const PmfTable& table, unsigned n) {
  const auto profile = residual_profile(table, n);
  return *std::max_element(profile.begin(), profile.end());
}

double tail_mass_integral(const PmfTable& table, unsigned n) {
  const auto values = table.row(n);
  // Neumaier-compensated trapezoid sum.
  double sum = 0.5 * (values.front() + values.back());
  double compensation = 0.0;
  for (std::size_t j = 1; j + 1 < values.size(); ++j) {
    const double v = values[j];
    const double next = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      compensation += (sum - next) + v;
    } else {
      compensation += (v - next) + sum;
    }
    sum = next;
  }
  return table.grid().dt() * (sum + compensation);
}

double normalization_deficit(const PmfTable& table, std::size_t j) {
  if (j >= table.grid().num_nodes()) {
    throw std::invalid_argument("node index out of range");
  }
  if (!table.complete()) {
    throw StateError("normalization_deficit requires every row up to n_max");
  }
  double total = 0.0;
  for (unsigned n = 0; n <= table.n_max(); ++n) {
    total += table.at(n, j);
  }
  return 1.0 - total;
}

void write_csv(std::ostream& out, const PmfTable& table) {
  out << "t,n,f\n";
  const TimeGrid& grid = table.grid();
  for (std::size_t j = 0; j < grid.num_nodes(); ++j) {
    const std::string t = format_number(grid.node(j));
    for (unsigned n = 0; n < table.rows_filled(); ++n) {
      out << t << ',' << n << ',' << format_number(table.at(n, j)) << '\n';
    }
  }
}

} // namespace increments::volterra
