#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace increments::volterra {

/// Uniform lattice t_j = j * dt, j = 0..N, over [0, t_max].
class TimeGrid {
public:
  /// Throws std::invalid_argument unless t_max > 0 and num_steps >= 2.
  TimeGrid(double t_max, std::size_t num_steps);

  double t_max() const noexcept { return t_max_; }
  std::size_t num_steps() const noexcept { return num_steps_; }
  std::size_t num_nodes() const noexcept { return num_steps_ + 1; }
  double dt() const noexcept { return dt_; }

  /// Node N is returned as t_max exactly rather than N * dt.
  double node(std::size_t j) const noexcept;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
  double t_max_;
  std::size_t num_steps_;
  double dt_;
};

TimeGrid build_grid(double t_max, std::size_t num_steps);

/// Stationary counting process with independent increments, as seen by the
/// time-domain solver: the zero-count probability and the small-t law.
struct ProcessModel {
  double rate = 0.0;
  std::function<double(double t)> f0_at;
  /// First-order small-t probability of n events.
  std::function<double(unsigned n, double t)> short_time_pmf;
  /// Optional second-order refinement of short_time_pmf; empty when the
  /// model has no Taylor coefficient to offer.
  std::function<double(unsigned n, double t)> short_time_pmf_second_order;
};

/// f0(t) = exp(-rate t); short-time law 1 - rate t, rate t, 0.
ProcessModel poisson_model(double rate);

enum class Scheme { trapezoid, rectangle };

Scheme parse_scheme(std::string_view name);
std::string_view to_string(Scheme scheme) noexcept;

/// Values f_n(t_j) for n = 0..n_max, filled one row at a time in increasing n.
class PmfTable {
public:
  PmfTable(TimeGrid grid, unsigned n_max, Scheme scheme = Scheme::trapezoid);

  const TimeGrid& grid() const noexcept { return grid_; }
  unsigned n_max() const noexcept { return n_max_; }
  Scheme scheme() const noexcept { return scheme_; }
  unsigned rows_filled() const noexcept { return static_cast<unsigned>(rows_.size()); }
  bool complete() const noexcept { return rows_.size() == n_max_ + 1u; }

  /// Throws StateError if row n is not filled.
  std::span<const double> row(unsigned n) const;
  double at(unsigned n, std::size_t j) const { return row(n)[j]; }

  /// Appends row n. Requires n == rows_filled(), a row of num_nodes() values
  /// in [-1e-9, 1 + 1e-9], row[0] == 1 for n == 0 and row[0] == 0 otherwise.
  void append_row(unsigned n, std::vector<double> values);

private:
  TimeGrid grid_;
  unsigned n_max_;
  Scheme scheme_;
  std::vector<std::vector<double>> rows_;
};

std::vector<double> seed_row_zero(const ProcessModel& model, const TimeGrid& grid);

/// Fills row n by forward substitution. For n >= 1 the equation reads
///
///   t f_n(t) - 2 (f_0 * f_n)(t) = sum_{k=1}^{n-1} (f_k * f_{n-k})(t),
///
/// which is a linear Volterra equation of the second kind in f_n. The node
/// sums Σ_k f_k(t_i) f_{n-k}(t_j - t_i) are symmetric under i <-> j - i, so
/// the trapezoid and right-endpoint weights produce the same discrete
/// equation: the unknown's coefficient is t_j - dt f_0(0) = (j - 1) dt.
/// That coefficient vanishes at j = 1, where the equation degenerates and
/// admits c * t * f_0(t) as a homogeneous solution; the node is seeded from
/// the short-time law. `trapezoid` uses the second-order seed when the
/// model provides one and is globally O(dt^2); `rectangle` uses the
/// first-order seed and is globally O(dt).
PmfTable march_row(PmfTable table, const ProcessModel& model, unsigned n, Scheme scheme);

PmfTable solve_up_to(const ProcessModel& model, const TimeGrid& grid, unsigned n_max,
                     Scheme scheme = Scheme::trapezoid);

/// |t_j f_n(t_j) - Σ_k ∫ f_k f_{n-k}| at every node, j = 0 reported as 0.
std::vector<double> residual_profile(const PmfTable& table, unsigned n);
double residual_norm(const PmfTable& table, unsigned n);

/// Trapezoid integral of row n over the grid; tends to 1/rate as t_max grows.
double tail_mass_integral(const PmfTable& table, unsigned n);

/// 1 - Σ_{n <= n_max} f_n(t_j). Requires a complete table.
double normalization_deficit(const PmfTable& table, std::size_t j);

/// CSV with header `t,n,f`, one line per (node, row).
void write_csv(std::ostream& out, const PmfTable& table);

} // namespace increments::volterra
