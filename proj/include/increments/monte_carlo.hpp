#pragma once

#include "increments/jump_law.hpp"
#include "increments/random_stream.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace increments::monte_carlo {

struct SimConfig {
  /// Throws std::invalid_argument unless t_max > 0, num_paths >= 1 and
  /// workers >= 1.
  SimConfig(AtomicJumpLaw law, double t_max, std::uint64_t num_paths, std::uint64_t seed,
            unsigned workers = 1);

  AtomicJumpLaw law;
  double t_max;
  std::uint64_t num_paths;
  std::uint64_t seed;
  unsigned workers;
};

struct Event {
  double time;
  unsigned size;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Events in (0, t_max] with exponential gaps at the total rate; each jump
/// size is drawn with probability proportional to its atom's rate.
std::vector<Event> sample_path(const AtomicJumpLaw& law, double t_max, PathStream& stream);

struct EmpiricalPmf {
  double t = 0.0;
  std::uint64_t num_paths = 0;
  std::vector<std::uint64_t> counts;  // n = 0..n_max
  std::uint64_t tail_count = 0;       // paths with N_t > n_max
  std::vector<double> estimates;
  std::vector<double> std_err;
};

EmpiricalPmf empirical_pmf(const SimConfig& config, double t, unsigned n_max);

struct MeanEstimate {
  double estimate = 0.0;
  double std_err = 0.0;
};

/// Sample mean of e^{-p N_t}.
MeanEstimate empirical_laplace(const SimConfig& config, double t, double p);

/// Count window (begin, end].
struct Window {
  double begin;
  double end;
};

/// result[w][path] = N(end_w) - N(begin_w) on the same simulated paths.
std::vector<std::vector<std::uint32_t>> window_counts(const SimConfig& config,
                                                      std::span<const Window> windows);

struct StationarityReport {
  /// max over n of |P_a(n) - P_b(n)| / sqrt(se_a^2 + se_b^2)
  double max_z = 0.0;
  unsigned worst_n = 0;
};

/// Compares the count distribution in [0, s] with the one in [u, u + s].
StationarityReport stationarity_check(const SimConfig& config, double s, double u,
                                      unsigned n_max);

/// Sample correlation between counts in [0, s] and in [s, 2s].
double increment_correlation(const SimConfig& config, double s);

/// CSV with header `n,count,estimate,std_err`.
void write_csv(std::ostream& out, const EmpiricalPmf& pmf);

} // namespace increments::monte_carlo
