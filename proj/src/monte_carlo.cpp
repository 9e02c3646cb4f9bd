#include "increments/monte_carlo.hpp"

#include "increments/csv.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

namespace increments::monte_carlo {

namespace {

void require_time_in_horizon(const SimConfig& config, double t) {
  if (!(t >= 0.0) || t > config.t_max) {
    throw std::invalid_argument("t = " + format_number(t) + " outside [0, t_max]");
  }
}

// Runs body(path_index) over [0, num_paths), split into contiguous blocks
// across the configured workers. Each path writes only its own slot.
void for_each_path(const SimConfig& config, const std::function<void(std::uint64_t)>& body) {
  const std::uint64_t paths = config.num_paths;
  const std::uint64_t workers = std::min<std::uint64_t>(config.workers, paths);
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < paths; ++i) {
      body(i);
    }
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::uint64_t block = (paths + workers - 1) / workers;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t first = w * block;
    const std::uint64_t last = std::min(paths, first + block);
    pool.emplace_back([first, last, &body] {
      for (std::uint64_t i = first; i < last; ++i) {
        body(i);
      }
    });
  }
}

std::uint32_t count_in(const std::vector<Event>& events, const Window& window) {
  std::uint32_t total = 0;
  for (const auto& e : events) {
    if (e.time > window.end) {
      break;
    }
    if (e.time > window.begin) {
      total += e.size;
    }
  }
  return total;
}

std::vector<double> distribution(std::span<const std::uint32_t> counts, unsigned n_max) {
  std::vector<double> p(n_max + 1u, 0.0);
  for (auto c : counts) {
    if (c <= n_max) {
      p[c] += 1.0;
    }
  }
  for (double& v : p) {
    v /= static_cast<double>(counts.size());
  }
  return p;
}

} // namespace

SimConfig::SimConfig(AtomicJumpLaw law_in, double t_max_in, std::uint64_t num_paths_in,
                     std::uint64_t seed_in, unsigned workers_in)
    : law(std::move(law_in)), t_max(t_max_in), num_paths(num_paths_in), seed(seed_in),
      workers(workers_in) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("t_max must be positive and finite");
  }
  if (num_paths < 1) {
    throw std::invalid_argument("num_paths must be at least 1");
  }
  if (workers < 1) {
    throw std::invalid_argument("workers must be at least 1");
  }
}

std::vector<Event> sample_path(const AtomicJumpLaw& law, double t_max, PathStream& stream) {
  std::vector<Event> events;
  const double total = law.total_rate();
  const auto& atoms = law.atoms();
  double time = 0.0;
  while (true) {
    time += -std::log(stream.uniform_open()) / total;
    if (time > t_max) {
      break;
    }
    unsigned size = atoms.back().size;
    if (atoms.size() > 1) {
      double target = stream.uniform_open() * total;
      for (const auto& atom : atoms) {
        target -= atom.rate;
        if (target < 0.0) {
          size = atom.size;
          break;
        }
      }
    }
    events.push_back({time, size});
  }
  return events;
}

std::vector<std::vector<std::uint32_t>> window_counts(const SimConfig& config,
                                                      std::span<const Window> windows) {
  for (const auto& w : windows) {
    if (!(w.begin >= 0.0) || w.end < w.begin) {
      throw std::invalid_argument("window must satisfy 0 <= begin <= end");
    }
    require_time_in_horizon(config, w.end);
  }
  std::vector<std::vector<std::uint32_t>> out(
      windows.size(), std::vector<std::uint32_t>(config.num_paths, 0));
  for_each_path(config, [&](std::uint64_t path) {
    PathStream stream(config.seed, path);
    const auto events = sample_path(config.law, config.t_max, stream);
    for (std::size_t w = 0; w < windows.size(); ++w) {
      out[w][path] = count_in(events, windows[w]);
    }
  });
  return out;
}

EmpiricalPmf empirical_pmf(const SimConfig& config, double t, unsigned n_max) {
  require_time_in_horizon(config, t);
  const Window window{0.0, t};
  const auto counts = window_counts(config, std::span(&window, 1)).front();

  EmpiricalPmf pmf;
  pmf.t = t;
  pmf.num_paths = config.num_paths;
  pmf.counts.assign(n_max + 1u, 0);
  for (auto c : counts) {
    if (c <= n_max) {
      ++pmf.counts[c];
    } else {
      ++pmf.tail_count;
    }
  }
  const double paths = static_cast<double>(config.num_paths);
  for (auto c : pmf.counts) {
    const double estimate = static_cast<double>(c) / paths;
    pmf.estimates.push_back(estimate);
    pmf.std_err.push_back(std::sqrt(estimate * (1.0 - estimate) / paths));
  }
  return pmf;
}

MeanEstimate empirical_laplace(const SimConfig& config, double t, double p) {
  require_time_in_horizon(config, t);
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument("p must be non-negative and finite");
  }
  const Window window{0.0, t};
  const auto counts = window_counts(config, std::span(&window, 1)).front();

  // Welford running mean and variance.
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t seen = 0;
  for (auto c : counts) {
    const double x = std::exp(-p * static_cast<double>(c));
    ++seen;
    const double delta = x - mean;
    mean += delta / static_cast<double>(seen);
    m2 += delta * (x - mean);
  }
  MeanEstimate out;
  out.estimate = mean;
  if (seen > 1) {
    const double variance = m2 / static_cast<double>(seen - 1);
    out.std_err = std::sqrt(variance / static_cast<double>(seen));
  }
  return out;
}

StationarityReport stationarity_check(const SimConfig& config, double s, double u,
                                      unsigned n_max) {
  if (!(s > 0.0) || !(u >= 0.0)) {
    throw std::invalid_argument("stationarity check needs s > 0 and u >= 0");
  }
  const Window windows[] = {{0.0, s}, {u, u + s}};
  const auto counts = window_counts(config, windows);
  const auto first = distribution(counts[0], n_max);
  const auto shifted = distribution(counts[1], n_max);
  const double paths = static_cast<double>(config.num_paths);

  StationarityReport report;
  for (unsigned n = 0; n <= n_max; ++n) {
    const double variance =
        (first[n] * (1.0 - first[n]) + shifted[n] * (1.0 - shifted[n])) / paths;
    const double diff = std::abs(first[n] - shifted[n]);
    if (diff == 0.0) {
      continue;
    }
    const double z = variance > 0.0 ? diff / std::sqrt(variance)
                                    : std::numeric_limits<double>::infinity();
    if (z > report.max_z) {
      report.max_z = z;
      report.worst_n = n;
    }
  }
  return report;
}

double increment_correlation(const SimConfig& config, double s) {
  if (!(s > 0.0)) {
    throw std::invalid_argument("increment correlation needs s > 0");
  }
  const Window windows[] = {{0.0, s}, {s, 2.0 * s}};
  const auto counts = window_counts(config, windows);
  const double paths = static_cast<double>(config.num_paths);

  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::uint64_t i = 0; i < config.num_paths; ++i) {
    mean_a += counts[0][i];
    mean_b += counts[1][i];
  }
  mean_a /= paths;
  mean_b /= paths;
  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (std::uint64_t i = 0; i < config.num_paths; ++i) {
    const double da = counts[0][i] - mean_a;
    const double db = counts[1][i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) {
    return 0.0;
  }
  return cov / std::sqrt(var_a * var_b);
}

void write_csv(std::ostream& out, const EmpiricalPmf& pmf) {
  out << "n,count,estimate,std_err\n";
  for (std::size_t n = 0; n < pmf.counts.size(); ++n) {
    out << n << ',' << pmf.counts[n] << ',' << format_number(pmf.estimates[n]) << ','
        << format_number(pmf.std_err[n]) << '\n';
  }
}

} // namespace increments::monte_carlo
