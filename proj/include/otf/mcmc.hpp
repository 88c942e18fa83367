#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "otf/objectives.hpp"
#include "otf/rng.hpp"

namespace otf {

struct TemperatureSchedule {
  double t0 = 100.0;
  double cooling = 0.95;
};

/// Present temperature_schedule switches the chain into simulated-annealing
/// mode; absent means plain Metropolis-Hastings (T = 1).
struct ChainConfig {
  ObjectiveId target = ObjectiveId::mh_density;
  Point init;
  std::size_t n_iterations = 1000;
  double proposal_std = 0.2;
  std::optional<TemperatureSchedule> temperature_schedule;
  std::size_t max_proposal_redraws = 1000;
};

struct ChainStep {
  std::size_t index;
  Point current;    // state after the accept/reject decision
  Point candidate;
  double alpha;     // acceptance probability in [0, 1]
  double u;         // uniform draw in [0, 1)
  bool accepted;
  double temperature;
};

struct SampleRun {
  std::vector<ChainStep> steps;
  std::vector<Point> accepted_points;
  std::vector<Point> rejected_points;
  long long acceptance_count = 0;  // cumulative +1 on accept, -1 on reject
  double mean_alpha = 0.0;         // 0 for an empty run

  double acceptance_rate() const {
    return steps.empty() ? 0.0
                         : static_cast<double>(accepted_points.size()) /
                               static_cast<double>(steps.size());
  }
};

struct ProposalExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Gaussian perturbation of each coordinate, re-drawn until the candidate
/// lies inside the box. Throws ProposalExhausted after max_redraws misses.
Point propose(const Point& current, double stddev, const BoxDomain& domain,
              Rng& rng, std::size_t max_redraws = 1000);

/// min(1, exp((log_p_candidate - log_p_current) / temperature)).
/// temperature = 1 is the plain Metropolis ratio; exp underflow clamps to 0.
double acceptance_probability(double log_p_current, double log_p_candidate,
                              double temperature);

/// Geometric cooling schedule t0 * cooling^i.
double sa_temperature(std::size_t i, double t0, double cooling);

SampleRun chain_run(const ChainConfig& cfg, Rng& rng);

/// bins x bins occupancy grid over the box; equal-width cells, boundary
/// points fall in the last cell. Row-major, x fastest.
struct HistGrid {
  std::size_t bins = 0;
  std::vector<std::size_t> counts;

  std::size_t count(std::size_t ix, std::size_t iy) const {
    return counts[iy * bins + ix];
  }
  std::pair<std::size_t, std::size_t> argmax() const;
};

HistGrid density_histogram(const std::vector<Point>& points,
                           const BoxDomain& domain, std::size_t bins);

/// Cell index of a point under the same binning rule as density_histogram.
std::pair<std::size_t, std::size_t> histogram_cell(const Point& x,
                                                   const BoxDomain& domain,
                                                   std::size_t bins);

}  // namespace otf
