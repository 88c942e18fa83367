#include "otf/mcmc.hpp"

#include <algorithm>
#include <cmath>

namespace otf {

Point propose(const Point& current, double stddev, const BoxDomain& domain,
              Rng& rng, std::size_t max_redraws) {
  if (!(stddev > 0.0)) throw std::invalid_argument("propose: stddev must be > 0");
  for (std::size_t attempt = 0; attempt < max_redraws; ++attempt) {
    Point candidate(current.size());
    for (std::size_t d = 0; d < current.size(); ++d)
      candidate[d] = current[d] + rng.normal(0.0, stddev);
    if (domain.contains(candidate)) return candidate;
  }
  throw ProposalExhausted("propose: no in-domain candidate after " +
                          std::to_string(max_redraws) + " redraws");
}

double acceptance_probability(double log_p_current, double log_p_candidate,
                              double temperature) {
  if (!(temperature > 0.0))
    throw std::invalid_argument("acceptance_probability: temperature must be > 0");
  double ratio = std::exp((log_p_candidate - log_p_current) / temperature);
  return std::min(1.0, ratio);
}

double sa_temperature(std::size_t i, double t0, double cooling) {
  if (!(t0 > 0.0)) throw std::invalid_argument("sa_temperature: t0 must be > 0");
  if (!(cooling > 0.0 && cooling < 1.0))
    throw std::invalid_argument("sa_temperature: cooling must be in (0,1)");
  return t0 * std::pow(cooling, static_cast<double>(i));
}

SampleRun chain_run(const ChainConfig& cfg, Rng& rng) {
  const BoxDomain& domain = objective_domain(cfg.target);
  if (!domain.contains(cfg.init))
    throw std::invalid_argument("chain_run: init outside the target domain");

  SampleRun run;
  run.steps.reserve(cfg.n_iterations);

  Point current = cfg.init;
  double log_p_current = log_density(cfg.target, current);
  double alpha_sum = 0.0;

  for (std::size_t i = 0; i < cfg.n_iterations; ++i) {
    Point candidate =
        propose(current, cfg.proposal_std, domain, rng, cfg.max_proposal_redraws);
    double log_p_candidate = log_density(cfg.target, candidate);
    double temperature =
        cfg.temperature_schedule
            ? sa_temperature(i, cfg.temperature_schedule->t0,
                             cfg.temperature_schedule->cooling)
            : 1.0;
    double alpha = acceptance_probability(log_p_current, log_p_candidate, temperature);
    double u = rng.uniform();
    bool accepted = u < alpha;

    if (accepted) {
      current = candidate;
      log_p_current = log_p_candidate;
      run.accepted_points.push_back(candidate);
      run.acceptance_count += 1;
    } else {
      run.rejected_points.push_back(candidate);
      run.acceptance_count -= 1;
    }
    alpha_sum += alpha;
    run.steps.push_back(
        {i, current, std::move(candidate), alpha, u, accepted, temperature});
  }

  run.mean_alpha =
      run.steps.empty() ? 0.0 : alpha_sum / static_cast<double>(run.steps.size());
  return run;
}

std::pair<std::size_t, std::size_t> histogram_cell(const Point& x,
                                                   const BoxDomain& domain,
                                                   std::size_t bins) {
  auto cell = [&](std::size_t d) {
    double frac = (x[d] - domain.lower[d]) / domain.width(d);
    auto idx = static_cast<std::size_t>(frac * static_cast<double>(bins));
    return std::min(idx, bins - 1);
  };
  return {cell(0), cell(1)};
}

HistGrid density_histogram(const std::vector<Point>& points,
                           const BoxDomain& domain, std::size_t bins) {
  if (bins < 1) throw std::invalid_argument("density_histogram: bins must be >= 1");
  HistGrid grid{bins, std::vector<std::size_t>(bins * bins, 0)};
  for (const Point& x : points) {
    if (!domain.contains(x))
      throw std::invalid_argument("density_histogram: point outside the domain");
    auto [ix, iy] = histogram_cell(x, domain, bins);
    ++grid.counts[iy * bins + ix];
  }
  return grid;
}

std::pair<std::size_t, std::size_t> HistGrid::argmax() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i)
    if (counts[i] > counts[best]) best = i;
  return {best % bins, best / bins};
}

}  // namespace otf
