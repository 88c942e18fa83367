#include "otf/gradient_descent.hpp"

#include <cmath>

namespace otf {

Point gd_step(const Point& x, double alpha, bool clip_to_domain) {
  Point g = gradient(ObjectiveId::bohachevsky, x);
  Point next{x[0] - alpha * g[0], x[1] - alpha * g[1]};
  if (clip_to_domain)
    next = objective_domain(ObjectiveId::bohachevsky).clamp(std::move(next));
  return next;
}

LossTrace gd_run(const GdConfig& cfg) {
  LossTrace trace;
  trace.losses.reserve(cfg.iterations + 1);
  trace.points.reserve(cfg.iterations + 1);

  Point x = cfg.init;
  double loss = evaluate(ObjectiveId::bohachevsky, x);
  trace.losses.push_back(loss);
  trace.points.push_back(x);

  for (std::size_t i = 0; i < cfg.iterations; ++i) {
    x = gd_step(x, cfg.alpha, cfg.clip_to_domain);
    loss = evaluate(ObjectiveId::bohachevsky, x);
    if (!std::isfinite(loss)) {
      trace.diverged = true;
      break;
    }
    trace.losses.push_back(loss);
    trace.points.push_back(x);
    if (loss > kGdDivergenceCeiling) {
      trace.diverged = true;
      break;
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < trace.losses.size(); ++i)
    if (trace.losses[i] < trace.losses[best]) best = i;
  trace.best_loss = trace.losses[best];
  trace.best_point = trace.points[best];
  return trace;
}

}  // namespace otf
