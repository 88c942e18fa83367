#pragma once

#include <cstddef>
#include <vector>

#include "otf/objectives.hpp"

namespace otf {

struct GdConfig {
  double alpha = 1e-3;
  std::size_t iterations = 10;
  Point init;
  bool clip_to_domain = true;
};

/// Per-iteration loss record; index 0 is the loss at the initial point.
struct LossTrace {
  std::vector<double> losses;
  std::vector<Point> points;
  double best_loss = 0.0;
  Point best_point;
  bool diverged = false;
};

/// One descent step on the bohachevsky objective: x - alpha * grad(x),
/// coordinates clamped to [-100, 100] when clip is set.
Point gd_step(const Point& x, double alpha, bool clip_to_domain = true);

/// Full-gradient descent with a fixed step size. Deterministic in cfg.
/// The loss is flagged diverged (and the trace truncated at the last finite
/// iterate) when it goes non-finite; losses above 1e12 also set the flag.
LossTrace gd_run(const GdConfig& cfg);

inline constexpr double kGdDivergenceCeiling = 1e12;

}  // namespace otf
