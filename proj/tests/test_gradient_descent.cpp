#include <doctest.h>

#include <cmath>
#include <numbers>

#include "otf/gradient_descent.hpp"
#include "otf/rng.hpp"
#include "otf/summary.hpp"

using namespace otf;

TEST_CASE("gd_step anchors") {
  Point still = gd_step({0.0, 0.0}, 0.5);
  CHECK(still[0] == 0.0);
  CHECK(still[1] == 0.0);

  Point a = gd_step({1.0, 0.0}, 0.1);
  CHECK(a[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(a[1] == 0.0);

  Point b = gd_step({0.0, 1.0}, 0.1);
  CHECK(b[0] == 0.0);
  CHECK(b[1] == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("gd_step clips to the domain") {
  // a negative step size pushes outward from the boundary
  Point p = gd_step({100.0, 0.0}, -1.0, true);
  CHECK(p[0] == 100.0);
  Point q = gd_step({100.0, 0.0}, -1.0, false);
  CHECK(q[0] > 100.0);
}

TEST_CASE("stationary init yields a constant trace") {
  GdConfig cfg;
  cfg.init = {0.0, 0.0};
  cfg.iterations = 10;
  LossTrace trace = gd_run(cfg);
  REQUIRE(trace.losses.size() == 11);
  for (double v : trace.losses) CHECK(v == 0.0);
  CHECK(trace.best_loss == 0.0);
  CHECK_FALSE(trace.diverged);
}

TEST_CASE("trace length and bookkeeping") {
  GdConfig cfg;
  cfg.init = {3.0, -2.0};
  cfg.iterations = 25;
  LossTrace trace = gd_run(cfg);
  CHECK(trace.losses.size() == 26);
  CHECK(trace.points.size() == 26);
  double best = trace.losses[0];
  for (double v : trace.losses) best = std::min(best, v);
  CHECK(trace.best_loss == best);
  CHECK(evaluate(ObjectiveId::bohachevsky, trace.best_point) == trace.best_loss);
}

TEST_CASE("determinism") {
  GdConfig cfg;
  cfg.init = {12.5, -40.0};
  cfg.iterations = 100;
  LossTrace a = gd_run(cfg);
  LossTrace b = gd_run(cfg);
  CHECK(a.losses == b.losses);
  CHECK(a.points == b.points);
}

TEST_CASE("final loss matches an independent recurrence") {
  // oracle: re-run the recurrence with inline formulas
  constexpr double kPi = std::numbers::pi;
  double x1 = 0.2, x2 = 0.1;
  const double alpha = 0.001;
  for (int i = 0; i < 1000; ++i) {
    double g1 = 2.0 * x1 + 0.9 * kPi * std::sin(3.0 * kPi * x1);
    double g2 = 4.0 * x2 + 1.6 * kPi * std::sin(4.0 * kPi * x2);
    x1 -= alpha * g1;
    x2 -= alpha * g2;
  }
  double oracle_loss = evaluate(ObjectiveId::bohachevsky, {x1, x2});

  GdConfig cfg;
  cfg.init = {0.2, 0.1};
  cfg.alpha = 0.001;
  cfg.iterations = 1000;
  LossTrace trace = gd_run(cfg);
  CHECK(trace.losses.back() == doctest::Approx(oracle_loss).epsilon(1e-6));
  CHECK(trace.best_loss < trace.losses.front());
}

TEST_CASE("one step moves coordinates within the domain gradient bound") {
  constexpr double kPi = std::numbers::pi;
  Rng rng(5);
  const double alpha = 0.001;
  const double bound1 = alpha * (2.0 * 100.0 + 0.9 * kPi);
  const double bound2 = alpha * (4.0 * 100.0 + 1.6 * kPi);
  for (int i = 0; i < 200; ++i) {
    Point x{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)};
    Point y = gd_step(x, alpha);
    CHECK(std::abs(y[0] - x[0]) <= bound1 + 1e-12);
    CHECK(std::abs(y[1] - x[1]) <= bound2 + 1e-12);
  }
}

TEST_CASE("oversized finite losses set the divergence flag") {
  GdConfig cfg;
  cfg.init = {50.0, 50.0};
  cfg.alpha = 1e3;  // wildly unstable step
  cfg.iterations = 10;
  cfg.clip_to_domain = false;
  LossTrace trace = gd_run(cfg);
  CHECK(trace.diverged);
  CHECK(trace.losses.size() < 11);  // stopped early
  CHECK(trace.losses.back() > kGdDivergenceCeiling);
  for (double v : trace.losses) CHECK(std::isfinite(v));
}

TEST_CASE("non-finite losses truncate at the last finite iterate") {
  GdConfig cfg;
  cfg.init = {1.0, 0.0};
  cfg.alpha = 1e200;  // first step overflows the loss
  cfg.iterations = 5;
  cfg.clip_to_domain = false;
  LossTrace trace = gd_run(cfg);
  CHECK(trace.diverged);
  REQUIRE(trace.losses.size() == 1);  // only the init survives
  CHECK(std::isfinite(trace.losses[0]));
  CHECK(trace.best_loss == trace.losses[0]);
}

TEST_CASE("zero iterations records only the init") {
  GdConfig cfg;
  cfg.init = {1.0, 1.0};
  cfg.iterations = 0;
  LossTrace trace = gd_run(cfg);
  REQUIRE(trace.losses.size() == 1);
  CHECK(trace.losses[0] == doctest::Approx(3.6));
}
