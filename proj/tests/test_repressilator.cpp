#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "otf/exporters.hpp"
#include "otf/repressilator.hpp"

using namespace otf;

namespace {

// independent RK4 used as the re-integration oracle; written against the
// plain update formulas, no shared code with the library integrator
std::vector<State6> rk4_oracle(const RepressilatorParams& p, State6 y, double dt,
                               int steps) {
  auto f = [&](const State6& s) {
    State6 d;
    d[0] = -s[0] + p.alpha / (1.0 + std::pow(s[5], p.eta)) + p.alpha0;
    d[1] = -s[1] + p.alpha / (1.0 + std::pow(s[3], p.eta)) + p.alpha0;
    d[2] = -s[2] + p.alpha / (1.0 + std::pow(s[4], p.eta)) + p.alpha0;
    for (int i = 0; i < 3; ++i) d[3 + i] = -p.beta * (s[3 + i] - s[i]);
    return d;
  };
  std::vector<State6> out{y};
  for (int k = 0; k < steps; ++k) {
    State6 k1 = f(y), a;
    for (int i = 0; i < 6; ++i) a[i] = y[i] + 0.5 * dt * k1[i];
    State6 k2 = f(a);
    for (int i = 0; i < 6; ++i) a[i] = y[i] + 0.5 * dt * k2[i];
    State6 k3 = f(a);
    for (int i = 0; i < 6; ++i) a[i] = y[i] + dt * k3[i];
    State6 k4 = f(a);
    for (int i = 0; i < 6; ++i)
      y[i] += dt * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
    out.push_back(y);
  }
  return out;
}

double max_err_vs(const Trajectory& traj, const Trajectory& ref, int stride) {
  double m = 0.0;
  for (std::size_t k = 0; k < traj.states.size(); ++k)
    for (int i = 0; i < 6; ++i)
      m = std::max(m, std::abs(traj.states[k][i] -
                               ref.states[k * static_cast<std::size_t>(stride)][i]));
  return m;
}

// gentle in-box instance for convergence-order measurements; the reference
// parameters' fast spikes push dt=0.1 outside the fourth-order regime
const RepressilatorParams kMild{1.0, 1.0, 0.3, 500.0};

}  // namespace

TEST_CASE("zero field fixed point") {
  RepressilatorParams p{0.0, 2.0, 1.0, 0.0};
  Trajectory traj = repressilator_trajectory(p, {0, 0, 0, 0, 0, 0}, 0.1, 1.0);
  for (const State6& s : traj.states)
    for (double v : s) CHECK(v == 0.0);
}

TEST_CASE("trajectory grid shape") {
  Trajectory traj =
      repressilator_trajectory(kReferenceParams, kReferenceInit, 0.05, 10.0);
  REQUIRE(traj.times.size() == 201);
  REQUIRE(traj.states.size() == 201);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(10.0));
  for (std::size_t k = 1; k < traj.times.size(); ++k)
    CHECK(traj.times[k] > traj.times[k - 1]);
  for (const State6& s : traj.states)
    for (double v : s) CHECK(std::isfinite(v));
  // mRNA settles nonnegative after the initial transient
  for (std::size_t k = 40; k < traj.states.size(); ++k)
    for (int i = 0; i < 3; ++i) CHECK(traj.states[k][i] >= 0.0);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(repressilator_trajectory(kReferenceParams, kReferenceInit, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(repressilator_trajectory(kReferenceParams, kReferenceInit, 1.0, 0.5),
                  std::invalid_argument);
  RepressilatorParams bad = kReferenceParams;
  bad.eta = -1.0;
  CHECK_THROWS_AS(repressilator_trajectory(bad, kReferenceInit, 0.1, 1.0),
                  std::invalid_argument);
}

TEST_CASE("halving dt shrinks the error about sixteenfold") {
  Trajectory ref = repressilator_trajectory(kMild, kReferenceInit, 0.0125, 10.0);
  Trajectory coarse = repressilator_trajectory(kMild, kReferenceInit, 0.1, 10.0);
  Trajectory fine = repressilator_trajectory(kMild, kReferenceInit, 0.05, 10.0);
  double ratio = max_err_vs(coarse, ref, 8) / max_err_vs(fine, ref, 4);
  CHECK(ratio > 10.0);
  CHECK(ratio < 24.0);
}

TEST_CASE("empirical convergence order is four") {
  Trajectory ref = repressilator_trajectory(kMild, kReferenceInit, 0.00625, 10.0);
  double e1 = max_err_vs(repressilator_trajectory(kMild, kReferenceInit, 0.1, 10.0), ref, 16);
  double e2 = max_err_vs(repressilator_trajectory(kMild, kReferenceInit, 0.05, 10.0), ref, 8);
  double e3 = max_err_vs(repressilator_trajectory(kMild, kReferenceInit, 0.025, 10.0), ref, 4);
  double o12 = std::log2(e1 / e2);
  double o23 = std::log2(e2 / e3);
  CHECK(o12 > 3.5);
  CHECK(o12 < 4.5);
  CHECK(o23 > 3.5);
  CHECK(o23 < 4.5);
}

TEST_CASE("fitness at the reference parameters is exactly zero") {
  CHECK(repressilator_fitness(kReferenceParams) == 0.0);
}

TEST_CASE("fitness is nonnegative and matches an independent re-integration") {
  RepressilatorParams p{1.0, 2.0, 5.0, 1500.0};
  double fit = repressilator_fitness(p);
  CHECK(fit > 0.0);

  std::vector<State6> ref = rk4_oracle(kReferenceParams, kReferenceInit, 0.05, 200);
  std::vector<State6> traj = rk4_oracle(p, kReferenceInit, 0.05, 200);
  double sse = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k)
    for (int i = 0; i < 6; ++i) {
      double d = traj[k][i] - ref[k][i];
      sse += d * d;
    }
  CHECK(fit == doctest::Approx(sse).epsilon(1e-9));
}

TEST_CASE("pathological parameters map to the penalty") {
  // eta outside the box
  CHECK(repressilator_fitness({1.0, -1.0, 5.0, 1000.0}) == kBlowupPenalty);
  // non-finite input
  CHECK(repressilator_fitness({1.0, 2.0, std::nan(""), 1000.0}) == kBlowupPenalty);
}

TEST_CASE("golden reference trajectory file matches the computed reference") {
  std::filesystem::path path = std::filesystem::path(OTF_DATA_DIR) /
                               "repressilator_reference.csv";
  Trajectory golden = trajectory_from_csv(read_file(path));
  const Trajectory& ref = reference_trajectory();
  REQUIRE(golden.states.size() == ref.states.size());
  for (std::size_t k = 0; k < ref.states.size(); ++k) {
    CHECK(golden.times[k] == doctest::Approx(ref.times[k]).epsilon(1e-9));
    for (int i = 0; i < 6; ++i)
      CHECK(golden.states[k][i] ==
            doctest::Approx(ref.states[k][i]).epsilon(1e-6));
  }
}
