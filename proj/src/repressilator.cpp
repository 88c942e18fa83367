#include "otf/repressilator.hpp"

#include <cmath>

namespace otf {

RepressilatorParams RepressilatorParams::from_point(const Point& p) {
  if (p.size() != 4)
    throw std::invalid_argument("RepressilatorParams: expected 4 genes");
  return {p[0], p[1], p[2], p[3]};
}

namespace {

State6 derivative(const State6& y, const RepressilatorParams& p) {
  auto hill = [&](double prot) { return p.alpha / (1.0 + std::pow(prot, p.eta)) + p.alpha0; };
  return {
      -y[0] + hill(y[5]),
      -y[1] + hill(y[3]),
      -y[2] + hill(y[4]),
      -p.beta * (y[3] - y[0]),
      -p.beta * (y[4] - y[1]),
      -p.beta * (y[5] - y[2]),
  };
}

bool finite(const State6& y) {
  for (double v : y)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

Trajectory repressilator_trajectory(const RepressilatorParams& p, const State6& y0,
                                    double dt, double t_end) {
  if (!(dt > 0.0)) throw std::invalid_argument("repressilator_trajectory: dt must be > 0");
  if (!(t_end >= dt)) throw std::invalid_argument("repressilator_trajectory: t_end must be >= dt");
  if (p.eta < 0.0) throw std::invalid_argument("repressilator_trajectory: eta must be >= 0");

  const auto n_steps = static_cast<std::size_t>(std::llround(t_end / dt));
  Trajectory traj;
  traj.dt = dt;
  traj.times.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(y0);

  State6 y = y0;
  for (std::size_t k = 0; k < n_steps; ++k) {
    State6 k1 = derivative(y, p);
    State6 tmp;
    for (std::size_t i = 0; i < 6; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    State6 k2 = derivative(tmp, p);
    for (std::size_t i = 0; i < 6; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    State6 k3 = derivative(tmp, p);
    for (std::size_t i = 0; i < 6; ++i) tmp[i] = y[i] + dt * k3[i];
    State6 k4 = derivative(tmp, p);
    for (std::size_t i = 0; i < 6; ++i)
      y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    double t = static_cast<double>(k + 1) * dt;
    if (!finite(y)) throw IntegrationBlowup(t);
    traj.times.push_back(t);
    traj.states.push_back(y);
  }
  return traj;
}

const Trajectory& reference_trajectory() {
  static const Trajectory ref = repressilator_trajectory(
      kReferenceParams, kReferenceInit, kReferenceDt, kReferenceTEnd);
  return ref;
}

double repressilator_fitness(const RepressilatorParams& p) {
  for (double v : p.as_point())
    if (!std::isfinite(v)) return kBlowupPenalty;
  if (p.eta < 0.0) return kBlowupPenalty;

  const Trajectory& ref = reference_trajectory();
  Trajectory traj;
  try {
    traj = repressilator_trajectory(p, kReferenceInit, kReferenceDt, kReferenceTEnd);
  } catch (const IntegrationBlowup&) {
    return kBlowupPenalty;
  }

  double sse = 0.0;
  for (std::size_t k = 0; k < ref.states.size(); ++k)
    for (std::size_t i = 0; i < 6; ++i) {
      double d = traj.states[k][i] - ref.states[k][i];
      sse += d * d;
    }
  if (!std::isfinite(sse)) return kBlowupPenalty;
  return sse;
}

}  // namespace otf
