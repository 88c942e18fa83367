#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "otf/domain.hpp"

namespace otf {

/// Three-gene cyclic repression network parameters: basal transcription
/// rate, Hill coefficient, protein/mRNA decay ratio, max transcription rate.
struct RepressilatorParams {
  double alpha0 = 1.0;
  double eta = 2.0;
  double beta = 5.0;
  double alpha = 1000.0;

  Point as_point() const { return {alpha0, eta, beta, alpha}; }
  static RepressilatorParams from_point(const Point& p);
};

using State6 = std::array<double, 6>;  // m1, m2, m3, p1, p2, p3

struct Trajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<State6> states;
};

struct IntegrationBlowup : std::runtime_error {
  double time;
  explicit IntegrationBlowup(double t)
      : std::runtime_error("repressilator integration blew up at t=" +
                           std::to_string(t)),
        time(t) {}
};

/// Classical fixed-step RK4 on the six-state system
///   dm_i/dt = -m_i + alpha / (1 + p_j^eta) + alpha0,   (i,j) = (1,3),(2,1),(3,2)
///   dp_i/dt = -beta (p_i - m_i)
/// States are recorded at every grid time including t = 0.
/// Throws IntegrationBlowup carrying the failing time when a state goes
/// non-finite.
Trajectory repressilator_trajectory(const RepressilatorParams& p, const State6& y0,
                                    double dt, double t_end);

inline constexpr RepressilatorParams kReferenceParams{1.0, 2.0, 5.0, 1000.0};
inline constexpr State6 kReferenceInit{0.0, 0.0, 0.0, 1.0, 2.0, 3.0};
inline constexpr double kReferenceDt = 0.05;
inline constexpr double kReferenceTEnd = 10.0;
inline constexpr double kBlowupPenalty = 1e12;

/// Trajectory from the fixed reference parameters; computed once and cached.
/// The same trajectory is persisted as data/repressilator_reference.csv.
const Trajectory& reference_trajectory();

/// Sum of squared differences against the reference trajectory, all six
/// states at all grid times. Zero exactly at the reference parameters.
/// Total by construction: any integration failure maps to the blow-up
/// penalty.
double repressilator_fitness(const RepressilatorParams& p);

}  // namespace otf
