#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "otf/objectives.hpp"

namespace otf {

using ObjectiveFn = std::function<double(const Point&)>;

struct NmCoefficients {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

struct NmConfig {
  double atol = 0.005;
  std::size_t maxiter = 100;
  Point init;
  NmCoefficients coefficients{};
  double initial_scale = 0.05;
};

/// dim+1 vertices with their objective values; order() sorts ascending by
/// value (stable on ties).
struct Simplex {
  std::vector<Point> vertices;
  std::vector<double> values;

  void order();
  /// Max distance from the best vertex (call after order()).
  double diameter() const;
  double value_spread() const { return values.back() - values.front(); }
};

enum class NmMove { reflect, expand, outside_contract, inside_contract, shrink };
const char* to_string(NmMove move);

/// Vertex 0 is init; vertex i offsets coordinate i-1 by
/// scale * max(1, |init[i-1]|), a relative perturbation with an absolute
/// floor.
Simplex initial_simplex(const Point& init, double scale, const ObjectiveFn& f);

/// One order/reflect/expand/contract/shrink cycle. Exactly one move is
/// applied; the returned simplex is re-evaluated and ordered.
NmMove nm_iterate(Simplex& s, const ObjectiveFn& f, const NmCoefficients& c);

struct NmResult {
  Point best_point;
  double best_value = 0.0;
  std::size_t iterations_used = 0;
  bool converged = false;
  std::vector<double> trace;  // best value per iteration, non-increasing
};

/// Loops nm_iterate until the simplex diameter and value spread both drop
/// below atol/10 (so the reported best is good to atol with margin), or
/// maxiter. Non-convergence is a normal result with converged = false.
NmResult nm_minimize(const ObjectiveFn& f, const NmConfig& cfg);
NmResult nm_minimize(ObjectiveId objective, const NmConfig& cfg);

}  // namespace otf
