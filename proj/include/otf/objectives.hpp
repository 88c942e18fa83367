#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "otf/domain.hpp"

namespace otf {

enum class ObjectiveId { bohachevsky, booth, mh_density, sa_density, repressilator };

struct UnsupportedObjective : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

const char* to_string(ObjectiveId id);
std::optional<ObjectiveId> parse_objective(std::string_view name);

std::size_t objective_dimension(ObjectiveId id);

/// The fixed search/sampling box attached to each objective.
const BoxDomain& objective_domain(ObjectiveId id);

/// Scalar objective value. Only bohachevsky and booth.
double evaluate(ObjectiveId id, const Point& x);

/// Analytic gradient. Only bohachevsky carries one.
Point gradient(ObjectiveId id, const Point& x);

/// Exponent of the unnormalized target density, i.e. log p~(x).
/// Only mh_density and sa_density. All downstream density math works in
/// log space.
double log_density(ObjectiveId id, const Point& x);

/// Lattice of objective values (scalar objectives) or exp(log_density)
/// (densities) over the objective's box. Row-major, x1 fastest.
struct Grid {
  ObjectiveId id;
  std::size_t resolution = 0;
  std::vector<double> values;

  double node_x1(std::size_t ix) const;
  double node_x2(std::size_t iy) const;
  double value(std::size_t ix, std::size_t iy) const {
    return values[iy * resolution + ix];
  }
  /// (ix, iy) of the maximum node.
  std::pair<std::size_t, std::size_t> argmax() const;
};

Grid grid_eval(ObjectiveId id, std::size_t resolution);

}  // namespace otf
