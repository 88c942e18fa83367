#include "otf/objectives.hpp"

#include <cmath>
#include <numbers>

namespace otf {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dim(const Point& x, std::size_t dim, const char* what) {
  if (x.size() != dim)
    throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                std::to_string(dim) + ", got " +
                                std::to_string(x.size()));
}

// Written as x1^2 + 2 x2^2 + 0.3(1-cos) + 0.4(1-cos): algebraically the
// published form, but each term vanishes at the origin so the global
// minimum evaluates to exactly 0.
double bohachevsky(double x1, double x2) {
  return x1 * x1 + 2.0 * x2 * x2 + 0.3 * (1.0 - std::cos(3.0 * kPi * x1)) +
         0.4 * (1.0 - std::cos(4.0 * kPi * x2));
}

double booth(double x1, double x2) {
  double a = x1 + 2.0 * x2 - 7.0;
  double b = 2.0 * x1 + x2 - 5.0;
  return a * a + b * b;
}

double mh_exponent(double x1, double x2) {
  double c2 = std::cos(x2);
  double s1 = std::sin(x1);
  double d = x1 - x2;
  return -0.01 * (s1 * std::exp((1.0 - c2) * (1.0 - c2)) +
                  c2 * std::exp((1.0 - s1) * (1.0 - s1)) + d * d);
}

double sa_exponent(double x1, double x2) {
  double c1 = std::cos(x1);
  double s2 = std::sin(x2);
  double d = x1 - x2;
  return -0.02 * (c1 * std::exp((1.0 - s2) * (1.0 - s2)) -
                  s2 * std::exp((1.0 + c1) * (1.0 + c1)) - d * d);
}

}  // namespace

const char* to_string(ObjectiveId id) {
  switch (id) {
    case ObjectiveId::bohachevsky: return "bohachevsky";
    case ObjectiveId::booth: return "booth";
    case ObjectiveId::mh_density: return "mh_density";
    case ObjectiveId::sa_density: return "sa_density";
    case ObjectiveId::repressilator: return "repressilator";
  }
  return "?";
}

std::optional<ObjectiveId> parse_objective(std::string_view name) {
  if (name == "bohachevsky") return ObjectiveId::bohachevsky;
  if (name == "booth") return ObjectiveId::booth;
  if (name == "mh_density") return ObjectiveId::mh_density;
  if (name == "sa_density") return ObjectiveId::sa_density;
  if (name == "repressilator") return ObjectiveId::repressilator;
  return std::nullopt;
}

std::size_t objective_dimension(ObjectiveId id) {
  return id == ObjectiveId::repressilator ? 4 : 2;
}

const BoxDomain& objective_domain(ObjectiveId id) {
  static const BoxDomain square{{-100.0, -100.0}, {100.0, 100.0}};
  static const BoxDomain band{{-3.0, 2.0}, {3.0, 4.0}};
  static const BoxDomain gene{{-2.0, 0.0, -5.0, 500.0}, {10.0, 10.0, 20.0, 2500.0}};
  switch (id) {
    case ObjectiveId::bohachevsky:
    case ObjectiveId::booth: return square;
    case ObjectiveId::mh_density:
    case ObjectiveId::sa_density: return band;
    case ObjectiveId::repressilator: return gene;
  }
  return square;
}

double evaluate(ObjectiveId id, const Point& x) {
  require_dim(x, 2, "evaluate");
  switch (id) {
    case ObjectiveId::bohachevsky: return bohachevsky(x[0], x[1]);
    case ObjectiveId::booth: return booth(x[0], x[1]);
    default:
      throw UnsupportedObjective(std::string("evaluate: no scalar objective for ") +
                                 to_string(id));
  }
}

Point gradient(ObjectiveId id, const Point& x) {
  require_dim(x, 2, "gradient");
  if (id != ObjectiveId::bohachevsky)
    throw UnsupportedObjective(std::string("gradient: no analytic gradient for ") +
                               to_string(id));
  return {2.0 * x[0] + 0.9 * kPi * std::sin(3.0 * kPi * x[0]),
          4.0 * x[1] + 1.6 * kPi * std::sin(4.0 * kPi * x[1])};
}

double log_density(ObjectiveId id, const Point& x) {
  require_dim(x, 2, "log_density");
  switch (id) {
    case ObjectiveId::mh_density: return mh_exponent(x[0], x[1]);
    case ObjectiveId::sa_density: return sa_exponent(x[0], x[1]);
    default:
      throw UnsupportedObjective(std::string("log_density: no density for ") +
                                 to_string(id));
  }
}

double Grid::node_x1(std::size_t ix) const {
  const BoxDomain& box = objective_domain(id);
  return box.lower[0] + static_cast<double>(ix) * box.width(0) /
                            static_cast<double>(resolution - 1);
}

double Grid::node_x2(std::size_t iy) const {
  const BoxDomain& box = objective_domain(id);
  return box.lower[1] + static_cast<double>(iy) * box.width(1) /
                            static_cast<double>(resolution - 1);
}

std::pair<std::size_t, std::size_t> Grid::argmax() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return {best % resolution, best / resolution};
}

Grid grid_eval(ObjectiveId id, std::size_t resolution) {
  if (objective_dimension(id) != 2)
    throw UnsupportedObjective("grid_eval: objective is not 2-dimensional");
  if (resolution < 2)
    throw std::invalid_argument("grid_eval: resolution must be >= 2");

  Grid grid{id, resolution, {}};
  grid.values.reserve(resolution * resolution);
  const bool density =
      id == ObjectiveId::mh_density || id == ObjectiveId::sa_density;
  for (std::size_t iy = 0; iy < resolution; ++iy) {
    for (std::size_t ix = 0; ix < resolution; ++ix) {
      Point x{grid.node_x1(ix), grid.node_x2(iy)};
      grid.values.push_back(density ? std::exp(log_density(id, x))
                                    : evaluate(id, x));
    }
  }
  return grid;
}

}  // namespace otf
