#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "otf/rng.hpp"

namespace otf {

using Point = std::vector<double>;

/// Closed per-dimension interval box. Bounds are inclusive.
struct BoxDomain {
  Point lower;
  Point upper;

  BoxDomain(Point lo, Point up) : lower(std::move(lo)), upper(std::move(up)) {
    if (lower.size() != upper.size())
      throw std::invalid_argument("BoxDomain: lower/upper dimension mismatch");
    for (std::size_t i = 0; i < lower.size(); ++i)
      if (lower[i] > upper[i])
        throw std::invalid_argument("BoxDomain: lower[i] > upper[i]");
  }

  std::size_t dimension() const { return lower.size(); }

  double width(std::size_t i) const { return upper[i] - lower[i]; }

  bool contains(const Point& x) const {
    if (x.size() != dimension())
      throw std::invalid_argument("contains: point dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] < lower[i] || x[i] > upper[i]) return false;
    return true;
  }

  Point sample_uniform(Rng& rng) const {
    Point x(dimension());
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = rng.uniform(lower[i], upper[i]);
    return x;
  }

  Point clamp(Point x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < lower[i]) x[i] = lower[i];
      if (x[i] > upper[i]) x[i] = upper[i];
    }
    return x;
  }
};

}  // namespace otf
