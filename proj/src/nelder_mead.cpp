#include "otf/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace otf {

namespace {

Point centroid_excluding_worst(const Simplex& s) {
  const std::size_t n = s.vertices.size() - 1;
  Point c(s.vertices[0].size(), 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t d = 0; d < c.size(); ++d) c[d] += s.vertices[i][d];
  for (double& v : c) v /= static_cast<double>(n);
  return c;
}

Point affine(const Point& a, const Point& b, double t) {
  // a + t * (b - a)
  Point r(a.size());
  for (std::size_t d = 0; d < a.size(); ++d) r[d] = a[d] + t * (b[d] - a[d]);
  return r;
}

}  // namespace

const char* to_string(NmMove move) {
  switch (move) {
    case NmMove::reflect: return "reflect";
    case NmMove::expand: return "expand";
    case NmMove::outside_contract: return "outside_contract";
    case NmMove::inside_contract: return "inside_contract";
    case NmMove::shrink: return "shrink";
  }
  return "?";
}

void Simplex::order() {
  std::vector<std::size_t> idx(vertices.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<Point> vs;
  std::vector<double> fs;
  vs.reserve(vertices.size());
  fs.reserve(values.size());
  for (std::size_t i : idx) {
    vs.push_back(std::move(vertices[i]));
    fs.push_back(values[i]);
  }
  vertices = std::move(vs);
  values = std::move(fs);
}

double Simplex::diameter() const {
  double dmax = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    double d2 = 0.0;
    for (std::size_t d = 0; d < vertices[i].size(); ++d) {
      double diff = vertices[i][d] - vertices[0][d];
      d2 += diff * diff;
    }
    dmax = std::max(dmax, std::sqrt(d2));
  }
  return dmax;
}

Simplex initial_simplex(const Point& init, double scale, const ObjectiveFn& f) {
  if (!(scale > 0.0)) throw std::invalid_argument("initial_simplex: scale must be > 0");
  Simplex s;
  s.vertices.push_back(init);
  for (std::size_t d = 0; d < init.size(); ++d) {
    Point v = init;
    v[d] += scale * std::max(1.0, std::abs(v[d]));
    s.vertices.push_back(std::move(v));
  }
  for (const Point& v : s.vertices) s.values.push_back(f(v));
  return s;
}

NmMove nm_iterate(Simplex& s, const ObjectiveFn& f, const NmCoefficients& c) {
  s.order();
  const std::size_t worst = s.vertices.size() - 1;
  const std::size_t second_worst = worst - 1;
  const Point centroid = centroid_excluding_worst(s);

  auto replace_worst = [&](Point x, double fx) {
    s.vertices[worst] = std::move(x);
    s.values[worst] = fx;
  };
  auto shrink_all = [&] {
    for (std::size_t i = 1; i < s.vertices.size(); ++i) {
      s.vertices[i] = affine(s.vertices[0], s.vertices[i], c.shrink);
      s.values[i] = f(s.vertices[i]);
    }
  };

  Point reflected = affine(s.vertices[worst], centroid, 1.0 + c.reflection);
  double f_reflected = f(reflected);
  NmMove move;

  if (f_reflected < s.values[0]) {
    Point expanded = affine(centroid, reflected, c.expansion);
    double f_expanded = f(expanded);
    if (f_expanded < f_reflected) {
      replace_worst(std::move(expanded), f_expanded);
      move = NmMove::expand;
    } else {
      replace_worst(std::move(reflected), f_reflected);
      move = NmMove::reflect;
    }
  } else if (f_reflected <= s.values[second_worst]) {
    // ties with the second-worst accept the reflection
    replace_worst(std::move(reflected), f_reflected);
    move = NmMove::reflect;
  } else if (f_reflected < s.values[worst]) {
    Point outside = affine(centroid, reflected, c.contraction);
    double f_outside = f(outside);
    if (f_outside <= f_reflected) {
      replace_worst(std::move(outside), f_outside);
      move = NmMove::outside_contract;
    } else {
      shrink_all();
      move = NmMove::shrink;
    }
  } else {
    Point inside = affine(centroid, s.vertices[worst], c.contraction);
    double f_inside = f(inside);
    if (f_inside < s.values[worst]) {
      replace_worst(std::move(inside), f_inside);
      move = NmMove::inside_contract;
    } else {
      shrink_all();
      move = NmMove::shrink;
    }
  }

  s.order();
  return move;
}

NmResult nm_minimize(const ObjectiveFn& f, const NmConfig& cfg) {
  if (!(cfg.atol > 0.0)) throw std::invalid_argument("nm_minimize: atol must be > 0");
  if (cfg.maxiter < 1) throw std::invalid_argument("nm_minimize: maxiter must be >= 1");

  const double stop = cfg.atol * 0.1;
  Simplex s = initial_simplex(cfg.init, cfg.initial_scale, f);
  s.order();

  NmResult result;
  result.trace.push_back(s.values[0]);
  while (result.iterations_used < cfg.maxiter) {
    if (s.diameter() < stop && s.value_spread() < stop) {
      result.converged = true;
      break;
    }
    nm_iterate(s, f, cfg.coefficients);
    ++result.iterations_used;
    result.trace.push_back(std::min(result.trace.back(), s.values[0]));
  }
  result.best_point = s.vertices[0];
  result.best_value = s.values[0];
  return result;
}

NmResult nm_minimize(ObjectiveId objective, const NmConfig& cfg) {
  return nm_minimize([objective](const Point& x) { return evaluate(objective, x); },
                     cfg);
}

}  // namespace otf
