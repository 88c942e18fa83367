#include "otf/summary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace otf {

SummaryStats summarize(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("summarize: empty list");
  SummaryStats s;
  s.n = values.size();
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  double var = 0.0;
  for (double v : values) {
    double d = v - s.mean;
    var += d * d;
  }
  s.stddev = std::sqrt(var / static_cast<double>(s.n));
  return s;
}

}  // namespace otf
