#pragma once

#include <cstddef>
#include <vector>

namespace otf {

struct SummaryStats {
  double mean = 0.0;
  double stddev = 0.0;  // population convention (divide by n)
  std::size_t n = 0;
  double min = 0.0;
  double max = 0.0;
};

SummaryStats summarize(const std::vector<double>& values);

}  // namespace otf
