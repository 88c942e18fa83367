#pragma once

#include <cstddef>
#include <vector>

#include "otf/nelder_mead.hpp"  // ObjectiveFn
#include "otf/repressilator.hpp"
#include "otf/rng.hpp"

namespace otf {

struct Individual {
  Point genome;
  double fitness = 0.0;  // minimized
};

struct EaConfig {
  std::size_t pop_size = 100;
  std::size_t generations = 10;
  double mutation_std = 1.0;       // raw gene units
  int recomb_flag = 1;
  int mut_flag = 1;
  double parent_fraction = 0.25;
  std::size_t replacement_count = 0;  // 0 means ceil(pop_size / 5)

  std::size_t effective_replacement() const {
    return replacement_count == 0 ? (pop_size + 4) / 5 : replacement_count;
  }
};

struct GenerationStats {
  std::size_t generation;
  double best_fitness;
  double mean_fitness;
  double std_fitness;  // population std
};

/// Fitness landscape the operators run over; the repressilator parameter
/// fit is the default problem.
struct EaProblem {
  ObjectiveFn fitness;
  BoxDomain box;
};

EaProblem repressilator_problem();

std::vector<Individual> init_population(const EaConfig& cfg, const EaProblem& problem,
                                        Rng& rng);

/// Truncation selection: the ceil(fraction * size) lowest-fitness
/// individuals, ties broken by earlier index.
std::vector<Individual> select_parents(const std::vector<Individual>& pop,
                                       double fraction);

/// Cut point uniform in {1, .., dim-1}; offspring = a[0..k) ++ b[k..dim).
/// Fitness left unevaluated.
Individual one_point_crossover(const Individual& a, const Individual& b, Rng& rng);

/// Exactly one uniformly chosen gene receives += N(0, std^2); the result is
/// clamped to the box.
Individual mutate(const Individual& ind, double stddev, const BoxDomain& box,
                  Rng& rng);

/// One generation: offspring from the selected pool (crossover when
/// recomb_flag, parent copy otherwise; mutation when mut_flag), evaluated,
/// replacing the worst individuals. Both flags zero is an identity.
void ea_step(std::vector<Individual>& pop, int recomb_flag, int mut_flag,
             const EaConfig& cfg, const EaProblem& problem, Rng& rng);

std::vector<GenerationStats> ea_run(const EaConfig& cfg, const EaProblem& problem,
                                    Rng& rng, std::vector<Individual>* final_pop = nullptr);
std::vector<GenerationStats> ea_run(const EaConfig& cfg, Rng& rng);

}  // namespace otf
