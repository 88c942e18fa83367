#include "otf/evolutionary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace otf {

EaProblem repressilator_problem() {
  return {[](const Point& genome) {
            return repressilator_fitness(RepressilatorParams::from_point(genome));
          },
          objective_domain(ObjectiveId::repressilator)};
}

std::vector<Individual> init_population(const EaConfig& cfg, const EaProblem& problem,
                                        Rng& rng) {
  if (cfg.pop_size < 1) throw std::invalid_argument("init_population: empty population");
  std::vector<Individual> pop;
  pop.reserve(cfg.pop_size);
  for (std::size_t i = 0; i < cfg.pop_size; ++i) {
    Point genome = problem.box.sample_uniform(rng);
    double fitness = problem.fitness(genome);
    pop.push_back({std::move(genome), fitness});
  }
  return pop;
}

std::vector<Individual> select_parents(const std::vector<Individual>& pop,
                                       double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("select_parents: fraction must be in (0,1]");
  auto n = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(pop.size())));
  n = std::min(n, pop.size());

  std::vector<std::size_t> idx(pop.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return pop[a].fitness < pop[b].fitness;
  });
  std::vector<Individual> parents;
  parents.reserve(n);
  for (std::size_t i = 0; i < n; ++i) parents.push_back(pop[idx[i]]);
  return parents;
}

Individual one_point_crossover(const Individual& a, const Individual& b, Rng& rng) {
  const std::size_t dim = a.genome.size();
  if (b.genome.size() != dim)
    throw std::invalid_argument("one_point_crossover: genome length mismatch");
  std::size_t cut = 1 + static_cast<std::size_t>(rng.uniform_int(dim - 1));
  Individual child;
  child.genome.reserve(dim);
  child.genome.assign(a.genome.begin(), a.genome.begin() + static_cast<long>(cut));
  child.genome.insert(child.genome.end(), b.genome.begin() + static_cast<long>(cut),
                      b.genome.end());
  return child;
}

Individual mutate(const Individual& ind, double stddev, const BoxDomain& box,
                  Rng& rng) {
  if (stddev < 0.0) throw std::invalid_argument("mutate: stddev must be >= 0");
  Individual out = ind;
  auto gene = static_cast<std::size_t>(rng.uniform_int(out.genome.size()));
  out.genome[gene] += rng.normal(0.0, stddev);
  out.genome = box.clamp(std::move(out.genome));
  return out;
}

void ea_step(std::vector<Individual>& pop, int recomb_flag, int mut_flag,
             const EaConfig& cfg, const EaProblem& problem, Rng& rng) {
  if (pop.size() != cfg.pop_size)
    throw std::invalid_argument("ea_step: population size does not match config");
  const std::size_t replacement = cfg.effective_replacement();
  if (replacement >= cfg.pop_size)
    throw std::invalid_argument("ea_step: replacement_count must be < pop_size");
  if (recomb_flag == 0 && mut_flag == 0) return;

  std::vector<Individual> parents = select_parents(pop, cfg.parent_fraction);

  std::vector<Individual> offspring;
  offspring.reserve(replacement);
  for (std::size_t k = 0; k < replacement; ++k) {
    Individual child;
    if (recomb_flag != 0 && parents.size() >= 2) {
      auto i = static_cast<std::size_t>(rng.uniform_int(parents.size()));
      auto j = static_cast<std::size_t>(rng.uniform_int(parents.size() - 1));
      if (j >= i) ++j;  // two distinct parents
      child = one_point_crossover(parents[i], parents[j], rng);
    } else {
      auto i = static_cast<std::size_t>(rng.uniform_int(parents.size()));
      child = parents[i];
    }
    if (mut_flag != 0) child = mutate(child, cfg.mutation_std, problem.box, rng);
    child.fitness = problem.fitness(child.genome);
    offspring.push_back(std::move(child));
  }

  // replace the `replacement` worst individuals, ties broken by earlier index
  std::vector<std::size_t> idx(pop.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return pop[a].fitness > pop[b].fitness;
  });
  for (std::size_t k = 0; k < replacement; ++k) pop[idx[k]] = std::move(offspring[k]);
}

namespace {

GenerationStats stats_of(std::size_t generation, const std::vector<Individual>& pop) {
  double best = pop[0].fitness;
  double sum = 0.0;
  for (const Individual& ind : pop) {
    best = std::min(best, ind.fitness);
    sum += ind.fitness;
  }
  double mean = sum / static_cast<double>(pop.size());
  double var = 0.0;
  for (const Individual& ind : pop) {
    double d = ind.fitness - mean;
    var += d * d;
  }
  var /= static_cast<double>(pop.size());
  return {generation, best, mean, std::sqrt(var)};
}

}  // namespace

std::vector<GenerationStats> ea_run(const EaConfig& cfg, const EaProblem& problem,
                                    Rng& rng, std::vector<Individual>* final_pop) {
  if (cfg.pop_size < 2) throw std::invalid_argument("ea_run: pop_size must be >= 2");
  std::vector<Individual> pop = init_population(cfg, problem, rng);
  std::vector<GenerationStats> stats;
  stats.reserve(cfg.generations + 1);
  stats.push_back(stats_of(0, pop));
  for (std::size_t g = 1; g <= cfg.generations; ++g) {
    ea_step(pop, cfg.recomb_flag, cfg.mut_flag, cfg, problem, rng);
    stats.push_back(stats_of(g, pop));
  }
  if (final_pop) *final_pop = std::move(pop);
  return stats;
}

std::vector<GenerationStats> ea_run(const EaConfig& cfg, Rng& rng) {
  EaProblem problem = repressilator_problem();
  return ea_run(cfg, problem, rng);
}

}  // namespace otf
