#include "otf/runner.hpp"

#include <algorithm>
#include <cmath>

#include "otf/evolutionary.hpp"
#include "otf/gradient_descent.hpp"
#include "otf/mcmc.hpp"
#include "otf/nelder_mead.hpp"

namespace otf {

namespace {

json point_json(const Point& p) { return json(p); }

Point resolve_init(const json& config, ObjectiveId objective, Rng& rng) {
  if (config.contains("init") && !config["init"].is_null()) {
    Point init = config["init"].get<Point>();
    return init;
  }
  return objective_domain(objective).sample_uniform(rng);
}

class GdRunner final : public Runner {
 public:
  GdRunner(const json& config, ObjectiveId objective, std::uint64_t seed)
      : rng_(seed),
        alpha_(config["alpha"].get<double>()),
        iterations_(config["iterations"].get<std::size_t>()),
        clip_(config["clip_to_domain"].get<bool>()),
        x_(resolve_init(config, objective, rng_)),
        init_(x_) {
    best_loss_ = evaluate(ObjectiveId::bohachevsky, x_);
    best_point_ = x_;
  }

  bool finished() const override {
    return diverged_ || next_ > static_cast<std::int64_t>(iterations_);
  }
  std::int64_t next_iteration() const override { return next_; }

  std::optional<Event> step() override {
    double loss;
    if (next_ == 0) {
      loss = evaluate(ObjectiveId::bohachevsky, x_);
    } else {
      x_ = gd_step(x_, alpha_, clip_);
      loss = evaluate(ObjectiveId::bohachevsky, x_);
      if (!std::isfinite(loss)) {
        // trace truncates at the last finite iterate
        diverged_ = true;
        return std::nullopt;
      }
      if (loss > kGdDivergenceCeiling) diverged_ = true;
    }
    if (loss < best_loss_) {
      best_loss_ = loss;
      best_point_ = x_;
    }
    Event ev{next_, EventKind::trace, json{{"loss", loss}, {"x", point_json(x_)}}};
    ++next_;
    return ev;
  }

  bool has_param(const std::string& name) const override { return name == "alpha"; }
  double get_param(const std::string& name) const override {
    require_param(name);
    return alpha_;
  }
  void set_param(const std::string& name, double value) override {
    require_param(name);
    if (!(value > 0.0)) throw ConfigError("alpha must be > 0", "alpha");
    alpha_ = value;
  }

  json summary() const override {
    return json{{"best_loss", best_loss_},
                {"best_point", point_json(best_point_)},
                {"init", point_json(init_)},
                {"diverged", diverged_}};
  }

 private:
  void require_param(const std::string& name) const {
    if (name != "alpha") throw ConfigError("unknown parameter " + name, "parameter");
  }

  Rng rng_;
  double alpha_;
  std::size_t iterations_;
  bool clip_;
  Point x_;
  Point init_;
  std::int64_t next_ = 0;
  bool diverged_ = false;
  double best_loss_;
  Point best_point_;
};

class NmRunner final : public Runner {
 public:
  NmRunner(const json& config, ObjectiveId objective, std::uint64_t seed)
      : rng_(seed),
        objective_(objective),
        atol_(config["atol"].get<double>()),
        maxiter_(config["maxiter"].get<std::size_t>()) {
    init_ = resolve_init(config, objective, rng_);
    simplex_ = initial_simplex(
        init_, config["initial_scale"].get<double>(),
        [this](const Point& x) { return evaluate(objective_, x); });
    simplex_.order();
  }

  bool finished() const override {
    if (next_ == 0) return false;
    return converged_now() || iterations_used_ >= maxiter_;
  }
  std::int64_t next_iteration() const override { return next_; }

  std::optional<Event> step() override {
    if (next_ > 0) {
      nm_iterate(simplex_, [this](const Point& x) { return evaluate(objective_, x); },
                 coefficients_);
      ++iterations_used_;
    }
    Event ev{next_, EventKind::trace,
             json{{"best_value", simplex_.values[0]},
                  {"best_point", point_json(simplex_.vertices[0])}}};
    ++next_;
    return ev;
  }

  bool has_param(const std::string&) const override { return false; }
  double get_param(const std::string& name) const override {
    throw ConfigError("unknown parameter " + name, "parameter");
  }
  void set_param(const std::string& name, double) override {
    throw ConfigError("unknown parameter " + name, "parameter");
  }

  json summary() const override {
    return json{{"best_value", simplex_.values[0]},
                {"best_point", point_json(simplex_.vertices[0])},
                {"init", point_json(init_)},
                {"iterations_used", iterations_used_},
                {"converged", converged_now()}};
  }

 private:
  bool converged_now() const {
    const double stop = atol_ * 0.1;
    return simplex_.diameter() < stop && simplex_.value_spread() < stop;
  }

  Rng rng_;
  ObjectiveId objective_;
  double atol_;
  std::size_t maxiter_;
  NmCoefficients coefficients_{};
  Point init_;
  Simplex simplex_;
  std::size_t iterations_used_ = 0;
  std::int64_t next_ = 0;
};

class ChainRunner final : public Runner {
 public:
  ChainRunner(const json& config, ObjectiveId objective, std::uint64_t seed,
              bool annealing)
      : rng_(seed),
        target_(objective),
        annealing_(annealing),
        n_iterations_(config["n_iterations"].get<std::size_t>()),
        proposal_std_(config["proposal_std"].get<double>()),
        max_redraws_(config["max_proposal_redraws"].get<std::size_t>()),
        current_(resolve_init(config, objective, rng_)),
        init_(current_) {
    if (annealing_) {
      t0_ = config["t0"].get<double>();
      cooling_ = config["cooling"].get<double>();
    }
    log_p_current_ = log_density(target_, current_);
  }

  bool finished() const override {
    return next_ >= static_cast<std::int64_t>(n_iterations_);
  }
  std::int64_t next_iteration() const override { return next_; }

  std::optional<Event> step() override {
    const BoxDomain& domain = objective_domain(target_);
    Point candidate = propose(current_, proposal_std_, domain, rng_, max_redraws_);
    double log_p_candidate = log_density(target_, candidate);
    double temperature =
        annealing_ ? sa_temperature(static_cast<std::size_t>(next_), t0_, cooling_)
                   : 1.0;
    double alpha = acceptance_probability(log_p_current_, log_p_candidate, temperature);
    double u = rng_.uniform();
    bool accepted = u < alpha;
    if (accepted) {
      current_ = candidate;
      log_p_current_ = log_p_candidate;
      ++accepted_;
      counter_ += 1;
    } else {
      ++rejected_;
      counter_ -= 1;
    }
    alpha_sum_ += alpha;
    Event ev{next_, EventKind::trace,
             json{{"current", point_json(current_)},
                  {"candidate", point_json(candidate)},
                  {"alpha", alpha},
                  {"u", u},
                  {"accepted", accepted},
                  {"temperature", temperature},
                  {"acceptance_count", counter_}}};
    ++next_;
    return ev;
  }

  bool has_param(const std::string& name) const override {
    if (name == "proposal_std") return true;
    return annealing_ && (name == "temperature_t0" || name == "cooling");
  }
  double get_param(const std::string& name) const override {
    if (name == "proposal_std") return proposal_std_;
    if (annealing_ && name == "temperature_t0") return t0_;
    if (annealing_ && name == "cooling") return cooling_;
    throw ConfigError("unknown parameter " + name, "parameter");
  }
  void set_param(const std::string& name, double value) override {
    if (name == "proposal_std") {
      if (!(value > 0.0)) throw ConfigError("proposal_std must be > 0", "proposal_std");
      proposal_std_ = value;
    } else if (annealing_ && name == "temperature_t0") {
      if (!(value > 0.0)) throw ConfigError("temperature_t0 must be > 0", "temperature_t0");
      t0_ = value;
    } else if (annealing_ && name == "cooling") {
      if (!(value > 0.0 && value < 1.0))
        throw ConfigError("cooling must be in (0,1)", "cooling");
      cooling_ = value;
    } else {
      throw ConfigError("unknown parameter " + name, "parameter");
    }
  }

  json summary() const override {
    std::size_t n = accepted_ + rejected_;
    return json{{"init", point_json(init_)},
                {"accepted", accepted_},
                {"rejected", rejected_},
                {"accepted_pct", n == 0 ? 0.0
                                        : static_cast<double>(accepted_) /
                                              static_cast<double>(n)},
                {"mean_alpha",
                 n == 0 ? 0.0 : alpha_sum_ / static_cast<double>(n)},
                {"acceptance_count", counter_}};
  }

 private:
  Rng rng_;
  ObjectiveId target_;
  bool annealing_;
  std::size_t n_iterations_;
  double proposal_std_;
  std::size_t max_redraws_;
  double t0_ = 100.0;
  double cooling_ = 0.95;
  Point current_;
  Point init_;
  double log_p_current_;
  std::int64_t next_ = 0;
  std::size_t accepted_ = 0;
  std::size_t rejected_ = 0;
  long long counter_ = 0;
  double alpha_sum_ = 0.0;
};

class EaRunner final : public Runner {
 public:
  EaRunner(const json& config, std::uint64_t seed)
      : rng_(seed), problem_(repressilator_problem()) {
    cfg_.pop_size = config["pop_size"].get<std::size_t>();
    cfg_.generations = config["generations"].get<std::size_t>();
    cfg_.mutation_std = config["mutation_std"].get<double>();
    cfg_.recomb_flag = config["recomb"].get<int>();
    cfg_.mut_flag = config["mut"].get<int>();
    cfg_.parent_fraction = config["parent_fraction"].get<double>();
    cfg_.replacement_count = config["replacement_count"].get<std::size_t>();
    pop_ = init_population(cfg_, problem_, rng_);
  }

  bool finished() const override {
    return next_ > static_cast<std::int64_t>(cfg_.generations);
  }
  std::int64_t next_iteration() const override { return next_; }

  std::optional<Event> step() override {
    if (next_ > 0) ea_step(pop_, cfg_.recomb_flag, cfg_.mut_flag, cfg_, problem_, rng_);
    double best = pop_[0].fitness;
    double sum = 0.0;
    for (const Individual& ind : pop_) {
      best = std::min(best, ind.fitness);
      sum += ind.fitness;
    }
    double mean = sum / static_cast<double>(pop_.size());
    double var = 0.0;
    for (const Individual& ind : pop_) {
      double d = ind.fitness - mean;
      var += d * d;
    }
    Event ev{next_, EventKind::trace,
             json{{"best_fitness", best},
                  {"mean_fitness", mean},
                  {"std_fitness", std::sqrt(var / static_cast<double>(pop_.size()))}}};
    ++next_;
    return ev;
  }

  bool has_param(const std::string& name) const override {
    return name == "mutation_std";
  }
  double get_param(const std::string& name) const override {
    if (name != "mutation_std") throw ConfigError("unknown parameter " + name, "parameter");
    return cfg_.mutation_std;
  }
  void set_param(const std::string& name, double value) override {
    if (name != "mutation_std") throw ConfigError("unknown parameter " + name, "parameter");
    if (value < 0.0) throw ConfigError("mutation_std must be >= 0", "mutation_std");
    cfg_.mutation_std = value;
  }

  json summary() const override {
    const Individual* best = &pop_[0];
    double sum = 0.0;
    for (const Individual& ind : pop_) {
      if (ind.fitness < best->fitness) best = &ind;
      sum += ind.fitness;
    }
    return json{{"best_fitness", best->fitness},
                {"final_mean_fitness", sum / static_cast<double>(pop_.size())},
                {"best_genome", point_json(best->genome)}};
  }

 private:
  Rng rng_;
  EaProblem problem_;
  EaConfig cfg_;
  std::vector<Individual> pop_;
  std::int64_t next_ = 0;
};

}  // namespace

std::unique_ptr<Runner> make_runner(Algorithm algo, ObjectiveId objective,
                                    const json& config, std::uint64_t seed) {
  switch (algo) {
    case Algorithm::gd: return std::make_unique<GdRunner>(config, objective, seed);
    case Algorithm::nm: return std::make_unique<NmRunner>(config, objective, seed);
    case Algorithm::mh:
      return std::make_unique<ChainRunner>(config, objective, seed, false);
    case Algorithm::sa:
      return std::make_unique<ChainRunner>(config, objective, seed, true);
    case Algorithm::ea: return std::make_unique<EaRunner>(config, seed);
  }
  throw std::invalid_argument("make_runner: unknown algorithm");
}

}  // namespace otf
