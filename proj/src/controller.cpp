#include "otf/controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "otf/evolutionary.hpp"
#include "otf/mcmc.hpp"
#include "otf/nelder_mead.hpp"

namespace otf {

const char* to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::gd: return "gd";
    case Algorithm::nm: return "nm";
    case Algorithm::mh: return "mh";
    case Algorithm::sa: return "sa";
    case Algorithm::ea: return "ea";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "gd") return Algorithm::gd;
  if (name == "nm") return Algorithm::nm;
  if (name == "mh") return Algorithm::mh;
  if (name == "sa") return Algorithm::sa;
  if (name == "ea") return Algorithm::ea;
  return std::nullopt;
}

bool valid_pairing(Algorithm algo, ObjectiveId objective) {
  switch (algo) {
    case Algorithm::gd: return objective == ObjectiveId::bohachevsky;
    case Algorithm::nm: return objective == ObjectiveId::booth;
    case Algorithm::mh:
    case Algorithm::sa:
      return objective == ObjectiveId::mh_density ||
             objective == ObjectiveId::sa_density;
    case Algorithm::ea: return objective == ObjectiveId::repressilator;
  }
  return false;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::diverged: return "diverged";
    case Verdict::plateau: return "plateau";
    case Verdict::improving: return "improving";
    case Verdict::converged: return "converged";
  }
  return "?";
}

Verdict classify_repetition(const std::vector<double>& losses, double target_loss,
                            bool diverged_flag, double plateau_rate) {
  if (losses.empty())
    throw std::invalid_argument("classify_repetition: empty trace");
  if (diverged_flag || losses.back() > losses.front()) return Verdict::diverged;

  double best = *std::min_element(losses.begin(), losses.end());
  if (best <= target_loss) return Verdict::converged;

  const std::size_t n = losses.size();
  const std::size_t mid = (n - 1) / 2;
  const std::size_t span = n - 1 - mid;
  if (span < 1) return Verdict::plateau;

  constexpr double kTiny = 1e-300;
  double l_mid = std::max(losses[mid], kTiny);
  double l_end = std::max(losses.back(), kTiny);
  double rate = (std::log(l_mid) - std::log(l_end)) / static_cast<double>(span);
  double gap = std::log(l_mid) - std::log(std::max(target_loss, kTiny));
  if (gap <= 0.0) return Verdict::improving;
  return (rate / gap < plateau_rate) ? Verdict::plateau : Verdict::improving;
}

Verdict classify_repetition(const LossTrace& trace, double target_loss,
                            double plateau_rate) {
  return classify_repetition(trace.losses, target_loss, trace.diverged, plateau_rate);
}

std::pair<ControllerState, std::vector<AdjustmentEvent>> next_params(
    const ControllerState& state, Verdict verdict, std::size_t repetition) {
  ControllerState next = state;
  std::vector<AdjustmentEvent> events;
  auto adjust_alpha = [&](double factor, Verdict why) {
    next.current_alpha = state.current_alpha * factor;
    next.stable_reps = 0;
    events.push_back({repetition, "alpha", state.current_alpha, next.current_alpha,
                      "controller", to_string(why)});
  };

  switch (verdict) {
    case Verdict::diverged:
      adjust_alpha(0.5, verdict);
      break;
    case Verdict::plateau:
      if (state.current_iterations < state.iteration_cap) {
        next.current_iterations =
            std::min(state.current_iterations * 2, state.iteration_cap);
        next.stable_reps = 0;
        events.push_back({repetition, "iterations",
                          static_cast<double>(state.current_iterations),
                          static_cast<double>(next.current_iterations), "controller",
                          to_string(verdict)});
      } else {
        adjust_alpha(0.5, verdict);
      }
      break;
    case Verdict::improving:
      if (state.stable_reps >= 2) {
        adjust_alpha(2.0, verdict);
      } else {
        next.stable_reps = state.stable_reps + 1;
      }
      break;
    case Verdict::converged:
      next.stable_reps = state.stable_reps + 1;
      break;
  }
  return {next, events};
}

ControllerState default_controller_state(Algorithm algo) {
  ControllerState s;
  switch (algo) {
    case Algorithm::gd: s.current_alpha = 1e-3; s.current_iterations = 10; break;
    case Algorithm::nm: s.current_alpha = 0.005; s.current_iterations = 100; break;
    case Algorithm::mh:
    case Algorithm::sa: s.current_alpha = 0.2; s.current_iterations = 1000; break;
    case Algorithm::ea: s.current_alpha = 1.0; s.current_iterations = 10; break;
  }
  return s;
}

namespace {

struct RepetitionResult {
  std::vector<double> metric_trace;
  bool diverged = false;
  double best = 0.0;
  std::size_t evaluations = 0;
};

RepetitionResult run_repetition(Algorithm algo, ObjectiveId objective,
                                const ControllerState& state, Rng& rng) {
  RepetitionResult r;
  switch (algo) {
    case Algorithm::gd: {
      GdConfig cfg;
      cfg.alpha = state.current_alpha;
      cfg.iterations = state.current_iterations;
      cfg.init = objective_domain(objective).sample_uniform(rng);
      LossTrace trace = gd_run(cfg);
      r.metric_trace = trace.losses;
      r.diverged = trace.diverged;
      r.best = trace.best_loss;
      r.evaluations = trace.losses.size();
      break;
    }
    case Algorithm::nm: {
      NmConfig cfg;
      cfg.atol = state.current_alpha;
      cfg.maxiter = state.current_iterations;
      cfg.init = objective_domain(objective).sample_uniform(rng);
      std::size_t evals = 0;
      NmResult res = nm_minimize(
          [&](const Point& x) {
            ++evals;
            return evaluate(objective, x);
          },
          cfg);
      r.metric_trace = res.trace;
      r.best = res.best_value;
      r.evaluations = evals;
      break;
    }
    case Algorithm::mh:
    case Algorithm::sa: {
      ChainConfig cfg;
      cfg.target = objective;
      cfg.proposal_std = state.current_alpha;
      cfg.n_iterations = state.current_iterations;
      cfg.init = objective_domain(objective).sample_uniform(rng);
      if (algo == Algorithm::sa) cfg.temperature_schedule = TemperatureSchedule{};
      SampleRun run = chain_run(cfg, rng);
      // sampler quality metric: distance of the running acceptance rate
      // from the 0.5 sweet spot
      std::size_t accepted = 0;
      r.metric_trace.reserve(run.steps.size());
      for (std::size_t i = 0; i < run.steps.size(); ++i) {
        if (run.steps[i].accepted) ++accepted;
        double rate = static_cast<double>(accepted) / static_cast<double>(i + 1);
        r.metric_trace.push_back(std::abs(rate - 0.5));
      }
      if (r.metric_trace.empty()) r.metric_trace.push_back(0.5);
      r.best = r.metric_trace.back();
      r.evaluations = run.steps.size() + 1;
      break;
    }
    case Algorithm::ea: {
      EaConfig cfg;
      cfg.mutation_std = state.current_alpha;
      cfg.generations = state.current_iterations;
      std::vector<GenerationStats> stats = ea_run(cfg, rng);
      for (const GenerationStats& s : stats) r.metric_trace.push_back(s.best_fitness);
      r.best = r.metric_trace.back();
      r.evaluations = cfg.pop_size + cfg.generations * cfg.effective_replacement();
      break;
    }
  }
  return r;
}

}  // namespace

TuneTable tune(Algorithm algo, ObjectiveId objective, std::size_t n_reps,
               ControllerState initial, std::uint64_t master_seed) {
  if (!valid_pairing(algo, objective))
    throw std::invalid_argument(std::string("tune: invalid pairing ") +
                                to_string(algo) + "/" + to_string(objective));

  TuneTable table;
  ControllerState state = initial;
  double best_so_far = std::numeric_limits<double>::infinity();

  for (std::size_t rep = 0; rep < n_reps; ++rep) {
    Rng rng(derive_seed(master_seed, rep));
    RepetitionResult result = run_repetition(algo, objective, state, rng);
    Verdict verdict = classify_repetition(result.metric_trace, state.target_loss,
                                          result.diverged, state.plateau_rate);
    table.rows.push_back({rep, state.current_alpha, state.current_iterations,
                          result.best, verdict, result.evaluations});
    if (result.best < best_so_far) {
      best_so_far = result.best;
      table.chosen_repetition = rep;
      table.chosen_alpha = state.current_alpha;
      table.chosen_iterations = state.current_iterations;
    }
    state.last_best_loss = result.best;
    auto [next, events] = next_params(state, verdict, rep);
    state = next;
    table.events.insert(table.events.end(), events.begin(), events.end());
  }
  return table;
}

}  // namespace otf
