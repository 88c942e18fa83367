#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "otf/gradient_descent.hpp"
#include "otf/objectives.hpp"

namespace otf {

enum class Algorithm { gd, nm, mh, sa, ea };
const char* to_string(Algorithm algo);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// The objectives each algorithm may be paired with in experiments.
bool valid_pairing(Algorithm algo, ObjectiveId objective);

enum class Verdict { diverged, plateau, improving, converged };
const char* to_string(Verdict v);

struct ControllerState {
  double current_alpha = 1e-3;        // alpha / atol / proposal std / mutation std
  std::size_t current_iterations = 10;  // iterations / maxiter / N / generations
  std::size_t stable_reps = 0;          // consecutive reps without a change
  double last_best_loss = 0.0;
  std::size_t iteration_cap = 10000;
  double target_loss = 0.01;
  double plateau_rate = 1e-3;  // log-gap closure per iteration below which a
                               // repetition counts as a plateau
};

struct AdjustmentEvent {
  std::size_t repetition;
  std::string parameter;
  double old_value;
  double new_value;
  std::string source;  // "controller" or "human"
  std::string reason;  // verdict name or "manual"
};

/// Classifies one repetition's loss trace:
///   diverged   - flagged, or final loss above the first
///   converged  - best loss at or below target
///   plateau    - the last half of the trace closes less than plateau_rate of
///                the remaining log-distance to target per iteration
///   improving  - otherwise
Verdict classify_repetition(const std::vector<double>& losses, double target_loss,
                            bool diverged_flag = false, double plateau_rate = 1e-3);
Verdict classify_repetition(const LossTrace& trace, double target_loss,
                            double plateau_rate = 1e-3);

/// Applies the adjustment rule table (first match wins):
///   1. diverged                      -> alpha *= 0.5
///   2. plateau, below iteration cap  -> iterations *= 2 (capped)
///   3. plateau, at the cap           -> alpha *= 0.5
///   4. improving, 2+ stable reps     -> alpha *= 2 (exploratory probe)
///   5. otherwise                     -> no change, stable_reps += 1
/// Iterations move before alpha by rule precedence.
std::pair<ControllerState, std::vector<AdjustmentEvent>> next_params(
    const ControllerState& state, Verdict verdict, std::size_t repetition = 0);

struct TuneRow {
  std::size_t repetition;
  double alpha;
  std::size_t iterations;
  double best_loss;
  Verdict verdict;
  std::size_t evaluations;  // objective/density/fitness calls spent
};

struct TuneTable {
  std::vector<TuneRow> rows;
  std::vector<AdjustmentEvent> events;
  std::size_t chosen_repetition = 0;
  double chosen_alpha = 0.0;
  std::size_t chosen_iterations = 0;
};

/// Runs n_reps repetitions of the paired experiment. Repetition r draws its
/// stream from derive_seed(master_seed, r) and a fresh random init; the
/// controller inspects each trace and adjusts parameters between
/// repetitions. The best repetition's parameters are marked chosen.
TuneTable tune(Algorithm algo, ObjectiveId objective, std::size_t n_reps,
               ControllerState initial, std::uint64_t master_seed);

/// Per-algorithm starting parameters mirroring the experiment defaults.
ControllerState default_controller_state(Algorithm algo);

}  // namespace otf
