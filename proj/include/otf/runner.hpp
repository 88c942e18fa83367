#pragma once

#include <memory>
#include <optional>
#include <string>

#include "otf/record.hpp"

namespace otf {

/// Incremental single-run stepper. The batch harness, the schedule replay
/// and the live tuning service all drive the same runner, so their trace
/// events are identical by construction. Parameters may be changed between
/// steps only (iteration boundaries).
class Runner {
 public:
  virtual ~Runner() = default;

  virtual bool finished() const = 0;
  /// Index of the trace event the next step() call will produce.
  virtual std::int64_t next_iteration() const = 0;
  /// Produces the next trace event in sequence (the first call yields the
  /// initial-state event where the algorithm records one). Empty only when
  /// the step hit a divergence whose iterate is not recorded (the trace is
  /// truncated at the last finite entry).
  virtual std::optional<Event> step() = 0;

  virtual bool has_param(const std::string& name) const = 0;
  virtual double get_param(const std::string& name) const = 0;
  virtual void set_param(const std::string& name, double value) = 0;

  virtual json summary() const = 0;
};

/// config must already be normalized (see normalize_config).
std::unique_ptr<Runner> make_runner(Algorithm algo, ObjectiveId objective,
                                    const json& config, std::uint64_t seed);

}  // namespace otf
