#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "otf/controller.hpp"
#include "otf/objectives.hpp"

namespace otf {

using json = nlohmann::ordered_json;

struct ConfigError : std::invalid_argument {
  std::string field;
  ConfigError(const std::string& message, std::string field_name)
      : std::invalid_argument(message), field(std::move(field_name)) {}
};

enum class EventKind { trace, adjustment, state };
const char* to_string(EventKind kind);

struct Event {
  std::int64_t iteration;
  EventKind kind;
  json payload;
};

/// Persisted, seed-replayable log of one experiment, including every
/// parameter adjustment and its source.
struct RunRecord {
  int schema_version = 1;
  std::string run_id;
  Algorithm algorithm = Algorithm::gd;
  ObjectiveId objective = ObjectiveId::bohachevsky;
  std::uint64_t master_seed = 0;
  json config;
  std::vector<Event> events;
  json summary;
};

json to_json(const RunRecord& record);
RunRecord record_from_json(const json& j);

/// Removes the wall-clock fields, the only non-deterministic record
/// content; use before golden comparisons.
json strip_timestamps(json record);

/// Fills defaults and validates a per-algorithm config object. Throws
/// ConfigError naming the offending field.
json normalize_config(Algorithm algo, const json& config);

struct ScheduleEntry {
  std::int64_t iteration;
  std::string parameter;
  double value;
};

/// Runs one experiment and wraps its trace into a RunRecord. A non-empty
/// schedule applies parameter overrides at the given iteration boundaries
/// (the batch replay of a live session's adjustments).
RunRecord run_experiment(Algorithm algo, ObjectiveId objective, const json& config,
                         std::uint64_t master_seed,
                         const std::vector<ScheduleEntry>& schedule = {},
                         const std::string& adjustment_source = "human");

}  // namespace otf
