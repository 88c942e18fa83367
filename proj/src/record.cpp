#include "otf/record.hpp"

#include <chrono>
#include <set>

#include "otf/runner.hpp"

namespace otf {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::trace: return "trace";
    case EventKind::adjustment: return "adjustment";
    case EventKind::state: return "state";
  }
  return "?";
}

namespace {

EventKind parse_event_kind(const std::string& s) {
  if (s == "trace") return EventKind::trace;
  if (s == "adjustment") return EventKind::adjustment;
  if (s == "state") return EventKind::state;
  throw std::invalid_argument("unknown event kind: " + s);
}

void check_keys(const json& config, const std::set<std::string>& allowed) {
  for (auto it = config.begin(); it != config.end(); ++it)
    if (!allowed.contains(it.key()))
      throw ConfigError("unknown config field " + it.key(), it.key());
}

void validate_init(const json& config, ObjectiveId objective) {
  if (!config.contains("init") || config["init"].is_null()) return;
  if (!config["init"].is_array())
    throw ConfigError("init must be an array of coordinates", "init");
  Point init = config["init"].get<Point>();
  const BoxDomain& box = objective_domain(objective);
  if (init.size() != box.dimension())
    throw ConfigError("init has the wrong dimension", "init");
  if (!box.contains(init)) throw ConfigError("init outside the domain", "init");
}

double num(const json& j, const char* field) {
  if (!j.is_number()) throw ConfigError(std::string(field) + " must be a number", field);
  return j.get<double>();
}

std::size_t uint_field(const json& j, const char* field) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ConfigError(std::string(field) + " must be a non-negative integer", field);
  return j.get<std::size_t>();
}

}  // namespace

json normalize_config(Algorithm algo, const json& config) {
  if (!config.is_object() && !config.is_null())
    throw ConfigError("config must be an object", "config");
  json out = json::object();
  json in = config.is_null() ? json::object() : config;
  auto take = [&](const char* key, json def) {
    out[key] = in.contains(key) ? in[key] : std::move(def);
  };

  switch (algo) {
    case Algorithm::gd: {
      check_keys(in, {"alpha", "iterations", "init", "clip_to_domain"});
      take("alpha", 1e-3);
      take("iterations", 10);
      take("init", nullptr);
      take("clip_to_domain", true);
      if (!(num(out["alpha"], "alpha") > 0.0))
        throw ConfigError("alpha must be > 0", "alpha");
      uint_field(out["iterations"], "iterations");
      if (!out["clip_to_domain"].is_boolean())
        throw ConfigError("clip_to_domain must be a boolean", "clip_to_domain");
      break;
    }
    case Algorithm::nm: {
      check_keys(in, {"atol", "maxiter", "init", "initial_scale"});
      take("atol", 0.005);
      take("maxiter", 100);
      take("init", nullptr);
      take("initial_scale", 0.05);
      if (!(num(out["atol"], "atol") > 0.0))
        throw ConfigError("atol must be > 0", "atol");
      if (uint_field(out["maxiter"], "maxiter") < 1)
        throw ConfigError("maxiter must be >= 1", "maxiter");
      if (!(num(out["initial_scale"], "initial_scale") > 0.0))
        throw ConfigError("initial_scale must be > 0", "initial_scale");
      break;
    }
    case Algorithm::mh:
    case Algorithm::sa: {
      std::set<std::string> keys = {"n_iterations", "proposal_std", "init",
                                    "max_proposal_redraws"};
      if (algo == Algorithm::sa) {
        keys.insert("t0");
        keys.insert("cooling");
      }
      check_keys(in, keys);
      take("n_iterations", 1000);
      take("proposal_std", 0.2);
      take("init", nullptr);
      take("max_proposal_redraws", 1000);
      uint_field(out["n_iterations"], "n_iterations");
      if (!(num(out["proposal_std"], "proposal_std") > 0.0))
        throw ConfigError("proposal_std must be > 0", "proposal_std");
      if (uint_field(out["max_proposal_redraws"], "max_proposal_redraws") < 1)
        throw ConfigError("max_proposal_redraws must be >= 1", "max_proposal_redraws");
      if (algo == Algorithm::sa) {
        take("t0", 100.0);
        take("cooling", 0.95);
        if (!(num(out["t0"], "t0") > 0.0)) throw ConfigError("t0 must be > 0", "t0");
        double c = num(out["cooling"], "cooling");
        if (!(c > 0.0 && c < 1.0))
          throw ConfigError("cooling must be in (0,1)", "cooling");
      }
      break;
    }
    case Algorithm::ea: {
      check_keys(in, {"pop_size", "generations", "mutation_std", "recomb", "mut",
                      "parent_fraction", "replacement_count"});
      take("pop_size", 100);
      take("generations", 10);
      take("mutation_std", 1.0);
      take("recomb", 1);
      take("mut", 1);
      take("parent_fraction", 0.25);
      take("replacement_count", 0);
      std::size_t pop = uint_field(out["pop_size"], "pop_size");
      if (pop < 2) throw ConfigError("pop_size must be >= 2", "pop_size");
      uint_field(out["generations"], "generations");
      if (num(out["mutation_std"], "mutation_std") < 0.0)
        throw ConfigError("mutation_std must be >= 0", "mutation_std");
      for (const char* flag : {"recomb", "mut"}) {
        double d = num(out[flag], flag);
        if (d != 0.0 && d != 1.0)
          throw ConfigError(std::string(flag) + " must be 0 or 1", flag);
      }
      double frac = num(out["parent_fraction"], "parent_fraction");
      if (!(frac > 0.0 && frac <= 1.0))
        throw ConfigError("parent_fraction must be in (0,1]", "parent_fraction");
      std::size_t repl = uint_field(out["replacement_count"], "replacement_count");
      if (repl >= pop)
        throw ConfigError("replacement_count must be < pop_size", "replacement_count");
      break;
    }
  }

  ObjectiveId init_domain = algo == Algorithm::ea ? ObjectiveId::repressilator
                           : algo == Algorithm::gd ? ObjectiveId::bohachevsky
                           : algo == Algorithm::nm ? ObjectiveId::booth
                                                   : ObjectiveId::mh_density;
  if (algo != Algorithm::ea) validate_init(out, init_domain);
  return out;
}

json to_json(const RunRecord& record) {
  json events = json::array();
  for (const Event& e : record.events)
    events.push_back(json{{"iteration", e.iteration},
                          {"kind", to_string(e.kind)},
                          {"payload", e.payload}});
  return json{{"schema_version", record.schema_version},
              {"run_id", record.run_id},
              {"algorithm", to_string(record.algorithm)},
              {"objective", to_string(record.objective)},
              {"master_seed", record.master_seed},
              {"config", record.config},
              {"events", events},
              {"summary", record.summary}};
}

RunRecord record_from_json(const json& j) {
  RunRecord record;
  record.schema_version = j.at("schema_version").get<int>();
  record.run_id = j.at("run_id").get<std::string>();
  auto algo = parse_algorithm(j.at("algorithm").get<std::string>());
  if (!algo) throw std::invalid_argument("record: unknown algorithm");
  record.algorithm = *algo;
  auto objective = parse_objective(j.at("objective").get<std::string>());
  if (!objective) throw std::invalid_argument("record: unknown objective");
  record.objective = *objective;
  record.master_seed = j.at("master_seed").get<std::uint64_t>();
  record.config = j.at("config");
  for (const json& e : j.at("events"))
    record.events.push_back({e.at("iteration").get<std::int64_t>(),
                             parse_event_kind(e.at("kind").get<std::string>()),
                             e.at("payload")});
  record.summary = j.at("summary");
  return record;
}

json strip_timestamps(json record) {
  if (record.contains("summary") && record["summary"].is_object())
    record["summary"].erase("wall_time_ms");
  return record;
}

RunRecord run_experiment(Algorithm algo, ObjectiveId objective, const json& config,
                         std::uint64_t master_seed,
                         const std::vector<ScheduleEntry>& schedule,
                         const std::string& adjustment_source) {
  if (!valid_pairing(algo, objective))
    throw ConfigError(std::string("invalid pairing ") + to_string(algo) + "/" +
                          to_string(objective),
                      "objective");
  auto start = std::chrono::steady_clock::now();

  RunRecord record;
  record.algorithm = algo;
  record.objective = objective;
  record.master_seed = master_seed;
  record.config = normalize_config(algo, config);
  record.run_id = std::string(to_string(algo)) + "-" + to_string(objective) + "-s" +
                  std::to_string(master_seed);

  std::unique_ptr<Runner> runner = make_runner(algo, objective, record.config, master_seed);
  while (!runner->finished()) {
    const std::int64_t boundary = runner->next_iteration();
    for (const ScheduleEntry& entry : schedule) {
      if (entry.iteration != boundary || !runner->has_param(entry.parameter)) continue;
      double old_value = runner->get_param(entry.parameter);
      runner->set_param(entry.parameter, entry.value);
      record.events.push_back({boundary, EventKind::adjustment,
                               json{{"parameter", entry.parameter},
                                    {"old", old_value},
                                    {"new", entry.value},
                                    {"source", adjustment_source}}});
    }
    if (auto ev = runner->step()) record.events.push_back(std::move(*ev));
  }

  record.summary = runner->summary();
  auto elapsed = std::chrono::steady_clock::now() - start;
  record.summary["wall_time_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return record;
}

}  // namespace otf
