#include "otf/service.hpp"

#include <chrono>
#include <condition_variable>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include <httplib.h>

#include "otf/runner.hpp"

namespace otf {

namespace {

json error_body(const std::string& message, const std::string& field = {}) {
  json body{{"error", message}};
  if (!field.empty()) body["field"] = field;
  return body;
}

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

}  // namespace

struct TuningService::Impl {
  struct LiveRun {
    std::string id;
    Algorithm algorithm;
    ObjectiveId objective;
    json config;
    std::uint64_t seed = 0;
    int tick_ms = 0;

    std::mutex m;
    std::condition_variable cv;
    std::string state = "created";
    bool stop_requested = false;
    std::map<std::string, double> mailbox;  // last write per parameter wins
    std::vector<Event> log;
    std::unique_ptr<Runner> runner;
    std::int64_t next_boundary = 0;  // boundary of the next mailbox drain
    std::int64_t trace_count = 0;    // trace events appended so far
    json summary;
    std::chrono::steady_clock::time_point started_at;
    std::thread worker;

    // State markers carry the count of trace events already logged, which
    // keeps event iterations non-decreasing in log order.
    void append_state_event_locked(const std::string& new_state) {
      state = new_state;
      log.push_back({trace_count, EventKind::state, json{{"state", new_state}}});
    }
  };

  ServiceConfig cfg;
  httplib::Server server;
  std::thread server_thread;

  std::mutex registry_m;
  std::map<std::string, std::shared_ptr<LiveRun>> runs;
  std::uint64_t next_id = 1;

  explicit Impl(ServiceConfig c) : cfg(std::move(c)) { routes(); }

  std::shared_ptr<LiveRun> find(const std::string& id) {
    std::lock_guard lk(registry_m);
    auto it = runs.find(id);
    return it == runs.end() ? nullptr : it->second;
  }

  // Drains the mailbox at the current boundary, recording one adjustment
  // event per parameter. Caller holds run.m.
  void drain_mailbox_locked(LiveRun& run) {
    const std::int64_t boundary = run.runner->next_iteration();
    for (const auto& [param, value] : run.mailbox) {
      double old_value = run.runner->get_param(param);
      if (old_value == value) continue;
      run.runner->set_param(param, value);
      run.log.push_back({boundary, EventKind::adjustment,
                         json{{"parameter", param},
                              {"old", old_value},
                              {"new", value},
                              {"source", "human"}}});
    }
    run.mailbox.clear();
  }

  void seal_locked(LiveRun& run, const std::string& final_state) {
    drain_mailbox_locked(run);
    run.summary = run.runner->summary();
    auto elapsed = std::chrono::steady_clock::now() - run.started_at;
    run.summary["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    run.append_state_event_locked(final_state);
    run.cv.notify_all();
  }

  void worker_loop(const std::shared_ptr<LiveRun>& run) {
    for (;;) {
      {
        std::unique_lock lk(run->m);
        run->cv.wait(lk, [&] { return run->state != "paused" || run->stop_requested; });
        if (run->stop_requested) {
          seal_locked(*run, "stopped");
          return;
        }
        if (run->runner->finished()) {
          seal_locked(*run, "finished");
          return;
        }
        drain_mailbox_locked(*run);
        run->next_boundary = run->runner->next_iteration() + 1;
      }
      // the step itself runs unlocked; only the worker advances the runner
      std::optional<Event> ev = run->runner->step();
      {
        std::lock_guard lk(run->m);
        if (ev) {
          run->log.push_back(std::move(*ev));
          ++run->trace_count;
        }
      }
      if (run->tick_ms > 0)
        std::this_thread::sleep_for(std::chrono::milliseconds(run->tick_ms));
    }
  }

  void routes() {
    server.Get("/api/objectives", [](const httplib::Request&, httplib::Response& res) {
      json out = json::array();
      for (ObjectiveId id :
           {ObjectiveId::bohachevsky, ObjectiveId::booth, ObjectiveId::mh_density,
            ObjectiveId::sa_density, ObjectiveId::repressilator}) {
        const BoxDomain& box = objective_domain(id);
        out.push_back(json{{"id", to_string(id)},
                           {"dimension", objective_dimension(id)},
                           {"domain", json{{"lower", box.lower}, {"upper", box.upper}}}});
      }
      reply(res, 200, out);
    });

    server.Post("/api/runs", [this](const httplib::Request& req, httplib::Response& res) {
      json body;
      try {
        body = json::parse(req.body);
      } catch (const std::exception&) {
        return reply(res, 400, error_body("request body is not valid JSON"));
      }
      auto algo = parse_algorithm(body.value("algorithm", ""));
      if (!algo) return reply(res, 400, error_body("unknown algorithm", "algorithm"));
      auto objective = parse_objective(body.value("objective", ""));
      if (!objective) return reply(res, 400, error_body("unknown objective", "objective"));
      if (!valid_pairing(*algo, *objective))
        return reply(res, 400,
                     error_body(std::string("invalid pairing ") + to_string(*algo) +
                                    "/" + to_string(*objective),
                                "objective"));
      int tick_ms = cfg.default_tick_ms;
      if (body.contains("tick_ms")) {
        if (!body["tick_ms"].is_number_integer() || body["tick_ms"].get<int>() < 0)
          return reply(res, 400, error_body("tick_ms must be >= 0", "tick_ms"));
        tick_ms = body["tick_ms"].get<int>();
      }
      auto run = std::make_shared<LiveRun>();
      try {
        run->config = normalize_config(*algo, body.value("config", json::object()));
        run->seed = body.value("seed", 0ULL);
        run->runner = make_runner(*algo, *objective, run->config, run->seed);
      } catch (const ConfigError& e) {
        return reply(res, 400, error_body(e.what(), e.field));
      } catch (const std::exception& e) {
        return reply(res, 400, error_body(e.what()));
      }
      run->algorithm = *algo;
      run->objective = *objective;
      run->tick_ms = tick_ms;
      {
        std::lock_guard lk(registry_m);
        run->id = "run-" + std::to_string(next_id++);
        runs[run->id] = run;
      }
      reply(res, 201, json{{"run_id", run->id}});
    });

    server.Get("/api/runs", [this](const httplib::Request&, httplib::Response& res) {
      json out = json::array();
      std::lock_guard lk(registry_m);
      for (const auto& [id, run] : runs) {
        std::lock_guard rlk(run->m);
        out.push_back(json{{"run_id", id},
                           {"state", run->state},
                           {"algorithm", to_string(run->algorithm)},
                           {"objective", to_string(run->objective)},
                           {"event_count", run->log.size()}});
      }
      reply(res, 200, out);
    });

    server.Get(R"(/api/runs/([^/]+))", [this](const httplib::Request& req,
                                              httplib::Response& res) {
      auto run = find(req.matches[1]);
      if (!run) return reply(res, 404, error_body("unknown run"));
      std::lock_guard lk(run->m);
      json out{{"run_id", run->id},
               {"state", run->state},
               {"algorithm", to_string(run->algorithm)},
               {"objective", to_string(run->objective)},
               {"seed", run->seed},
               {"tick_ms", run->tick_ms},
               {"config", run->config},
               {"event_count", run->log.size()}};
      if (!run->summary.is_null()) out["summary"] = run->summary;
      reply(res, 200, out);
    });

    server.Post(R"(/api/runs/([^/]+)/control)", [this](const httplib::Request& req,
                                                       httplib::Response& res) {
      auto run = find(req.matches[1]);
      if (!run) return reply(res, 404, error_body("unknown run"));
      json body = json::parse(req.body, nullptr, false);
      std::string action = body.is_object() ? body.value("action", "") : "";

      std::unique_lock lk(run->m);
      const std::string& state = run->state;
      if (action == "start") {
        if (state != "created")
          return reply(res, 409, error_body("start is only legal from created"));
        run->started_at = std::chrono::steady_clock::now();
        run->append_state_event_locked("running");
        auto self = run;
        run->worker = std::thread([this, self] { worker_loop(self); });
      } else if (action == "pause") {
        if (state != "running")
          return reply(res, 409, error_body("pause is only legal from running"));
        run->append_state_event_locked("paused");
      } else if (action == "resume") {
        if (state != "paused")
          return reply(res, 409, error_body("resume is only legal from paused"));
        run->append_state_event_locked("running");
        run->cv.notify_all();
      } else if (action == "stop") {
        if (state != "running" && state != "paused")
          return reply(res, 409, error_body("stop is only legal from running or paused"));
        run->stop_requested = true;
        run->cv.notify_all();
        // the worker seals the log at the next boundary
        run->cv.wait(lk, [&] { return run->state == "stopped"; });
      } else {
        return reply(res, 400, error_body("unknown action", "action"));
      }
      reply(res, 200, json{{"state", run->state}});
    });

    server.Post(R"(/api/runs/([^/]+)/params)", [this](const httplib::Request& req,
                                                      httplib::Response& res) {
      auto run = find(req.matches[1]);
      if (!run) return reply(res, 404, error_body("unknown run"));
      json body = json::parse(req.body, nullptr, false);
      if (!body.is_object() || !body.contains("parameter") || !body.contains("value"))
        return reply(res, 400, error_body("expected {parameter, value}"));
      std::string parameter = body["parameter"].get<std::string>();
      if (!body["value"].is_number())
        return reply(res, 400, error_body("value must be a number", "value"));
      double value = body["value"].get<double>();

      std::lock_guard lk(run->m);
      if (run->state != "running" && run->state != "paused")
        return reply(res, 409, error_body("run is not adjustable in state " + run->state));
      if (!run->runner->has_param(parameter))
        return reply(res, 400,
                     error_body("unknown parameter " + parameter + " for " +
                                    to_string(run->algorithm),
                                "parameter"));
      if (parameter == "mutation_std") {
        if (value < 0.0)
          return reply(res, 400, error_body("mutation_std must be >= 0", parameter));
      } else if (parameter == "cooling") {
        if (!(value > 0.0 && value < 1.0))
          return reply(res, 400, error_body("cooling must be in (0,1)", parameter));
      } else if (!(value > 0.0)) {
        return reply(res, 400, error_body(parameter + " must be > 0", parameter));
      }
      run->mailbox[parameter] = value;
      reply(res, 200, json{{"applied_at_iteration", run->next_boundary}});
    });

    server.Get(R"(/api/runs/([^/]+)/events)", [this](const httplib::Request& req,
                                                     httplib::Response& res) {
      auto run = find(req.matches[1]);
      if (!run) return reply(res, 404, error_body("unknown run"));
      std::size_t cursor = 0;
      if (req.has_param("cursor")) {
        try {
          long long c = std::stoll(req.get_param_value("cursor"));
          if (c < 0) throw std::invalid_argument("negative");
          cursor = static_cast<std::size_t>(c);
        } catch (const std::exception&) {
          return reply(res, 400, error_body("cursor must be a non-negative integer", "cursor"));
        }
      }
      constexpr std::size_t kBatch = 1000;
      json events = json::array();
      std::lock_guard lk(run->m);
      std::size_t end = std::min(run->log.size(), cursor + kBatch);
      for (std::size_t i = cursor; i < end; ++i) {
        const Event& e = run->log[i];
        events.push_back(json{{"iteration", e.iteration},
                              {"kind", to_string(e.kind)},
                              {"payload", e.payload}});
      }
      std::size_t next_cursor = cursor >= run->log.size() ? cursor : end;
      reply(res, 200, json{{"events", std::move(events)},
                           {"next_cursor", next_cursor},
                           {"state", run->state}});
    });

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty())
        res.set_content(error_body("unknown route").dump(), "application/json");
    });

    if (!cfg.static_dir.empty()) server.set_mount_point("/", cfg.static_dir);
  }

  void shutdown() {
    server.stop();
    if (server_thread.joinable()) server_thread.join();
    std::vector<std::shared_ptr<LiveRun>> all;
    {
      std::lock_guard lk(registry_m);
      for (auto& [id, run] : runs) all.push_back(run);
    }
    for (auto& run : all) {
      {
        std::lock_guard lk(run->m);
        run->stop_requested = true;
        run->cv.notify_all();
      }
      if (run->worker.joinable()) run->worker.join();
    }
  }
};

TuningService::TuningService(ServiceConfig cfg) : impl_(std::make_unique<Impl>(std::move(cfg))) {}

TuningService::~TuningService() { impl_->shutdown(); }

bool TuningService::run() { return impl_->server.listen("0.0.0.0", impl_->cfg.port); }

int TuningService::start_background() {
  int port = impl_->server.bind_to_any_port("127.0.0.1");
  impl_->server_thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void TuningService::stop() { impl_->shutdown(); }

}  // namespace otf
