#include <doctest.h>

#include <chrono>
#include <thread>

#include <httplib.h>

#include "otf/record.hpp"
#include "otf/service.hpp"

using namespace otf;

namespace {

struct ServiceFixture {
  TuningService service;
  int port;
  httplib::Client client;

  ServiceFixture()
      : service(ServiceConfig{0, 0, ""}),
        port(service.start_background()),
        client("127.0.0.1", port) {
    client.set_connection_timeout(5);
    client.set_read_timeout(10);
  }

  json post(const std::string& path, const json& body, int expected_status) {
    auto res = client.Post(path, body.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == expected_status);
    return res->body.empty() ? json() : json::parse(res->body);
  }

  json get(const std::string& path, int expected_status = 200) {
    auto res = client.Get(path);
    REQUIRE(res);
    CHECK(res->status == expected_status);
    return res->body.empty() ? json() : json::parse(res->body);
  }

  std::string create_gd_run(std::size_t iterations, int tick_ms = 0,
                            std::uint64_t seed = 42) {
    json body{{"algorithm", "gd"},
              {"objective", "bohachevsky"},
              {"seed", seed},
              {"tick_ms", tick_ms},
              {"config", json{{"alpha", 0.001}, {"iterations", iterations}}}};
    json out = post("/api/runs", body, 201);
    return out.at("run_id").get<std::string>();
  }

  json wait_until_state(const std::string& id, const std::string& want,
                        int timeout_ms = 10000) {
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::milliseconds(timeout_ms);
    for (;;) {
      json detail = get("/api/runs/" + id);
      if (detail.at("state") == want) return detail;
      REQUIRE(std::chrono::steady_clock::now() < deadline);
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }

  std::vector<json> poll_all_events(const std::string& id) {
    std::vector<json> events;
    std::size_t cursor = 0;
    for (;;) {
      json batch = get("/api/runs/" + id + "/events?cursor=" + std::to_string(cursor));
      for (const json& e : batch.at("events")) events.push_back(e);
      std::size_t next = batch.at("next_cursor").get<std::size_t>();
      if (next == cursor) break;
      cursor = next;
    }
    return events;
  }
};

}  // namespace

TEST_CASE("objectives endpoint lists ids, dimensions and domains") {
  ServiceFixture fx;
  json out = fx.get("/api/objectives");
  REQUIRE(out.is_array());
  REQUIRE(out.size() == 5);
  CHECK(out[0].at("id") == "bohachevsky");
  CHECK(out[4].at("dimension") == 4);
  CHECK(out[4].at("domain").at("lower")[3] == 500.0);
}

TEST_CASE("create validates pairing and config") {
  ServiceFixture fx;
  fx.post("/api/runs", json{{"algorithm", "gd"}, {"objective", "booth"}}, 400);
  json err = fx.post("/api/runs",
                     json{{"algorithm", "ea"},
                          {"objective", "repressilator"},
                          {"config", json{{"pop_size", 1}}}},
                     400);
  CHECK(err.at("field") == "pop_size");
  fx.post("/api/runs", json{{"algorithm", "zz"}, {"objective", "booth"}}, 400);

  std::string a = fx.create_gd_run(5);
  std::string b = fx.create_gd_run(5);
  CHECK(a != b);
}

TEST_CASE("unknown routes and runs return 404 json errors") {
  ServiceFixture fx;
  json missing = fx.get("/api/runs/run-999", 404);
  CHECK(missing.at("error") == "unknown run");
  fx.get("/api/nope", 404);
}

TEST_CASE("run listing") {
  ServiceFixture fx;
  CHECK(fx.get("/api/runs").empty());
  std::string a = fx.create_gd_run(5);
  std::string b = fx.create_gd_run(5);
  json list = fx.get("/api/runs");
  REQUIRE(list.size() == 2);
  CHECK(list[0].at("run_id") == a);
  CHECK(list[0].at("state") == "created");
  CHECK(list[1].at("run_id") == b);
  CHECK(list[0].at("algorithm") == "gd");
}

TEST_CASE("lifecycle and events of a finished run") {
  ServiceFixture fx;
  std::string id = fx.create_gd_run(10);

  json detail = fx.get("/api/runs/" + id);
  CHECK(detail.at("state") == "created");
  CHECK(detail.at("config").at("alpha") == 0.001);

  json started = fx.post("/api/runs/" + id + "/control", json{{"action", "start"}}, 200);
  CHECK(started.at("state") == "running");
  fx.wait_until_state(id, "finished");

  std::vector<json> events = fx.poll_all_events(id);
  REQUIRE(!events.empty());
  // running marker first, then the init trace event
  CHECK(events[0].at("kind") == "state");
  CHECK(events[0].at("payload").at("state") == "running");
  CHECK(events[1].at("kind") == "trace");
  CHECK(events[1].at("iteration") == 0);
  CHECK(events.back().at("kind") == "state");
  CHECK(events.back().at("payload").at("state") == "finished");

  std::size_t traces = 0;
  std::int64_t prev = -1;
  for (const json& e : events)
    if (e.at("kind") == "trace") {
      ++traces;
      std::int64_t it = e.at("iteration").get<std::int64_t>();
      CHECK(it > prev);  // strictly increasing trace iterations
      prev = it;
    }
  CHECK(traces == 11);

  // cursor at the end returns an empty batch with the same cursor
  json tail = fx.get("/api/runs/" + id + "/events?cursor=" + std::to_string(events.size()));
  CHECK(tail.at("events").empty());
  CHECK(tail.at("next_cursor").get<std::size_t>() == events.size());

  // finished runs reject control and params
  fx.post("/api/runs/" + id + "/control", json{{"action", "pause"}}, 409);
  fx.post("/api/runs/" + id + "/params",
          json{{"parameter", "alpha"}, {"value", 0.1}}, 409);
}

TEST_CASE("illegal transitions are 409") {
  ServiceFixture fx;
  std::string id = fx.create_gd_run(5);
  fx.post("/api/runs/" + id + "/control", json{{"action", "pause"}}, 409);
  fx.post("/api/runs/" + id + "/control", json{{"action", "resume"}}, 409);
  fx.post("/api/runs/" + id + "/control", json{{"action", "stop"}}, 409);
  fx.post("/api/runs/" + id + "/control", json{{"action", "bogus"}}, 400);
  fx.post("/api/runs/" + id + "/control", json{{"action", "start"}}, 200);
  fx.wait_until_state(id, "finished");
  fx.post("/api/runs/" + id + "/control", json{{"action", "start"}}, 409);
}

TEST_CASE("event batches cap at one thousand") {
  ServiceFixture fx;
  std::string id = fx.create_gd_run(1500);  // 1501 trace events + markers
  fx.post("/api/runs/" + id + "/control", json{{"action", "start"}}, 200);
  fx.wait_until_state(id, "finished");
  json first = fx.get("/api/runs/" + id + "/events?cursor=0");
  CHECK(first.at("events").size() == 1000);
  CHECK(first.at("next_cursor") == 1000);
  json rest = fx.get("/api/runs/" + id + "/events?cursor=1000");
  CHECK(rest.at("events").size() >= 503);  // remainder plus state markers
  fx.get("/api/runs/" + id + "/events?cursor=-5", 400);
}

TEST_CASE("stop seals the log") {
  ServiceFixture fx;
  std::string id = fx.create_gd_run(100000, 1);
  fx.post("/api/runs/" + id + "/control", json{{"action", "start"}}, 200);
  std::this_thread::sleep_for(std::chrono::milliseconds(30));
  json stopped = fx.post("/api/runs/" + id + "/control", json{{"action", "stop"}}, 200);
  CHECK(stopped.at("state") == "stopped");
  std::vector<json> events = fx.poll_all_events(id);
  CHECK(events.back().at("kind") == "state");
  CHECK(events.back().at("payload").at("state") == "stopped");
  std::size_t event_count = events.size();
  std::this_thread::sleep_for(std::chrono::milliseconds(20));
  CHECK(fx.poll_all_events(id).size() == event_count);  // no growth after sealing
}

TEST_CASE("pause gates the worker and params validate per algorithm") {
  ServiceFixture fx;
  std::string id = fx.create_gd_run(2000, 1);
  fx.post("/api/runs/" + id + "/control", json{{"action", "start"}}, 200);
  fx.post("/api/runs/" + id + "/control", json{{"action", "pause"}}, 200);

  json n1 = fx.get("/api/runs/" + id);
  std::this_thread::sleep_for(std::chrono::milliseconds(50));
  json n2 = fx.get("/api/runs/" + id);
  // at most the in-flight event lands after the pause
  CHECK(n2.at("event_count").get<std::size_t>() -
            n1.at("event_count").get<std::size_t>() <=
        1);

  // wrong parameter for the algorithm
  json err = fx.post("/api/runs/" + id + "/params",
                     json{{"parameter", "proposal_std"}, {"value", 0.5}}, 400);
  CHECK(err.at("field") == "parameter");
  fx.post("/api/runs/" + id + "/params",
          json{{"parameter", "alpha"}, {"value", -1.0}}, 400);

  // paused runs accept overrides; the ack names the resume boundary
  json ack = fx.post("/api/runs/" + id + "/params",
                     json{{"parameter", "alpha"}, {"value", 0.0005}}, 200);
  std::int64_t applied_at = ack.at("applied_at_iteration").get<std::int64_t>();

  fx.post("/api/runs/" + id + "/control", json{{"action", "resume"}}, 200);
  fx.wait_until_state(id, "finished");

  std::vector<json> events = fx.poll_all_events(id);
  bool seen = false;
  for (const json& e : events)
    if (e.at("kind") == "adjustment") {
      seen = true;
      CHECK(e.at("payload").at("parameter") == "alpha");
      CHECK(e.at("payload").at("old") == 0.001);
      CHECK(e.at("payload").at("new") == 0.0005);
      CHECK(e.at("payload").at("source") == "human");
      CHECK(e.at("iteration").get<std::int64_t>() >= applied_at);
    }
  CHECK(seen);
}

TEST_CASE("last write wins for overrides before one boundary") {
  ServiceFixture fx;
  std::string id = fx.create_gd_run(3000, 1);
  fx.post("/api/runs/" + id + "/control", json{{"action", "start"}}, 200);
  fx.post("/api/runs/" + id + "/control", json{{"action", "pause"}}, 200);
  fx.post("/api/runs/" + id + "/params", json{{"parameter", "alpha"}, {"value", 0.002}},
          200);
  fx.post("/api/runs/" + id + "/params", json{{"parameter", "alpha"}, {"value", 0.004}},
          200);
  fx.post("/api/runs/" + id + "/control", json{{"action", "resume"}}, 200);
  fx.wait_until_state(id, "finished");

  std::size_t adjustments = 0;
  for (const json& e : fx.poll_all_events(id))
    if (e.at("kind") == "adjustment") {
      ++adjustments;
      CHECK(e.at("payload").at("new") == 0.004);
    }
  CHECK(adjustments == 1);  // both acknowledged, single application
}

TEST_CASE("live run replays in batch with the recorded schedule") {
  ServiceFixture fx;
  std::string id = fx.create_gd_run(300, 1, 77);
  fx.post("/api/runs/" + id + "/control", json{{"action", "start"}}, 200);
  std::this_thread::sleep_for(std::chrono::milliseconds(40));
  fx.post("/api/runs/" + id + "/control", json{{"action", "pause"}}, 200);
  fx.post("/api/runs/" + id + "/params", json{{"parameter", "alpha"}, {"value", 0.003}},
          200);
  fx.post("/api/runs/" + id + "/control", json{{"action", "resume"}}, 200);
  fx.wait_until_state(id, "finished");

  std::vector<json> events = fx.poll_all_events(id);
  std::vector<ScheduleEntry> schedule;
  std::vector<json> live_trace;
  for (const json& e : events) {
    if (e.at("kind") == "adjustment")
      schedule.push_back({e.at("iteration").get<std::int64_t>(),
                          e.at("payload").at("parameter").get<std::string>(),
                          e.at("payload").at("new").get<double>()});
    if (e.at("kind") == "trace") live_trace.push_back(e);
  }
  REQUIRE(schedule.size() == 1);

  RunRecord replay = run_experiment(
      Algorithm::gd, ObjectiveId::bohachevsky,
      json{{"alpha", 0.001}, {"iterations", 300}}, 77, schedule);
  std::vector<const Event*> replay_trace;
  for (const Event& e : replay.events)
    if (e.kind == EventKind::trace) replay_trace.push_back(&e);

  REQUIRE(live_trace.size() == replay_trace.size());
  for (std::size_t i = 0; i < live_trace.size(); ++i) {
    CHECK(live_trace[i].at("iteration").get<std::int64_t>() == replay_trace[i]->iteration);
    CHECK(live_trace[i].at("payload").dump() == replay_trace[i]->payload.dump());
  }
}

TEST_CASE("adjustment causality") {
  // an override acknowledged at iteration k leaves all earlier trace events
  // untouched: prefix equality against an unadjusted run
  ServiceFixture fx;
  std::string id = fx.create_gd_run(120, 1, 5);
  fx.post("/api/runs/" + id + "/control", json{{"action", "start"}}, 200);
  std::this_thread::sleep_for(std::chrono::milliseconds(30));
  fx.post("/api/runs/" + id + "/control", json{{"action", "pause"}}, 200);
  json ack = fx.post("/api/runs/" + id + "/params",
                     json{{"parameter", "alpha"}, {"value", 0.01}}, 200);
  std::int64_t k = ack.at("applied_at_iteration").get<std::int64_t>();
  fx.post("/api/runs/" + id + "/control", json{{"action", "resume"}}, 200);
  fx.wait_until_state(id, "finished");

  RunRecord plain = run_experiment(Algorithm::gd, ObjectiveId::bohachevsky,
                                   json{{"alpha", 0.001}, {"iterations", 120}}, 5);
  std::vector<const Event*> plain_trace;
  for (const Event& e : plain.events)
    if (e.kind == EventKind::trace) plain_trace.push_back(&e);

  for (const json& e : fx.poll_all_events(id)) {
    if (e.at("kind") != "trace") continue;
    std::int64_t it = e.at("iteration").get<std::int64_t>();
    if (it < k)
      CHECK(e.at("payload").dump() ==
            plain_trace[static_cast<std::size_t>(it)]->payload.dump());
  }
}
