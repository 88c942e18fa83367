#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace otf {

struct ServiceConfig {
  int port = 8080;
  int default_tick_ms = 20;   // per-iteration delay for served runs
  std::string static_dir;     // console assets; empty disables
};

/// Hosts live optimization/sampling runs behind an HTTP+JSON API:
///   POST /api/runs                      create a run
///   GET  /api/runs                      list runs
///   GET  /api/runs/{id}                 run detail
///   POST /api/runs/{id}/control        {"action": start|pause|resume|stop}
///   POST /api/runs/{id}/params         {"parameter": ..., "value": ...}
///   GET  /api/runs/{id}/events?cursor=N incremental event log
///   GET  /api/objectives                ids, dimensions, domains
/// Parameter overrides land in a mailbox the worker drains exactly once
/// between consecutive trace events, so adjustments apply at iteration
/// boundaries and every application is witnessed by an adjustment event.
class TuningService {
 public:
  explicit TuningService(ServiceConfig cfg = {});
  ~TuningService();

  TuningService(const TuningService&) = delete;
  TuningService& operator=(const TuningService&) = delete;

  /// Serves on the configured port until stop(). False when binding fails.
  bool run();

  /// Binds an ephemeral port and serves in the background; returns the
  /// bound port. Test support.
  int start_background();

  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace otf
