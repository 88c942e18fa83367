#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "otf/exporters.hpp"
#include "otf/record.hpp"
#include "otf/service.hpp"
#include "otf/svg.hpp"

namespace {

using otf::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct AlgoFlags {
  double alpha = 1e-3;
  std::size_t iters = 10;
  double atol = 0.005;
  std::size_t maxiter = 100;
  std::size_t n = 1000;
  double std_dev = 0.2;
  bool std_given = false;  // ea defaults to 1.0 when --std is absent
  double t0 = 100.0;
  double cool = 0.95;
  std::size_t pop = 100;
  std::size_t gens = 10;
  int recomb = 1;
  int mut = 1;
};

void add_algo_flags(CLI::App* cmd, AlgoFlags& f) {
  cmd->add_option("--alpha", f.alpha, "gd step size");
  cmd->add_option("--iters", f.iters, "gd iteration count");
  cmd->add_option("--atol", f.atol, "nm convergence tolerance");
  cmd->add_option("--maxiter", f.maxiter, "nm iteration cap");
  cmd->add_option("--n", f.n, "chain iteration count");
  cmd->add_option("--std", f.std_dev, "proposal / mutation standard deviation")
      ->each([&f](const std::string&) { f.std_given = true; });
  cmd->add_option("--t0", f.t0, "sa initial temperature");
  cmd->add_option("--cool", f.cool, "sa cooling constant");
  cmd->add_option("--pop", f.pop, "ea population size");
  cmd->add_option("--gens", f.gens, "ea generation count");
  cmd->add_option("--recomb", f.recomb, "ea recombination flag (0|1)");
  cmd->add_option("--mut", f.mut, "ea mutation flag (0|1)");
}

json config_from_flags(otf::Algorithm algo, const AlgoFlags& f) {
  switch (algo) {
    case otf::Algorithm::gd:
      return json{{"alpha", f.alpha}, {"iterations", f.iters}};
    case otf::Algorithm::nm:
      return json{{"atol", f.atol}, {"maxiter", f.maxiter}};
    case otf::Algorithm::mh:
      return json{{"n_iterations", f.n}, {"proposal_std", f.std_dev}};
    case otf::Algorithm::sa:
      return json{{"n_iterations", f.n},
                  {"proposal_std", f.std_dev},
                  {"t0", f.t0},
                  {"cooling", f.cool}};
    case otf::Algorithm::ea:
      return json{{"pop_size", f.pop},
                  {"generations", f.gens},
                  {"mutation_std", f.std_given ? f.std_dev : 1.0},
                  {"recomb", f.recomb},
                  {"mut", f.mut}};
  }
  return {};
}

struct Parsed {
  otf::Algorithm algorithm;
  otf::ObjectiveId objective;
};

std::optional<Parsed> parse_pairing(const std::string& algo_name,
                                    const std::string& objective_name) {
  auto algo = otf::parse_algorithm(algo_name);
  if (!algo) {
    std::cerr << "error: unknown --algo value '" << algo_name << "'\n";
    return std::nullopt;
  }
  auto objective = otf::parse_objective(objective_name);
  if (!objective) {
    std::cerr << "error: unknown --objective value '" << objective_name << "'\n";
    return std::nullopt;
  }
  if (!otf::valid_pairing(*algo, *objective)) {
    std::cerr << "error: --objective " << objective_name << " is not valid for --algo "
              << algo_name << "\n";
    return std::nullopt;
  }
  return Parsed{*algo, *objective};
}

int cmd_run(const std::string& algo_name, const std::string& objective_name,
            const AlgoFlags& flags, std::uint64_t seed, const std::string& out) {
  auto pairing = parse_pairing(algo_name, objective_name);
  if (!pairing) return kExitUsage;
  try {
    otf::RunRecord record = otf::run_experiment(
        pairing->algorithm, pairing->objective,
        config_from_flags(pairing->algorithm, flags), seed);
    otf::export_record(record, out);
  } catch (const otf::ConfigError& e) {
    std::cerr << "error: --" << e.field << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_tune(const std::string& algo_name, const std::string& objective_name,
             std::size_t reps, std::uint64_t seed, const std::string& out) {
  auto pairing = parse_pairing(algo_name, objective_name);
  if (!pairing) return kExitUsage;
  try {
    otf::TuneTable table =
        otf::tune(pairing->algorithm, pairing->objective, reps,
                  otf::default_controller_state(pairing->algorithm), seed);
    otf::write_file_atomic(out, otf::tune_table_csv(table));
    std::filesystem::path log_path = std::filesystem::path(out);
    log_path.replace_extension(".log.jsonl");
    otf::write_file_atomic(log_path, otf::tune_log_jsonl(table));
    std::cout << "chosen: repetition " << table.chosen_repetition << " alpha "
              << otf::format_real(table.chosen_alpha) << " iterations "
              << table.chosen_iterations << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_report(const std::string& in, const std::string& format, const std::string& out) {
  try {
    otf::RunRecord record = otf::import_record(in);
    if (format == "json") {
      otf::export_record(record, out);
    } else if (format == "csv") {
      otf::write_file_atomic(out, otf::record_report_csv(record));
    } else {
      std::cerr << "error: --format must be csv or json\n";
      return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_plot(const std::string& in, const std::string& kind, const std::string& out) {
  try {
    otf::RunRecord record = otf::import_record(in);
    if (kind == "loss" || kind == "fitness") {
      otf::CurveData data;
      const char* key = kind == "loss" ? "loss" : "best_fitness";
      const char* fallback = kind == "loss" ? "best_value" : nullptr;
      for (const otf::Event& e : record.events) {
        if (e.kind != otf::EventKind::trace) continue;
        if (e.payload.contains(key))
          data.ys.push_back(e.payload.at(key).get<double>());
        else if (fallback && e.payload.contains(fallback))
          data.ys.push_back(e.payload.at(fallback).get<double>());
      }
      otf::render_svg_file(kind == "loss" ? otf::SvgKind::loss_curve
                                          : otf::SvgKind::fitness_curve,
                           data, out);
    } else if (kind == "temperature") {
      otf::CurveData data;
      for (const otf::Event& e : record.events)
        if (e.kind == otf::EventKind::trace && e.payload.contains("temperature"))
          data.ys.push_back(e.payload.at("temperature").get<double>());
      otf::render_svg_file(otf::SvgKind::temperature_curve, data, out);
    } else if (kind == "heatmap") {
      std::vector<otf::Point> accepted;
      for (const otf::Event& e : record.events)
        if (e.kind == otf::EventKind::trace && e.payload.contains("accepted") &&
            e.payload.at("accepted").get<bool>())
          accepted.push_back(e.payload.at("candidate").get<otf::Point>());
      constexpr std::size_t bins = 30;
      otf::HistGrid hist = otf::density_histogram(
          accepted, otf::objective_domain(record.objective), bins);
      otf::HeatData data{bins, bins, {}};
      data.values.reserve(hist.counts.size());
      for (std::size_t c : hist.counts) data.values.push_back(static_cast<double>(c));
      otf::render_svg_file(otf::SvgKind::heat_grid, data, out);
    } else {
      std::cerr << "error: --kind must be loss, temperature, heatmap or fitness\n";
      return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_serve(int port, int tick_ms, const std::string& static_dir) {
  otf::ServiceConfig cfg;
  cfg.port = port;
  cfg.default_tick_ms = tick_ms;
  cfg.static_dir = static_dir;
  otf::TuningService service(cfg);
  std::cout << "serving on port " << port << " (tick " << tick_ms << " ms)\n";
  if (!service.run()) {
    std::cerr << "error: cannot bind port " << port << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimization and sampling toolkit with on-the-fly parameter tuning"};
  app.require_subcommand(1);

  std::string algo_name, objective_name, out, in, format, kind, static_dir;
  std::uint64_t seed = 0;
  std::size_t reps = 20;
  int port = 8080;
  int tick_ms = 20;
  AlgoFlags flags;

  CLI::App* run = app.add_subcommand("run", "run one experiment and save its record");
  run->add_option("--algo", algo_name, "gd|nm|mh|sa|ea")->required();
  run->add_option("--objective", objective_name, "objective id")->required();
  run->add_option("--seed", seed, "master seed");
  run->add_option("--out", out, "output record path (json)")->required();
  add_algo_flags(run, flags);

  CLI::App* tune = app.add_subcommand("tune", "run the tuning loop for an algorithm");
  tune->add_option("--algo", algo_name, "gd|nm|mh|sa|ea")->required();
  tune->add_option("--objective", objective_name, "objective id")->required();
  tune->add_option("--reps", reps, "repetition count");
  tune->add_option("--seed", seed, "master seed");
  tune->add_option("--out", out, "output table path (csv)")->required();

  CLI::App* report = app.add_subcommand("report", "convert a run record");
  report->add_option("--in", in, "record path (json)")->required();
  report->add_option("--format", format, "csv|json")->required();
  report->add_option("--out", out, "output path")->required();

  CLI::App* plot = app.add_subcommand("plot", "render a run record as svg");
  plot->add_option("--in", in, "record path (json)")->required();
  plot->add_option("--kind", kind, "loss|temperature|heatmap|fitness")->required();
  plot->add_option("--out", out, "output svg path")->required();

  CLI::App* serve = app.add_subcommand("serve", "host the live tuning API");
  serve->add_option("--port", port, "listen port");
  serve->add_option("--tick-ms", tick_ms, "per-iteration delay for served runs");
  serve->add_option("--static-dir", static_dir, "console asset directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (run->parsed()) return cmd_run(algo_name, objective_name, flags, seed, out);
  if (tune->parsed()) return cmd_tune(algo_name, objective_name, reps, seed, out);
  if (report->parsed()) return cmd_report(in, format, out);
  if (plot->parsed()) return cmd_plot(in, kind, out);
  if (serve->parsed()) return cmd_serve(port, tick_ms, static_dir);
  return kExitUsage;
}
