#include "otf/exporters.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace otf {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw std::runtime_error("rename to " + path.string() + " failed: " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void export_record(const RunRecord& record, const std::filesystem::path& path) {
  write_file_atomic(path, to_json(record).dump(2) + "\n");
}

RunRecord import_record(const std::filesystem::path& path) {
  return record_from_json(json::parse(read_file(path)));
}

std::string tune_table_csv(const TuneTable& table) {
  std::string out = "repetition,alpha,iterations,best_loss,verdict\n";
  for (const TuneRow& row : table.rows) {
    out += std::to_string(row.repetition) + ',' + format_real(row.alpha) + ',' +
           std::to_string(row.iterations) + ',' + format_real(row.best_loss) + ',' +
           to_string(row.verdict) + '\n';
  }
  return out;
}

std::string tune_log_jsonl(const TuneTable& table) {
  std::string out;
  for (const TuneRow& row : table.rows) {
    json line{{"kind", "repetition"},
              {"repetition", row.repetition},
              {"alpha", row.alpha},
              {"iterations", row.iterations},
              {"best_loss", row.best_loss},
              {"verdict", to_string(row.verdict)},
              {"evaluations", row.evaluations}};
    out += line.dump() + '\n';
  }
  for (const AdjustmentEvent& e : table.events) {
    json line{{"kind", "adjustment"}, {"repetition", e.repetition},
              {"parameter", e.parameter}, {"old", e.old_value},
              {"new", e.new_value},     {"source", e.source},
              {"reason", e.reason}};
    out += line.dump() + '\n';
  }
  json chosen{{"kind", "chosen"},
              {"repetition", table.chosen_repetition},
              {"alpha", table.chosen_alpha},
              {"iterations", table.chosen_iterations}};
  out += chosen.dump() + '\n';
  return out;
}

std::string nm_results_csv(const std::vector<NmResultRow>& rows) {
  std::string out = "repetition,init_x1,init_x2,atol,maxiter,iterations_used,best_value\n";
  for (const NmResultRow& r : rows) {
    out += std::to_string(r.repetition) + ',' + format_real(r.init_x1) + ',' +
           format_real(r.init_x2) + ',' + format_real(r.atol) + ',' +
           std::to_string(r.maxiter) + ',' + std::to_string(r.iterations_used) + ',' +
           format_real(r.best_value) + '\n';
  }
  return out;
}

std::string sample_runs_csv(const std::vector<SampleRunRow>& rows) {
  std::string out = "repetition,N,accepted,rejected,accepted_pct,mean_alpha\n";
  for (const SampleRunRow& r : rows) {
    out += std::to_string(r.repetition) + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.accepted) + ',' + std::to_string(r.rejected) + ',' +
           format_real(r.accepted_pct) + ',' + format_real(r.mean_alpha) + '\n';
  }
  return out;
}

std::string ea_results_csv(const std::vector<EaResultRow>& rows) {
  std::string out =
      "repetition,pop_size,generations,std,recomb,mut,best_fitness,final_mean_fitness\n";
  for (const EaResultRow& r : rows) {
    out += std::to_string(r.repetition) + ',' + std::to_string(r.pop_size) + ',' +
           std::to_string(r.generations) + ',' + format_real(r.mutation_std) + ',' +
           std::to_string(r.recomb) + ',' + std::to_string(r.mut) + ',' +
           format_real(r.best_fitness) + ',' + format_real(r.final_mean_fitness) + '\n';
  }
  return out;
}

std::string grid_csv(const Grid& grid) {
  std::string out = "x1,x2,value\n";
  for (std::size_t iy = 0; iy < grid.resolution; ++iy)
    for (std::size_t ix = 0; ix < grid.resolution; ++ix)
      out += format_real(grid.node_x1(ix)) + ',' + format_real(grid.node_x2(iy)) +
             ',' + format_real(grid.value(ix, iy)) + '\n';
  return out;
}

std::string histogram_csv(const HistGrid& grid) {
  std::string out = "bin_x,bin_y,count\n";
  for (std::size_t iy = 0; iy < grid.bins; ++iy)
    for (std::size_t ix = 0; ix < grid.bins; ++ix)
      out += std::to_string(ix) + ',' + std::to_string(iy) + ',' +
             std::to_string(grid.count(ix, iy)) + '\n';
  return out;
}

std::string loss_trace_csv(const std::vector<double>& losses) {
  std::string out = "iteration,loss\n";
  for (std::size_t i = 0; i < losses.size(); ++i)
    out += std::to_string(i) + ',' + format_real(losses[i]) + '\n';
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,m1,m2,m3,p1,p2,p3\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out += format_real(traj.times[k]);
    for (double v : traj.states[k]) out += ',' + format_real(v);
    out += '\n';
  }
  return out;
}

Trajectory trajectory_from_csv(const std::string& text) {
  Trajectory traj;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != 7)
      throw std::runtime_error("trajectory csv: expected 7 columns");
    traj.times.push_back(vals[0]);
    State6 y;
    for (std::size_t i = 0; i < 6; ++i) y[i] = vals[i + 1];
    traj.states.push_back(y);
  }
  if (traj.times.size() >= 2) traj.dt = traj.times[1] - traj.times[0];
  return traj;
}

std::string record_report_csv(const RunRecord& record) {
  switch (record.algorithm) {
    case Algorithm::gd: {
      std::vector<double> losses;
      for (const Event& e : record.events)
        if (e.kind == EventKind::trace)
          losses.push_back(e.payload.at("loss").get<double>());
      return loss_trace_csv(losses);
    }
    case Algorithm::nm: {
      NmResultRow row{};
      row.repetition = 0;
      const json& cfg = record.config;
      if (record.summary.contains("init")) {
        row.init_x1 = record.summary["init"][0].get<double>();
        row.init_x2 = record.summary["init"][1].get<double>();
      } else if (cfg.contains("init") && cfg["init"].is_array()) {
        row.init_x1 = cfg["init"][0].get<double>();
        row.init_x2 = cfg["init"][1].get<double>();
      }
      row.atol = cfg["atol"].get<double>();
      row.maxiter = cfg["maxiter"].get<std::size_t>();
      row.iterations_used = record.summary.at("iterations_used").get<std::size_t>();
      row.best_value = record.summary.at("best_value").get<double>();
      return nm_results_csv({row});
    }
    case Algorithm::mh:
    case Algorithm::sa: {
      SampleRunRow row{};
      row.repetition = 0;
      row.accepted = record.summary.at("accepted").get<std::size_t>();
      row.rejected = record.summary.at("rejected").get<std::size_t>();
      row.n = row.accepted + row.rejected;
      row.accepted_pct = record.summary.at("accepted_pct").get<double>();
      row.mean_alpha = record.summary.at("mean_alpha").get<double>();
      return sample_runs_csv({row});
    }
    case Algorithm::ea: {
      EaResultRow row{};
      row.repetition = 0;
      const json& cfg = record.config;
      row.pop_size = cfg["pop_size"].get<std::size_t>();
      row.generations = cfg["generations"].get<std::size_t>();
      row.mutation_std = cfg["mutation_std"].get<double>();
      row.recomb = cfg["recomb"].get<int>();
      row.mut = cfg["mut"].get<int>();
      row.best_fitness = record.summary.at("best_fitness").get<double>();
      row.final_mean_fitness = record.summary.at("final_mean_fitness").get<double>();
      return ea_results_csv({row});
    }
  }
  throw std::invalid_argument("record_report_csv: unknown algorithm");
}

}  // namespace otf
