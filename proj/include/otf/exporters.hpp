#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "otf/controller.hpp"
#include "otf/evolutionary.hpp"
#include "otf/gradient_descent.hpp"
#include "otf/mcmc.hpp"
#include "otf/nelder_mead.hpp"
#include "otf/record.hpp"

namespace otf {

/// Shortest decimal form holding up to 12 significant digits.
std::string format_real(double v);

/// Whole-file atomic write (temp file + rename). I/O failures surface with
/// the path in the message.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

void export_record(const RunRecord& record, const std::filesystem::path& path);
RunRecord import_record(const std::filesystem::path& path);

// CSV table builders. Headers are part of the file contract.

/// repetition,alpha,iterations,best_loss,verdict
std::string tune_table_csv(const TuneTable& table);

/// One JSON line per controller adjustment plus per-repetition cost lines
/// and a final "chosen" line.
std::string tune_log_jsonl(const TuneTable& table);

struct NmResultRow {
  std::size_t repetition;
  double init_x1, init_x2;
  double atol;
  std::size_t maxiter;
  std::size_t iterations_used;
  double best_value;
};
/// repetition,init_x1,init_x2,atol,maxiter,iterations_used,best_value
std::string nm_results_csv(const std::vector<NmResultRow>& rows);

struct SampleRunRow {
  std::size_t repetition;
  std::size_t n;
  std::size_t accepted;
  std::size_t rejected;
  double accepted_pct;
  double mean_alpha;
};
/// repetition,N,accepted,rejected,accepted_pct,mean_alpha
std::string sample_runs_csv(const std::vector<SampleRunRow>& rows);

struct EaResultRow {
  std::size_t repetition;
  std::size_t pop_size;
  std::size_t generations;
  double mutation_std;
  int recomb;
  int mut;
  double best_fitness;
  double final_mean_fitness;
};
/// repetition,pop_size,generations,std,recomb,mut,best_fitness,final_mean_fitness
std::string ea_results_csv(const std::vector<EaResultRow>& rows);

/// x1,x2,value (row-major, x1 fastest)
std::string grid_csv(const Grid& grid);

/// bin_x,bin_y,count
std::string histogram_csv(const HistGrid& grid);

/// iteration,loss
std::string loss_trace_csv(const std::vector<double>& losses);

/// t,m1,m2,m3,p1,p2,p3
std::string trajectory_csv(const Trajectory& traj);
Trajectory trajectory_from_csv(const std::string& text);

/// Flat CSV view of a RunRecord: the per-iteration trace for gd/nm, the
/// one-row summary table for samplers and the EA.
std::string record_report_csv(const RunRecord& record);

}  // namespace otf
