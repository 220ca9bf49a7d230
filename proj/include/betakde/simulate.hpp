#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "betakde/bandwidth.hpp"
#include "betakde/kernel.hpp"
#include "betakde/mixture.hpp"

namespace betakde {

struct Cell {
  double mu;
  double sigma;
  int n;
};

struct SimulationConfig {
  std::vector<Cell> cells;
  int reps = 200;
  std::vector<SelectorSpec> selectors;
  std::uint64_t seed = 42;
  int threads = 0;  // 0 = available parallelism

  //! mu in {0, 1, 5} x sigma in {1, 0.5, 0.1} x n in {50, 200, 700}.
  static std::vector<Cell> default_cells();
  //! nr, lscv, cv1.1, cv1.5, cv1.9.
  static std::vector<SelectorSpec> default_selectors();
};

struct TrialRecord {
  int cell_index = 0;
  int rep = 0;
  std::string selector;
  double h_hat = 0.0;
  double ise_at_h_hat = 0.0;
  double ise_at_h_mise = 0.0;
  bool ok = true;
  std::string reason;  // failure reason for skipped records
};

struct SummaryRow {
  Cell cell;
  std::string selector;
  int count = 0;           // records aggregated
  double re = 0.0;         // mean(ise at h_mise) / mean(ise at h_hat)
  double re_se = 0.0;      // delta-method standard error of re
  bool re_warning = false; // re > 1 + 3 re_se
  double mean_h = 0.0;
  double mean_rel_err = 0.0;  // mean |h_hat/h_mise - 1|
};

struct SummaryTable {
  std::vector<SummaryRow> rows;
  std::vector<Cell> cells;
  std::vector<double> h_mise;  // per cell, indexed like cells
};

//! h_MISE for one cell via mise_search seeded from the master lineage.
double cell_h_mise(const Cell& cell, int cell_index, const Kernel& kernel,
                   int mc_reps, std::uint64_t master_seed, int threads);

//! Runs reps trials for one cell: draw a sample, apply every selector,
//! and record the ISE of the bias-reduced estimate at h_hat and at h_mise.
//! Selector failures become skipped records, not crashes.  Trials are
//! independent work units; per-trial streams derive from
//! (master_seed, cell_index, rep), so aggregates do not depend on
//! scheduling.
std::vector<TrialRecord> run_cell(const Cell& cell, int cell_index,
                                  const std::vector<SelectorSpec>& selectors,
                                  int reps, std::uint64_t master_seed,
                                  double h_mise, const Kernel& kernel,
                                  int threads);

//! Aggregates records into per-(cell, selector) rows.  Records are sorted
//! by (cell, selector, rep) before reduction.  A (cell, selector) group
//! with no usable records raises an error naming the group.
SummaryTable summarize(const std::vector<TrialRecord>& records,
                       const std::vector<Cell>& cells,
                       const std::vector<SelectorSpec>& selectors,
                       const std::vector<double>& h_mise);

//! Full pipeline: per cell, h_MISE first (same seed lineage, reps
//! matching config.reps), then the trial loop; returns the summary plus
//! all trial records through the optional out-parameter.
SummaryTable run_simulation(const SimulationConfig& config,
                            std::vector<TrialRecord>* records_out = nullptr);

}  // namespace betakde
