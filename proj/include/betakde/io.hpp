#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "betakde/sample.hpp"
#include "betakde/simulate.hpp"

namespace betakde {

//! Reads a one-column numeric CSV (UTF-8, one value per line, optional
//! header auto-detected when the first row does not parse as a number).
//! Raises with the 1-based row number on the first bad row; requires at
//! least two finite values.
Sample ingest_csv(const std::filesystem::path& path);

//! Curve as TSV: header "x\tdensity", then one row per point with 9
//! significant digits.
void write_curve_tsv(const std::filesystem::path& path,
                     const std::vector<std::pair<double, double>>& curve);

//! Simulation outputs: table1_re.csv, table2_meanh.csv (with per-cell
//! h_mise rows), table3_relerr.csv, records.csv and manifest.json, written
//! atomically (temp files renamed at the end; nothing is left behind on
//! failure).
void write_simulation_outputs(const std::filesystem::path& dir,
                              const SummaryTable& table,
                              const std::vector<TrialRecord>& records,
                              std::uint64_t seed, int reps);

}  // namespace betakde
