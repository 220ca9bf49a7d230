#include "betakde/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "betakde/version.hpp"

namespace betakde {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool parse_number(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

std::string format_sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Sample ingest_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open input file: " + path.string());
  }
  std::vector<double> values;
  std::string line;
  int row = 0;
  bool first_content_row = true;
  while (std::getline(in, line)) {
    ++row;
    const std::string t = trim(line);
    if (t.empty()) continue;
    double v;
    if (!parse_number(t, v)) {
      if (first_content_row) {  // header row
        first_content_row = false;
        continue;
      }
      std::ostringstream msg;
      msg << path.string() << ": row " << row
          << " is not a number: \"" << t << "\"";
      throw std::runtime_error(msg.str());
    }
    first_content_row = false;
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << path.string() << ": row " << row << " is not finite";
      throw std::runtime_error(msg.str());
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw std::runtime_error(path.string() + ": no numeric rows");
  }
  if (values.size() < 2) {
    throw std::runtime_error(path.string() +
                             ": need at least 2 observations");
  }
  return Sample(std::move(values));
}

void write_curve_tsv(const std::filesystem::path& path,
                     const std::vector<std::pair<double, double>>& curve) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path.string());
  }
  out << "x\tdensity\n";
  for (const auto& [x, y] : curve) {
    out << format_sig9(x) << '\t' << format_sig9(y) << '\n';
  }
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

namespace {

struct PendingFile {
  std::filesystem::path final_path;
  std::filesystem::path temp_path;
};

void write_table_csv(std::ostream& out, const SummaryTable& table,
                     double SummaryRow::*field) {
  out << "mu,sigma,n,selector,value\n";
  for (const auto& row : table.rows) {
    out << format_full(row.cell.mu) << ',' << format_full(row.cell.sigma)
        << ',' << row.cell.n << ',' << row.selector << ','
        << format_full(row.*field) << '\n';
  }
}

}  // namespace

void write_simulation_outputs(const std::filesystem::path& dir,
                              const SummaryTable& table,
                              const std::vector<TrialRecord>& records,
                              std::uint64_t seed, int reps) {
  std::filesystem::create_directories(dir);
  std::vector<PendingFile> pending;
  auto stage = [&](const std::string& name) {
    PendingFile p;
    p.final_path = dir / name;
    p.temp_path = dir / (name + ".tmp");
    pending.push_back(p);
    return p.temp_path;
  };

  try {
    {
      std::ofstream out(stage("table1_re.csv"));
      write_table_csv(out, table, &SummaryRow::re);
      if (!out) throw std::runtime_error("failed writing table1_re.csv");
    }
    {
      std::ofstream out(stage("table2_meanh.csv"));
      out << "mu,sigma,n,selector,value\n";
      for (const auto& row : table.rows) {
        out << format_full(row.cell.mu) << ','
            << format_full(row.cell.sigma) << ',' << row.cell.n << ','
            << row.selector << ',' << format_full(row.mean_h) << '\n';
      }
      for (std::size_t ci = 0; ci < table.cells.size(); ++ci) {
        out << format_full(table.cells[ci].mu) << ','
            << format_full(table.cells[ci].sigma) << ','
            << table.cells[ci].n << ",h_mise,"
            << format_full(table.h_mise[ci]) << '\n';
      }
      if (!out) throw std::runtime_error("failed writing table2_meanh.csv");
    }
    {
      std::ofstream out(stage("table3_relerr.csv"));
      write_table_csv(out, table, &SummaryRow::mean_rel_err);
      if (!out) throw std::runtime_error("failed writing table3_relerr.csv");
    }
    {
      std::ofstream out(stage("records.csv"));
      out << "mu,sigma,n,selector,rep,h_hat,ise_at_h_hat,ise_at_h_mise,ok,"
             "reason\n";
      for (const auto& rec : records) {
        const Cell& cell = table.cells.at(rec.cell_index);
        std::string reason = rec.reason;
        for (char& c : reason) {
          if (c == ',' || c == '\n') c = ';';
        }
        out << format_full(cell.mu) << ',' << format_full(cell.sigma) << ','
            << cell.n << ',' << rec.selector << ',' << rec.rep << ','
            << format_full(rec.h_hat) << ','
            << format_full(rec.ise_at_h_hat) << ','
            << format_full(rec.ise_at_h_mise) << ','
            << (rec.ok ? 1 : 0) << ',' << reason << '\n';
      }
      if (!out) throw std::runtime_error("failed writing records.csv");
    }
    {
      std::ofstream out(stage("manifest.json"));
      out << "{\n"
          << "  \"version\": \"" << BETAKDE_VERSION << "\",\n"
          << "  \"seed\": " << seed << ",\n"
          << "  \"reps\": " << reps << ",\n"
          << "  \"cells\": " << table.cells.size() << ",\n"
          << "  \"rows\": " << table.rows.size() << "\n"
          << "}\n";
      if (!out) throw std::runtime_error("failed writing manifest.json");
    }
  } catch (...) {
    for (const auto& p : pending) {
      std::error_code ec;
      std::filesystem::remove(p.temp_path, ec);
    }
    throw;
  }

  // All files are complete; expose them under their final names.
  for (const auto& p : pending) {
    std::filesystem::rename(p.temp_path, p.final_path);
  }
}

}  // namespace betakde
