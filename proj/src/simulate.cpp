#include "betakde/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "betakde/parallel.hpp"
#include "betakde/rng.hpp"

namespace betakde {

namespace {
// Domain tags keeping the mise-search and trial stream lineages disjoint.
constexpr std::uint64_t kMiseTag = 0x6d697365u;   // "mise"
constexpr std::uint64_t kTrialTag = 0x747269u;    // "tri"
constexpr std::uint64_t kSelectorTag = 0x73656cu; // "sel"
}  // namespace

std::vector<Cell> SimulationConfig::default_cells() {
  std::vector<Cell> cells;
  for (double mu : {0.0, 1.0, 5.0}) {
    for (double sigma : {1.0, 0.5, 0.1}) {
      for (int n : {50, 200, 700}) cells.push_back({mu, sigma, n});
    }
  }
  return cells;
}

std::vector<SelectorSpec> SimulationConfig::default_selectors() {
  std::vector<SelectorSpec> out;
  SelectorSpec nr;
  nr.method = SelectorSpec::Method::NormalReference;
  nr.beta = 2.0;
  out.push_back(nr);
  for (double beta : {2.0, 1.1, 1.5, 1.9}) {
    SelectorSpec cv;
    cv.method = SelectorSpec::Method::CrossValidation;
    cv.beta = beta;
    out.push_back(cv);
  }
  return out;
}

double cell_h_mise(const Cell& cell, int cell_index, const Kernel& kernel,
                   int mc_reps, std::uint64_t master_seed, int threads) {
  const NormalMixture mix(cell.mu, cell.sigma);
  const BandwidthSearch search = BandwidthSearch::defaults_for(mix.sd(),
                                                               cell.n);
  const std::uint64_t seed = rng::derive_seed(
      master_seed, static_cast<std::uint64_t>(cell_index), kMiseTag);
  return mise_search(mix.target(), cell.n, kernel, mc_reps, seed, search,
                     threads);
}

namespace {

double apply_selector(const SelectorSpec& spec, const Sample& sample,
                      const Kernel& kernel) {
  switch (spec.method) {
    case SelectorSpec::Method::NormalReference:
      return normal_reference(sample, BetaParam(spec.beta), kernel);
    case SelectorSpec::Method::CrossValidation:
      return select_cv(sample, BetaParam(spec.beta), kernel,
                       BandwidthSearch::defaults_for(sample),
                       EstimatorMode::BiasReduced, spec.loo_bias_reduced)
          .bandwidth;
    default:
      throw std::logic_error("apply_selector: sample-independent method");
  }
}

bool sample_independent(const SelectorSpec& spec) {
  return spec.method == SelectorSpec::Method::TheoreticalBeta ||
         spec.method == SelectorSpec::Method::MiseSearch;
}

}  // namespace

std::vector<TrialRecord> run_cell(const Cell& cell, int cell_index,
                                  const std::vector<SelectorSpec>& selectors,
                                  int reps, std::uint64_t master_seed,
                                  double h_mise, const Kernel& kernel,
                                  int threads) {
  if (reps < 1) throw std::invalid_argument("run_cell: reps must be >= 1");
  if (!(h_mise > 0.0)) {
    throw std::invalid_argument("run_cell: h_mise must be positive");
  }
  const NormalMixture mix(cell.mu, cell.sigma);
  const TargetDensity target = mix.target();
  const std::uint64_t trial_lineage = rng::derive_seed(
      master_seed, static_cast<std::uint64_t>(cell_index), kTrialTag);

  // Bandwidths that do not depend on the trial sample are evaluated once.
  const int S = static_cast<int>(selectors.size());
  std::vector<double> fixed_h(S, -1.0);
  for (int s = 0; s < S; ++s) {
    const SelectorSpec& sel = selectors[s];
    if (sel.method == SelectorSpec::Method::TheoreticalBeta) {
      fixed_h[s] = theoretical_bandwidth(target, BetaParam(sel.beta), kernel,
                                         cell.n);
    } else if (sel.method == SelectorSpec::Method::MiseSearch) {
      fixed_h[s] = mise_search(
          target, cell.n, kernel, sel.mc_reps,
          rng::derive_seed(master_seed,
                           static_cast<std::uint64_t>(cell_index),
                           kSelectorTag),
          BandwidthSearch::defaults_for(mix.sd(), cell.n), threads);
    }
  }

  std::vector<std::vector<TrialRecord>> by_rep(reps);
  parallel_for(reps, threads, [&](int rep) {
    rng::Stream stream(
        rng::derive_seed(trial_lineage, static_cast<std::uint64_t>(rep)));
    std::vector<double> draws(cell.n);
    for (int i = 0; i < cell.n; ++i) draws[i] = mix.draw(stream);
    auto sample = std::make_shared<const Sample>(std::move(draws));

    const DensityEstimate at_mise(sample, kernel, h_mise,
                                  EstimatorMode::BiasReduced);
    const double ise_mise = ise_estimate(at_mise, target);

    auto& records = by_rep[rep];
    records.reserve(S);
    for (int s = 0; s < S; ++s) {
      TrialRecord rec;
      rec.cell_index = cell_index;
      rec.rep = rep;
      rec.selector = selectors[s].name();
      try {
        const double h = sample_independent(selectors[s])
                             ? fixed_h[s]
                             : apply_selector(selectors[s], *sample, kernel);
        const DensityEstimate at_h(sample, kernel, h,
                                   EstimatorMode::BiasReduced);
        rec.h_hat = h;
        rec.ise_at_h_hat = ise_estimate(at_h, target);
        rec.ise_at_h_mise = ise_mise;
      } catch (const std::exception& e) {
        rec.ok = false;
        rec.reason = e.what();
      }
      records.push_back(rec);
    }
  });

  std::vector<TrialRecord> out;
  out.reserve(static_cast<std::size_t>(reps) * S);
  for (auto& records : by_rep) {
    for (auto& rec : records) out.push_back(std::move(rec));
  }
  return out;
}

SummaryTable summarize(const std::vector<TrialRecord>& records,
                       const std::vector<Cell>& cells,
                       const std::vector<SelectorSpec>& selectors,
                       const std::vector<double>& h_mise) {
  if (cells.size() != h_mise.size()) {
    throw std::invalid_argument("summarize: cells/h_mise size mismatch");
  }
  std::vector<TrialRecord> sorted = records;
  std::sort(sorted.begin(), sorted.end(),
            [](const TrialRecord& a, const TrialRecord& b) {
              if (a.cell_index != b.cell_index) {
                return a.cell_index < b.cell_index;
              }
              if (a.selector != b.selector) return a.selector < b.selector;
              return a.rep < b.rep;
            });

  SummaryTable table;
  table.cells = cells;
  table.h_mise = h_mise;
  for (int ci = 0; ci < static_cast<int>(cells.size()); ++ci) {
    for (const auto& sel : selectors) {
      const std::string name = sel.name();
      double sum_mise = 0.0, sum_hat = 0.0, sum_h = 0.0, sum_rel = 0.0;
      std::vector<std::pair<double, double>> pairs;  // (ise_mise, ise_hat)
      for (const auto& rec : sorted) {
        if (rec.cell_index != ci || rec.selector != name || !rec.ok) continue;
        sum_mise += rec.ise_at_h_mise;
        sum_hat += rec.ise_at_h_hat;
        sum_h += rec.h_hat;
        sum_rel += std::abs(rec.h_hat / h_mise[ci] - 1.0);
        pairs.emplace_back(rec.ise_at_h_mise, rec.ise_at_h_hat);
      }
      const int count = static_cast<int>(pairs.size());
      if (count == 0) {
        std::ostringstream msg;
        msg << "summarize: no usable records for cell (mu=" << cells[ci].mu
            << ", sigma=" << cells[ci].sigma << ", n=" << cells[ci].n
            << "), selector " << name;
        throw std::runtime_error(msg.str());
      }
      SummaryRow row;
      row.cell = cells[ci];
      row.selector = name;
      row.count = count;
      const double mean_mise = sum_mise / count;
      const double mean_hat = sum_hat / count;
      row.re = mean_mise / mean_hat;
      row.mean_h = sum_h / count;
      row.mean_rel_err = sum_rel / count;
      if (count >= 2) {
        // Delta-method standard error of the ratio of means.
        double va = 0.0, vb = 0.0, cab = 0.0;
        for (const auto& [a, b] : pairs) {
          va += (a - mean_mise) * (a - mean_mise);
          vb += (b - mean_hat) * (b - mean_hat);
          cab += (a - mean_mise) * (b - mean_hat);
        }
        va /= count - 1;
        vb /= count - 1;
        cab /= count - 1;
        const double var_ratio =
            (va / (mean_hat * mean_hat) +
             mean_mise * mean_mise * vb /
                 (mean_hat * mean_hat * mean_hat * mean_hat) -
             2.0 * mean_mise * cab /
                 (mean_hat * mean_hat * mean_hat)) /
            count;
        row.re_se = std::sqrt(std::max(var_ratio, 0.0));
      }
      row.re_warning = row.re > 1.0 + 3.0 * row.re_se;
      table.rows.push_back(row);
    }
  }
  return table;
}

SummaryTable run_simulation(const SimulationConfig& config,
                            std::vector<TrialRecord>* records_out) {
  if (config.cells.empty()) {
    throw std::invalid_argument("run_simulation: no cells");
  }
  if (config.selectors.empty()) {
    throw std::invalid_argument("run_simulation: no selectors");
  }
  if (config.reps < 1) {
    throw std::invalid_argument("run_simulation: reps must be >= 1");
  }
  for (const auto& cell : config.cells) {
    if (cell.n < 10) {
      throw std::invalid_argument("run_simulation: cell n must be >= 10");
    }
  }
  const Kernel kernel = gaussian_kernel();
  std::vector<TrialRecord> records;
  std::vector<double> h_mise(config.cells.size(), 0.0);
  for (int ci = 0; ci < static_cast<int>(config.cells.size()); ++ci) {
    h_mise[ci] = cell_h_mise(config.cells[ci], ci, kernel, config.reps,
                             config.seed, config.threads);
    auto cell_records =
        run_cell(config.cells[ci], ci, config.selectors, config.reps,
                 config.seed, h_mise[ci], kernel, config.threads);
    records.insert(records.end(), cell_records.begin(), cell_records.end());
  }
  SummaryTable table =
      summarize(records, config.cells, config.selectors, h_mise);
  if (records_out) *records_out = std::move(records);
  return table;
}

}  // namespace betakde
