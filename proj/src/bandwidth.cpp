#include "betakde/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "betakde/optimize.hpp"
#include "betakde/parallel.hpp"
#include "betakde/rng.hpp"

namespace betakde {

namespace {
constexpr int kCvQuadIntervals = 512;
constexpr int kMiseQuadIntervals = 512;
}  // namespace

BandwidthSearch::BandwidthSearch(double h_lo_, double h_hi_, int grid_count_,
                                 double refine_tol_)
    : h_lo(h_lo_), h_hi(h_hi_), grid_count(grid_count_),
      refine_tol(refine_tol_) {
  if (!(h_lo > 0.0 && h_lo < h_hi)) {
    throw std::invalid_argument("BandwidthSearch: need 0 < h_lo < h_hi");
  }
  if (grid_count < 16) {
    throw std::invalid_argument("BandwidthSearch: grid_count must be >= 16");
  }
  if (!(refine_tol > 0.0 && refine_tol < h_lo)) {
    throw std::invalid_argument(
        "BandwidthSearch: refine_tol must be in (0, h_lo)");
  }
}

BandwidthSearch BandwidthSearch::defaults_for(double sigma, int n) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument(
        "BandwidthSearch: scale estimate must be positive");
  }
  const double h_lo = sigma / (10.0 * std::pow(static_cast<double>(n), 0.2));
  return BandwidthSearch(h_lo, 3.0 * sigma, 48, 1e-4 * sigma);
}

BandwidthSearch BandwidthSearch::defaults_for(const Sample& sample) {
  return defaults_for(scale_estimate(sample), sample.n());
}

double scale_estimate(const Sample& sample) {
  return std::min(sample.stddev(), sample.iqr() / 1.34);
}

double theoretical_bandwidth(const TargetDensity& target,
                             const BetaParam& beta, const Kernel& kernel,
                             long n) {
  if (n <= 0) {
    throw std::invalid_argument("theoretical_bandwidth: n must be positive");
  }
  const BetaFunctionals fn = target_functionals(target, beta.value);
  if (!(fn.i2 > 0.0)) {
    throw std::domain_error(
        "theoretical_bandwidth: vanishing fourth-derivative functional "
        "gives an unbounded bandwidth");
  }
  const double ratio =
      72.0 * kernel.roughness * fn.i1 / (kernel.mu4 * kernel.mu4 * fn.i2);
  return std::pow(ratio, 1.0 / 9.0) *
         std::pow(static_cast<double>(n), -1.0 / 9.0);
}

double normal_reference(const Sample& sample, const BetaParam& beta,
                        const Kernel& kernel) {
  const double sigma = scale_estimate(sample);
  if (!(sigma > 0.0)) {
    throw std::domain_error(
        "normal_reference: degenerate scale (constant sample)");
  }
  const BetaFunctionals fn = gaussian_functional_oracle(0.0, sigma,
                                                        beta.value);
  const double ratio =
      72.0 * kernel.roughness * fn.i1 / (kernel.mu4 * kernel.mu4 * fn.i2);
  return std::pow(ratio, 1.0 / 9.0) *
         std::pow(static_cast<double>(sample.n()), -1.0 / 9.0);
}

double cv_integral_term(const Sample& sample, double h,
                        const BetaParam& beta, const Kernel& kernel,
                        const QuadratureSpec& spec,
                        EstimatorMode integral_mode) {
  auto shared = std::make_shared<const Sample>(sample);
  const DensityEstimate est(shared, kernel, h, integral_mode);
  const double b = beta.value;
  auto integrand = [&](double x) {
    const double v = std::max(value_at(est, x), 0.0);
    return std::pow(v, b);
  };
  return simpson(integrand, spec) / b;
}

double cv_loo_term(const Sample& sample, double h, const BetaParam& beta,
                   const Kernel& kernel, bool loo_bias_reduced) {
  const int n = sample.n();
  if (n < 3) throw std::invalid_argument("cv_loo_term: n must be >= 3");
  const auto& xs = sample.values();
  const double r = kernel.support_radius * h;
  const auto& pair = kernel.evaluate_pair;
  const double b = beta.value;

  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = xs[i];
    const auto first = std::lower_bound(xs.begin(), xs.end(), xi - r);
    const auto last = std::upper_bound(first, xs.end(), xi + r);
    double s0 = 0.0, s2 = 0.0;
    for (auto it = first; it != last; ++it) {
      if (it - xs.begin() == i) continue;
      double k, kpp;
      pair((xi - *it) / h, k, kpp);
      s0 += k;
      s2 += kpp;
    }
    // Leave-one-out evaluator over the other n-1 points: plain Parzen sum,
    // or its bias-reduced variant when requested.
    double g = loo_bias_reduced ? (s0 - 0.5 * kernel.mu2 * s2) : s0;
    g /= h * (n - 1);
    acc += std::pow(std::max(g, 0.0), b - 1.0);
  }
  return -2.0 * acc / (n * (b - 1.0));
}

double cv_objective(const Sample& sample, double h, const BetaParam& beta,
                    const Kernel& kernel, const QuadratureSpec& spec,
                    EstimatorMode integral_mode, bool loo_bias_reduced) {
  if (!(h > 0.0)) throw std::invalid_argument("cv_objective: h must be > 0");
  const double integral =
      cv_integral_term(sample, h, beta, kernel, spec, integral_mode);
  if (!(integral > 0.0)) {
    std::ostringstream msg;
    msg << "cv_objective: degenerate objective at h = " << h
        << " (estimate clipped to zero everywhere)";
    throw std::runtime_error(msg.str());
  }
  return integral + cv_loo_term(sample, h, beta, kernel, loo_bias_reduced);
}

namespace {

QuadratureSpec cv_spec_for(const Sample& sample, double h) {
  return QuadratureSpec(sample.min() - 8.0 * h, sample.max() + 8.0 * h,
                        kCvQuadIntervals);
}

}  // namespace

SelectionResult select_cv(const Sample& sample, const BetaParam& beta,
                          const Kernel& kernel, const BandwidthSearch& search,
                          EstimatorMode integral_mode,
                          bool loo_bias_reduced) {
  auto objective = [&](double h) {
    return cv_objective(sample, h, beta, kernel, cv_spec_for(sample, h),
                        integral_mode, loo_bias_reduced);
  };

  const std::vector<double> grid =
      log_spaced(search.h_lo, search.h_hi, search.grid_count);
  int best = 0;
  double best_val = objective(grid[0]);
  for (int i = 1; i < static_cast<int>(grid.size()); ++i) {
    const double v = objective(grid[i]);
    if (v < best_val) {  // ties keep the smallest h
      best_val = v;
      best = i;
    }
  }

  SelectionResult result{grid[best], false, search.h_lo, search.h_hi};
  if (best == 0 || best == static_cast<int>(grid.size()) - 1) {
    result.boundary_hit = true;
    return result;
  }
  result.bandwidth = golden_section_min(objective, grid[best - 1],
                                        grid[best + 1], search.refine_tol);
  return result;
}

double ise_estimate(const DensityEstimate& est, const TargetDensity& target,
                    int intervals) {
  const double h = est.bandwidth;
  const double lo = std::min(target.hint_lo, est.sample->min() - 8.0 * h);
  const double hi = std::max(target.hint_hi, est.sample->max() + 8.0 * h);
  const QuadratureSpec spec(lo, hi, intervals);
  auto integrand = [&](double x) {
    const double d = value_at(est, x) - target.pdf(x);
    return d * d;
  };
  return simpson(integrand, spec);
}

double mise_search(const TargetDensity& target, int n, const Kernel& kernel,
                   int mc_reps, std::uint64_t seed,
                   const BandwidthSearch& search, int threads) {
  if (mc_reps < 1) {
    throw std::invalid_argument("mise_search: mc_reps must be >= 1");
  }
  if (!target.sampler) {
    throw std::invalid_argument("mise_search: target has no sampler");
  }
  const std::vector<double> grid =
      log_spaced(search.h_lo, search.h_hi, search.grid_count);
  const int G = static_cast<int>(grid.size());

  // One sample per rep, shared by every grid bandwidth (common random
  // numbers); rep results land in per-index slots.
  std::vector<std::vector<double>> ise_by_rep(
      mc_reps, std::vector<double>(G, 0.0));
  parallel_for(mc_reps, threads, [&](int rep) {
    rng::Stream stream(rng::derive_seed(seed, static_cast<std::uint64_t>(rep)));
    std::vector<double> draws(n);
    for (int i = 0; i < n; ++i) draws[i] = target.sampler(stream);
    auto sample = std::make_shared<const Sample>(std::move(draws));
    for (int gi = 0; gi < G; ++gi) {
      const DensityEstimate est(sample, kernel, grid[gi],
                                EstimatorMode::BiasReduced);
      ise_by_rep[rep][gi] = ise_estimate(est, target, kMiseQuadIntervals);
    }
  });

  std::vector<double> mise(G, 0.0);
  for (int rep = 0; rep < mc_reps; ++rep) {
    for (int gi = 0; gi < G; ++gi) mise[gi] += ise_by_rep[rep][gi];
  }
  for (double& v : mise) v /= mc_reps;

  int best = 0;
  for (int gi = 1; gi < G; ++gi) {
    if (mise[gi] < mise[best]) best = gi;
  }
  if (best == 0 || best == G - 1) return grid[best];

  // Quadratic refinement through the best point and its neighbors in
  // log h (the grid is log-spaced, so the abscissas are equally spaced).
  const double y0 = mise[best - 1], y1 = mise[best], y2 = mise[best + 1];
  const double denom = y0 - 2.0 * y1 + y2;
  if (!(denom > 0.0)) return grid[best];
  const double t1 = std::log(grid[best]);
  const double dt = std::log(grid[best + 1]) - t1;
  double t_star = t1 + 0.5 * dt * (y0 - y2) / denom;
  t_star = std::clamp(t_star, std::log(grid[best - 1]),
                      std::log(grid[best + 1]));
  return std::exp(t_star);
}

std::string SelectorSpec::name() const {
  switch (method) {
    case Method::NormalReference:
      return "nr";
    case Method::CrossValidation: {
      if (beta == 2.0) return "lscv";
      std::ostringstream out;
      out << "cv" << beta;
      return out.str();
    }
    case Method::TheoreticalBeta: {
      std::ostringstream out;
      out << "theoretical" << beta;
      return out.str();
    }
    case Method::MiseSearch:
      return "mise";
  }
  return "unknown";
}

}  // namespace betakde
