#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "betakde/density.hpp"
#include "betakde/divergence.hpp"
#include "betakde/kernel.hpp"
#include "betakde/sample.hpp"

namespace betakde {

//! One-dimensional bandwidth search: coarse log-spaced grid followed by
//! local refinement around the best grid point.
struct BandwidthSearch {
  double h_lo;
  double h_hi;
  int grid_count;     // coarse grid size, >= 16
  double refine_tol;  // absolute golden-section tolerance, < h_lo

  BandwidthSearch(double h_lo, double h_hi, int grid_count,
                  double refine_tol);

  //! Defaults bracketing the usual optima with margin:
  //! [sigma/(10 n^{1/5}), 3 sigma], 48 points, tol 1e-4 sigma,
  //! where sigma is the robust scale estimate of the sample.
  static BandwidthSearch defaults_for(const Sample& sample);
  static BandwidthSearch defaults_for(double sigma, int n);
};

struct SelectionResult {
  double bandwidth;
  bool boundary_hit;  // coarse minimum at a search bound
  double h_lo;
  double h_hi;
};

//! Robust scale: min(sample stddev, IQR/1.34).
double scale_estimate(const Sample& sample);

//! Optimal bandwidth for a known target density:
//!   { 72 R(K) i1 / (mu4(K)^2 i2) }^{1/9} n^{-1/9},
//! with i1, i2 computed from the target by quadrature.
double theoretical_bandwidth(const TargetDensity& target,
                             const BetaParam& beta, const Kernel& kernel,
                             long n);

//! Normal-reference rule: the optimal-bandwidth formula evaluated as if
//! the data were N(., sigma_hat^2), sigma_hat = min(s, IQR/1.34), with the
//! Gaussian functionals obtained from gaussian_functional_oracle.
double normal_reference(const Sample& sample, const BetaParam& beta,
                        const Kernel& kernel);

//! Leave-one-out cross-validation criterion
//!   LSCV(h) = (1/b) int clip(f_h)^b
//!           - (2/(n(b-1))) sum_i clip(g_(i)(X_i))^{b-1},
//! where f_h is the estimator in integral_mode (bias-reduced by default)
//! on the full sample, and g_(i) is the leave-one-out evaluator -- the
//! plain Parzen sum over the other n-1 points, or its bias-reduced variant
//! when loo_bias_reduced is set.  Estimates are clipped at 0 before
//! powering.
double cv_objective(const Sample& sample, double h, const BetaParam& beta,
                    const Kernel& kernel, const QuadratureSpec& spec,
                    EstimatorMode integral_mode = EstimatorMode::BiasReduced,
                    bool loo_bias_reduced = false);

//! The two pieces of cv_objective; cv_objective is exactly their sum.
double cv_integral_term(const Sample& sample, double h,
                        const BetaParam& beta, const Kernel& kernel,
                        const QuadratureSpec& spec,
                        EstimatorMode integral_mode);
double cv_loo_term(const Sample& sample, double h, const BetaParam& beta,
                   const Kernel& kernel, bool loo_bias_reduced = false);

//! Minimizes cv_objective over the search range: coarse scan, then
//! golden-section refinement between the neighbors of the best grid point.
//! Ties on the grid resolve to the smallest h.  When the coarse minimum
//! sits on a search bound the bound itself is returned with boundary_hit
//! set.  The integral term uses a per-h range [min - 8h, max + 8h] with
//! 512 Simpson intervals.
SelectionResult select_cv(const Sample& sample, const BetaParam& beta,
                          const Kernel& kernel, const BandwidthSearch& search,
                          EstimatorMode integral_mode = EstimatorMode::BiasReduced,
                          bool loo_bias_reduced = false);

//! Monte Carlo search for the bandwidth minimizing the integrated squared
//! error of the bias-reduced estimator, averaged over mc_reps samples of
//! size n drawn from the target.  Per-rep streams derive from (seed, rep)
//! only, so every grid bandwidth sees the same samples and the result is
//! independent of scheduling.  The coarse grid minimizer is refined by a
//! three-point quadratic fit in log h.
double mise_search(const TargetDensity& target, int n, const Kernel& kernel,
                   int mc_reps, std::uint64_t seed,
                   const BandwidthSearch& search, int threads = 0);

//! ISE of an estimate against a target, integrating over the union of the
//! target's hint range and the data range widened by 8 bandwidths.
double ise_estimate(const DensityEstimate& est, const TargetDensity& target,
                    int intervals = 2048);

//! Bandwidth-selection method description used by the simulation harness.
struct SelectorSpec {
  enum class Method { NormalReference, CrossValidation, TheoreticalBeta,
                      MiseSearch };
  Method method = Method::NormalReference;
  double beta = 2.0;
  bool loo_bias_reduced = false;
  int mc_reps = 200;  // MiseSearch only

  std::string name() const;
};

}  // namespace betakde
