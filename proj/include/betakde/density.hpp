#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "betakde/kernel.hpp"
#include "betakde/sample.hpp"

namespace betakde {

enum class EstimatorMode { Plain, BiasReduced };

//! Bandwidth-parameterized kernel density estimator bound to a sample.
//! Plain mode is the Parzen estimator
//!   f_n(x) = (1/(n h)) sum_i K((x - X_i)/h);
//! bias-reduced mode subtracts the plug-in estimate of the leading bias,
//!   f_n(x) - (h^2/2) f_n''(x) mu2(K),
//! with the same bandwidth inside f_n'' as in f_n.
struct DensityEstimate {
  std::shared_ptr<const Sample> sample;
  Kernel kernel;
  double bandwidth;
  EstimatorMode mode;

  DensityEstimate(std::shared_ptr<const Sample> sample, Kernel kernel,
                  double bandwidth, EstimatorMode mode);
};

struct EvaluationGrid {
  double lo;
  double hi;
  int count;  // equally spaced points including both endpoints, >= 2

  EvaluationGrid(double lo, double hi, int count);
  double spacing() const { return (hi - lo) / (count - 1); }
  double point(int i) const { return lo + i * spacing(); }
};

//! Parzen value at x (mode is ignored).  Nonnegative.
double parzen_at(const DensityEstimate& est, double x);

//! Estimate of f''(x): (1/(n h^3)) sum_i K''((x - X_i)/h).
double second_derivative_at(const DensityEstimate& est, double x);

//! Bias-reduced value at x; may be negative, no clipping at this layer.
double bias_reduced_at(const DensityEstimate& est, double x);

//! Dispatches on est.mode.
double value_at(const DensityEstimate& est, double x);

//! Pointwise evaluation over the grid, in grid order.
std::vector<std::pair<double, double>> evaluate_grid(
    const DensityEstimate& est, const EvaluationGrid& grid);

//! max(value, floor) elementwise; floor must be >= 0.  Applied by
//! consumers that raise estimates to fractional powers.
std::vector<double> clipped_positive(const std::vector<double>& values,
                                     double floor);

namespace detail {
//! sum0 = sum K(u_i), sum2 = sum K''(u_i) over the sample points within
//! the kernel support window around x, u_i = (x - X_i)/h.  Summation runs
//! in ascending sample order, so results do not depend on scheduling.
void kernel_sums(const std::vector<double>& sorted_values, double x, double h,
                 const Kernel& kernel, double& sum0, double& sum2);
}  // namespace detail

}  // namespace betakde
