#include "betakde/density.hpp"

#include <algorithm>
#include <stdexcept>

namespace betakde {

DensityEstimate::DensityEstimate(std::shared_ptr<const Sample> sample_,
                                 Kernel kernel_, double bandwidth_,
                                 EstimatorMode mode_)
    : sample(std::move(sample_)),
      kernel(std::move(kernel_)),
      bandwidth(bandwidth_),
      mode(mode_) {
  if (!sample) throw std::invalid_argument("DensityEstimate: null sample");
  if (!(bandwidth > 0.0)) {
    throw std::invalid_argument("DensityEstimate: bandwidth must be > 0");
  }
}

EvaluationGrid::EvaluationGrid(double lo_, double hi_, int count_)
    : lo(lo_), hi(hi_), count(count_) {
  if (!(lo < hi)) throw std::invalid_argument("EvaluationGrid: lo >= hi");
  if (count < 2) throw std::invalid_argument("EvaluationGrid: count < 2");
}

namespace detail {

void kernel_sums(const std::vector<double>& xs, double x, double h,
                 const Kernel& kernel, double& sum0, double& sum2) {
  const double r = kernel.support_radius * h;
  auto first = std::lower_bound(xs.begin(), xs.end(), x - r);
  auto last = std::upper_bound(first, xs.end(), x + r);
  double s0 = 0.0, s2 = 0.0;
  const auto& pair = kernel.evaluate_pair;
  for (auto it = first; it != last; ++it) {
    double k, kpp;
    pair((x - *it) / h, k, kpp);
    s0 += k;
    s2 += kpp;
  }
  sum0 = s0;
  sum2 = s2;
}

}  // namespace detail

double parzen_at(const DensityEstimate& est, double x) {
  double s0, s2;
  detail::kernel_sums(est.sample->values(), x, est.bandwidth, est.kernel, s0,
                      s2);
  return s0 / (est.sample->n() * est.bandwidth);
}

double second_derivative_at(const DensityEstimate& est, double x) {
  double s0, s2;
  detail::kernel_sums(est.sample->values(), x, est.bandwidth, est.kernel, s0,
                      s2);
  const double h = est.bandwidth;
  return s2 / (est.sample->n() * h * h * h);
}

double bias_reduced_at(const DensityEstimate& est, double x) {
  double s0, s2;
  detail::kernel_sums(est.sample->values(), x, est.bandwidth, est.kernel, s0,
                      s2);
  // f_n - (h^2/2) f_n'' mu2; the h powers cancel down to a single 1/(n h).
  return (s0 - 0.5 * est.kernel.mu2 * s2) /
         (est.sample->n() * est.bandwidth);
}

double value_at(const DensityEstimate& est, double x) {
  return est.mode == EstimatorMode::Plain ? parzen_at(est, x)
                                          : bias_reduced_at(est, x);
}

std::vector<std::pair<double, double>> evaluate_grid(
    const DensityEstimate& est, const EvaluationGrid& grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.count);
  for (int i = 0; i < grid.count; ++i) {
    const double x = grid.point(i);
    out.emplace_back(x, value_at(est, x));
  }
  return out;
}

std::vector<double> clipped_positive(const std::vector<double>& values,
                                     double floor) {
  if (floor < 0.0) {
    throw std::invalid_argument("clipped_positive: floor must be >= 0");
  }
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = std::max(values[i], floor);
  }
  return out;
}

}  // namespace betakde
