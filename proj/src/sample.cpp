#include "betakde/sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace betakde {

double sorted_quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty vector");
  if (p <= 0.0) return sorted.front();
  if (p >= 1.0) return sorted.back();
  const double k = p * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(k);
  const double frac = k - static_cast<double>(i);
  if (i + 1 >= sorted.size()) return sorted.back();
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw std::invalid_argument("Sample requires at least 2 observations");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Sample contains a non-finite value");
    }
  }
  std::sort(values_.begin(), values_.end());

  const auto n = static_cast<double>(values_.size());
  double mean = 0.0;
  for (double v : values_) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values_) ss += (v - mean) * (v - mean);
  stddev_ = std::sqrt(ss / (n - 1.0));
  iqr_ = sorted_quantile(values_, 0.75) - sorted_quantile(values_, 0.25);
}

}  // namespace betakde
