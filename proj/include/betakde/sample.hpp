#pragma once

#include <vector>

namespace betakde {

//! Immutable batch of univariate observations with cached summary
//! statistics.  Values are sorted ascending on construction.
class Sample {
 public:
  //! Requires at least two finite values; ties are allowed.
  explicit Sample(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  int n() const { return static_cast<int>(values_.size()); }
  double stddev() const { return stddev_; }  // n-1 denominator
  double iqr() const { return iqr_; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

 private:
  std::vector<double> values_;
  double stddev_ = 0.0;
  double iqr_ = 0.0;
};

//! Linear-interpolation quantile of an ascending-sorted vector.
double sorted_quantile(const std::vector<double>& sorted, double p);

}  // namespace betakde
