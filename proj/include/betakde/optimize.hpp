#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace betakde {

//! Golden-section minimization of a unimodal function on [lo, hi] to
//! absolute tolerance tol.  Deterministic.
template <class F>
double golden_section_min(F&& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section_min: lo >= hi");
  if (!(tol > 0)) throw std::invalid_argument("golden_section_min: tol <= 0");
  constexpr double invphi = 0.61803398874989484820;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

//! count points log-spaced on [lo, hi] inclusive, strictly increasing.
inline std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0 && lo < hi)) {
    throw std::invalid_argument("log_spaced: need 0 < lo < hi");
  }
  if (count < 2) throw std::invalid_argument("log_spaced: count < 2");
  std::vector<double> out(count);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i) {
    out[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace betakde
