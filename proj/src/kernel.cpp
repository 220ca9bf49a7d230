#include "betakde/kernel.hpp"

#include <cmath>

#include "betakde/normal.hpp"

namespace betakde {

Kernel gaussian_kernel() {
  Kernel k;
  k.evaluate = [](double u) { return normal_pdf(u); };
  k.second_derivative = [](double u) {
    return (u * u - 1.0) * normal_pdf(u);
  };
  k.evaluate_pair = [](double u, double& kv, double& kpp) {
    kv = normal_pdf(u);
    kpp = (u * u - 1.0) * kv;
  };
  k.mu2 = 1.0;
  k.mu4 = 3.0;
  k.roughness = 0.28209479177387814347;  // (4 pi)^{-1/2}
  k.support_radius = 8.0;
  return k;
}

}  // namespace betakde
