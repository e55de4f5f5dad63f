#include "spca/threshold.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace spca {

ThresholdedMatrix denoise(const SymMatrix& a, double epsilon) {
  if (!(epsilon >= 0.0))
    throw std::invalid_argument("denoise: epsilon must be a nonnegative number");
  std::vector<double> kept = a.entries();
  for (double& v : kept)
    if (!(std::fabs(v) > epsilon)) v = 0.0;
  return ThresholdedMatrix{epsilon, SymMatrix(a.dim(), std::move(kept),
                                              a.has_labels() ? a.labels()
                                                             : std::vector<std::string>{})};
}

}  // namespace spca
