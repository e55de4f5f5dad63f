#pragma once

#include "spca/sym_matrix.hpp"

namespace spca {

struct ThresholdedMatrix {
  double epsilon = 0.0;
  SymMatrix result;
};

// Entrywise hard threshold: keeps A_ij exactly when |A_ij| > epsilon and
// zeroes it otherwise, diagonal included. The comparison is strict, so
// entries whose magnitude equals epsilon are dropped. Requires epsilon >= 0.
ThresholdedMatrix denoise(const SymMatrix& a, double epsilon);

}  // namespace spca
