#pragma once

#include <span>
#include <vector>

#include "spca/sym_matrix.hpp"

namespace spca {

// Connected components of a thresholded matrix's nonzero pattern. Indices
// whose entire row is zero (diagonal included) are isolated and form no
// block; an index whose only nonzero is its diagonal forms a singleton
// block. Blocks carry entries of the matrix the pattern was derived from,
// not the thresholded one.
struct BlockDecomposition {
  std::vector<std::vector<int>> index_sets;  // each ascending, ordered by smallest member
  std::vector<SymMatrix> blocks;             // blocks[i] == submatrix(a, index_sets[i])
  std::vector<int> isolated;                 // ascending
  int largest_block = 0;                     // 0 when there are no blocks

  int num_blocks() const { return static_cast<int>(index_sets.size()); }
};

// a_eps supplies the sparsity pattern, a supplies the block entries.
// The two must have the same dimension.
BlockDecomposition decompose(const SymMatrix& a, const SymMatrix& a_eps);

// Largest block size after thresholding a at epsilon: the size of the
// biggest coupled index group any entrywise perturbation bounded by epsilon
// can still force. Requires epsilon >= 0.
int intrinsic_dimension(const SymMatrix& a, double epsilon);

struct IntdimPoint {
  double epsilon = 0.0;
  int intdim = 0;
  int num_blocks = 0;
  int largest_block = 0;
};

// intrinsic_dimension and block counts over an ascending, nonnegative grid.
std::vector<IntdimPoint> intdim_profile(const SymMatrix& a, std::span<const double> grid);

}  // namespace spca
