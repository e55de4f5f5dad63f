#pragma once

#include <vector>

#include "spca/blocks.hpp"
#include "spca/solvers.hpp"
#include "spca/sym_matrix.hpp"

namespace spca {

struct BlockSolveRecord {
  int block = 0;  // index into the decomposition's block list
  double objective = 0.0;
  double seconds = 0.0;
};

struct FrameworkResult {
  SparseSolution solution;  // indices refer to the original matrix
  double epsilon = 0.0;
  BlockDecomposition decomposition;
  std::vector<BlockSolveRecord> per_block;
  int winning_block = -1;  // -1 when the degenerate fallback was used
  double guarantee = 0.0;  // guarantee_bound at the achieved objective
};

// Thresholds a at epsilon, splits the survivor pattern into blocks, solves
// each block with the supplied solver (blocks smaller than k fall back to a
// plain dense eigenpair), and returns the candidate whose quadratic form on
// the original matrix is largest. When thresholding wipes out every entry,
// the best diagonal singleton of the original matrix is returned.
FrameworkResult solve_with_threshold(const SymMatrix& a, int k, double epsilon,
                                     const Solver& solver);

struct GapReport {
  double opt_original = 0.0;
  double opt_thresholded_on_original = 0.0;
  double gap = 0.0;
};

// Exhaustively solves both a and its thresholded counterpart (evaluating the
// latter's optimizer on a) and checks |difference| <= 2*k*epsilon + 1e-8,
// throwing if the inequality fails. Guarded to dimension <= 14 because of
// the double enumeration.
GapReport verify_gap(const SymMatrix& a, int k, double epsilon);

}  // namespace spca
