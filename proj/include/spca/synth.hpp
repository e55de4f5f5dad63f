#pragma once

#include <cstdint>
#include <vector>

#include "spca/sym_matrix.hpp"

namespace spca {

enum class NoiseKind { gaussian, bounded_uniform };

// Block covariance with additive symmetric noise. Each block is M'M /
// factor_rows for an iid standard normal factor_rows x block_size matrix M,
// blocks sit on the diagonal, and noise of standard deviation sigma is drawn
// for the lower triangle (diagonal included) and mirrored. bounded_uniform
// draws from [-sigma*sqrt(3), sigma*sqrt(3)] instead, matching the variance.
struct Model1Spec {
  int num_blocks = 1;
  int block_size = 1;
  int factor_rows = 100;
  double sigma = 0.1;
  std::uint64_t seed = 42;
  bool permute = false;
  NoiseKind noise = NoiseKind::gaussian;
};

struct Model1Instance {
  SymMatrix noisy;
  SymMatrix clean;
  // position[i] is where original coordinate i landed; identity when the
  // spec did not ask for a permutation.
  std::vector<int> position;
};

// Deterministic for a given spec: one generator seeded from spec.seed drives
// block entries, then noise, then the relabeling.
Model1Instance generate_model1(const Model1Spec& spec);

// G'G / d for an iid standard normal d x d matrix G.
SymMatrix generate_random_psd(int d, std::uint64_t seed);

// (H + H') / 2 for an iid standard normal d x d matrix H.
SymMatrix generate_random_symmetric(int d, std::uint64_t seed);

}  // namespace spca
