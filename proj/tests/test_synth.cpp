#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "spca/synth.hpp"

using spca::Model1Instance;
using spca::Model1Spec;
using spca::NoiseKind;
using spca::SymMatrix;

TEST_CASE("the block model is deterministic for a given spec") {
  Model1Spec spec;
  spec.num_blocks = 4;
  spec.block_size = 3;
  spec.sigma = 0.2;
  spec.seed = 123;
  const Model1Instance a = spca::generate_model1(spec);
  const Model1Instance b = spca::generate_model1(spec);
  CHECK(a.noisy.entries() == b.noisy.entries());
  CHECK(a.clean.entries() == b.clean.entries());

  spec.seed = 124;
  const Model1Instance c = spca::generate_model1(spec);
  CHECK(a.noisy.entries() != c.noisy.entries());
}

TEST_CASE("the clean matrix is block diagonal and positive semidefinite") {
  Model1Spec spec;
  spec.num_blocks = 3;
  spec.block_size = 4;
  spec.sigma = 0.5;
  spec.seed = 5;
  const Model1Instance inst = spca::generate_model1(spec);
  const int bs = spec.block_size;
  for (int i = 0; i < inst.clean.dim(); ++i)
    for (int j = 0; j < inst.clean.dim(); ++j) {
      if (i / bs != j / bs)
        CHECK(inst.clean(i, j) == 0.0);
      else if (i == j)
        CHECK(inst.clean(i, j) > 0.0);
    }
  CHECK(oracle::lambda_min(inst.clean) >= -1e-10);
}

TEST_CASE("zero noise leaves the clean matrix untouched") {
  Model1Spec spec;
  spec.num_blocks = 2;
  spec.block_size = 5;
  spec.sigma = 0.0;
  const Model1Instance inst = spca::generate_model1(spec);
  CHECK(inst.noisy.entries() == inst.clean.entries());
}

TEST_CASE("gaussian noise perturbs every entry symmetrically") {
  Model1Spec spec;
  spec.num_blocks = 2;
  spec.block_size = 6;
  spec.sigma = 0.3;
  spec.seed = 9;
  const Model1Instance inst = spca::generate_model1(spec);
  int changed = 0;
  for (int i = 0; i < inst.noisy.dim(); ++i)
    for (int j = 0; j <= i; ++j) {
      CHECK(inst.noisy(i, j) == inst.noisy(j, i));
      if (inst.noisy(i, j) != inst.clean(i, j)) ++changed;
    }
  // All 78 lower-triangle entries get independent noise; none should vanish.
  CHECK(changed == 78);
}

TEST_CASE("bounded noise stays inside its variance-matched interval") {
  Model1Spec spec;
  spec.num_blocks = 2;
  spec.block_size = 8;
  spec.sigma = 0.2;
  spec.noise = NoiseKind::bounded_uniform;
  spec.seed = 31;
  const Model1Instance inst = spca::generate_model1(spec);
  const double half_width = spec.sigma * std::sqrt(3.0);
  for (int i = 0; i < inst.noisy.dim(); ++i)
    for (int j = 0; j < inst.noisy.dim(); ++j)
      CHECK(std::fabs(inst.noisy(i, j) - inst.clean(i, j)) <= half_width);
}

TEST_CASE("permutation relabels both matrices consistently") {
  Model1Spec spec;
  spec.num_blocks = 3;
  spec.block_size = 3;
  spec.sigma = 0.1;
  spec.seed = 42;
  const Model1Instance plain = spca::generate_model1(spec);
  CHECK(std::is_sorted(plain.position.begin(), plain.position.end()));

  spec.permute = true;
  const Model1Instance shuffled = spca::generate_model1(spec);
  std::vector<int> sorted = shuffled.position;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> identity(shuffled.position.size());
  std::iota(identity.begin(), identity.end(), 0);
  CHECK(sorted == identity);

  // The permutation is drawn after blocks and noise, so entry (i, j) of the
  // plain instance appears at (position[i], position[j]).
  const int d = plain.noisy.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      CHECK(shuffled.noisy(shuffled.position[i], shuffled.position[j]) == plain.noisy(i, j));
      CHECK(shuffled.clean(shuffled.position[i], shuffled.position[j]) == plain.clean(i, j));
    }
}

TEST_CASE("model parameters are validated") {
  Model1Spec spec;
  spec.num_blocks = 0;
  CHECK_THROWS_AS(spca::generate_model1(spec), std::invalid_argument);
  spec.num_blocks = 1;
  spec.block_size = 0;
  CHECK_THROWS_AS(spca::generate_model1(spec), std::invalid_argument);
  spec.block_size = 1;
  spec.factor_rows = 0;
  CHECK_THROWS_AS(spca::generate_model1(spec), std::invalid_argument);
  spec.factor_rows = 1;
  spec.sigma = -0.5;
  CHECK_THROWS_AS(spca::generate_model1(spec), std::invalid_argument);
}

TEST_CASE("random psd matrices are positive semidefinite and reproducible") {
  const SymMatrix a = spca::generate_random_psd(7, 11);
  const SymMatrix b = spca::generate_random_psd(7, 11);
  CHECK(a.entries() == b.entries());
  CHECK(oracle::lambda_min(a) >= -1e-10);
  CHECK_THROWS_AS(spca::generate_random_psd(0, 1), std::invalid_argument);
}

TEST_CASE("random symmetric matrices mix signs") {
  const SymMatrix a = spca::generate_random_symmetric(10, 17);
  CHECK(a.entries() == spca::generate_random_symmetric(10, 17).entries());
  bool has_negative = false;
  for (double v : a.entries()) has_negative |= v < 0.0;
  CHECK(has_negative);
  CHECK(oracle::lambda_min(a) < 0.0);
  CHECK_THROWS_AS(spca::generate_random_symmetric(-2, 1), std::invalid_argument);
}
