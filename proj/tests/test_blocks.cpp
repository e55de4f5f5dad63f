#include <doctest.h>

#include <algorithm>
#include <vector>

#include "oracles.hpp"
#include "spca/blocks.hpp"
#include "spca/threshold.hpp"

using spca::BlockDecomposition;
using spca::SymMatrix;

TEST_CASE("decompose partitions like the union-find reference") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SymMatrix a = oracle::random_symmetric(10, seed);
    for (double eps : {0.0, 0.5, 1.0, 1.8}) {
      const SymMatrix t = spca::denoise(a, eps).result;
      const BlockDecomposition dec = spca::decompose(a, t);
      const auto expected = oracle::components_by_union_find(t);
      REQUIRE(dec.index_sets.size() == expected.size());
      for (std::size_t g = 0; g < expected.size(); ++g) CHECK(dec.index_sets[g] == expected[g]);

      int largest = 0;
      for (const auto& g : expected) largest = std::max(largest, static_cast<int>(g.size()));
      CHECK(dec.largest_block == largest);

      std::vector<char> covered(10, 0);
      for (const auto& g : dec.index_sets)
        for (int i : g) covered[i] = 1;
      for (int i : dec.isolated) {
        CHECK(!covered[i]);
        covered[i] = 1;
      }
      for (int i = 0; i < 10; ++i) CHECK(covered[i]);
    }
  }
}

TEST_CASE("isolated indices differ from diagonal-only singleton blocks") {
  // Row 0 couples with 1; row 2 keeps only its diagonal; row 3 vanishes.
  const SymMatrix a = SymMatrix::from_rows({{1.0, 0.9, 0.0, 0.0},
                                            {0.9, 1.0, 0.0, 0.0},
                                            {0.0, 0.0, 0.8, 0.0},
                                            {0.0, 0.0, 0.0, 0.0}});
  const BlockDecomposition dec = spca::decompose(a, a);
  REQUIRE(dec.num_blocks() == 2);
  CHECK(dec.index_sets[0] == std::vector<int>{0, 1});
  CHECK(dec.index_sets[1] == std::vector<int>{2});
  CHECK(dec.isolated == std::vector<int>{3});
  CHECK(dec.largest_block == 2);
}

TEST_CASE("blocks carry entries of the source matrix, not the pattern matrix") {
  const SymMatrix a = SymMatrix::from_rows({{1.0, 0.1, 0.0},
                                            {0.1, 1.0, 0.0},
                                            {0.0, 0.0, 2.0}});
  const SymMatrix t = spca::denoise(a, 0.5).result;  // kills the 0.1 coupling
  const BlockDecomposition dec = spca::decompose(a, t);
  REQUIRE(dec.num_blocks() == 3);
  for (int b = 0; b < 3; ++b) {
    REQUIRE(dec.blocks[b].dim() == 1);
    const int idx = dec.index_sets[b][0];
    CHECK(dec.blocks[b](0, 0) == a(idx, idx));
  }

  const BlockDecomposition whole = spca::decompose(a, a);
  REQUIRE(whole.num_blocks() == 2);
  CHECK(whole.blocks[0](0, 1) == 0.1);
}

TEST_CASE("decompose rejects mismatched dimensions") {
  const SymMatrix a = SymMatrix::zero(3);
  const SymMatrix b = SymMatrix::zero(2);
  CHECK_THROWS_AS(spca::decompose(a, b), std::invalid_argument);
}

TEST_CASE("an all-zero pattern yields no blocks") {
  const SymMatrix a = oracle::random_symmetric(5, 4);
  const SymMatrix t = spca::denoise(a, spca::inf_norm(a)).result;
  const BlockDecomposition dec = spca::decompose(a, t);
  CHECK(dec.num_blocks() == 0);
  CHECK(dec.largest_block == 0);
  CHECK(dec.isolated == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("intrinsic dimension of simple shapes") {
  CHECK(spca::intrinsic_dimension(SymMatrix::diagonal({3, 2, 1}), 0.5) == 1);
  CHECK(spca::intrinsic_dimension(SymMatrix::diagonal({3, 2, 1}), 3.0) == 0);

  const SymMatrix coupled = SymMatrix::from_rows({{1.0, 0.6}, {0.6, 1.0}});
  CHECK(spca::intrinsic_dimension(coupled, 0.5) == 2);
  CHECK(spca::intrinsic_dimension(coupled, 0.6) == 1);  // ties are dropped

  CHECK_THROWS_AS(spca::intrinsic_dimension(coupled, -1.0), std::invalid_argument);
}

TEST_CASE("intrinsic dimension never grows with the threshold") {
  for (std::uint64_t seed = 50; seed < 58; ++seed) {
    const SymMatrix a = oracle::random_symmetric(8, seed);
    int prev = spca::intrinsic_dimension(a, 0.0);
    for (double eps : {0.2, 0.5, 0.9, 1.4, 2.2}) {
      const int cur = spca::intrinsic_dimension(a, eps);
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("profile walks the grid and mirrors intrinsic_dimension") {
  const SymMatrix a = oracle::random_symmetric(8, 99);
  const std::vector<double> grid = {0.0, 0.3, 0.9, 2.0};
  const auto points = spca::intdim_profile(a, grid);
  REQUIRE(points.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(points[i].epsilon == grid[i]);
    CHECK(points[i].intdim == spca::intrinsic_dimension(a, grid[i]));
    const spca::BlockDecomposition dec = spca::decompose(a, spca::denoise(a, grid[i]).result);
    CHECK(points[i].num_blocks == dec.num_blocks());
    CHECK(points[i].largest_block == dec.largest_block);
    if (i) CHECK(points[i].intdim <= points[i - 1].intdim);
  }
}

TEST_CASE("profile rejects bad grids") {
  const SymMatrix a = SymMatrix::zero(2);
  CHECK_THROWS_AS(spca::intdim_profile(a, std::vector<double>{0.5, 0.2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(spca::intdim_profile(a, std::vector<double>{-0.1, 0.2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(spca::intdim_profile(a, std::vector<double>{}), std::invalid_argument);
}
