#include "spca/blocks.hpp"

#include <algorithm>
#include <stdexcept>

#include "spca/threshold.hpp"

namespace spca {

BlockDecomposition decompose(const SymMatrix& a, const SymMatrix& a_eps) {
  const int d = a.dim();
  if (a_eps.dim() != d)
    throw std::invalid_argument("decompose: pattern and source dimensions differ");

  // -1 = unvisited, -2 = isolated, otherwise component id.
  std::vector<int> component(d, -1);
  std::vector<char> has_entry(d, 0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (a_eps(i, j) != 0.0) {
        has_entry[i] = 1;
        break;
      }
    }
  }

  BlockDecomposition out;
  std::vector<int> stack;
  for (int start = 0; start < d; ++start) {
    if (component[start] != -1) continue;
    if (!has_entry[start]) {
      component[start] = -2;
      out.isolated.push_back(start);
      continue;
    }
    const int id = out.num_blocks();
    std::vector<int> members;
    stack.clear();
    stack.push_back(start);
    component[start] = id;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      members.push_back(i);
      for (int j = 0; j < d; ++j) {
        if (j != i && a_eps(i, j) != 0.0 && component[j] == -1) {
          component[j] = id;
          stack.push_back(j);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.index_sets.push_back(std::move(members));
  }

  for (const auto& members : out.index_sets) {
    out.largest_block = std::max(out.largest_block, static_cast<int>(members.size()));
    out.blocks.push_back(submatrix(a, members));
  }
  return out;
}

int intrinsic_dimension(const SymMatrix& a, double epsilon) {
  const SymMatrix pattern = denoise(a, epsilon).result;
  return decompose(a, pattern).largest_block;
}

std::vector<IntdimPoint> intdim_profile(const SymMatrix& a, std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("intdim_profile: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0))
      throw std::invalid_argument("intdim_profile: grid values must be nonnegative");
    if (i > 0 && grid[i] < grid[i - 1])
      throw std::invalid_argument("intdim_profile: grid must be sorted ascending");
  }
  std::vector<IntdimPoint> out;
  out.reserve(grid.size());
  for (double eps : grid) {
    const BlockDecomposition dec = decompose(a, denoise(a, eps).result);
    out.push_back({eps, dec.largest_block, dec.num_blocks(), dec.largest_block});
  }
  return out;
}

}  // namespace spca
