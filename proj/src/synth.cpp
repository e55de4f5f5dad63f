#include "spca/synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace spca {

namespace {

void set_sym(std::vector<double>& e, int d, int i, int j, double v) {
  e[static_cast<std::size_t>(i) * d + j] = v;
  e[static_cast<std::size_t>(j) * d + i] = v;
}

}  // namespace

Model1Instance generate_model1(const Model1Spec& spec) {
  if (spec.num_blocks < 1 || spec.block_size < 1)
    throw std::invalid_argument("generate_model1: block layout must be positive");
  if (spec.factor_rows < 1)
    throw std::invalid_argument("generate_model1: factor_rows must be positive");
  if (!(spec.sigma >= 0.0))
    throw std::invalid_argument("generate_model1: sigma must be nonnegative");

  const int d = spec.num_blocks * spec.block_size;
  const int bs = spec.block_size;
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> clean(static_cast<std::size_t>(d) * d, 0.0);
  std::vector<double> factor(static_cast<std::size_t>(spec.factor_rows) * bs);
  for (int b = 0; b < spec.num_blocks; ++b) {
    for (double& f : factor) f = gauss(rng);
    const int off = b * bs;
    for (int i = 0; i < bs; ++i) {
      for (int j = 0; j <= i; ++j) {
        double acc = 0.0;
        for (int r = 0; r < spec.factor_rows; ++r)
          acc += factor[static_cast<std::size_t>(r) * bs + i] *
                 factor[static_cast<std::size_t>(r) * bs + j];
        set_sym(clean, d, off + i, off + j, acc / spec.factor_rows);
      }
    }
  }

  std::vector<double> noisy = clean;
  if (spec.sigma > 0.0) {
    const double half_width = spec.sigma * std::sqrt(3.0);
    std::uniform_real_distribution<double> uniform(-half_width, half_width);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j <= i; ++j) {
        const double e = spec.noise == NoiseKind::gaussian ? spec.sigma * gauss(rng)
                                                           : uniform(rng);
        set_sym(noisy, d, i, j,
                noisy[static_cast<std::size_t>(i) * d + j] + e);
      }
    }
  }

  Model1Instance out;
  out.position.resize(d);
  for (int i = 0; i < d; ++i) out.position[i] = i;
  if (spec.permute) {
    for (int i = d - 1; i > 0; --i) {
      std::uniform_int_distribution<int> pick(0, i);
      std::swap(out.position[i], out.position[pick(rng)]);
    }
    std::vector<double> pn(static_cast<std::size_t>(d) * d);
    std::vector<double> pc(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const std::size_t dst =
            static_cast<std::size_t>(out.position[i]) * d + out.position[j];
        pn[dst] = noisy[static_cast<std::size_t>(i) * d + j];
        pc[dst] = clean[static_cast<std::size_t>(i) * d + j];
      }
    }
    noisy.swap(pn);
    clean.swap(pc);
  }
  out.noisy = SymMatrix(d, std::move(noisy));
  out.clean = SymMatrix(d, std::move(clean));
  return out;
}

SymMatrix generate_random_psd(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("generate_random_psd: dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> g(static_cast<std::size_t>(d) * d);
  for (double& v : g) v = gauss(rng);
  std::vector<double> e(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double acc = 0.0;
      for (int r = 0; r < d; ++r)
        acc += g[static_cast<std::size_t>(r) * d + i] * g[static_cast<std::size_t>(r) * d + j];
      set_sym(e, d, i, j, acc / d);
    }
  }
  return SymMatrix(d, std::move(e));
}

SymMatrix generate_random_symmetric(int d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("generate_random_symmetric: dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> h(static_cast<std::size_t>(d) * d);
  for (double& v : h) v = gauss(rng);
  std::vector<double> e(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j)
      set_sym(e, d, i, j,
              0.5 * (h[static_cast<std::size_t>(i) * d + j] +
                     h[static_cast<std::size_t>(j) * d + i]));
  return SymMatrix(d, std::move(e));
}

}  // namespace spca
