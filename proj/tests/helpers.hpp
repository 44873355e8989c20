#pragma once

// Shared corpus generators for the test suite.

#include <random>

#include "latprec/enumeration.hpp"
#include "latprec/forms.hpp"
#include "latprec/precoder.hpp"

namespace testutil {

using namespace latprec;

// Gram of the hexagonal lattice in its reduced (g12 >= 0) orientation.
inline QuadraticForm hex_form() {
  RatMat g = rat_zeros(2, 2);
  g[0][0] = 1; g[0][1] = Rat(1, 2);
  g[1][0] = Rat(1, 2); g[1][1] = 1;
  return QuadraticForm::from_full(g);
}

inline QuadraticForm d4() {
  RatMat g = rat_zeros(4, 4);
  Rat h(1, 2);
  g[0][0] = 1; g[0][2] = h;
  g[1][1] = 1; g[1][2] = -h;
  g[2][0] = h; g[2][1] = -h; g[2][2] = 1; g[2][3] = -h;
  g[3][2] = -h; g[3][3] = 1;
  return QuadraticForm::from_full(g);
}

/// Random exact-rational PD form G = B^T B with B entries in (1/8)Z and the
/// singular-value ratio of B capped, which caps shortest-vector coordinates
/// at ||x|| <= cond (so brute-force boxes of size >= cond are complete).
inline QuadraticForm random_pd_form(std::mt19937& rng, int n, double max_cond = 4.0) {
  std::uniform_int_distribution<int> coef(-10, 10);
  for (;;) {
    Eigen::MatrixXd bf(n, n);
    RatMat br = rat_zeros(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int k = coef(rng);
        br[static_cast<size_t>(i)][static_cast<size_t>(j)] = Rat(k, 8);
        bf(i, j) = k / 8.0;
      }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(bf);
    double smin = svd.singularValues()(n - 1);
    if (smin < 0.25 || svd.singularValues()(0) / smin > max_cond) continue;
    RatMat g = rat_mul(rat_transpose(br), br);
    return QuadraticForm::from_full(g);
  }
}

/// Random unimodular matrix as a product of elementary row operations.
inline UnimodularMatrix random_unimodular(std::mt19937& rng, int n, int ops = 8) {
  IntMat z(static_cast<size_t>(n), IntVec(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i) z[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> mult(-2, 2);
  for (int t = 0; t < ops; ++t) {
    int i = pick(rng), j = pick(rng);
    if (i == j) { for (auto& e : z[static_cast<size_t>(i)]) e = -e; continue; }
    int c = mult(rng);
    if (c == 0) c = 1;
    for (int k = 0; k < n; ++k)
      z[static_cast<size_t>(i)][static_cast<size_t>(k)] +=
          static_cast<long long>(c) * z[static_cast<size_t>(j)][static_cast<size_t>(k)];
  }
  return UnimodularMatrix(std::move(z));
}

inline ChannelSpectrum random_spectrum(std::mt19937& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> s(static_cast<size_t>(n));
  for (auto& v : s) v = d(rng);
  return ChannelSpectrum(std::move(s));
}

}  // namespace testutil
