#pragma once

// Greedy Minkowski reduction with basis-extendability certified through
// minor gcds, and the B = U L Z factorization built on top of it.

#include <Eigen/Dense>
#include <numeric>
#include <vector>

#include "latprec/enumeration.hpp"
#include "latprec/forms.hpp"

namespace latprec {

constexpr int kMaxReductionDim = 12;  // shortest-basis search is NP-hard

struct MinkowskiFactorization {
  Eigen::MatrixXd u;   // orthogonal
  GeneratorMatrix l;   // Minkowski-reduced basis
  UnimodularMatrix z;  // B = U L Z
};

namespace detail {

// Can [w_0..w_{k-1}] be extended to a lattice basis? Holds iff the gcd of
// all k x k minors is 1.
inline bool extendable(const std::vector<IntVec>& ws) {
  int n = static_cast<int>(ws.front().size());
  int k = static_cast<int>(ws.size());
  IntMat cols(static_cast<size_t>(n), IntVec(static_cast<size_t>(k), 0));
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i)
      cols[static_cast<size_t>(i)][static_cast<size_t>(j)] = ws[static_cast<size_t>(j)][static_cast<size_t>(i)];
  return minor_gcd(cols, k) == 1;
}

}  // namespace detail

/// Definition-2 greedy reduction: column by column, pick the shortest
/// vector extendable to a basis, then fix signs so g_{i,i+1} >= 0.
/// Returns (G_L, Z) with G_B = Z^T G_L Z exactly.
inline std::pair<QuadraticForm, UnimodularMatrix> minkowski_reduce(const QuadraticForm& g_b) {
  const int n = g_b.dim();
  if (n > kMaxReductionDim)
    throw DimError("minkowski_reduce: dimension above supported limit");

  Rat max_diag(0);
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, g_b.at(i, i));

  std::vector<IntVec> ws;
  for (int col = 0; col < n; ++col) {
    Rat bound = max_diag;
    const IntVec* pick = nullptr;
    std::vector<std::pair<IntVec, Rat>> cands;
    for (int grow = 0; grow < 32 && !pick; ++grow) {
      cands = shortest_vectors(g_b, bound);
      for (const auto& [x, v] : cands) {
        ws.push_back(x);
        bool ok = detail::extendable(ws);
        ws.pop_back();
        if (ok) { pick = &x; break; }
      }
      if (!pick) bound *= 2;
    }
    if (!pick) throw NumericalError("minkowski_reduce: no extendable candidate found");
    ws.push_back(*pick);
  }

  IntMat w(static_cast<size_t>(n), IntVec(static_cast<size_t>(n), 0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      w[static_cast<size_t>(i)][static_cast<size_t>(j)] = ws[static_cast<size_t>(j)][static_cast<size_t>(i)];
  UnimodularMatrix wm(w);

  // sign sweep, left to right: enforce g_{i,i+1} >= 0
  RatMat gl = rat_congruence(g_b.full(), wm.entries());
  IntMat wfixed = wm.entries();
  for (int i = 0; i + 1 < n; ++i) {
    if (gl[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] < 0) {
      for (int r = 0; r < n; ++r) wfixed[static_cast<size_t>(r)][static_cast<size_t>(i + 1)] *= -1;
      for (int r = 0; r < n; ++r) {
        gl[static_cast<size_t>(r)][static_cast<size_t>(i + 1)] *= -1;
        gl[static_cast<size_t>(i + 1)][static_cast<size_t>(r)] *= -1;
      }
    }
  }
  UnimodularMatrix wfinal(wfixed);
  QuadraticForm g_l = QuadraticForm::from_full(rat_congruence(g_b.full(), wfinal.entries()));
  return {g_l, wfinal.inverse()};
}

/// Radius-limited verifier of Definition 2 (a check, not a proof; box = 3
/// suffices for the N <= 5 corpus).
inline bool is_minkowski_reduced(const QuadraticForm& g, int box = 3) {
  if (box < 2) throw DimError("is_minkowski_reduced: box must be >= 2");
  const int n = g.dim();
  for (int i = 0; i + 1 < n; ++i)
    if (g.at(i, i + 1) < 0) return false;  // condition (ii)

  IntVec v(static_cast<size_t>(n), -static_cast<long long>(box));
  while (true) {
    bool nonzero = false;
    for (long long e : v) nonzero |= (e != 0);
    if (nonzero) {
      long long suffix_gcd = 0;
      for (int i = n - 1; i >= 0; --i) {
        suffix_gcd = std::gcd(suffix_gcd, std::abs(v[static_cast<size_t>(i)]));
        if (suffix_gcd == 1 && g.eval(v) < g.at(i, i)) return false;  // condition (i)
      }
    }
    int i = 0;
    while (i < n && v[static_cast<size_t>(i)] == box) {
      v[static_cast<size_t>(i)] = -box;
      ++i;
    }
    if (i == n) break;
    ++v[static_cast<size_t>(i)];
  }
  return true;
}

/// B = U L Z with U orthogonal, L Minkowski-reduced, Z unimodular.
inline MinkowskiFactorization factorize_ULZ(const GeneratorMatrix& b) {
  QuadraticForm g_b = gram_of(b);
  auto [g_l, z] = minkowski_reduce(g_b);
  GeneratorMatrix l = generator_of(g_l);
  Eigen::MatrixXd lz = l.mat() * z.floats();
  Eigen::MatrixXd u0 = b.mat() * lz.inverse();
  const int n = b.dim();
  if ((u0.transpose() * u0 - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-6)
    throw OrthogonalityCheckFailed("factorize_ULZ: U^T U deviates from identity");
  // polar snap to an exactly orthogonal U
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(u0, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd u = svd.matrixU() * svd.matrixV().transpose();
  return MinkowskiFactorization{u, l, z};
}

}  // namespace latprec
