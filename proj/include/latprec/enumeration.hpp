#pragma once

// Fincke-Pohst enumeration of short lattice vectors, with exact rational
// re-verification of every floating-point candidate, plus brute-force
// oracles used by the tests.

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "latprec/forms.hpp"
#include "latprec/jacobi.hpp"

namespace latprec {

namespace detail {

inline IntVec canonical_sign(IntVec x) {
  for (long long v : x) {
    if (v > 0) break;
    if (v < 0) {
      for (auto& e : x) e = -e;
      break;
    }
  }
  return x;
}

inline bool lex_less(const IntVec& a, const IntVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline void check_conditioning(const QuadraticForm& g) {
  EigenSym es = eigen_sym(g.floats());
  double wmax = es.values(0);
  double wmin = es.values(g.dim() - 1);
  if (!(wmin > 0) || wmax / wmin > 1e6)
    throw ConditioningError("enumeration: form dynamic range exceeds 1e6");
}

}  // namespace detail

/// All nonzero integer x (one per +-pair) with G[x] <= bound, exact values.
/// Complete: the float search radius carries a safety margin and every
/// candidate is re-checked in rational arithmetic.
inline std::vector<std::pair<IntVec, Rat>> shortest_vectors(const QuadraticForm& g,
                                                            const Rat& bound) {
  if (bound <= 0) throw DimError("shortest_vectors: bound must be positive");
  detail::check_conditioning(g);
  const int n = g.dim();

  // float Cholesky G ~= R^T R
  Eigen::MatrixXd r = generator_of(g).mat();
  const double c = to_double(bound) + 1e-6;

  std::map<IntVec, Rat> found;
  IntVec x(static_cast<size_t>(n), 0);
  // partial[i] = squared norm contribution of coordinates i..n-1
  // center[i] = -(sum_{j>i} R(i,j) x_j)/R(i,i)
  std::vector<double> partial(static_cast<size_t>(n) + 1, 0.0);

  // depth-first from the last coordinate
  std::vector<long long> lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n));
  int i = n - 1;
  bool descend = true;
  while (i < n) {
    if (descend) {
      double rem = c - partial[static_cast<size_t>(i) + 1];
      double center = 0.0;
      for (int j = i + 1; j < n; ++j) center -= r(i, j) * x[static_cast<size_t>(j)];
      center /= r(i, i);
      double half = std::sqrt(std::max(0.0, rem)) / r(i, i);
      lo[static_cast<size_t>(i)] = static_cast<long long>(std::ceil(center - half - 1e-9));
      hi[static_cast<size_t>(i)] = static_cast<long long>(std::floor(center + half + 1e-9));
      x[static_cast<size_t>(i)] = lo[static_cast<size_t>(i)] - 1;
      descend = false;
    }
    if (x[static_cast<size_t>(i)] < hi[static_cast<size_t>(i)]) {
      ++x[static_cast<size_t>(i)];
      double center = 0.0;
      for (int j = i + 1; j < n; ++j) center += r(i, j) * x[static_cast<size_t>(j)];
      double t = r(i, i) * x[static_cast<size_t>(i)] + center;
      partial[static_cast<size_t>(i)] = partial[static_cast<size_t>(i) + 1] + t * t;
      if (partial[static_cast<size_t>(i)] > c + 1e-9) continue;
      if (i == 0) {
        bool nonzero = false;
        for (long long v : x) nonzero |= (v != 0);
        if (nonzero) {
          Rat val = g.eval(x);
          if (val <= bound) found.emplace(detail::canonical_sign(x), val);
        }
      } else {
        --i;
        descend = true;
        continue;
      }
      descend = false;
    } else {
      ++i;
      descend = false;
    }
  }

  std::vector<std::pair<IntVec, Rat>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return detail::lex_less(a.first, b.first);
  });
  return out;
}

/// lambda_1 and all attaining +-pairs. g11 is always an attained value,
/// so it serves as the initial (and sufficient) search bound.
inline MinVecSet min_distance(const QuadraticForm& g) {
  auto cands = shortest_vectors(g, g.at(0, 0));
  Rat lambda = cands.front().second;
  for (const auto& [x, v] : cands) lambda = std::min(lambda, v);
  MinVecSet out;
  out.form_min = lambda;
  for (const auto& [x, v] : cands)
    if (v == lambda) out.vectors.push_back(x);
  return out;
}

/// Smallest form value above lambda_1 (value-based second minimum).
inline Rat successive_minimum_2(const QuadraticForm& g) {
  Rat lambda = min_distance(g).form_min;
  Rat bound = 2 * lambda;
  for (int it = 0; it < 64; ++it) {
    auto cands = shortest_vectors(g, bound);
    Rat best(-1);
    for (const auto& [x, v] : cands)
      if (v > lambda && (best < 0 || v < best)) best = v;
    if (best > 0) return best;
    bound *= 2;
  }
  throw NumericalError("successive_minimum_2: no second minimum found");
}

/// Brute-force oracle: min of G[x] over nonzero x with ||x||_inf <= box.
inline Rat brute_force_min(const QuadraticForm& g, int box) {
  if (box < 1) throw DimError("brute_force_min: box must be >= 1");
  const int n = g.dim();
  IntVec x(static_cast<size_t>(n), -static_cast<long long>(box));
  Rat best(-1);
  while (true) {
    bool nonzero = false;
    for (long long v : x) nonzero |= (v != 0);
    if (nonzero) {
      Rat val = g.eval(x);
      if (best < 0 || val < best) best = val;
    }
    int i = 0;
    while (i < n && x[static_cast<size_t>(i)] == box) {
      x[static_cast<size_t>(i)] = -box;
      ++i;
    }
    if (i == n) break;
    ++x[static_cast<size_t>(i)];
  }
  return best;
}

/// Brute-force companion set oracle: all +-pairs with G[x] <= bound inside
/// the box (used by completeness tests).
inline std::vector<std::pair<IntVec, Rat>> brute_force_below(const QuadraticForm& g,
                                                             const Rat& bound, int box) {
  const int n = g.dim();
  IntVec x(static_cast<size_t>(n), -static_cast<long long>(box));
  std::map<IntVec, Rat> found;
  while (true) {
    bool nonzero = false;
    for (long long v : x) nonzero |= (v != 0);
    if (nonzero) {
      Rat val = g.eval(x);
      if (val <= bound) found.emplace(detail::canonical_sign(x), val);
    }
    int i = 0;
    while (i < n && x[static_cast<size_t>(i)] == box) {
      x[static_cast<size_t>(i)] = -box;
      ++i;
    }
    if (i == n) break;
    ++x[static_cast<size_t>(i)];
  }
  std::vector<std::pair<IntVec, Rat>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return detail::lex_less(a.first, b.first);
  });
  return out;
}

}  // namespace latprec
