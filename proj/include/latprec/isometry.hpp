#pragma once

// Exact isometry and signed-permutation equivalence tests between forms.

#include <algorithm>
#include <optional>
#include <vector>

#include "latprec/enumeration.hpp"
#include "latprec/forms.hpp"

namespace latprec {

/// G1 = c * Z^T G2 Z, exactly.
struct IsometryWitness {
  Rat scale;
  UnimodularMatrix map;
};

namespace detail {

struct IsoSearch {
  const QuadraticForm& g1;  // normalized, lambda = 1
  const QuadraticForm& g2;
  std::vector<IntVec> candidates;  // both signs, deterministic order
  std::vector<IntVec> chosen;

  bool extend(int col) {
    const int n = g1.dim();
    if (col == n) {
      IntMat z(static_cast<size_t>(n), IntVec(static_cast<size_t>(n), 0));
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          z[static_cast<size_t>(i)][static_cast<size_t>(j)] =
              chosen[static_cast<size_t>(j)][static_cast<size_t>(i)];
      Int d = int_det(z);
      return d == 1 || d == -1;
    }
    for (const IntVec& v : candidates) {
      if (g2.eval(v) != g1.at(col, col)) continue;
      bool ok = true;
      for (int j = 0; j < col && ok; ++j)
        ok = (g2.inner(chosen[static_cast<size_t>(j)], v) == g1.at(j, col));
      if (!ok) continue;
      chosen.push_back(v);
      if (extend(col + 1)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace detail

/// Search for unimodular Z with G1 = c Z^T G2 Z after normalizing both to
/// lambda = 1. Candidate images are minimal-style vectors of equal form
/// value, pruned by pairwise inner products; deterministic order.
inline std::optional<IsometryWitness> is_isometric(const QuadraticForm& g1_in,
                                                   const QuadraticForm& g2_in) {
  if (g1_in.dim() != g2_in.dim()) throw DimError("is_isometric: dim mismatch");
  Rat l1 = min_distance(g1_in).form_min;
  Rat l2 = min_distance(g2_in).form_min;
  QuadraticForm g1 = g1_in.scaled(1 / l1);
  QuadraticForm g2 = g2_in.scaled(1 / l2);

  // Cheap invariants first: determinant and minimal-vector count are
  // preserved (the diagonal multiset is not — only signed permutations
  // preserve that).
  if (g1.det() != g2.det()) return std::nullopt;
  if (min_distance(g1).vectors.size() != min_distance(g2).vectors.size())
    return std::nullopt;

  Rat max_diag(0);
  for (int i = 0; i < g1.dim(); ++i) max_diag = std::max(max_diag, g1.at(i, i));
  auto pairs = shortest_vectors(g2, max_diag);
  std::vector<IntVec> cands;
  for (const auto& [x, v] : pairs) {
    cands.push_back(x);
    IntVec neg = x;
    for (auto& e : neg) e = -e;
    cands.push_back(neg);
  }

  detail::IsoSearch search{g1, g2, std::move(cands), {}};
  if (!search.extend(0)) return std::nullopt;

  const int n = g1.dim();
  IntMat z(static_cast<size_t>(n), IntVec(static_cast<size_t>(n), 0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      z[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          search.chosen[static_cast<size_t>(j)][static_cast<size_t>(i)];
  UnimodularMatrix zm(z);
  Rat c = l1 / l2;
  // exact verification of the witness
  QuadraticForm check = congruent_form(g2_in, zm).scaled(c);
  if (!(check == g1_in))
    throw NumericalError("is_isometric: witness verification failed");
  return IsometryWitness{c, zm};
}

/// True iff G1 = Pi^T G2 Pi for a signed permutation Pi.
inline bool permutation_equivalent(const QuadraticForm& g1, const QuadraticForm& g2) {
  if (g1.dim() != g2.dim()) throw DimError("permutation_equivalent: dim mismatch");
  const int n = g1.dim();

  RatVec d1, d2;
  for (int i = 0; i < n; ++i) {
    d1.push_back(g1.at(i, i));
    d2.push_back(g2.at(i, i));
  }
  RatVec s1 = d1, s2 = d2;
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  if (s1 != s2) return false;

  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  do {
    bool diag_ok = true;
    for (int i = 0; i < n && diag_ok; ++i)
      diag_ok = (d1[static_cast<size_t>(i)] == d2[static_cast<size_t>(perm[static_cast<size_t>(i)])]);
    if (!diag_ok) continue;
    // signs: global sign cancels in the congruence, fix s_0 = +1
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
      std::vector<int> sign(static_cast<size_t>(n), 1);
      for (int i = 1; i < n; ++i)
        if (mask & (1u << (i - 1))) sign[static_cast<size_t>(i)] = -1;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        for (int j = i + 1; j < n && ok; ++j)
          ok = (g1.at(i, j) == Rat(sign[static_cast<size_t>(i)] * sign[static_cast<size_t>(j)]) *
                                   g2.at(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]));
      if (ok) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace latprec
