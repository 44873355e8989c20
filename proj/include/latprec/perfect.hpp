#pragma once

// Traversal of perfect forms (vertices of the Ryshkov polytope R_1) within
// a trace bound: minimal-vector cone construction, extreme rays via the
// double description method in exact rational arithmetic, and neighbor
// stepping along rays.

#include <algorithm>
#include <optional>
#include <queue>
#include <vector>

#include "latprec/enumeration.hpp"
#include "latprec/forms.hpp"
#include "latprec/isometry.hpp"

namespace latprec {

/// One traversal record: a perfect form normalized to lambda = 1.
struct PerfectFormRecord {
  QuadraticForm form;
  MinVecSet min_vectors;
  bool visited = false;
  Rat trace;
};

/// Direction in the packed N(N+1)/2-dimensional form space, normalized to
/// a primitive integer vector pointing into the cone.
struct RayDirection {
  int dim;
  RatVec packed;  // same packing as QuadraticForm

  /// x^T T x for the symmetric matrix this direction represents.
  Rat eval(const IntVec& x) const {
    Rat acc(0);
    for (int i = 0; i < dim; ++i) {
      if (x[static_cast<size_t>(i)] == 0) continue;
      acc += packed[static_cast<size_t>(packed_index(dim, i, i))] *
             rat_of(x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)]);
      for (int j = i + 1; j < dim; ++j)
        acc += 2 * packed[static_cast<size_t>(packed_index(dim, i, j))] *
               rat_of(x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)]);
    }
    return acc;
  }
};

/// The A_N pattern: 1 on the diagonal, -1/2 on the first off-diagonals.
inline QuadraticForm root_lattice_form(int n) {
  if (n < 2) throw DimError("root_lattice_form: N must be >= 2");
  RatVec packed(static_cast<size_t>(packed_size(n)), Rat(0));
  for (int i = 0; i < n; ++i)
    packed[static_cast<size_t>(packed_index(n, i, i))] = 1;
  for (int i = 0; i + 1 < n; ++i)
    packed[static_cast<size_t>(packed_index(n, i, i + 1))] = Rat(-1, 2);
  return QuadraticForm(n, std::move(packed));
}

/// One integer functional <x x^T, .> per +-pair, on the packed space
/// (off-diagonal coefficients doubled for symmetry).
inline std::vector<IntVec> minimal_cone_inequalities(const MinVecSet& mv) {
  if (mv.vectors.empty()) throw DimError("minimal_cone_inequalities: empty set");
  const int n = static_cast<int>(mv.vectors.front().size());
  std::vector<IntVec> out;
  for (const IntVec& x : mv.vectors) {
    IntVec row(static_cast<size_t>(packed_size(n)), 0);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        long long c = x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)];
        if (i != j) c *= 2;
        row[static_cast<size_t>(packed_index(n, i, j))] = c;
      }
    out.push_back(std::move(row));
  }
  return out;
}

namespace detail {

inline RatVec normalize_primitive(const RatVec& v) {
  Int num_gcd(0), den_lcm(1);
  for (const Rat& q : v) {
    if (q == 0) continue;
    den_lcm = lcm(den_lcm, Int(q.get_den()));
  }
  RatVec scaled = v;
  for (auto& q : scaled) q *= Rat(den_lcm);
  for (const Rat& q : scaled)
    if (q != 0) num_gcd = gcd(num_gcd, Int(q.get_num()));
  if (num_gcd == 0) return scaled;
  for (auto& q : scaled) q /= Rat(num_gcd);
  return scaled;
}

inline Rat dot(const IntVec& a, const RatVec& b) {
  Rat acc(0);
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] != 0) acc += b[k] * rat_of(a[k]);
  return acc;
}

}  // namespace detail

/// Complete list of extreme rays of {T : <a_i, T> >= 0} for a pointed cone,
/// by incremental double description. Adjacency is decided combinatorially
/// over the tight sets of the inequalities processed so far.
inline std::vector<RayDirection> extreme_rays(const std::vector<IntVec>& ineqs, int d) {
  RatMat a_all = rat_zeros(static_cast<int>(ineqs.size()), d);
  for (size_t r = 0; r < ineqs.size(); ++r)
    for (int c = 0; c < d; ++c) a_all[r][static_cast<size_t>(c)] = rat_of(ineqs[r][static_cast<size_t>(c)]);
  if (rat_rank(a_all) < d)
    throw ConeNotPointed("extreme_rays: inequality system has rank < d");

  // Greedy selection of d linearly independent rows for the initial
  // simplicial cone.
  std::vector<int> base;
  {
    RatMat acc;
    for (size_t r = 0; r < ineqs.size() && static_cast<int>(base.size()) < d; ++r) {
      acc.push_back(a_all[r]);
      if (rat_rank(acc) == static_cast<int>(acc.size()))
        base.push_back(static_cast<int>(r));
      else
        acc.pop_back();
    }
  }

  // rays of the simplicial cone: columns of B^{-1}
  RatMat binv;
  {
    int n = d;
    RatMat aug = rat_zeros(n, 2 * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) aug[i][j] = a_all[static_cast<size_t>(base[static_cast<size_t>(i)])][static_cast<size_t>(j)];
      aug[i][static_cast<size_t>(n + i)] = 1;
    }
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int r = col; r < n; ++r)
        if (aug[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) { piv = r; break; }
      std::swap(aug[static_cast<size_t>(piv)], aug[static_cast<size_t>(col)]);
      Rat inv = 1 / aug[static_cast<size_t>(col)][static_cast<size_t>(col)];
      for (int j = 0; j < 2 * n; ++j) aug[static_cast<size_t>(col)][static_cast<size_t>(j)] *= inv;
      for (int r = 0; r < n; ++r) {
        if (r == col || aug[static_cast<size_t>(r)][static_cast<size_t>(col)] == 0) continue;
        Rat f = aug[static_cast<size_t>(r)][static_cast<size_t>(col)];
        for (int j = 0; j < 2 * n; ++j)
          aug[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * aug[static_cast<size_t>(col)][static_cast<size_t>(j)];
      }
    }
    binv = rat_zeros(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) binv[i][j] = aug[static_cast<size_t>(i)][static_cast<size_t>(j + d)];
  }

  std::vector<RatVec> rays;
  for (int j = 0; j < d; ++j) {
    RatVec r(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) r[static_cast<size_t>(i)] = binv[i][j];
    rays.push_back(detail::normalize_primitive(r));
  }

  std::vector<int> processed = base;
  auto tight_set = [&](const RatVec& ray) {
    std::vector<int> t;
    for (int idx : processed)
      if (detail::dot(ineqs[static_cast<size_t>(idx)], ray) == 0) t.push_back(idx);
    return t;
  };

  for (size_t r = 0; r < ineqs.size(); ++r) {
    if (std::find(base.begin(), base.end(), static_cast<int>(r)) != base.end()) continue;
    const IntVec& a = ineqs[r];
    std::vector<RatVec> pos, zero, neg;
    for (const auto& ray : rays) {
      Rat s = detail::dot(a, ray);
      if (s > 0) pos.push_back(ray);
      else if (s == 0) zero.push_back(ray);
      else neg.push_back(ray);
    }
    if (neg.empty()) {
      processed.push_back(static_cast<int>(r));
      continue;
    }
    std::vector<RatVec> next = pos;
    next.insert(next.end(), zero.begin(), zero.end());
    for (const auto& p : pos) {
      auto tp = tight_set(p);
      for (const auto& nray : neg) {
        auto tn = tight_set(nray);
        std::vector<int> common;
        std::set_intersection(tp.begin(), tp.end(), tn.begin(), tn.end(),
                              std::back_inserter(common));
        if (static_cast<int>(common.size()) < d - 2) continue;
        // combinatorial adjacency: no third ray is tight on all of `common`
        bool adjacent = true;
        for (const auto& other : rays) {
          if (other == p || other == nray) continue;
          bool contains = true;
          for (int idx : common)
            if (detail::dot(ineqs[static_cast<size_t>(idx)], other) != 0) { contains = false; break; }
          if (contains) { adjacent = false; break; }
        }
        if (!adjacent) continue;
        Rat sp = detail::dot(a, p), sn = detail::dot(a, nray);
        RatVec comb(static_cast<size_t>(d));
        for (int k = 0; k < d; ++k)
          comb[static_cast<size_t>(k)] = sp * nray[static_cast<size_t>(k)] - sn * p[static_cast<size_t>(k)];
        next.push_back(detail::normalize_primitive(comb));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    rays = std::move(next);
    processed.push_back(static_cast<int>(r));
  }

  std::sort(rays.begin(), rays.end());
  std::vector<RayDirection> out;
  for (auto& r : rays) out.push_back(RayDirection{0, std::move(r)});
  return out;
}

/// True iff span{x x^T : x in Min(G)} has full dimension N(N+1)/2.
inline bool is_perfect(const QuadraticForm& g) {
  MinVecSet mv = min_distance(g);
  auto ineqs = minimal_cone_inequalities(mv);
  const int d = packed_size(g.dim());
  RatMat m = rat_zeros(static_cast<int>(ineqs.size()), d);
  for (size_t r = 0; r < ineqs.size(); ++r)
    for (int c = 0; c < d; ++c) m[r][static_cast<size_t>(c)] = rat_of(ineqs[r][static_cast<size_t>(c)]);
  return rat_rank(std::move(m)) == d;
}

namespace detail {

inline QuadraticForm form_plus(const QuadraticForm& g, const RayDirection& t, const Rat& alpha) {
  RatVec p = g.packed();
  for (size_t k = 0; k < p.size(); ++k) p[k] += alpha * t.packed[k];
  return QuadraticForm(g.dim(), std::move(p));
}

inline bool pd_along(const QuadraticForm& g, const RayDirection& t, const Rat& alpha) {
  RatVec p = g.packed();
  for (size_t k = 0; k < p.size(); ++k) p[k] += alpha * t.packed[k];
  return is_positive_definite_packed(g.dim(), p);
}

}  // namespace detail

namespace detail {

enum class RayStep { kHigh, kDrop, kBad };  // lambda >= 1 / lambda < 1 / unusable

inline RayStep probe_step(const QuadraticForm& g, const RayDirection& t, const Rat& u) {
  if (!pd_along(g, t, u)) return RayStep::kBad;
  try {
    return min_distance(form_plus(g, t, u)).form_min < 1 ? RayStep::kDrop : RayStep::kHigh;
  } catch (const ConditioningError&) {
    return RayStep::kBad;  // too close to the PD boundary to enumerate
  }
}

}  // namespace detail

/// The unique smallest alpha > 0 with lambda(G + alpha T) = 1 and new
/// minimal vectors outside Min(G). G must be perfect with lambda = 1.
inline QuadraticForm neighbor_form(const QuadraticForm& g, const RayDirection& t_in) {
  RayDirection t = t_in;
  t.dim = g.dim();

  // grow until the minimum drops below 1 (or PD is lost on the way)
  Rat u(1);
  Rat lo(0);  // largest step known to keep lambda >= 1
  bool have_drop = false;
  for (int it = 0; it < 48 && !have_drop; ++it) {
    if (u > Rat(1L << 40)) throw RayUnbounded("neighbor_form: no lambda drop along ray");
    detail::RayStep st = detail::probe_step(g, t, u);
    if (st == detail::RayStep::kDrop) { have_drop = true; break; }
    if (st == detail::RayStep::kHigh) {
      lo = u;
      u *= 2;
      continue;
    }
    // bisect back into usable territory until the drop is visible
    Rat hi = u;
    for (int bs = 0; bs < 256; ++bs) {
      Rat mid = (lo + hi) / 2;
      detail::RayStep sm = detail::probe_step(g, t, mid);
      if (sm == detail::RayStep::kDrop) { u = mid; have_drop = true; break; }
      if (sm == detail::RayStep::kHigh) lo = mid;
      else hi = mid;
    }
    break;
  }
  if (!have_drop) throw RayUnbounded("neighbor_form: no lambda drop along ray");

  // shrink to the exact boundary: the nonzero vectors dipping below 1 give
  // candidate steps alpha_x = (1 - G[x]) / T[x]
  while (true) {
    QuadraticForm gu = detail::form_plus(g, t, u);
    auto below = shortest_vectors(gu, Rat(1));
    Rat best(-1);
    for (const auto& [x, v] : below) {
      if (v >= 1) continue;
      Rat tx = t.eval(x);
      if (tx >= 0) throw NumericalError("neighbor_form: dipping vector with T[x] >= 0");
      Rat alpha = (1 - g.eval(x)) / tx;
      if (best < 0 || alpha < best) best = alpha;
    }
    if (best < 0) break;  // fixpoint: nothing below 1 anymore
    u = best;
  }
  return detail::form_plus(g, t, u);
}

struct EnumerationOptions {
  bool permutation_pruning = true;
};

/// Algorithm-1 style traversal: lowest-trace-first work list, neighbors kept
/// when they satisfy the trace bound and are not signed-permutation images
/// of a stored form.
inline std::vector<PerfectFormRecord> enumerate_perfect_forms(
    const QuadraticForm& start, const Rat& trace_bound,
    const EnumerationOptions& opts = {}) {
  {
    MinVecSet mv = min_distance(start);
    if (mv.form_min != 1) throw DimError("enumerate_perfect_forms: start must have lambda = 1");
    if (!is_perfect(start)) throw DimError("enumerate_perfect_forms: start form not perfect");
    if (start.trace() > trace_bound)
      throw DimError("enumerate_perfect_forms: start exceeds trace bound");
  }

  std::vector<PerfectFormRecord> records;
  auto store = [&](const QuadraticForm& f) {
    PerfectFormRecord rec{f, min_distance(f), false, f.trace()};
    records.push_back(std::move(rec));
  };
  auto already_stored = [&](const QuadraticForm& f) {
    for (const auto& rec : records) {
      if (opts.permutation_pruning) {
        if (permutation_equivalent(f, rec.form)) return true;
      } else {
        if (f == rec.form) return true;
      }
    }
    return false;
  };

  store(start);
  const int d = packed_size(start.dim());

  while (true) {
    // lowest-trace unvisited record
    int pick = -1;
    for (int i = 0; i < static_cast<int>(records.size()); ++i) {
      if (records[static_cast<size_t>(i)].visited) continue;
      if (pick < 0 || records[static_cast<size_t>(i)].form.canonical_less(records[static_cast<size_t>(pick)].form))
        pick = i;
    }
    if (pick < 0) break;
    records[static_cast<size_t>(pick)].visited = true;

    // copy what we need; `records` reallocates as neighbors get stored
    QuadraticForm current = records[static_cast<size_t>(pick)].form;
    MinVecSet mv = records[static_cast<size_t>(pick)].min_vectors;

    auto ineqs = minimal_cone_inequalities(mv);
    auto rays = extreme_rays(ineqs, d);
    for (const auto& ray : rays) {
      QuadraticForm neighbor = [&]() -> QuadraticForm {
        try {
          return neighbor_form(current, ray);
        } catch (const RayUnbounded&) {
          return current;  // sentinel: skip below
        }
      }();
      if (neighbor == current) continue;
      if (neighbor.trace() > trace_bound) continue;
      if (already_stored(neighbor)) continue;
      store(neighbor);
    }
  }

  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.form.canonical_less(b.form);
  });
  return records;
}

/// Collapse records to isometry-class representatives (post-pass).
inline std::vector<QuadraticForm> isometry_classes(const std::vector<PerfectFormRecord>& recs) {
  std::vector<QuadraticForm> reps;
  for (const auto& rec : recs) {
    bool known = false;
    for (const auto& rep : reps)
      if (is_isometric(rec.form, rep)) { known = true; break; }
    if (!known) reps.push_back(rec.form);
  }
  return reps;
}

}  // namespace latprec
