#pragma once

// Offline codebook construction (unimodular enumeration inside trace
// spheres), online precoder selection, persistence and the 4-D channel
// reproduction pipeline.

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "latprec/bounds.hpp"
#include "latprec/enumeration.hpp"
#include "latprec/forms.hpp"
#include "latprec/isometry.hpp"
#include "latprec/perfect.hpp"
#include "latprec/precoder.hpp"
#include "latprec/reduction.hpp"

namespace latprec {

inline constexpr const char* kSpecVersion = "1";

struct CodebookEntry {
  QuadraticForm form;      // Z^T G_L Z, lambda = 1 exactly
  Eigen::MatrixXd gen;     // L * Z
  std::string source;      // "class<i>/Z<j>"
};

struct Codebook {
  int dim = 0;
  std::vector<CodebookEntry> entries;
  double trace_bound = 0;
  double max_ratio = 0;  // assumed maximum of s_1 / det(S)^{1/N}
};

namespace detail {

// canonical key of a column multiset: canonical-signed columns, sorted
inline std::vector<IntVec> column_key(const std::vector<IntVec>& cols) {
  std::vector<IntVec> key;
  for (const auto& c : cols) key.push_back(canonical_sign(c));
  std::sort(key.begin(), key.end());
  return key;
}

inline UnimodularMatrix columns_to_matrix(const std::vector<IntVec>& cols) {
  int n = static_cast<int>(cols.front().size());
  IntMat m(static_cast<size_t>(n), IntVec(cols.size(), 0));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < n; ++i)
      m[static_cast<size_t>(i)][j] = cols[j][static_cast<size_t>(i)];
  return UnimodularMatrix(std::move(m));
}

inline bool columns_independent(const std::vector<IntVec>& cols) {
  int n = static_cast<int>(cols.front().size());
  int k = static_cast<int>(cols.size());
  RatMat m = rat_zeros(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i)
      m[i][static_cast<size_t>(j)] = rat_of(cols[static_cast<size_t>(j)][static_cast<size_t>(i)]);
  return rat_rank(std::move(m)) == k;
}

}  // namespace detail

/// All det = +-1 column selections (with signs) from a finite vector set,
/// deduplicated by column-permutation/sign canonicalization.
inline std::vector<UnimodularMatrix> enumerate_unimodular_from(const std::vector<IntVec>& vecset,
                                                               int n) {
  std::vector<UnimodularMatrix> out;
  if (static_cast<int>(vecset.size()) < n) return out;
  std::vector<int> idx(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
  const int m = static_cast<int>(vecset.size());
  // column order and signs do not change |det|, so increasing index
  // combinations with canonical signs already enumerate one matrix per class
  while (true) {
    std::vector<IntVec> cols;
    for (int j = 0; j < n; ++j)
      cols.push_back(detail::canonical_sign(vecset[static_cast<size_t>(idx[static_cast<size_t>(j)])]));
    IntMat mat(static_cast<size_t>(n), IntVec(static_cast<size_t>(n), 0));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        mat[static_cast<size_t>(i)][static_cast<size_t>(j)] = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
    Int d = int_det(mat);
    if (d == 1 || d == -1) out.push_back(UnimodularMatrix(std::move(mat)));
    int k = n - 1;
    while (k >= 0 && idx[static_cast<size_t>(k)] == m - n + k) --k;
    if (k < 0) break;
    ++idx[static_cast<size_t>(k)];
    for (int j = k + 1; j < n; ++j)
      idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
  return out;
}

/// All unimodular Z with tr(Z^T G_L Z) <= trace_cap, columns drawn from the
/// complete short-vector list with a running trace budget.
inline std::vector<UnimodularMatrix> enumerate_unimodular_in_sphere(const QuadraticForm& g_l,
                                                                    const Rat& trace_cap) {
  const int n = g_l.dim();
  Rat lambda = min_distance(g_l).form_min;
  if (trace_cap < Rat(n) * lambda)
    throw EmptyBudget("enumerate_unimodular_in_sphere: cap below N * lambda");

  Rat column_budget = trace_cap - Rat(n - 1) * lambda;
  auto cands = shortest_vectors(g_l, column_budget);  // sorted by value

  std::vector<UnimodularMatrix> out;
  std::vector<IntVec> cols;
  std::vector<Rat> costs;

  // increasing index combinations; signs are canonicalized, which is
  // enough because the dedup classes are exactly column perms and signs
  auto rec = [&](auto&& self, size_t from, const Rat& used) -> void {
    if (static_cast<int>(cols.size()) == n) {
      IntMat m(static_cast<size_t>(n), IntVec(cols.size(), 0));
      for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < n; ++i)
          m[static_cast<size_t>(i)][j] = cols[j][static_cast<size_t>(i)];
      Int d = int_det(m);
      if (d == 1 || d == -1) out.push_back(UnimodularMatrix(std::move(m)));
      return;
    }
    int remaining = n - static_cast<int>(cols.size());
    for (size_t i = from; i < cands.size(); ++i) {
      const Rat& cost = cands[i].second;
      if (used + cost + Rat(remaining - 1) * lambda > trace_cap) break;  // sorted
      cols.push_back(cands[i].first);
      if (detail::columns_independent(cols)) self(self, i + 1, used + cost);
      cols.pop_back();
    }
  };
  rec(rec, 0, Rat(0));
  return out;
}

/// Offline construction: enumerate perfect-form classes up to the assumed
/// worst-case trace bound, reduce each class representative, and sweep the
/// unimodular sphere of each reduced form.
inline Codebook build_codebook(int n, double max_ratio) {
  if (n < 2 || n > 5) throw DimError("build_codebook: dimension must be in [2,5]");
  if (max_ratio < 1.0) throw DimError("build_codebook: max ratio must be >= 1");

  const double trace_bound_f = static_cast<double>(n) * max_ratio * max_ratio;
  Rat trace_bound = rationalize(trace_bound_f, 1'000'000) + Rat(1, 1'000'000);  // slack only admits

  auto records = enumerate_perfect_forms(root_lattice_form(n), trace_bound);
  auto reps = isometry_classes(records);

  std::vector<QuadraticForm> reduced;
  for (const auto& rep : reps) reduced.push_back(minkowski_reduce(rep).first);

  // Eq.-(18)-style worst case cap over the stored reduced forms
  double min_omega = 0;
  for (size_t i = 0; i < reduced.size(); ++i) {
    EigenSym es = eigen_sym(reduced[i].floats());
    double w = es.values(n - 1);
    if (i == 0 || w < min_omega) min_omega = w;
  }
  const double z_cap = static_cast<double>(n) / min_omega * max_ratio * max_ratio;

  Codebook cb;
  cb.dim = n;
  cb.trace_bound = trace_bound_f;
  cb.max_ratio = max_ratio;

  for (size_t ci = 0; ci < reduced.size(); ++ci) {
    const QuadraticForm& g_l = reduced[ci];
    GeneratorMatrix l = generator_of(g_l);
    auto zs = enumerate_unimodular_in_sphere(g_l, trace_bound);
    int kept = 0;
    for (const auto& z : zs) {
      // secondary prune: tr(Z Z^T) bound
      double ztr = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          ztr += static_cast<double>(z.at(i, j)) * static_cast<double>(z.at(i, j));
      if (ztr > z_cap + 1e-9) continue;

      QuadraticForm g_b = congruent_form(g_l, z);
      bool dup = false;
      for (const auto& e : cb.entries)
        if (permutation_equivalent(g_b, e.form)) { dup = true; break; }
      if (dup) continue;
      cb.entries.push_back(CodebookEntry{g_b, l.mat() * z.floats(),
                                         "class" + std::to_string(ci) + "/Z" + std::to_string(kept)});
      ++kept;
    }
  }

  std::sort(cb.entries.begin(), cb.entries.end(), [](const auto& a, const auto& b) {
    return a.form.canonical_less(b.form);
  });
  return cb;
}

/// Online selection: minimum objective over the codebook, deterministic
/// tie-break by canonical entry order.
inline PrecoderResult select_precoder(const ChannelSpectrum& s, const Codebook& cb) {
  if (cb.dim != s.dim()) throw DimError("select_precoder: dimension mismatch");
  if (cb.entries.empty()) throw DimError("select_precoder: empty codebook");
  int best = -1;
  double best_power = 0;
  for (int i = 0; i < static_cast<int>(cb.entries.size()); ++i) {
    double p = objective(cb.entries[static_cast<size_t>(i)].form, s);
    if (best < 0 || p < best_power - 1e-15) { best = i; best_power = p; }
  }
  const auto& e = cb.entries[static_cast<size_t>(best)];
  return build_precoder(e.form, s, e.source);
}

// ---------------------------------------------------------------------------
// Persistence: UTF-8 JSON, rationals as parallel num/den arrays in packed
// upper-triangle order. Exactness survives serialization; floats advisory.

inline nlohmann::json form_to_json(const QuadraticForm& g) {
  nlohmann::json num = nlohmann::json::array();
  nlohmann::json den = nlohmann::json::array();
  for (const Rat& q : g.packed()) {
    num.push_back(q.get_num().get_str());
    den.push_back(q.get_den().get_str());
  }
  return nlohmann::json{{"gram_num", num}, {"gram_den", den}};
}

inline QuadraticForm form_from_json(int dim, const nlohmann::json& j) {
  const auto& num = j.at("gram_num");
  const auto& den = j.at("gram_den");
  if (num.size() != den.size() || static_cast<int>(num.size()) != packed_size(dim))
    throw DimError("form_from_json: packed length mismatch");
  RatVec packed;
  for (size_t k = 0; k < num.size(); ++k) {
    Rat q(Int(num[k].get<std::string>()), Int(den[k].get<std::string>()));
    q.canonicalize();
    packed.push_back(q);
  }
  return QuadraticForm(dim, std::move(packed));
}

inline nlohmann::json codebook_to_json(const Codebook& cb) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : cb.entries) {
    nlohmann::json je = form_to_json(e.form);
    nlohmann::json gen = nlohmann::json::array();
    for (int i = 0; i < cb.dim; ++i)
      for (int j = 0; j < cb.dim; ++j) gen.push_back(e.gen(i, j));
    je["gen"] = gen;
    je["source"] = e.source;
    entries.push_back(je);
  }
  return nlohmann::json{{"spec_version", kSpecVersion},
                        {"dim", cb.dim},
                        {"build_params", {{"trace_bound", cb.trace_bound}, {"max_ratio", cb.max_ratio}}},
                        {"entries", entries}};
}

inline Codebook codebook_from_json(const nlohmann::json& j) {
  Codebook cb;
  cb.dim = j.at("dim").get<int>();
  cb.trace_bound = j.at("build_params").at("trace_bound").get<double>();
  cb.max_ratio = j.at("build_params").at("max_ratio").get<double>();
  for (const auto& je : j.at("entries")) {
    QuadraticForm g = form_from_json(cb.dim, je);
    if (min_distance(g).form_min != 1)
      throw NumericalError("codebook_from_json: stored entry with lambda != 1");
    Eigen::MatrixXd gen(cb.dim, cb.dim);
    const auto& arr = je.at("gen");
    for (int i = 0; i < cb.dim; ++i)
      for (int k = 0; k < cb.dim; ++k)
        gen(i, k) = arr[static_cast<size_t>(i * cb.dim + k)].get<double>();
    cb.entries.push_back(CodebookEntry{g, gen, je.at("source").get<std::string>()});
  }
  return cb;
}

inline void save_codebook(const Codebook& cb, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_codebook: cannot open " + path);
  os << codebook_to_json(cb).dump(2) << "\n";
}

inline Codebook load_codebook(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_codebook: cannot open " + path);
  nlohmann::json j;
  is >> j;
  return codebook_from_json(j);
}

// ---------------------------------------------------------------------------
// 4-D reproduction pipeline

inline QuadraticForm d4_form() {
  RatMat g = rat_zeros(4, 4);
  Rat h(1, 2);
  g[0][0] = 1; g[0][2] = h;
  g[1][1] = 1; g[1][2] = -h;
  g[2][0] = h; g[2][1] = -h; g[2][2] = 1; g[2][3] = -h;
  g[3][2] = -h; g[3][3] = 1;
  return QuadraticForm::from_full(g);
}

inline QuadraticForm a4_form() { return root_lattice_form(4); }

struct Repro4dReport {
  std::string winner_a;  // channel diag(1, 0.95, 0.94, 0.93)
  std::string winner_b;  // channel diag(1, 0.99, 0.94, 0.93)
  double obj_a_best_a4 = 0, obj_a_best_d4 = 0;
  double obj_b_best_a4 = 0, obj_b_best_d4 = 0;
  double gram_trace_ub_a = 0, gram_trace_ub_b = 0;
  int n_unimodular_a4 = 0, n_unimodular_d4 = 0;
};

/// Full section-style pipeline over the two example channels: minimal
/// vectors via enumeration, unimodular assembly from them, objective
/// comparison, winner per channel.
inline Repro4dReport repro_4d() {
  QuadraticForm gd4 = d4_form();
  QuadraticForm ga4 = a4_form();
  auto min_d4 = min_distance(gd4);
  auto min_a4 = min_distance(ga4);

  auto z_d4 = enumerate_unimodular_from(min_d4.vectors, 4);
  auto z_a4 = enumerate_unimodular_from(min_a4.vectors, 4);

  ChannelSpectrum s_a({1.0, 0.95, 0.94, 0.93});
  ChannelSpectrum s_b({1.0, 0.99, 0.94, 0.93});

  auto best_obj = [&](const QuadraticForm& g, const std::vector<UnimodularMatrix>& zs,
                      const ChannelSpectrum& s) {
    double best = 0;
    bool first = true;
    for (const auto& z : zs) {
      double p = objective(congruent_form(g, z), s);
      if (first || p < best) { best = p; first = false; }
    }
    return best;
  };

  Repro4dReport rep;
  rep.n_unimodular_a4 = static_cast<int>(z_a4.size());
  rep.n_unimodular_d4 = static_cast<int>(z_d4.size());
  rep.obj_a_best_a4 = best_obj(ga4, z_a4, s_a);
  rep.obj_a_best_d4 = best_obj(gd4, z_d4, s_a);
  rep.obj_b_best_a4 = best_obj(ga4, z_a4, s_b);
  rep.obj_b_best_d4 = best_obj(gd4, z_d4, s_b);
  rep.winner_a = rep.obj_a_best_a4 < rep.obj_a_best_d4 ? "A4" : "D4";
  rep.winner_b = rep.obj_b_best_a4 < rep.obj_b_best_d4 ? "A4" : "D4";
  rep.gram_trace_ub_a = gram_trace_bound(s_a);
  rep.gram_trace_ub_b = gram_trace_bound(s_b);

  if (rep.winner_a != "A4")
    throw ReproFailure("repro_4d: expected A4 to win diag(1,0.95,0.94,0.93)");
  if (rep.winner_b != "D4")
    throw ReproFailure("repro_4d: expected D4 to win diag(1,0.99,0.94,0.93)");
  return rep;
}

}  // namespace latprec
