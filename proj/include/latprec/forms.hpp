#pragma once

// Core lattice types: quadratic forms with exact rational entries,
// real generator matrices and integer unimodular basis changes.

#include <Eigen/Dense>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "latprec/errors.hpp"
#include "latprec/linalg.hpp"
#include "latprec/rational.hpp"

namespace latprec {

inline int packed_size(int n) { return n * (n + 1) / 2; }

// Index of (i,j), i <= j, in the packed upper triangle
// (g11,...,g1N, g22,...,g2N, ..., gNN).
inline int packed_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

/// Symmetric positive-definite Gram matrix with exact rational entries.
class QuadraticForm {
 public:
  QuadraticForm(int n, RatVec packed) : n_(n), packed_(std::move(packed)) {
    if (n_ < 1) throw DimError("QuadraticForm: dim must be positive");
    if (static_cast<int>(packed_.size()) != packed_size(n_))
      throw DimError("QuadraticForm: packed size mismatch");
    check_positive_definite();
    rebuild_mirror();
  }

  static QuadraticForm from_full(const RatMat& g) {
    int n = static_cast<int>(g.size());
    RatVec packed(static_cast<size_t>(packed_size(n)));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        if (g[i][j] != g[j][i])
          throw DimError("QuadraticForm: input not symmetric");
        packed[static_cast<size_t>(packed_index(n, i, j))] = g[i][j];
      }
    return QuadraticForm(n, std::move(packed));
  }

  int dim() const { return n_; }
  const RatVec& packed() const { return packed_; }
  const Rat& at(int i, int j) const {
    return packed_[static_cast<size_t>(packed_index(n_, i, j))];
  }
  const Eigen::MatrixXd& floats() const { return mirror_; }

  RatMat full() const {
    RatMat g = rat_zeros(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) g[i][j] = at(i, j);
    return g;
  }

  Rat trace() const {
    Rat t(0);
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
  }

  Rat det() const { return rat_det(full()); }

  /// Exact x^T G x.
  Rat eval(const IntVec& x) const {
    if (static_cast<int>(x.size()) != n_)
      throw DimError("quadratic_eval: dimension mismatch");
    Rat acc(0);
    for (int i = 0; i < n_; ++i) {
      if (x[static_cast<size_t>(i)] == 0) continue;
      acc += at(i, i) * rat_of(x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)]);
      for (int j = i + 1; j < n_; ++j)
        acc += 2 * at(i, j) * rat_of(x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)]);
    }
    return acc;
  }

  /// Exact x^T G y.
  Rat inner(const IntVec& x, const IntVec& y) const {
    Rat acc(0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        acc += at(i, j) * rat_of(x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)]);
    return acc;
  }

  QuadraticForm scaled(const Rat& c) const {
    RatVec p = packed_;
    for (auto& e : p) e *= c;
    return QuadraticForm(n_, std::move(p));
  }

  bool operator==(const QuadraticForm& o) const {
    return n_ == o.n_ && packed_ == o.packed_;
  }

  // Canonical order: trace first, then lexicographic packed entries.
  bool canonical_less(const QuadraticForm& o) const {
    Rat ta = trace(), tb = o.trace();
    if (ta != tb) return ta < tb;
    for (size_t k = 0; k < packed_.size(); ++k)
      if (packed_[k] != o.packed_[k]) return packed_[k] < o.packed_[k];
    return false;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n_; ++i) {
      os << (i ? "; " : "");
      for (int j = 0; j < n_; ++j) os << (j ? " " : "") << at(i, j).get_str();
    }
    os << "]";
    return os.str();
  }

 private:
  void check_positive_definite() const {
    // all leading principal minors > 0, exactly
    RatMat g = rat_zeros(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) g[i][j] = at(i, j);
    for (int k = 1; k <= n_; ++k) {
      RatMat sub = rat_zeros(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub[i][j] = g[i][j];
      if (rat_det(std::move(sub)) <= 0)
        throw NotPositiveDefinite("QuadraticForm: leading minor <= 0");
    }
  }

  void rebuild_mirror() {
    mirror_.resize(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) mirror_(i, j) = to_double(at(i, j));
  }

  int n_;
  RatVec packed_;
  Eigen::MatrixXd mirror_;
};

/// Non-throwing positive-definiteness probe for packed rational entries.
inline bool is_positive_definite_packed(int n, const RatVec& packed) {
  RatMat g = rat_zeros(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g[i][j] = packed[static_cast<size_t>(packed_index(n, i, j))];
  for (int k = 1; k <= n; ++k) {
    RatMat sub = rat_zeros(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub[i][j] = g[i][j];
    if (rat_det(std::move(sub)) <= 0) return false;
  }
  return true;
}

/// Real non-singular lattice basis; columns are the basis vectors.
class GeneratorMatrix {
 public:
  explicit GeneratorMatrix(Eigen::MatrixXd m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1)
      throw DimError("GeneratorMatrix: square matrix required");
    const double scale =
        std::max(1.0, std::pow(mat_.norm(), static_cast<double>(mat_.rows())));
    if (std::fabs(mat_.determinant()) < 1e-12 * scale)
      throw DegenerateBasis("GeneratorMatrix: singular basis");
  }

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXd& mat() const { return mat_; }

 private:
  Eigen::MatrixXd mat_;
};

/// Integer matrix with determinant exactly +-1.
class UnimodularMatrix {
 public:
  explicit UnimodularMatrix(IntMat m) : m_(std::move(m)) {
    int n = static_cast<int>(m_.size());
    if (n < 1 || static_cast<int>(m_[0].size()) != n)
      throw DimError("UnimodularMatrix: square matrix required");
    Int d = int_det(m_);
    if (d != 1 && d != -1)
      throw DegenerateBasis("UnimodularMatrix: determinant not +-1");
  }

  static UnimodularMatrix identity(int n) {
    IntMat m(static_cast<size_t>(n), IntVec(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return UnimodularMatrix(std::move(m));
  }

  int dim() const { return static_cast<int>(m_.size()); }
  const IntMat& entries() const { return m_; }
  long long at(int i, int j) const {
    return m_[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }

  UnimodularMatrix inverse() const {
    return UnimodularMatrix(unimodular_inverse(m_));
  }

  UnimodularMatrix times(const UnimodularMatrix& o) const {
    return UnimodularMatrix(int_mul(m_, o.m_));
  }

  Eigen::MatrixXd floats() const {
    int n = dim();
    Eigen::MatrixXd f(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) f(i, j) = static_cast<double>(at(i, j));
    return f;
  }

 private:
  IntMat m_;
};

/// Exact congruence Z^T G Z.
inline QuadraticForm congruent_form(const QuadraticForm& g, const UnimodularMatrix& z) {
  return QuadraticForm::from_full(rat_congruence(g.full(), z.entries()));
}

/// Attained minimum and its representatives (one per +-pair).
struct MinVecSet {
  Rat form_min;
  std::vector<IntVec> vectors;
};

/// Gram matrix B^T B, rationalized entrywise (exact for entries whose
/// denominator fits max_den).
inline QuadraticForm gram_of(const GeneratorMatrix& b, std::int64_t max_den = 1'000'000) {
  const Eigen::MatrixXd g = b.mat().transpose() * b.mat();
  int n = b.dim();
  RatVec packed(static_cast<size_t>(packed_size(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      packed[static_cast<size_t>(packed_index(n, i, j))] = rationalize(g(i, j), max_den);
  return QuadraticForm(n, std::move(packed));
}

inline Rat quadratic_eval(const QuadraticForm& g, const IntVec& x) { return g.eval(x); }

inline double volume(const GeneratorMatrix& b) {
  return std::fabs(b.mat().determinant());
}

/// Upper-triangular L with L^T L = G (floating Cholesky on the mirror).
inline GeneratorMatrix generator_of(const QuadraticForm& g) {
  const Eigen::MatrixXd& a = g.floats();
  int n = g.dim();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);  // upper triangular
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= l(k, j) * l(k, j);
    if (d <= 0) throw NotPositiveDefinite("generator_of: Cholesky breakdown");
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = a(j, i);
      for (int k = 0; k < j; ++k) s -= l(k, j) * l(k, i);
      l(j, i) = s / l(j, j);
    }
  }
  return GeneratorMatrix(l);
}

}  // namespace latprec
