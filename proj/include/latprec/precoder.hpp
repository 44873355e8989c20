#pragma once

// Channel handling, the eigenvalue objective, optimal precoder assembly,
// the geometric mean decomposition and the reduction-based suboptimal
// construction.

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "latprec/enumeration.hpp"
#include "latprec/forms.hpp"
#include "latprec/jacobi.hpp"
#include "latprec/reduction.hpp"

namespace latprec {

/// Descending positive singular values of a non-singular channel.
class ChannelSpectrum {
 public:
  explicit ChannelSpectrum(std::vector<double> s) : s_(std::move(s)) {
    if (s_.empty()) throw DimError("ChannelSpectrum: empty spectrum");
    std::sort(s_.begin(), s_.end(), std::greater<double>());
    if (s_.back() <= 0) throw SingularChannel("ChannelSpectrum: non-positive singular value");
  }

  int dim() const { return static_cast<int>(s_.size()); }
  double operator[](int j) const { return s_[static_cast<size_t>(j)]; }
  const std::vector<double>& values() const { return s_; }

  double det() const {
    double p = 1.0;
    for (double v : s_) p *= v;
    return p;
  }

  Eigen::MatrixXd diagonal() const {
    Eigen::VectorXd v(dim());
    for (int j = 0; j < dim(); ++j) v(j) = s_[static_cast<size_t>(j)];
    return v.asDiagonal();
  }

  Eigen::MatrixXd inverse_diagonal() const {
    Eigen::VectorXd v(dim());
    for (int j = 0; j < dim(); ++j) v(j) = 1.0 / s_[static_cast<size_t>(j)];
    return v.asDiagonal();
  }

 private:
  std::vector<double> s_;
};

struct PrecoderResult {
  Eigen::MatrixXd f;
  double power = 0;
  double dmin2 = 0;
  double normalized_dmin2 = 0;
  std::string source_form;
  std::pair<double, double> bounds{0, 0};  // (lower, upper) energy
};

/// [[Re A, Im A], [-Im A, Re A]].
inline Eigen::MatrixXd realify_matrix(const Eigen::MatrixXcd& a) {
  const auto m = a.rows(), n = a.cols();
  Eigen::MatrixXd out(2 * m, 2 * n);
  out.topLeftCorner(m, n) = a.real();
  out.topRightCorner(m, n) = a.imag();
  out.bottomLeftCorner(m, n) = -a.imag();
  out.bottomRightCorner(m, n) = a.real();
  return out;
}

/// (Re x; Im x).
inline Eigen::VectorXd realify_vector(const Eigen::VectorXcd& x) {
  const auto n = x.size();
  Eigen::VectorXd out(2 * n);
  out.head(n) = x.real();
  out.tail(n) = x.imag();
  return out;
}

struct ChannelDecomposition {
  ChannelSpectrum spectrum;
  Eigen::MatrixXd u;
  Eigen::MatrixXd v;  // H = U S V^T
};

inline ChannelDecomposition spectrum_of(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols()) throw DimError("spectrum_of: square channel expected");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-10 * sv(0))
    throw SingularChannel("spectrum_of: channel is numerically singular");
  std::vector<double> s(sv.data(), sv.data() + sv.size());
  return ChannelDecomposition{ChannelSpectrum(std::move(s)), svd.matrixU(), svd.matrixV()};
}

/// Eq.-(12)-style objective: sum_j omega_j(G) / s_j^2, eigenvalues and
/// spectrum both descending.
inline double objective(const QuadraticForm& g, const ChannelSpectrum& s) {
  if (g.dim() != s.dim()) throw DimError("objective: dimension mismatch");
  EigenSym es = eigen_sym(g.floats());
  double acc = 0;
  for (int j = 0; j < g.dim(); ++j) acc += es.values(j) / (s[j] * s[j]);
  return acc;
}

/// F = S^{-1} sqrt(D) Q^T from the eigendecomposition G = Q D Q^T.
inline PrecoderResult build_precoder(const QuadraticForm& g_opt, const ChannelSpectrum& s,
                                     std::string source = {}) {
  if (g_opt.dim() != s.dim()) throw DimError("build_precoder: dimension mismatch");
  const int n = g_opt.dim();
  EigenSym es = eigen_sym(g_opt.floats());
  if (es.values(n - 1) <= 0) throw NumericalError("build_precoder: non-positive eigenvalue");
  Eigen::VectorXd sqrt_d(n);
  for (int j = 0; j < n; ++j) sqrt_d(j) = std::sqrt(es.values(j));
  Eigen::MatrixXd f = s.inverse_diagonal() * sqrt_d.asDiagonal() * es.vectors.transpose();

  PrecoderResult res;
  res.f = f;
  res.power = (f * f.transpose()).trace();
  res.dmin2 = to_double(min_distance(g_opt).form_min);
  res.normalized_dmin2 = res.dmin2 / res.power;
  res.source_form = std::move(source);
  const double det_l = std::sqrt(to_double(g_opt.det()));
  const double n_d = static_cast<double>(n);
  res.bounds = {n_d * std::pow(det_l / s.det(), 2.0 / n_d),
                n_d * std::pow(1.0 / s.det(), 2.0 / n_d)};
  return res;
}

struct GmdResult {
  Eigen::MatrixXd w;  // orthogonal receiver rotation
  Eigen::MatrixXd f;  // orthogonal precoder
  Eigen::MatrixXd r;  // upper triangular, equal diagonal: W S F = R
};

/// Geometric mean decomposition realized by adjacent-pair equalizing
/// rotations: each 2x2 step moves the pair's diagonal to its geometric
/// mean; sweeps repeat until the diagonal is flat to 1e-12.
inline GmdResult gmd_precoder(const ChannelSpectrum& s) {
  const int n = s.dim();
  Eigen::MatrixXd r = s.diagonal();
  Eigen::MatrixXd w = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd f = Eigen::MatrixXd::Identity(n, n);
  const double gm = std::pow(s.det(), 1.0 / static_cast<double>(n));

  for (int sweep = 0; sweep < 2000; ++sweep) {
    double dev = 0;
    for (int i = 0; i < n; ++i) dev = std::max(dev, std::fabs(r(i, i) - gm));
    if (dev < 1e-13) break;

    for (int i = 0; i + 1 < n; ++i) {
      const double x = r(i, i), y = r(i, i + 1), z = r(i + 1, i + 1);
      const double t = std::sqrt(std::fabs(x * z));
      if (std::fabs(x - t) < 1e-15 && std::fabs(z - t) < 1e-15) continue;

      // right rotation angle: ||B (c, s)^T||^2 = A + R cos(2 theta - phi)
      const double amp_a = 0.5 * (x * x + y * y + z * z);
      const double cx = 0.5 * (x * x - y * y - z * z);
      const double cy = x * y;
      const double rad = std::sqrt(cx * cx + cy * cy);
      double cosv = rad > 0 ? (t * t - amp_a) / rad : 1.0;
      cosv = std::clamp(cosv, -1.0, 1.0);
      const double phi = std::atan2(cy, cx);
      const double theta = 0.5 * (phi + std::acos(cosv));
      const double c = std::cos(theta), sn = std::sin(theta);

      // columns i, i+1 of R and F
      for (int k = 0; k < n; ++k) {
        const double a0 = r(k, i), a1 = r(k, i + 1);
        r(k, i) = c * a0 + sn * a1;
        r(k, i + 1) = -sn * a0 + c * a1;
        const double f0 = f(k, i), f1 = f(k, i + 1);
        f(k, i) = c * f0 + sn * f1;
        f(k, i + 1) = -sn * f0 + c * f1;
      }
      // left Givens zeroing the (i+1, i) fill-in; W' = G1^T W
      const double a = r(i, i), b = r(i + 1, i);
      const double nrm = std::hypot(a, b);
      if (nrm > 0) {
        const double c2 = a / nrm, s2 = b / nrm;
        for (int k = 0; k < n; ++k) {
          const double r0 = r(i, k), r1 = r(i + 1, k);
          r(i, k) = c2 * r0 + s2 * r1;
          r(i + 1, k) = -s2 * r0 + c2 * r1;
          const double w0 = w(i, k), w1 = w(i + 1, k);
          w(i, k) = c2 * w0 + s2 * w1;
          w(i + 1, k) = -s2 * w0 + c2 * w1;
        }
        r(i + 1, i) = 0.0;
      }
      // keep diagonals positive
      for (int d = i; d <= i + 1; ++d) {
        if (r(d, d) < 0) {
          r.row(d) *= -1;
          w.row(d) *= -1;
        }
      }
    }
  }
  return GmdResult{w, f, r};
}

/// Theorem-2 improvement over the geometric mean precoder: reduce the GMD
/// lattice, reuse its unimodular factor with each candidate reduced form,
/// and keep the lowest-power assembly.
inline PrecoderResult suboptimal_precoder(const ChannelSpectrum& s,
                                          const std::vector<QuadraticForm>& candidate_forms) {
  const int n = s.dim();
  GmdResult gmd = gmd_precoder(s);
  GeneratorMatrix b_gmd(s.diagonal() * gmd.f);

  // exact received Gram, scaled so lambda = 1
  QuadraticForm g0 = gram_of(b_gmd);
  Rat lambda0 = min_distance(g0).form_min;
  QuadraticForm g_b = g0.scaled(1 / lambda0);
  auto [g_l, z_g] = minkowski_reduce(g_b);

  const double gmd_power = static_cast<double>(n) / to_double(lambda0);

  std::vector<QuadraticForm> pool = candidate_forms;
  pool.push_back(g_l);  // the GMD's own reduced form guarantees improvement

  int best = -1;
  double best_power = 0;
  std::vector<QuadraticForm> received;
  for (int i = 0; i < static_cast<int>(pool.size()); ++i) {
    QuadraticForm g_bi = congruent_form(pool[static_cast<size_t>(i)], z_g);
    double p = objective(g_bi, s);
    received.push_back(g_bi);
    if (best < 0 || p < best_power) { best = i; best_power = p; }
  }

  PrecoderResult res = build_precoder(received[static_cast<size_t>(best)], s,
                                      "candidate-" + std::to_string(best));
  if (res.power > gmd_power + 1e-9)
    throw NumericalError("suboptimal_precoder: failed to match the GMD floor");
  return res;
}

/// Measure an arbitrary precoder against a channel: rationalize the
/// received Gram, enumerate exactly, report power and normalized distance.
inline PrecoderResult evaluate_precoder(const Eigen::MatrixXd& f, const ChannelSpectrum& s) {
  if (f.rows() != s.dim() || f.cols() != s.dim())
    throw DimError("evaluate_precoder: dimension mismatch");
  GeneratorMatrix sf(s.diagonal() * f);  // throws DegenerateBasis if singular
  Eigen::MatrixXd gf = sf.mat().transpose() * sf.mat();
  QuadraticForm g = gram_of(sf);
  if ((g.floats() - gf).cwiseAbs().maxCoeff() > 1e-6)
    throw NumericalError("evaluate_precoder: rationalization drifted past 1e-6");

  PrecoderResult res;
  res.f = f;
  res.power = (f * f.transpose()).trace();
  res.dmin2 = to_double(min_distance(g).form_min);
  res.normalized_dmin2 = res.dmin2 / res.power;
  res.source_form = "external";
  return res;
}

}  // namespace latprec
