#pragma once

// Cyclic Jacobi eigensolver for small dense symmetric matrices.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "latprec/errors.hpp"

namespace latprec {

struct EigenSym {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // columns, A = V diag(values) V^T
};

inline EigenSym eigen_sym(const Eigen::MatrixXd& a_in, double tol = 1e-12) {
  const int n = static_cast<int>(a_in.rows());
  Eigen::MatrixXd a = 0.5 * (a_in + a_in.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = std::max(1.0, a.norm());

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) <= tol * scale) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Eigen::JacobiRotation<double> rot(c, s);
        a.applyOnTheLeft(p, q, rot.transpose());
        a.applyOnTheRight(p, q, rot);
        v.applyOnTheRight(p, q, rot);
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i) > a(j, j); });

  EigenSym out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<size_t>(k)]);
  }
  return out;
}

}  // namespace latprec
