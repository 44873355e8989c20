#pragma once

// Certified bound suite gating enumeration and certifying precoders.

#include <cmath>

#include "latprec/forms.hpp"
#include "latprec/jacobi.hpp"
#include "latprec/precoder.hpp"

namespace latprec {

struct BoundCertificate {
  double lower_energy;
  double upper_energy;
  double gram_trace_ub;  // ub(S), the enumeration trace bound
  double z_trace_ub;
  double ratio;  // upper/lower = (1/det L)^{2/N}
};

/// N (det L / det S)^{2/N}; assumes D^2_min(L) = 1.
inline double lower_bound_energy(const GeneratorMatrix& l, const ChannelSpectrum& s) {
  const double n = static_cast<double>(s.dim());
  return n * std::pow(volume(l) / s.det(), 2.0 / n);
}

/// N (1 / det S)^{2/N}.
inline double upper_bound_energy(const ChannelSpectrum& s) {
  const double n = static_cast<double>(s.dim());
  return n * std::pow(1.0 / s.det(), 2.0 / n);
}

/// N (s_1 / det(S)^{1/N})^2; scale-free in S.
inline double gram_trace_bound(const ChannelSpectrum& s) {
  const double n = static_cast<double>(s.dim());
  const double root = std::pow(s.det(), 1.0 / n);
  return n * (s[0] / root) * (s[0] / root);
}

/// (N / omega_N(G_L)) (s_1 / det(S)^{1/N})^2.
inline double z_trace_bound(const QuadraticForm& g_l, const ChannelSpectrum& s) {
  if (g_l.dim() != s.dim()) throw DimError("z_trace_bound: dimension mismatch");
  EigenSym es = eigen_sym(g_l.floats());
  const double omega_n = es.values(g_l.dim() - 1);
  if (omega_n <= 0) throw NotPositiveDefinite("z_trace_bound: omega_N <= 0");
  return gram_trace_bound(s) / omega_n;
}

inline BoundCertificate certificate(const GeneratorMatrix& l, const ChannelSpectrum& s) {
  BoundCertificate c{};
  c.lower_energy = lower_bound_energy(l, s);
  c.upper_energy = upper_bound_energy(s);
  c.gram_trace_ub = gram_trace_bound(s);
  c.z_trace_ub = z_trace_bound(gram_of(l), s);
  const double n = static_cast<double>(s.dim());
  c.ratio = std::pow(1.0 / volume(l), 2.0 / n);
  return c;
}

}  // namespace latprec
