#pragma once

// JSON input parsing for channels and quadratic forms.
//
// A channel file holds exactly one of:
//   {"spectrum": [s1, ...]}                   singular values, any order
//   {"real": [[...], ...]}                    real square channel matrix
//   {"complex": {"re": [[...]], "im": [[...]]}}  complex channel, realified
//
// A form file holds {"dim": n, "gram_num": [...], "gram_den": [...]} or
// {"gram": [[...], ...]} with rational-looking floats.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latprec/codebook.hpp"
#include "latprec/precoder.hpp"

namespace latprec {

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open " + path);
  nlohmann::json j;
  is >> j;
  return j;
}

inline Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows) {
  const int r = static_cast<int>(rows.size());
  if (r == 0) throw DimError("matrix_from_json: empty matrix");
  const int c = static_cast<int>(rows[0].size());
  Eigen::MatrixXd m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != c)
      throw DimError("matrix_from_json: ragged rows");
    for (int j = 0; j < c; ++j)
      m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)].get<double>();
  }
  return m;
}

inline ChannelSpectrum parse_channel(const nlohmann::json& j) {
  if (j.contains("spectrum")) {
    std::vector<double> s;
    for (const auto& v : j.at("spectrum")) s.push_back(v.get<double>());
    return ChannelSpectrum(std::move(s));
  }
  if (j.contains("real")) return spectrum_of(matrix_from_json(j.at("real"))).spectrum;
  if (j.contains("complex")) {
    Eigen::MatrixXd re = matrix_from_json(j.at("complex").at("re"));
    Eigen::MatrixXd im = matrix_from_json(j.at("complex").at("im"));
    if (re.rows() != im.rows() || re.cols() != im.cols())
      throw DimError("parse_channel: re/im shape mismatch");
    Eigen::MatrixXcd h(re.rows(), re.cols());
    h.real() = re;
    h.imag() = im;
    return spectrum_of(realify_matrix(h)).spectrum;
  }
  throw std::invalid_argument("channel JSON needs one of: spectrum, real, complex");
}

inline QuadraticForm parse_form(const nlohmann::json& j) {
  if (j.contains("gram_num")) return form_from_json(j.at("dim").get<int>(), j);
  if (j.contains("gram")) {
    Eigen::MatrixXd g = matrix_from_json(j.at("gram"));
    if (g.rows() != g.cols()) throw DimError("parse_form: square gram expected");
    const int n = static_cast<int>(g.rows());
    RatMat rm = rat_zeros(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) rm[static_cast<size_t>(i)][static_cast<size_t>(k)] = rationalize(g(i, k));
    return QuadraticForm::from_full(rm);
  }
  throw std::invalid_argument("form JSON needs gram or gram_num/gram_den");
}

}  // namespace latprec
