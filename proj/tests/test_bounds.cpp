#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "latprec/bounds.hpp"
#include "latprec/perfect.hpp"

using namespace latprec;

TEST_CASE("lower bound closed forms") {
  ChannelSpectrum unit3({1, 1, 1});
  GeneratorMatrix id(Eigen::MatrixXd::Identity(3, 3));
  CHECK(lower_bound_energy(id, unit3) == Catch::Approx(3.0));

  GeneratorMatrix hexl = generator_of(testutil::hex_form());
  CHECK(lower_bound_energy(hexl, ChannelSpectrum({1, 1})) ==
        Catch::Approx(std::sqrt(3.0)).epsilon(1e-9));

  ChannelSpectrum s22({1, 0.95, 0.94, 0.93});
  GeneratorMatrix a4l = generator_of(root_lattice_form(4));
  CHECK(lower_bound_energy(a4l, s22) ==
        Catch::Approx(4 * std::pow(std::sqrt(5.0) / 4.0 / s22.det(), 0.5)).epsilon(1e-9));
  CHECK(lower_bound_energy(a4l, s22) == Catch::Approx(3.282).margin(5e-3));
}

TEST_CASE("upper bound closed forms") {
  CHECK(upper_bound_energy(ChannelSpectrum({1, 1, 1, 1})) == Catch::Approx(4.0));
  CHECK(upper_bound_energy(ChannelSpectrum({4, 1})) == Catch::Approx(0.5));
  // the reference text quotes 4.83 for this channel; the formula as printed
  // evaluates to about 4.389 and both sit below the lambda-based cutoff 5
  double ub22 = upper_bound_energy(ChannelSpectrum({1, 0.95, 0.94, 0.93}));
  CHECK(ub22 == Catch::Approx(4.3893).margin(5e-4));
  CHECK(ub22 < 5.0);
}

TEST_CASE("gram trace bound") {
  CHECK(gram_trace_bound(ChannelSpectrum({1, 1, 1})) == Catch::Approx(3.0));
  CHECK(gram_trace_bound(ChannelSpectrum({2, 1})) == Catch::Approx(4.0));
  double ub = gram_trace_bound(ChannelSpectrum({1, 0.95, 0.94, 0.93}));
  CHECK(ub == Catch::Approx(4.3893).margin(5e-4));
  CHECK(ub < 5.0);
  // scale freedom
  for (double c : {0.1, 10.0}) {
    std::vector<double> s{2 * c, 1.5 * c, 0.7 * c};
    CHECK(gram_trace_bound(ChannelSpectrum(std::move(s))) ==
          Catch::Approx(gram_trace_bound(ChannelSpectrum({2, 1.5, 0.7}))).epsilon(1e-12));
  }
}

TEST_CASE("z trace bound") {
  CHECK(z_trace_bound(QuadraticForm::from_full(rat_identity(3)), ChannelSpectrum({1, 1, 1})) ==
        Catch::Approx(3.0));
  // hexagonal eigenvalues are 3/2 and 1/2
  CHECK(z_trace_bound(testutil::hex_form(), ChannelSpectrum({1, 1})) == Catch::Approx(4.0));
  ChannelSpectrum s22({1, 0.95, 0.94, 0.93});
  EigenSym es = eigen_sym(root_lattice_form(4).floats());
  CHECK(z_trace_bound(root_lattice_form(4), s22) ==
        Catch::Approx(gram_trace_bound(s22) / es.values(3)).epsilon(1e-12));
}

TEST_CASE("certificate ratios") {
  GeneratorMatrix id(Eigen::MatrixXd::Identity(2, 2));
  CHECK(certificate(id, ChannelSpectrum({1, 1})).ratio == Catch::Approx(1.0));
  CHECK(certificate(generator_of(testutil::hex_form()), ChannelSpectrum({1, 1})).ratio ==
        Catch::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-9));
  // FCC at unit minimum has volume 1/sqrt(2)
  CHECK(certificate(generator_of(root_lattice_form(3)), ChannelSpectrum({1, 1, 1})).ratio ==
        Catch::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-9));
}

TEST_CASE("bound ordering for subunit determinants") {
  std::mt19937 rng(55);
  for (int t = 0; t < 20; ++t) {
    int n = 2 + t % 3;
    ChannelSpectrum s = testutil::random_spectrum(rng, n, 0.5, 2.0);
    GeneratorMatrix l = generator_of(minkowski_reduce(root_lattice_form(n)).first);
    BoundCertificate c = certificate(l, s);
    CHECK(c.lower_energy > 0);
    CHECK(c.lower_energy <= c.upper_energy + 1e-12);  // vol <= 1 at unit minimum
    CHECK(c.ratio == Catch::Approx(c.upper_energy / c.lower_energy).epsilon(1e-9));
  }
}
