#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "latprec/forms.hpp"
#include "latprec/perfect.hpp"

using namespace latprec;
using testutil::hex_form;

TEST_CASE("gram_of basic cases") {
  GeneratorMatrix id(Eigen::MatrixXd::Identity(2, 2));
  QuadraticForm g = gram_of(id);
  CHECK(g.at(0, 0) == 1);
  CHECK(g.at(0, 1) == 0);

  Eigen::MatrixXd hexb(2, 2);
  hexb << 1, 0.5, 0, std::sqrt(3.0) / 2.0;
  QuadraticForm gh = gram_of(GeneratorMatrix(hexb));
  CHECK(gh.at(0, 0) == 1);
  CHECK(gh.at(0, 1) == Rat(1, 2));
  CHECK(gh.at(1, 1) == 1);

  Eigen::MatrixXd d = Eigen::Vector2d(2, 3).asDiagonal();
  QuadraticForm gd = gram_of(GeneratorMatrix(d));
  CHECK(gd.at(0, 0) == 4);
  CHECK(gd.at(1, 1) == 9);
}

TEST_CASE("singular basis rejected") {
  Eigen::MatrixXd b(2, 2);
  b << 1, 2, 2, 4;
  CHECK_THROWS_AS(GeneratorMatrix(b), DegenerateBasis);
}

TEST_CASE("quadratic_eval exact values") {
  QuadraticForm i2 = QuadraticForm::from_full(rat_identity(2));
  CHECK(i2.eval({1, 0}) == 1);
  CHECK(testutil::d4().eval({1, 0, 0, 0}) == 1);
  CHECK(root_lattice_form(4).eval({1, 1, 1, 1}) == 1);
  CHECK_THROWS_AS(i2.eval(IntVec{1, 0, 0}), DimError);
}

TEST_CASE("quadratic_eval scaling and nonnegativity") {
  std::mt19937 rng(7);
  QuadraticForm g = testutil::random_pd_form(rng, 3);
  IntVec x{2, -1, 3};
  CHECK(g.scaled(Rat(5, 3)).eval(x) == Rat(5, 3) * g.eval(x));
  CHECK(g.eval(x) > 0);
}

TEST_CASE("positive definiteness checked exactly") {
  RatMat bad = rat_zeros(2, 2);
  bad[0][0] = 1; bad[0][1] = 2; bad[1][0] = 2; bad[1][1] = 1;
  CHECK_THROWS_AS(QuadraticForm::from_full(bad), NotPositiveDefinite);
}

TEST_CASE("generator_of inverts gram_of") {
  CHECK(generator_of(QuadraticForm::from_full(rat_identity(3))).mat().isIdentity(1e-12));
  RatMat d = rat_zeros(2, 2);
  d[0][0] = 4; d[1][1] = 9;
  Eigen::MatrixXd l = generator_of(QuadraticForm::from_full(d)).mat();
  CHECK(l(0, 0) == Catch::Approx(2.0));
  CHECK(l(1, 1) == Catch::Approx(3.0));

  Eigen::MatrixXd lh = generator_of(hex_form()).mat();
  CHECK(lh(0, 0) == Catch::Approx(1.0));
  CHECK(std::fabs(lh(0, 1)) == Catch::Approx(0.5));
  CHECK(std::fabs(lh(1, 1)) == Catch::Approx(std::sqrt(3.0) / 2.0));
}

TEST_CASE("volume matches determinant") {
  CHECK(volume(GeneratorMatrix(Eigen::MatrixXd::Identity(3, 3))) == Catch::Approx(1.0));
  CHECK(volume(generator_of(hex_form())) == Catch::Approx(std::sqrt(3.0) / 2.0));
  // det G_A4 = 5/16
  CHECK(root_lattice_form(4).det() == Rat(5, 16));
  CHECK(volume(generator_of(root_lattice_form(4))) == Catch::Approx(std::sqrt(5.0) / 4.0).epsilon(1e-9));

  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    QuadraticForm g = testutil::random_pd_form(rng, 3);
    double v = volume(generator_of(g));
    CHECK(v * v == Catch::Approx(to_double(g.det())).epsilon(1e-9));
  }
}

TEST_CASE("float mirror agrees with rationals") {
  QuadraticForm g = hex_form();
  CHECK(g.floats()(0, 1) == 0.5);
  CHECK(g.floats()(1, 0) == 0.5);
}

TEST_CASE("congruent_form is an exact congruence") {
  std::mt19937 rng(3);
  QuadraticForm g = testutil::random_pd_form(rng, 3);
  UnimodularMatrix z = testutil::random_unimodular(rng, 3);
  QuadraticForm gz = congruent_form(g, z);
  // spot-check x^T (Z^T G Z) x = (Zx)^T G (Zx)
  IntVec x{1, -2, 1};
  IntVec zx(3, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) zx[static_cast<size_t>(i)] += z.at(i, j) * x[static_cast<size_t>(j)];
  CHECK(gz.eval(x) == g.eval(zx));
  CHECK(gz.det() == g.det());
}
