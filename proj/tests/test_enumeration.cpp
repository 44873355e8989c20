#include <catch_amalgamated.hpp>

#include "helpers.hpp"
#include "latprec/enumeration.hpp"
#include "latprec/perfect.hpp"

using namespace latprec;

TEST_CASE("shortest_vectors on closed-form lattices") {
  QuadraticForm i2 = QuadraticForm::from_full(rat_identity(2));
  auto unit = shortest_vectors(i2, 1);
  REQUIRE(unit.size() == 2);
  CHECK(unit[0].second == 1);
  CHECK(unit[1].second == 1);

  auto hex = shortest_vectors(root_lattice_form(2), 1);
  CHECK(hex.size() == 3);
  for (const auto& [x, v] : hex) CHECK(v == 1);

  auto d4 = shortest_vectors(testutil::d4(), 1);
  CHECK(d4.size() == 12);  // 24 minimal vectors in +- pairs
}

TEST_CASE("shortest_vectors input validation") {
  QuadraticForm i2 = QuadraticForm::from_full(rat_identity(2));
  CHECK_THROWS_AS(shortest_vectors(i2, Rat(0)), DimError);
}

TEST_CASE("min_distance basics") {
  RatMat d = rat_zeros(2, 2);
  d[0][0] = 4; d[1][1] = 9;
  auto m = min_distance(QuadraticForm::from_full(d));
  CHECK(m.form_min == 4);
  REQUIRE(m.vectors.size() == 1);
  CHECK(m.vectors[0] == IntVec{1, 0});

  CHECK(min_distance(root_lattice_form(4)).form_min == 1);

  RatMat s = rat_zeros(2, 2);
  s[0][0] = 2; s[0][1] = 1; s[1][0] = 1; s[1][1] = 2;
  auto ms = min_distance(QuadraticForm::from_full(s));
  CHECK(ms.form_min == 2);
  CHECK(ms.vectors.size() == 3);
}

TEST_CASE("second successive minimum") {
  CHECK(successive_minimum_2(testutil::d4()) == 2);
  CHECK(successive_minimum_2(root_lattice_form(4)) == 2);
  CHECK(successive_minimum_2(QuadraticForm::from_full(rat_identity(2))) == 2);
}

TEST_CASE("enumeration agrees with the brute-force oracle") {
  std::mt19937 rng(42);
  for (int n = 2; n <= 4; ++n) {
    for (int t = 0; t < 40; ++t) {
      QuadraticForm g = testutil::random_pd_form(rng, n);
      CHECK(min_distance(g).form_min == brute_force_min(g, 4));
    }
  }
}

TEST_CASE("completeness up to the second minimum") {
  std::mt19937 rng(9);
  for (int t = 0; t < 25; ++t) {
    QuadraticForm g = testutil::random_pd_form(rng, 3);
    Rat l2 = successive_minimum_2(g);
    auto fast = shortest_vectors(g, l2);
    auto slow = brute_force_below(g, l2, 4);
    REQUIRE(fast.size() == slow.size());
    for (size_t i = 0; i < fast.size(); ++i) {
      CHECK(fast[i].first == slow[i].first);
      CHECK(fast[i].second == slow[i].second);
    }
  }
}

TEST_CASE("minimum is unimodular invariant") {
  std::mt19937 rng(1234);
  int checked = 0;
  for (int t = 0; checked < 100 && t < 1000; ++t) {
    int n = 2 + t % 3;
    QuadraticForm g = testutil::random_pd_form(rng, n);
    UnimodularMatrix z = testutil::random_unimodular(rng, n);
    QuadraticForm gz = congruent_form(g, z);
    EigenSym es = eigen_sym(gz.floats());
    if (es.values(0) / es.values(n - 1) > 1e5) continue;  // would trip the guard
    CHECK(min_distance(gz).form_min == min_distance(g).form_min);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("ill-conditioned forms are rejected") {
  RatMat bad = rat_zeros(2, 2);
  bad[0][0] = Rat(1, 10'000'000);
  bad[1][1] = 10;
  CHECK_THROWS_AS(min_distance(QuadraticForm::from_full(bad)), ConditioningError);
}
