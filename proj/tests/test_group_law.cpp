#include "geiser/divclass.hpp"
#include "geiser/nodal_cubic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace geiser;

TEST_CASE("collinearity determinant certificates") {
  // gamma = -1, so (1, 2, -1/2) is collinear.
  auto yes = collinear(Rational(1), Rational(2), Rational(-1, 2));
  CHECK(yes.collinear);
  CHECK(yes.det == 0);
  auto no = collinear(Rational(1), Rational(2), Rational(5));
  CHECK_FALSE(no.collinear);
  CHECK(no.det != 0);
  CHECK_THROWS_AS(collinear(Rational(1), Rational(1), Rational(2)), PreconditionError);
  CHECK_THROWS_AS(collinear(Rational(0), Rational(1), Rational(2)), PreconditionError);
}

TEST_CASE("collinearity constant comes out of the determinant factorization") {
  Rational g = collinearity_constant();
  CHECK(g == -1);
  // The flex parameter satisfies t^3 = gamma.
  Rational flex_t(-1);
  CHECK(flex_t * flex_t * flex_t == g);
}

TEST_CASE("group law soundness on random parameter pairs") {
  Rational g = collinearity_constant();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> num(-30, 30);
  std::uniform_int_distribution<long long> den(1, 9);
  int done = 0;
  while (done < 20) {
    Rational t1 = make_rational(Int(num(rng)), Int(den(rng)));
    Rational t2 = make_rational(Int(num(rng)), Int(den(rng)));
    if (t1 == 0 || t2 == 0 || t1 == t2) continue;
    Rational t3_expected = g / (t1 * t2);
    if (t3_expected == t1 || t3_expected == t2) continue;  // tangential case
    Rational t3 = third_collinear_parameter(t1, t2);
    CHECK(t3 == t3_expected);
    CHECK(collinear(t1, t2, t3).collinear);
    CHECK(t1 * t2 * t3 == g);
    ++done;
  }
}

TEST_CASE("division point conditions") {
  auto flexes = division_points(3);
  CHECK(flexes.condition == QPoly(std::vector<Rational>{1, 0, 0, 1}));  // t^3 + 1
  CHECK(flexes.count_over_closure == 3);
  CHECK(flexes.flex_overlap == 3);
  // Matches the flex tangent condition polynomial.
  CHECK(flexes.condition == find_flex_tangents().condition);

  auto nine = division_points(9);
  CHECK(nine.count_over_closure == 9);
  QPoly t9p1(std::vector<Rational>{1, 0, 0, 0, 0, 0, 0, 0, 0, 1});
  CHECK(nine.condition == t9p1);

  auto six = division_points(6);
  QPoly t6m1(std::vector<Rational>{-1, 0, 0, 0, 0, 0, 1});
  CHECK(six.condition == t6m1);
  CHECK(six.count_over_closure == 6);
  CHECK(six.flex_overlap == 3);  // squares of flex tangents
  CHECK(six.condition == find_six_tangent_conics().condition);

  CHECK_THROWS_AS(division_points(5), UnsupportedError);
}

TEST_CASE("divisor class arithmetic") {
  DivClass a = DivClass::point(Rational(2));
  DivClass b = DivClass::point(Rational(3));
  CHECK((a + b) == DivClass{2, Rational(6)});
  CHECK((3 * a) == DivClass{3, Rational(8)});
  CHECK_THROWS_AS(DivClass::point(Rational(0)), PreconditionError);
}

TEST_CASE("orbit counts on the blown-up plane") {
  auto nonflex = f1_orbit_count(Rational(2), 1);
  CHECK(nonflex.count == 3);
  CHECK_FALSE(nonflex.reducible_parameter.has_value());

  auto flex1 = f1_orbit_count(Rational(-1), 1);
  CHECK(flex1.count == 2);
  REQUIRE(flex1.reducible_parameter.has_value());
  CHECK(*flex1.reducible_parameter == -1);

  auto flex4 = f1_orbit_count(Rational(-1), 4);
  CHECK(flex4.count == 8);

  for (int r = 1; r <= 6; ++r) {
    auto general = f1_orbit_count(Rational(2), r);
    auto flex = f1_orbit_count(Rational(-1), r);
    CHECK(general.count == 2 * r + 1);
    CHECK(flex.count == 2 * r);
    CHECK(general.count - flex.count == 1);
    // Degree bookkeeping for the restricted class.
    CHECK(general.restricted_class.degree == 2 * r + 1);
    CHECK(flex.restricted_class.degree == 2 * r + 1);
  }

  // A non-flex cube parameter: t_x = 1 solves the division condition for even
  // r but the member is irreducible, so the count stays 2r+1.
  for (int r = 1; r <= 4; ++r) {
    auto unity = f1_orbit_count(Rational(1), r);
    CHECK(unity.count == 2 * r + 1);
    CHECK_FALSE(unity.reducible_parameter.has_value());
  }
}
