#include "geiser/bipoly.hpp"
#include "geiser/cusp.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numeric>

using namespace geiser;

namespace {

// y^p - x^q as a local germ.
QBiPoly cusp_germ(int p, int q) {
  QBiPoly f;
  f.add_term(Rational(1), 0, p);
  f.add_term(Rational(-1), q, 0);
  return f;
}

}  // namespace

TEST_CASE("delta by blow-up on basic germs") {
  // Ordinary cusp, node, tacnode.
  CHECK(delta_blowup(cusp_germ(2, 3)) == 1);
  QBiPoly node;
  node.add_term(Rational(1), 1, 1);
  node.add_term(Rational(1), 3, 0);
  node.add_term(Rational(-1), 0, 3);
  CHECK(delta_blowup(node) == 1);
  QBiPoly tacnode;  // y^2 - x^4
  tacnode.add_term(Rational(1), 0, 2);
  tacnode.add_term(Rational(-1), 4, 0);
  CHECK(delta_blowup(tacnode) == 2);
  // u^2 + v^15.
  QBiPoly a14;
  a14.add_term(Rational(1), 2, 0);
  a14.add_term(Rational(1), 0, 15);
  CHECK(delta_blowup(a14) == 7);
}

TEST_CASE("delta by blow-up with a conjugate direction pair") {
  // y^2 + x^2 has two conjugate branches y = +-i x; a node over the closure.
  QBiPoly f;
  f.add_term(Rational(1), 0, 2);
  f.add_term(Rational(1), 2, 0);
  CHECK(delta_blowup(f) == 1);
  // (y^2 - 2 x^2)(y^2 - 3 x^2) + higher: ordinary 4-fold point needs two
  // distinct extensions; rejected.
  QBiPoly g;
  // (y^2 - 2x^2)(y^2 - 3x^2) = y^4 -5 x^2 y^2 + 6 x^4
  g.add_term(Rational(1), 0, 4);
  g.add_term(Rational(-5), 2, 2);
  g.add_term(Rational(6), 4, 0);
  g.add_term(Rational(1), 0, 5);
  CHECK_THROWS_AS(delta_blowup(g), UnsupportedError);
}

TEST_CASE("newton branch expansion finds the expected parametrizations") {
  auto branches = newton_branches(cusp_germ(2, 3), 16);
  REQUIRE(branches.size() == 1);
  const auto& b = branches[0];
  // One branch with orders (2, 3) in some coordinate convention.
  int ox = *b.x.order(), oy = *b.y.order();
  CHECK(std::min(ox, oy) == 2);
  CHECK(std::max(ox, oy) == 3);

  // Node: two branches.
  QBiPoly node;
  node.add_term(Rational(1), 1, 1);
  node.add_term(Rational(1), 3, 0);
  node.add_term(Rational(-1), 0, 3);
  CHECK(newton_branches(node, 16).size() == 2);
}

TEST_CASE("branch expansions satisfy the defining equation") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}, {4, 7}}) {
    QBiPoly f = cusp_germ(p, q);
    for (const auto& b : newton_branches(f, 24)) {
      auto lifted = f.lift<QuadExt>();
      auto residual = lifted.eval_series(b.x, b.y);
      CHECK(residual.known_zero());
    }
  }
}

TEST_CASE("both delta oracles agree on a germ zoo") {
  std::vector<QBiPoly> zoo;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {2, 15}, {3, 4}, {3, 5}, {4, 5}})
    zoo.push_back(cusp_germ(p, q));
  {
    QBiPoly node;
    node.add_term(Rational(1), 1, 1);
    node.add_term(Rational(1), 3, 0);
    node.add_term(Rational(-1), 0, 3);
    zoo.push_back(node);
  }
  {
    QBiPoly tac;  // (y - x^2)(y + x^2) = y^2 - x^4
    tac.add_term(Rational(1), 0, 2);
    tac.add_term(Rational(-1), 4, 0);
    zoo.push_back(tac);
    QBiPoly conj;  // y^2 + x^2 (conjugate pair of smooth branches)
    conj.add_term(Rational(1), 0, 2);
    conj.add_term(Rational(1), 2, 0);
    zoo.push_back(conj);
    QBiPoly irr;  // y^2 - 2 x^2: split only over sqrt(2)
    irr.add_term(Rational(1), 0, 2);
    irr.add_term(Rational(-2), 2, 0);
    zoo.push_back(irr);
    QBiPoly mixed;  // x (y^2 - x^3): cusp plus a transversal line
    mixed.add_term(Rational(1), 1, 2);
    mixed.add_term(Rational(-1), 4, 0);
    zoo.push_back(mixed);
  }
  for (std::size_t i = 0; i < zoo.size(); ++i) {
    CAPTURE(i);
    CHECK(delta_blowup(zoo[i]) == delta_newton(zoo[i], 48));
  }
}

TEST_CASE("delta matches the euclid formula on coprime cusp germs") {
  for (int p = 2; p <= 8; ++p)
    for (int q = p + 1; q <= 11; ++q) {
      if (std::gcd(p, q) != 1) continue;
      CAPTURE(p, q);
      Int expected = Int(p - 1) * (q - 1) / 2;
      CHECK(delta_blowup(cusp_germ(p, q)) == expected);
      CHECK(delta_newton(cusp_germ(p, q), 64) == expected);
      CHECK(delta_invariant(euclid_sequence(p, q)) ==
            static_cast<long long>(expected));
    }
}
