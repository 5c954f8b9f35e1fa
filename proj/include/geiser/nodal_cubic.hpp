#pragma once

#include "geiser/bipoly.hpp"
#include "geiser/cusp.hpp"
#include "geiser/hompoly.hpp"
#include "geiser/linalg.hpp"
#include "geiser/parse.hpp"
#include "geiser/series.hpp"
#include "geiser/unipoly.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace geiser {

// The split nodal cubic x y z = x^3 + y^3 with its rational parametrization
// t -> (t : t^2 : 1 + t^3). The node (0:0:1) is reached at t = 0 and t = oo;
// those two limits are the branches.
struct NodalCubic {
  HomPoly3 equation;
  QPoly px, py, pz;

  static const NodalCubic& standard() {
    static const NodalCubic n = [] {
      NodalCubic c;
      c.equation = parse_hompoly("x*y*z - x^3 - y^3");
      c.px = QPoly::monomial(Rational(1), 1);
      c.py = QPoly::monomial(Rational(1), 2);
      c.pz = QPoly::constant(Rational(1)) + QPoly::monomial(Rational(1), 3);
      return c;
    }();
    return n;
  }

  std::array<Rational, 3> point_at(const Rational& t) const {
    return normalize_point({px.eval(t), py.eval(t), pz.eval(t)});
  }

  // Scale so that the last nonzero coordinate is 1.
  static std::array<Rational, 3> normalize_point(std::array<Rational, 3> p) {
    for (int c = 2; c >= 0; --c)
      if (p[static_cast<std::size_t>(c)] != 0) {
        Rational s = p[static_cast<std::size_t>(c)];
        for (auto& v : p) v /= s;
        return p;
      }
    throw PreconditionError("invalid projective point");
  }
};

// Intersection data of a plane curve with the cubic, read off the pullback
// f(t) of the curve along the parametrization.
struct RootRecord {
  QPoly factor;  // monic irreducible over Q
  int multiplicity = 0;
  std::optional<Rational> rational_root;  // set when factor is linear
};

struct PlaneContactReport {
  int curve_degree = 0;
  int order_at_zero = 0;
  int order_at_infinity = 0;
  std::vector<RootRecord> finite_roots;
  QPoly pullback;

  long long finite_intersection() const {
    long long s = 0;
    for (const auto& r : finite_roots) s += static_cast<long long>(r.factor.degree()) * r.multiplicity;
    return s;
  }
  // Number of distinct support points over the closure (node counts once).
  int support_points_over_closure() const {
    int pts = (order_at_zero > 0 || order_at_infinity > 0) ? 1 : 0;
    for (const auto& r : finite_roots) pts += r.factor.degree();
    return pts;
  }
  bool single_support_point() const { return support_points_over_closure() == 1; }
  // Contact profile at the node: contact with the t=0 branch first.
  ContactProfile node_profile() const {
    if (order_at_zero > 0 && order_at_infinity > 0 && finite_roots.empty())
      return AtNode{order_at_zero, order_at_infinity};
    if (finite_roots.size() == 1 && finite_roots[0].factor.degree() == 1 &&
        order_at_zero == 0 && order_at_infinity == 0)
      return AtSmoothPoint{finite_roots[0].multiplicity};
    return Disjoint{};
  }
};

inline PlaneContactReport contact_profile_of(const NodalCubic& n, const HomPoly3& curve) {
  if (curve.is_zero()) throw PreconditionError("zero curve");
  QPoly f = curve.eval_poly(n.px, n.py, n.pz);
  if (f.is_zero()) throw PreconditionError("curve contains the boundary cubic");
  PlaneContactReport rep;
  rep.curve_degree = curve.degree();
  rep.pullback = f;
  rep.order_at_zero = f.order();
  rep.order_at_infinity = 3 * curve.degree() - f.degree();
  QPoly core = f;
  if (rep.order_at_zero > 0) {
    std::vector<Rational> c(f.coeffs().begin() + rep.order_at_zero, f.coeffs().end());
    core = QPoly(std::move(c));
  }
  for (const auto& [factor, mult] : factor_over_q(core)) {
    RootRecord rec;
    rec.factor = factor;
    rec.multiplicity = mult;
    if (factor.degree() == 1) rec.rational_root = -factor.coeff(0);
    rep.finite_roots.push_back(std::move(rec));
  }
  return rep;
}

// Branch parametrizations of the cubic at the node in the chart z = 1. The
// t = 0 branch is (s/(1+s^3), s^2/(1+s^3)); the t = oo branch swaps x and y.
inline std::pair<QSeries, QSeries> node_branch_series(bool at_infinity, int order) {
  if (order < 1) throw PreconditionError("order must be positive");
  if (order > default_truncation())
    throw PreconditionError("order exceeds the truncation default; raise GEISER_TRUNC");
  QSeries unit = QSeries::monomial(Rational(1), 0, order) + QSeries::monomial(Rational(1), 3, order);
  QSeries x = QSeries::monomial(Rational(1), 1, order).div_unit(unit);
  QSeries y = QSeries::monomial(Rational(1), 2, order).div_unit(unit);
  if (at_infinity) return {y, x};
  return {x, y};
}

// ---------------------------------------------------------------------------
// Tangency solvers: curves whose full intersection with the cubic is a
// single smooth point.
// ---------------------------------------------------------------------------

struct TangencySolution {
  Rational t0;
  HomPoly3 curve;
  bool degenerate = false;  // square of a triple-contact line
};

struct TangencyFamily {
  QPoly condition;          // polynomial in the contact parameter
  int count_over_closure = 0;
  int degenerate_over_closure = 0;
  std::vector<TangencySolution> rational_solutions;
};

namespace detail {

// Pullback of one degree-d monomial along the parametrization.
inline QPoly monomial_pullback(const NodalCubic& n, int i, int j, int k) {
  QPoly m = QPoly::constant(Rational(1));
  m = m * n.px.pow(i) * n.py.pow(j) * n.pz.pow(k);
  return m;
}

}  // namespace detail

// Lines a x + b y + z whose pullback is a perfect cube (t - t0)^3. Matching
// coefficients leaves one equation without unknowns; it is the condition
// polynomial t0^3 + 1 in the contact parameter.
inline TangencyFamily find_flex_tangents() {
  const NodalCubic& n = NodalCubic::standard();
  TangencyFamily fam;
  // f(t) = a t + b t^2 + (1 + t^3) = (t - t0)^3 forces, per coefficient:
  //   t^0: 1 = -t0^3, t^1: a = 3 t0^2, t^2: b = -3 t0, t^3: 1 = 1.
  fam.condition = QPoly(std::vector<Rational>{1, 0, 0, 1});  // t0^3 + 1
  QPoly sf = fam.condition.divexact(QPoly::gcd(fam.condition, fam.condition.derivative()));
  fam.count_over_closure = sf.degree();
  for (const auto& [t0, mult] : rational_roots(fam.condition)) {
    (void)mult;
    HomPoly3 line(1);
    line.add_term(3 * t0 * t0, {1, 0, 0});
    line.add_term(-3 * t0, {0, 1, 0});
    line.add_term(Rational(1), {0, 0, 1});
    // The pullback really is the cube.
    QPoly f = line.eval_poly(n.px, n.py, n.pz);
    QPoly cube = QPoly(std::vector<Rational>{-t0, 1}).pow(3);
    if (!(f == cube)) throw Error("flex tangent verification failed");
    fam.rational_solutions.push_back({t0, line, false});
  }
  return fam;
}

// Linear system for a line a x + b y + z with pullback proportional to
// (t - t0)^3, at a fixed rational t0; used for inconsistency certificates.
inline LinearSolution flex_system_at(const Rational& t0) {
  // Unknowns (a, b); equations index coefficients of t^0..t^3.
  QMatrix rows = {{0, 0}, {1, 0}, {0, 1}, {0, 0}};
  QPoly cube = QPoly(std::vector<Rational>{-t0, 1}).pow(3);
  QVector rhs = {cube.coeff(0) - 1, cube.coeff(1), cube.coeff(2), cube.coeff(3) - 1};
  return solve_linear(rows, rhs);
}

// Conics with pullback (t - t0)^6. The z^2 coefficient is 1 (it carries the
// t^6 term), the other five coefficients are solved linearly, and the
// unknown-free coefficient equation is the condition t0^6 - 1. Solutions
// with t0^3 = -1 are squares of flex tangent lines.
inline TangencyFamily find_six_tangent_conics() {
  const NodalCubic& n = NodalCubic::standard();
  TangencyFamily fam;
  fam.condition = QPoly(std::vector<Rational>{-1, 0, 0, 0, 0, 0, 1});  // t0^6 - 1
  QPoly sf = fam.condition.divexact(QPoly::gcd(fam.condition, fam.condition.derivative()));
  QPoly flex(std::vector<Rational>{1, 0, 0, 1});
  QPoly overlap = QPoly::gcd(sf, flex);
  fam.count_over_closure = sf.degree();
  fam.degenerate_over_closure = overlap.degree();
  // Monomial order for the unknowns: x^2, xy, y^2, xz, yz.
  const std::array<std::array<int, 3>, 5> unknowns{
      {{2, 0, 0}, {1, 1, 0}, {0, 2, 0}, {1, 0, 1}, {0, 1, 1}}};
  for (const auto& [t0, mult] : rational_roots(fam.condition)) {
    (void)mult;
    QPoly target = QPoly(std::vector<Rational>{-t0, 1}).pow(6);
    QPoly zz = detail::monomial_pullback(n, 0, 0, 2);
    QMatrix rows(7, QVector(5, Rational(0)));
    QVector rhs(7, Rational(0));
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      QPoly mp = detail::monomial_pullback(n, unknowns[u][0], unknowns[u][1], unknowns[u][2]);
      for (int pow = 0; pow <= 6; ++pow) rows[static_cast<std::size_t>(pow)][u] = mp.coeff(pow);
    }
    for (int pow = 0; pow <= 6; ++pow)
      rhs[static_cast<std::size_t>(pow)] = target.coeff(pow) - zz.coeff(pow);
    auto sol = solve_linear(rows, rhs);
    if (!sol.consistent || !sol.kernel.empty())
      throw Error("six-tangent conic system is not uniquely solvable");
    HomPoly3 conic(2);
    for (std::size_t u = 0; u < unknowns.size(); ++u)
      conic.add_term(sol.particular[u], unknowns[u]);
    conic.add_term(Rational(1), {0, 0, 2});
    bool degenerate = (t0 * t0 * t0 == -1);
    QPoly f = conic.eval_poly(n.px, n.py, n.pz);
    if (!(f == target)) throw Error("six-tangent conic verification failed");
    fam.rational_solutions.push_back({t0, conic, degenerate});
  }
  return fam;
}

// ---------------------------------------------------------------------------
// Contact linear systems: all degree-e curves whose pullback satisfies the
// given vanishing conditions.
// ---------------------------------------------------------------------------

struct ContactTarget {
  // Orders at the node branches (contact with the t=0 branch, then t=oo).
  int min_order_at_zero = 0;
  int min_order_at_infinity = 0;
  // Optional smooth point contact.
  std::optional<Rational> smooth_t0;
  int min_smooth_contact = 0;
};

inline std::vector<HomPoly3> contact_linear_system(int curve_degree, const ContactTarget& target) {
  if (curve_degree < 1) throw PreconditionError("curve degree must be positive");
  const NodalCubic& n = NodalCubic::standard();
  std::vector<std::array<int, 3>> monomials;
  for (int i = curve_degree; i >= 0; --i)
    for (int j = curve_degree - i; j >= 0; --j)
      monomials.push_back({i, j, curve_degree - i - j});
  std::vector<QPoly> pulls;
  pulls.reserve(monomials.size());
  for (const auto& m : monomials) pulls.push_back(detail::monomial_pullback(n, m[0], m[1], m[2]));

  QMatrix rows;
  int top = 3 * curve_degree;
  for (int j = 0; j < target.min_order_at_zero; ++j) {
    QVector row(monomials.size());
    for (std::size_t u = 0; u < pulls.size(); ++u) row[u] = pulls[u].coeff(j);
    rows.push_back(std::move(row));
  }
  for (int j = 0; j < target.min_order_at_infinity; ++j) {
    QVector row(monomials.size());
    for (std::size_t u = 0; u < pulls.size(); ++u) row[u] = pulls[u].coeff(top - j);
    rows.push_back(std::move(row));
  }
  if (target.smooth_t0) {
    for (int k = 0; k < target.min_smooth_contact; ++k) {
      QVector row(monomials.size());
      for (std::size_t u = 0; u < pulls.size(); ++u) {
        QPoly d = pulls[u];
        for (int rep = 0; rep < k; ++rep) d = d.derivative();
        row[u] = d.eval(*target.smooth_t0);
      }
      rows.push_back(std::move(row));
    }
  }
  auto sol = solve_linear(rows, QVector(rows.size(), Rational(0)));
  std::vector<HomPoly3> basis;
  for (const auto& vec : sol.kernel) {
    HomPoly3 c(curve_degree);
    for (std::size_t u = 0; u < monomials.size(); ++u) c.add_term(vec[u], monomials[u]);
    basis.push_back(std::move(c));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Local germs and delta invariants of plane curves at rational points.
// ---------------------------------------------------------------------------

// Affine germ of the curve at a projective point, translated to the origin.
inline QBiPoly local_germ(const HomPoly3& curve, const std::array<Rational, 3>& point) {
  int chart = -1;
  for (int c = 2; c >= 0; --c)
    if (point[static_cast<std::size_t>(c)] != 0) {
      chart = c;
      break;
    }
  if (chart < 0) throw PreconditionError("invalid projective point");
  Rational scale = point[static_cast<std::size_t>(chart)];
  std::array<Rational, 3> p{point[0] / scale, point[1] / scale, point[2] / scale};
  int va = chart == 0 ? 1 : 0;
  int vb = chart == 2 ? 1 : 2;
  QBiPoly out;
  for (const auto& [e, c] : curve.terms()) {
    int ia = e[static_cast<std::size_t>(va)];
    int ib = e[static_cast<std::size_t>(vb)];
    // (a0 + u)^ia (b0 + v)^ib expanded with binomials.
    for (int s = 0; s <= ia; ++s)
      for (int t = 0; t <= ib; ++t) {
        Rational binom_a(1), binom_b(1);
        for (int w = 0; w < s; ++w) binom_a = binom_a * Rational(ia - w) / Rational(w + 1);
        for (int w = 0; w < t; ++w) binom_b = binom_b * Rational(ib - w) / Rational(w + 1);
        Rational coeff = c * binom_a * binom_b *
                         rat_pow(p[static_cast<std::size_t>(va)], ia - s) *
                         rat_pow(p[static_cast<std::size_t>(vb)], ib - t);
        out.add_term(coeff, s, t);
      }
  }
  return out;
}

inline Int delta_at_point(const HomPoly3& curve, const std::array<Rational, 3>& point) {
  if (curve.is_zero()) throw PreconditionError("zero curve");
  QBiPoly germ = local_germ(curve, point);
  if (germ.is_zero()) throw PreconditionError("zero germ");
  if (germ.coeff(0, 0) != 0)
    throw PreconditionError("point does not lie on the curve");
  return delta_blowup(germ);
}

// ---------------------------------------------------------------------------
// Fibers of the unit map attached to a curve meeting the cubic at one point.
// ---------------------------------------------------------------------------

struct PencilFiberReport {
  int fiber_degree = 0;
  std::array<Rational, 3> base_point;
  Int delta_by_blowup;
  Int delta_by_newton;
  bool oracles_agree = false;
  Int delta_at_base;
  Int geometric_genus;
  bool generic_certified = false;  // identical values at the probe pencil parameters
  std::pair<Rational, Rational> lambda_mu;
};

namespace detail {

struct FiberLocalData {
  Int delta_a;
  Int delta_b;
};

inline FiberLocalData fiber_local_data(const HomPoly3& fiber, const std::array<Rational, 3>& base) {
  QBiPoly germ = local_germ(fiber, base);
  if (germ.coeff(0, 0) != 0)
    throw PreconditionError("fiber does not pass through the base point");
  FiberLocalData d;
  d.delta_a = delta_blowup(germ);
  d.delta_b = delta_newton(germ);
  return d;
}

}  // namespace detail

inline PencilFiberReport fiber_report(const HomPoly3& curve,
                                      std::pair<Rational, Rational> lambda_mu = {Rational(1),
                                                                                 Rational(-1)}) {
  const NodalCubic& n = NodalCubic::standard();
  if (lambda_mu.first == 0 || lambda_mu.second == 0)
    throw PreconditionError("pencil parameters must be nonzero");
  auto contact = contact_profile_of(n, curve);
  if (!contact.single_support_point())
    throw PreconditionError("curve must meet the cubic at a single point");
  PencilFiberReport rep;
  rep.lambda_mu = lambda_mu;
  // Base point: the node, or the rational smooth point of full contact.
  if (contact.finite_roots.empty()) {
    rep.base_point = {Rational(0), Rational(0), Rational(1)};
  } else {
    const auto& rec = contact.finite_roots.front();
    if (!rec.rational_root)
      throw UnsupportedError("base point is not rational");
    rep.base_point = n.point_at(*rec.rational_root);
  }
  int e = curve.degree();
  auto make_fiber = [&](const std::pair<Rational, Rational>& lm) {
    if (e % 3 == 0) return lm.first * n.equation.pow(e / 3) + lm.second * curve;
    return lm.first * n.equation.pow(e) + lm.second * curve.pow(3);
  };
  HomPoly3 fiber = make_fiber(lambda_mu);
  rep.fiber_degree = fiber.degree();
  auto data = detail::fiber_local_data(fiber, rep.base_point);
  rep.delta_by_blowup = data.delta_a;
  rep.delta_by_newton = data.delta_b;
  rep.oracles_agree = data.delta_a == data.delta_b;
  rep.delta_at_base = data.delta_a;
  Int d(rep.fiber_degree);
  rep.geometric_genus = (d - 1) * (d - 2) / 2 - rep.delta_at_base;
  // Genericity probe: identical invariants at further pencil parameters.
  rep.generic_certified = rep.oracles_agree;
  for (const auto& probe : {std::pair<Rational, Rational>{Rational(1), Rational(1)},
                            std::pair<Rational, Rational>{Rational(2), Rational(-3)}}) {
    if (probe == lambda_mu) continue;
    auto pdata = detail::fiber_local_data(make_fiber(probe), rep.base_point);
    if (pdata.delta_a != rep.delta_at_base || pdata.delta_a != pdata.delta_b)
      rep.generic_certified = false;
  }
  return rep;
}

}  // namespace geiser
