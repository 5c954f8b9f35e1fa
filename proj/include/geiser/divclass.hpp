#pragma once

#include "geiser/nodal_cubic.hpp"
#include "geiser/rational.hpp"
#include "geiser/unipoly.hpp"

#include <array>
#include <map>
#include <optional>

namespace geiser {

// Divisor class on the smooth locus of the nodal cubic: degree plus the
// product of the parameters of the points (the multiplicative part).
struct DivClass {
  long long degree = 0;
  Rational unit = Rational(1);

  static DivClass point(const Rational& t) {
    if (t == 0) throw PreconditionError("parameter 0 is the node");
    return {1, t};
  }
  friend DivClass operator+(const DivClass& a, const DivClass& b) {
    return {a.degree + b.degree, a.unit * b.unit};
  }
  friend DivClass operator*(long long k, const DivClass& a) {
    return {k * a.degree, rat_pow(a.unit, k)};
  }
  friend bool operator==(const DivClass&, const DivClass&) = default;
};

namespace detail {

// Minimal trivariate polynomial support for factoring the collinearity
// determinant symbolically.
struct TriPoly {
  std::map<std::array<int, 3>, Rational> t;

  void add(const Rational& c, std::array<int, 3> e) {
    if (c == 0) return;
    auto it = t.find(e);
    if (it == t.end()) t.emplace(e, c);
    else {
      it->second += c;
      if (it->second == 0) t.erase(it);
    }
  }
  friend TriPoly operator*(const TriPoly& a, const TriPoly& b) {
    TriPoly r;
    for (const auto& [ea, ca] : a.t)
      for (const auto& [eb, cb] : b.t)
        r.add(ca * cb, {ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]});
    return r;
  }
  friend TriPoly operator+(const TriPoly& a, const TriPoly& b) {
    TriPoly r = a;
    for (const auto& [e, c] : b.t) r.add(c, e);
    return r;
  }
  friend TriPoly operator-(const TriPoly& a, const TriPoly& b) {
    TriPoly r = a;
    for (const auto& [e, c] : b.t) r.add(-c, e);
    return r;
  }
  bool is_zero() const { return t.empty(); }

  // Exact division by (t_a - t_b), a != b.
  TriPoly div_diff(int a, int b) const {
    TriPoly rem = *this, quot;
    while (!rem.is_zero()) {
      // Leading term in variable a.
      auto lead = rem.t.begin();
      for (auto it = rem.t.begin(); it != rem.t.end(); ++it)
        if (it->first[static_cast<std::size_t>(a)] > lead->first[static_cast<std::size_t>(a)])
          lead = it;
      int k = lead->first[static_cast<std::size_t>(a)];
      if (k == 0) throw PreconditionError("inexact division by variable difference");
      std::array<int, 3> qe = lead->first;
      qe[static_cast<std::size_t>(a)] = k - 1;
      Rational qc = lead->second;
      quot.add(qc, qe);
      // Subtract (t_a - t_b) * qc * t^qe.
      std::array<int, 3> ea = qe, eb = qe;
      ea[static_cast<std::size_t>(a)] += 1;
      eb[static_cast<std::size_t>(b)] += 1;
      rem.add(-qc, ea);
      rem.add(qc, eb);
    }
    return quot;
  }
};

inline TriPoly coordinate_poly(int var, int coordinate) {
  // coordinate 0: t, 1: t^2, 2: 1 + t^3, in variable var.
  TriPoly p;
  std::array<int, 3> e{0, 0, 0};
  if (coordinate == 0) {
    e[static_cast<std::size_t>(var)] = 1;
    p.add(Rational(1), e);
  } else if (coordinate == 1) {
    e[static_cast<std::size_t>(var)] = 2;
    p.add(Rational(1), e);
  } else {
    p.add(Rational(1), {0, 0, 0});
    e[static_cast<std::size_t>(var)] = 3;
    p.add(Rational(1), e);
  }
  return p;
}

inline TriPoly collinearity_determinant() {
  // det of the 3x3 matrix with rows (t_i, t_i^2, 1 + t_i^3).
  auto e = [&](int row, int col) { return coordinate_poly(row, col); };
  TriPoly det;
  int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  for (int s = 0; s < 6; ++s) {
    TriPoly prod = e(0, perms[s][0]) * e(1, perms[s][1]) * e(2, perms[s][2]);
    TriPoly signed_prod;
    Rational sign = s < 3 ? Rational(1) : Rational(-1);
    for (const auto& [ex, c] : prod.t) signed_prod.add(sign * c, ex);
    det = det + signed_prod;
  }
  return det;
}

}  // namespace detail

struct CollinearityCertificate {
  bool collinear = false;
  Rational det;
};

// Three distinct nonzero parameters are collinear iff the determinant of
// their coordinate rows vanishes.
inline CollinearityCertificate collinear(const Rational& t1, const Rational& t2,
                                         const Rational& t3) {
  if (t1 == 0 || t2 == 0 || t3 == 0) throw PreconditionError("parameters must be nonzero");
  if (t1 == t2 || t2 == t3 || t1 == t3) throw PreconditionError("parameters must be distinct");
  const NodalCubic& n = NodalCubic::standard();
  std::array<std::array<Rational, 3>, 3> rows{n.point_at(t1), n.point_at(t2), n.point_at(t3)};
  Rational det = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1]) -
                 rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0]) +
                 rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]);
  return {det == 0, det};
}

// The constant g with t1 t2 t3 = g characterizing collinearity, computed by
// factoring the determinant: after removing the three difference factors the
// quotient must be a binomial k*(t1 t2 t3 - g).
inline Rational collinearity_constant() {
  detail::TriPoly det = detail::collinearity_determinant();
  detail::TriPoly q = det.div_diff(0, 1).div_diff(1, 2).div_diff(0, 2);
  Rational kappa, constant;
  bool have_kappa = false, have_const = false;
  for (const auto& [e, c] : q.t) {
    if (e == std::array<int, 3>{1, 1, 1}) {
      kappa = c;
      have_kappa = true;
    } else if (e == std::array<int, 3>{0, 0, 0}) {
      constant = c;
      have_const = true;
    } else {
      throw Error("collinearity determinant did not factor as expected");
    }
  }
  if (!have_kappa || !have_const) throw Error("collinearity determinant did not factor as expected");
  return -constant / kappa;
}

// Third intersection parameter of the line joining two smooth points,
// certified by polynomial division of the line pullback.
inline Rational third_collinear_parameter(const Rational& t1, const Rational& t2) {
  if (t1 == 0 || t2 == 0 || t1 == t2) throw PreconditionError("parameters must be distinct and nonzero");
  const NodalCubic& n = NodalCubic::standard();
  auto p1 = n.point_at(t1), p2 = n.point_at(t2);
  // Line through the two points: cross product of the coordinate vectors.
  std::array<Rational, 3> line{p1[1] * p2[2] - p1[2] * p2[1], p1[2] * p2[0] - p1[0] * p2[2],
                               p1[0] * p2[1] - p1[1] * p2[0]};
  HomPoly3 l(1);
  l.add_term(line[0], {1, 0, 0});
  l.add_term(line[1], {0, 1, 0});
  l.add_term(line[2], {0, 0, 1});
  QPoly f = l.eval_poly(n.px, n.py, n.pz);
  QPoly quot = f.divexact(QPoly(std::vector<Rational>{-t1, 1}))
                   .divexact(QPoly(std::vector<Rational>{-t2, 1}));
  if (quot.degree() != 1) throw Error("line pullback did not reduce to a linear factor");
  return -quot.coeff(0) / quot.coeff(1);
}

struct DivisionPoints {
  long long requested_degree = 0;
  QPoly condition;
  int count_over_closure = 0;
  int flex_overlap = 0;  // roots shared with the triple-contact condition
};

// Points b with d[b] equivalent to the degree-d class restricted from the
// plane; only degrees divisible by 3 restrict. The condition polynomial is
// t^d = g^(d/3) with g the collinearity constant.
inline DivisionPoints division_points(long long d) {
  if (d < 1) throw PreconditionError("degree must be positive");
  if (d % 3 != 0)
    throw UnsupportedError("comparison class must be a plane-curve restriction (3 | d)");
  Rational g = collinearity_constant();
  DivisionPoints out;
  out.requested_degree = d;
  Rational rhs = rat_pow(g, d / 3);
  std::vector<Rational> coeffs(static_cast<std::size_t>(d) + 1, Rational(0));
  coeffs[0] = -rhs;
  coeffs[static_cast<std::size_t>(d)] = Rational(1);
  out.condition = QPoly(std::move(coeffs));
  QPoly sf = out.condition.divexact(QPoly::gcd(out.condition, out.condition.derivative()));
  out.count_over_closure = sf.degree();
  QPoly flex(std::vector<Rational>{-g, 0, 0, 1});  // t^3 - g
  out.flex_overlap = QPoly::gcd(sf, flex).degree();
  return out;
}

struct F1OrbitCount {
  long long count = 0;
  QPoly condition;
  std::optional<Rational> reducible_parameter;
  DivClass restricted_class;
};

// Orbit count for the blow-up of the plane at the smooth point with
// parameter t_x: sections of |E + rF| meeting the boundary at one point.
// The class restricts to degree 2r+1 with unit t_x (g / t_x)^r; the single
// reducible solution exists exactly when t_x is a flex parameter.
inline F1OrbitCount f1_orbit_count(const Rational& t_x, int r) {
  if (t_x == 0) throw PreconditionError("blow-up point must be a smooth point");
  if (r < 1) throw PreconditionError("r must be positive");
  Rational g = collinearity_constant();
  F1OrbitCount out;
  DivClass e_cls = DivClass::point(t_x);
  DivClass f_cls{2, g / t_x};
  out.restricted_class = e_cls + r * f_cls;
  long long deg = out.restricted_class.degree;  // 2r + 1
  std::vector<Rational> coeffs(static_cast<std::size_t>(deg) + 1, Rational(0));
  coeffs[0] = -out.restricted_class.unit;
  coeffs[static_cast<std::size_t>(deg)] = Rational(1);
  out.condition = QPoly(std::move(coeffs));
  QPoly sf = out.condition.divexact(QPoly::gcd(out.condition, out.condition.derivative()));
  out.count = sf.degree();
  // Reducible member: the solution b with [b] = [E restricted], i.e. b = t_x,
  // which forces 2[t_x] ~ F restricted, i.e. t_x^3 = g.
  if (t_x * t_x * t_x == g) {
    if (out.condition.eval(t_x) != 0) throw Error("flex witness fails the division condition");
    out.reducible_parameter = t_x;
    out.count -= 1;
  }
  return out;
}

}  // namespace geiser
