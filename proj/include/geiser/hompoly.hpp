#pragma once

#include "geiser/rational.hpp"
#include "geiser/unipoly.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace geiser {

// Homogeneous trivariate polynomial over Q in (x : y : z). Zero coefficients
// are never stored; every stored exponent triple sums to the degree.
class HomPoly3 {
 public:
  using Exps = std::array<int, 3>;

  HomPoly3() : degree_(0) {}
  explicit HomPoly3(int degree) : degree_(degree) {
    if (degree < 0) throw PreconditionError("negative degree");
  }

  static HomPoly3 monomial(const Rational& c, int i, int j, int k) {
    HomPoly3 p(i + j + k);
    p.add_term(c, {i, j, k});
    return p;
  }

  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exps, Rational>& terms() const { return terms_; }

  void add_term(const Rational& c, const Exps& e) {
    if (e[0] < 0 || e[1] < 0 || e[2] < 0 || e[0] + e[1] + e[2] != degree_)
      throw PreconditionError("exponent triple does not match degree");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coeff(int i, int j, int k) const {
    auto it = terms_.find({i, j, k});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  friend HomPoly3 operator+(const HomPoly3& a, const HomPoly3& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree_ != b.degree_) throw PreconditionError("degree mismatch in sum");
    HomPoly3 r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(c, e);
    return r;
  }
  friend HomPoly3 operator-(const HomPoly3& a, const HomPoly3& b) { return a + Rational(-1) * b; }
  friend HomPoly3 operator*(const Rational& k, const HomPoly3& p) {
    if (k == 0) return HomPoly3(p.degree_);
    HomPoly3 r(p.degree_);
    for (const auto& [e, c] : p.terms_) r.terms_.emplace(e, k * c);
    return r;
  }
  friend HomPoly3 operator*(const HomPoly3& a, const HomPoly3& b) {
    HomPoly3 r(a.degree_ + b.degree_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        r.add_term(ca * cb, {ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]});
    return r;
  }
  HomPoly3 pow(int e) const {
    HomPoly3 acc = monomial(Rational(1), 0, 0, 0);
    HomPoly3 b = *this;
    int k = e;
    while (k > 0) {
      if (k & 1) acc = acc * b;
      b = b * b;
      k >>= 1;
    }
    return acc;
  }

  bool operator==(const HomPoly3& o) const { return degree_ == o.degree_ && terms_ == o.terms_; }

  Rational eval(const Rational& x, const Rational& y, const Rational& z) const {
    Rational acc(0);
    for (const auto& [e, c] : terms_)
      acc += c * rat_pow(x, e[0]) * rat_pow(y, e[1]) * rat_pow(z, e[2]);
    return acc;
  }

  // Substitute univariate polynomials for the coordinates.
  QPoly eval_poly(const QPoly& x, const QPoly& y, const QPoly& z) const {
    QPoly acc;
    for (const auto& [e, c] : terms_) {
      QPoly term = QPoly::constant(c);
      term = term * x.pow(e[0]) * y.pow(e[1]) * z.pow(e[2]);
      acc += term;
    }
    return acc;
  }

  HomPoly3 partial(int var) const {
    if (degree_ == 0) return HomPoly3(0);
    HomPoly3 r(degree_ - 1);
    for (const auto& [e, c] : terms_) {
      if (e[static_cast<std::size_t>(var)] == 0) continue;
      Exps ne = e;
      ne[static_cast<std::size_t>(var)] -= 1;
      r.add_term(c * Rational(e[static_cast<std::size_t>(var)]), ne);
    }
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    // Print with z-degree ascending, then x-degree descending.
    std::vector<std::pair<Exps, Rational>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
      if (a.first[2] != b.first[2]) return a.first[2] < b.first[2];
      return a.first[0] > b.first[0];
    });
    std::string s;
    for (const auto& [e, c] : ordered) {
      bool first = s.empty();
      if (!first) s += c > 0 ? " + " : " - ";
      else if (c < 0) s += "-";
      Rational a = rat_abs(c);
      bool has_vars = e[0] + e[1] + e[2] > 0;
      bool unit = (a == 1) && has_vars;
      std::string mono;
      const char* names = "xyz";
      for (int v = 0; v < 3; ++v) {
        if (e[static_cast<std::size_t>(v)] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[v];
        if (e[static_cast<std::size_t>(v)] > 1) mono += "^" + std::to_string(e[static_cast<std::size_t>(v)]);
      }
      if (!unit) {
        s += rat_num(a).str();
        if (rat_den(a) != 1) s += "/" + rat_den(a).str();
        if (has_vars) s += "*";
      }
      s += mono;
    }
    return s;
  }

 private:
  int degree_;
  std::map<Exps, Rational> terms_;
};

}  // namespace geiser
