#pragma once

#include "geiser/rational.hpp"
#include "geiser/unipoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace geiser {

// Element a + b*sqrt(D) of a quadratic extension of Q. D is a fixed
// non-square rational; purely rational values carry D = 0 and mix freely
// with any extension.
class QuadExt {
 public:
  QuadExt() : a_(0), b_(0), d_(0) {}
  QuadExt(int v) : a_(v), b_(0), d_(0) {}  // NOLINT: implicit for field ops
  QuadExt(Rational v) : a_(std::move(v)), b_(0), d_(0) {}  // NOLINT
  QuadExt(Rational a, Rational b, Rational d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (b_ == 0) d_ = 0;
  }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  const Rational& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  QuadExt conj() const { return QuadExt(a_, -b_, d_); }
  Rational norm() const { return a_ * a_ - b_ * b_ * d_; }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    Rational d = merge(x, y);
    return QuadExt(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    Rational d = merge(x, y);
    return QuadExt(x.a_ - y.a_, x.b_ - y.b_, d);
  }
  friend QuadExt operator-(const QuadExt& x) { return QuadExt(-x.a_, -x.b_, x.d_); }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    Rational d = merge(x, y);
    return QuadExt(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    Rational n = y.norm();
    if (n == 0) throw PreconditionError("division by zero in quadratic extension");
    QuadExt inv(y.a_ / n, -y.b_ / n, y.d_);
    return x * inv;
  }
  QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
  QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
  QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }
  QuadExt& operator/=(const QuadExt& y) { return *this = *this / y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    if (x.b_ == 0 && y.b_ == 0) return x.a_ == y.a_;
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

  std::string str() const {
    if (is_rational()) return rat_str(a_);
    return rat_str(a_) + " + " + rat_str(b_) + "*sqrt(" + rat_str(d_) + ")";
  }

 private:
  static Rational merge(const QuadExt& x, const QuadExt& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0) return x.d_;
    if (x.d_ != y.d_) throw UnsupportedError("mixing distinct quadratic extensions");
    return x.d_;
  }
  Rational a_, b_, d_;
};

// Square root of a QuadExt value inside its own field, when it exists.
inline std::optional<QuadExt> quad_sqrt(const QuadExt& x) {
  if (x.is_rational()) {
    if (auto r = rat_sqrt(x.rational_part())) return QuadExt(*r);
    return std::nullopt;
  }
  // (p + q*sqrt(D))^2 = a + b*sqrt(D): p^2 + q^2 D = a, 2pq = b.
  const Rational &a = x.rational_part(), &b = x.radical_part(), &d = x.radicand();
  // p^2 solves y^2 - a y + b^2 d / 4 = 0.
  Rational disc = a * a - b * b * d;
  auto sd = rat_sqrt(disc);
  if (!sd) return std::nullopt;
  for (const Rational& p2 : {(a + *sd) / 2, (a - *sd) / 2}) {
    auto p = rat_sqrt(p2);
    if (p && *p != 0) return QuadExt(*p, b / (2 * *p), d);
  }
  return std::nullopt;
}

// Roots of a polynomial over QuadExt, limited to linear and quadratic
// factors that split inside the field. Returns (root, multiplicity) pairs
// and the unfactored remainder.
struct QuadRootResult {
  std::vector<std::pair<QuadExt, int>> roots;
  int unresolved_degree = 0;
};

inline QuadRootResult roots_in_field(const UniPoly<QuadExt>& p) {
  QuadRootResult res;
  UniPoly<QuadExt> f = p;
  if (f.is_zero()) throw PreconditionError("roots of zero polynomial");
  // Trial roots from the rational case are not available generically; rely on
  // degree <= 2 splitting plus repeated synthetic division by found roots.
  auto extract_root = [&](const QuadExt& r) {
    int mult = 0;
    UniPoly<QuadExt> lin(std::vector<QuadExt>{-r, QuadExt(1)});
    while (true) {
      auto [q, rem] = UniPoly<QuadExt>::divrem(f, lin);
      if (!rem.is_zero()) break;
      f = q;
      ++mult;
    }
    if (mult > 0) res.roots.emplace_back(r, mult);
    return mult > 0;
  };
  bool progress = true;
  while (progress && f.degree() >= 1) {
    progress = false;
    if (f.coeff(0) == QuadExt(0)) {
      progress = extract_root(QuadExt(0));
      continue;
    }
    if (f.degree() == 1) {
      progress = extract_root(QuadExt(0) - f.coeff(0) / f.coeff(1));
      continue;
    }
    if (f.degree() == 2) {
      QuadExt a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
      QuadExt disc = b * b - QuadExt(4) * a * c;
      if (auto s = quad_sqrt(disc)) {
        QuadExt two_a = QuadExt(2) * a;
        progress = extract_root((QuadExt(0) - b + *s) / two_a);
        extract_root((QuadExt(0) - b - *s) / two_a);
        continue;
      }
      break;
    }
    break;
  }
  res.unresolved_degree = std::max(f.degree(), 0);
  return res;
}

}  // namespace geiser
