#pragma once

#include "geiser/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace geiser {

// Dense univariate polynomial over a field K. Coefficient i is the
// coefficient of t^i; the top coefficient is nonzero unless the polynomial
// is zero.
template <class K>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { normalize(); }
  static UniPoly constant(const K& k) { return UniPoly(std::vector<K>{k}); }
  static UniPoly monomial(const K& k, int e) {
    std::vector<K> v(static_cast<std::size_t>(e) + 1, K(0));
    v.back() = k;
    return UniPoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<K>& coeffs() const { return c_; }

  K coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return K(0);
    return c_[static_cast<std::size_t>(i)];
  }
  K leading() const { return is_zero() ? K(0) : c_.back(); }

  // Index of the first nonzero coefficient; -1 for the zero polynomial.
  int order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == K(0))) return static_cast<int>(i);
    return -1;
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(const UniPoly& a) {
    UniPoly r = a;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const K& k, UniPoly p) {
    for (auto& x : p.c_) x *= k;
    p.normalize();
    return p;
  }

  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  K eval(const K& x) const {
    K acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<K> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = K(static_cast<int>(i)) * c_[i];
    return UniPoly(std::move(r));
  }

  // Quotient/remainder; K must be a field, divisor nonzero.
  static std::pair<UniPoly, UniPoly> divrem(UniPoly num, const UniPoly& den) {
    if (den.is_zero()) throw PreconditionError("division by zero polynomial");
    UniPoly q;
    if (num.degree() >= den.degree()) {
      q.c_.assign(static_cast<std::size_t>(num.degree() - den.degree()) + 1, K(0));
      while (!num.is_zero() && num.degree() >= den.degree()) {
        int shift = num.degree() - den.degree();
        K f = num.leading() / den.leading();
        q.c_[static_cast<std::size_t>(shift)] = f;
        for (std::size_t i = 0; i < den.c_.size(); ++i)
          num.c_[i + static_cast<std::size_t>(shift)] -= f * den.c_[i];
        num.normalize();
      }
      q.normalize();
    }
    return {q, num};
  }

  UniPoly divexact(const UniPoly& den) const {
    auto [q, r] = divrem(*this, den);
    if (!r.is_zero()) throw PreconditionError("inexact polynomial division");
    return q;
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    K inv = K(1) / leading();
    return inv * *this;
  }

  static UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
      auto [q, r] = divrem(a, b);
      (void)q;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  UniPoly pow(long long e) const {
    UniPoly acc = constant(K(1)), b = *this;
    while (e > 0) {
      if (e & 1) acc = acc * b;
      b = b * b;
      e >>= 1;
    }
    return acc;
  }

  // p(t + a)
  UniPoly shift(const K& a) const {
    UniPoly result;
    UniPoly lin(std::vector<K>{a, K(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      result = result * lin + constant(*it);
    return result;
  }

  // p(t) -> p(c * t)
  UniPoly scale_arg(const K& c) const {
    UniPoly r = *this;
    K f(1);
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
      r.c_[i] *= f;
      f *= c;
    }
    r.normalize();
    return r;
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
  }
  std::vector<K> c_;
};

using QPoly = UniPoly<Rational>;

// -- helpers over Q ----------------------------------------------------------

inline Int int_gcd(Int a, Int b) {
  return boost::multiprecision::gcd(a, b);
}

// Clears denominators and divides by the integer content; sign of the leading
// coefficient is made positive.
inline std::vector<Int> primitive_integer_coeffs(const QPoly& p) {
  Int lcm(1);
  for (const auto& c : p.coeffs()) {
    Int d = rat_den(c);
    lcm = lcm / int_gcd(lcm, d) * d;
  }
  std::vector<Int> out;
  Int content(0);
  for (const auto& c : p.coeffs()) {
    Int v = rat_num(c) * (lcm / rat_den(c));
    out.push_back(v);
    content = int_gcd(content, v);
  }
  if (content == 0) return out;
  if (out.back() < 0) content = -content;
  for (auto& v : out) v /= content;
  return out;
}

inline std::vector<Int> divisors_of(Int n, std::size_t cap = 4096) {
  n = boost::multiprecision::abs(n);
  std::vector<Int> divs;
  if (n == 0) return divs;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d * d != n) divs.push_back(n / d);
      if (divs.size() > cap) throw UnsupportedError("too many divisors while factoring");
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// All rational roots with multiplicities.
inline std::vector<std::pair<Rational, int>> rational_roots(QPoly p) {
  std::vector<std::pair<Rational, int>> roots;
  if (p.is_zero()) throw PreconditionError("rational_roots of zero polynomial");
  int ord = p.order();
  if (ord > 0) {
    roots.emplace_back(Rational(0), ord);
    std::vector<Rational> shifted(p.coeffs().begin() + ord, p.coeffs().end());
    p = QPoly(std::move(shifted));
  }
  if (p.degree() < 1) return roots;
  auto ints = primitive_integer_coeffs(p);
  std::vector<Int> nums = divisors_of(ints.front());
  std::vector<Int> dens = divisors_of(ints.back());
  std::vector<Rational> candidates;
  for (const auto& a : nums)
    for (const auto& b : dens) {
      candidates.push_back(Rational(a, b));
      candidates.push_back(Rational(-a, b));
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& r : candidates) {
    if (p.eval(r) != 0) continue;
    int mult = 0;
    QPoly lin(std::vector<Rational>{-r, Rational(1)});
    while (true) {
      auto [q, rem] = QPoly::divrem(p, lin);
      if (!rem.is_zero()) break;
      p = q;
      ++mult;
    }
    roots.emplace_back(r, mult);
  }
  return roots;
}

// Yun's squarefree decomposition: returns [(g_1,1), (g_2,2), ...] with
// p = lc * prod g_i^i and the g_i squarefree, pairwise coprime, monic.
inline std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p) {
  std::vector<std::pair<QPoly, int>> out;
  if (p.degree() < 1) return out;
  QPoly a = p.monic();
  QPoly g = QPoly::gcd(a, a.derivative());
  QPoly w = a.divexact(g);
  int i = 1;
  while (w.degree() > 0) {
    QPoly y = QPoly::gcd(w, g);
    QPoly f = w.divexact(y);
    if (f.degree() > 0) out.emplace_back(f.monic(), i);
    w = y;
    g = g.divexact(y);
    ++i;
  }
  return out;
}

namespace detail {

// Kronecker's interpolation method. Finds a nontrivial factor of a squarefree
// primitive integer polynomial, or reports none below the search bounds.
inline bool kronecker_split(const std::vector<Int>& f, std::vector<Int>& factor_out,
                            Int value_cap) {
  int n = static_cast<int>(f.size()) - 1;
  auto eval_at = [&](long long x) {
    Int acc = 0;
    for (int i = n; i >= 0; --i) acc = acc * x + f[static_cast<std::size_t>(i)];
    return acc;
  };
  for (int d = 1; d <= n / 2; ++d) {
    std::vector<long long> xs;
    std::vector<Int> vals;
    long long x = 0;
    while (static_cast<int>(xs.size()) < d + 1) {
      Int v = eval_at(x);
      if (v != 0) {
        if (boost::multiprecision::abs(v) > value_cap)
          throw UnsupportedError("factorization search values exceed cap");
        xs.push_back(x);
        vals.push_back(v);
      }
      x = (x > 0) ? -x : -x + 1;
    }
    std::vector<std::vector<Int>> divs;
    std::size_t total = 1;
    for (const auto& v : vals) {
      auto dv = divisors_of(v);
      std::vector<Int> with_neg;
      for (const auto& e : dv) {
        with_neg.push_back(e);
        with_neg.push_back(-e);
      }
      total *= with_neg.size();
      if (total > 2000000) throw UnsupportedError("factorization search space too large");
      divs.push_back(std::move(with_neg));
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(d) + 1, 0);
    while (true) {
      // Lagrange interpolation through (xs[i], divs[i][idx[i]]).
      std::vector<Rational> cand(static_cast<std::size_t>(d) + 1, Rational(0));
      for (int i = 0; i <= d; ++i) {
        std::vector<Rational> basis{Rational(1)};
        Rational denom(1);
        for (int j = 0; j <= d; ++j) {
          if (j == i) continue;
          std::vector<Rational> next(basis.size() + 1, Rational(0));
          for (std::size_t k = 0; k < basis.size(); ++k) {
            next[k] += basis[k] * Rational(-xs[static_cast<std::size_t>(j)]);
            next[k + 1] += basis[k];
          }
          basis = std::move(next);
          denom *= Rational(xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)]);
        }
        Rational scale = Rational(divs[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]]) / denom;
        for (std::size_t k = 0; k < basis.size(); ++k) cand[k] += scale * basis[k];
      }
      bool integral = true;
      for (const auto& c : cand)
        if (!is_integer(c)) {
          integral = false;
          break;
        }
      if (integral && !(cand.back() == 0)) {
        std::vector<Rational> fr(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) fr[i] = Rational(f[i]);
        QPoly fq{std::vector<Rational>(fr)};
        QPoly cq{std::vector<Rational>(cand.begin(), cand.end())};
        if (cq.degree() >= 1) {
          auto [q, r] = QPoly::divrem(fq, cq);
          (void)q;
          if (r.is_zero()) {
            factor_out.clear();
            for (const auto& c : cand) factor_out.push_back(rat_num(c));
            return true;
          }
        }
      }
      int pos = 0;
      while (pos <= d) {
        if (++idx[static_cast<std::size_t>(pos)] < divs[static_cast<std::size_t>(pos)].size()) break;
        idx[static_cast<std::size_t>(pos)] = 0;
        ++pos;
      }
      if (pos > d) break;
    }
  }
  return false;
}

}  // namespace detail

// Full factorization over Q into monic irreducible factors with
// multiplicities (the leading coefficient is dropped). Uses squarefree
// decomposition, rational roots, quadratic discriminants, and a capped
// Kronecker search for higher degrees.
inline std::vector<std::pair<QPoly, int>> factor_over_q(const QPoly& p,
                                                        Int value_cap = Int(1) << 48) {
  std::vector<std::pair<QPoly, int>> out;
  if (p.degree() < 1) return out;
  for (const auto& [sf, mult] : squarefree_decomposition(p)) {
    std::vector<QPoly> stack{sf};
    while (!stack.empty()) {
      QPoly f = stack.back().monic();
      stack.pop_back();
      if (f.degree() <= 0) continue;
      if (f.degree() == 1) {
        out.emplace_back(f, mult);
        continue;
      }
      auto roots = rational_roots(f);
      if (!roots.empty()) {
        for (const auto& [r, m] : roots) {
          QPoly lin(std::vector<Rational>{-r, Rational(1)});
          out.emplace_back(lin, mult * m);
          for (int i = 0; i < m; ++i) f = f.divexact(lin);
        }
        if (f.degree() > 0) stack.push_back(f);
        continue;
      }
      if (f.degree() == 2) {
        // No rational roots, so irreducible.
        out.emplace_back(f, mult);
        continue;
      }
      if (f.degree() == 3) {
        out.emplace_back(f, mult);  // cubic without rational roots
        continue;
      }
      auto ints = primitive_integer_coeffs(f);
      std::vector<Int> factor;
      if (detail::kronecker_split(ints, factor, value_cap)) {
        std::vector<Rational> fr(factor.size());
        for (std::size_t i = 0; i < factor.size(); ++i) fr[i] = Rational(factor[i]);
        QPoly g{std::move(fr)};
        stack.push_back(g);
        stack.push_back(f.divexact(g));
      } else {
        out.emplace_back(f, mult);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return a.first.coeffs() < b.first.coeffs();
  });
  return out;
}

inline std::string unipoly_str(const QPoly& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::string s;
  for (int i = p.degree(); i >= 0; --i) {
    Rational c = p.coeff(i);
    if (c == 0) continue;
    bool first = s.empty();
    if (!first) s += c > 0 ? " + " : " - ";
    else if (c < 0) s += "-";
    Rational a = rat_abs(c);
    bool unit = (a == 1) && i > 0;
    if (!unit) {
      s += rat_num(a).str();
      if (rat_den(a) != 1) s += "/" + rat_den(a).str();
      if (i > 0) s += "*";
    }
    if (i > 0) {
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace geiser
