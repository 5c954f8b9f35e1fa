#pragma once

#include "geiser/rational.hpp"
#include "geiser/unipoly.hpp"

#include <cstdlib>
#include <optional>
#include <vector>

namespace geiser {

// Default truncation order for branch expansions, overridable through the
// GEISER_TRUNC environment variable.
inline int default_truncation() {
  static int value = [] {
    if (const char* env = std::getenv("GEISER_TRUNC")) {
      int v = std::atoi(env);
      if (v >= 4) return v;
    }
    return 64;
  }();
  return value;
}

// Power series truncated at t^trunc (coefficients 0..trunc-1 are meaningful).
// Arithmetic carries the minimum truncation order of the operands.
template <class K>
class TruncSeries {
 public:
  TruncSeries() : trunc_(default_truncation()) {}
  explicit TruncSeries(int trunc) : trunc_(trunc) {
    if (trunc < 1) throw PreconditionError("truncation order must be >= 1");
  }
  TruncSeries(std::vector<K> coeffs, int trunc) : c_(std::move(coeffs)), trunc_(trunc) {
    if (trunc < 1) throw PreconditionError("truncation order must be >= 1");
    clip();
  }
  static TruncSeries from_poly(const UniPoly<K>& p, int trunc) {
    return TruncSeries(p.coeffs(), trunc);
  }
  static TruncSeries monomial(const K& c, int e, int trunc) {
    std::vector<K> v(static_cast<std::size_t>(e) + 1, K(0));
    v.back() = c;
    return TruncSeries(std::move(v), trunc);
  }

  int truncation() const { return trunc_; }
  K coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return K(0);
    return c_[static_cast<std::size_t>(i)];
  }
  void set_coeff(int i, const K& v) {
    if (i >= trunc_) return;
    if (i >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(i) + 1, K(0));
    c_[static_cast<std::size_t>(i)] = v;
  }

  // Order of vanishing; nullopt means "at least the truncation order".
  std::optional<int> order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == K(0))) return static_cast<int>(i);
    return std::nullopt;
  }
  int known_order() const {
    auto o = order();
    if (!o) throw PreconditionError("series vanishes to the truncation order; raise GEISER_TRUNC");
    return *o;
  }
  bool known_zero() const { return !order().has_value(); }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries r(std::min(a.trunc_, b.trunc_));
    r.c_.assign(static_cast<std::size_t>(r.trunc_), K(0));
    for (int i = 0; i < r.trunc_; ++i) r.c_[static_cast<std::size_t>(i)] = a.coeff(i) + b.coeff(i);
    r.clip();
    return r;
  }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries r(std::min(a.trunc_, b.trunc_));
    r.c_.assign(static_cast<std::size_t>(r.trunc_), K(0));
    for (int i = 0; i < r.trunc_; ++i) r.c_[static_cast<std::size_t>(i)] = a.coeff(i) - b.coeff(i);
    r.clip();
    return r;
  }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries r(std::min(a.trunc_, b.trunc_));
    r.c_.assign(static_cast<std::size_t>(r.trunc_), K(0));
    int alim = std::min<int>(static_cast<int>(a.c_.size()), r.trunc_);
    for (int i = 0; i < alim; ++i) {
      if (a.c_[static_cast<std::size_t>(i)] == K(0)) continue;
      int blim = std::min<int>(static_cast<int>(b.c_.size()), r.trunc_ - i);
      for (int j = 0; j < blim; ++j)
        r.c_[static_cast<std::size_t>(i + j)] += a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
    }
    r.clip();
    return r;
  }
  friend TruncSeries operator*(const K& k, TruncSeries s) {
    for (auto& c : s.c_) c *= k;
    s.clip();
    return s;
  }
  friend TruncSeries operator-(const TruncSeries& a) { return K(-1) * a; }

  // Multiplicative inverse; requires a unit (nonzero constant term).
  TruncSeries invert() const {
    if (coeff(0) == K(0)) throw PreconditionError("series inverse requires a unit");
    TruncSeries r(trunc_);
    r.c_.assign(static_cast<std::size_t>(trunc_), K(0));
    K inv0 = K(1) / coeff(0);
    r.c_[0] = inv0;
    for (int n = 1; n < trunc_; ++n) {
      K acc(0);
      for (int i = 1; i <= n; ++i) acc += coeff(i) * r.c_[static_cast<std::size_t>(n - i)];
      r.c_[static_cast<std::size_t>(n)] = -inv0 * acc;
    }
    r.clip();
    return r;
  }

  // Exact division by t^k (all lower coefficients must vanish).
  TruncSeries shift_down(int k) const {
    for (int i = 0; i < k; ++i)
      if (!(coeff(i) == K(0))) throw PreconditionError("series not divisible by t^k");
    TruncSeries r(trunc_ - k < 1 ? 1 : trunc_ - k);
    for (int i = 0; i + k < static_cast<int>(c_.size()); ++i) r.set_coeff(i, coeff(i + k));
    return r;
  }
  TruncSeries shift_up(int k) const {
    TruncSeries r(trunc_);
    for (int i = 0; i < static_cast<int>(c_.size()) && i + k < trunc_; ++i)
      r.set_coeff(i + k, coeff(i));
    return r;
  }

  TruncSeries div_unit(const TruncSeries& unit) const { return *this * unit.invert(); }

 private:
  void clip() {
    if (static_cast<int>(c_.size()) > trunc_) c_.resize(static_cast<std::size_t>(trunc_));
  }
  std::vector<K> c_;
  int trunc_;
};

using QSeries = TruncSeries<Rational>;

}  // namespace geiser
