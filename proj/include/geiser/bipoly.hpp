#pragma once

#include "geiser/quadext.hpp"
#include "geiser/rational.hpp"
#include "geiser/series.hpp"
#include "geiser/unipoly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace geiser {

// Sparse bivariate polynomial over a field K, used for local analysis of a
// plane curve germ at the origin.
template <class K>
class BiPoly {
 public:
  using Key = std::pair<int, int>;  // (x-exponent, y-exponent)

  BiPoly() = default;

  void add_term(const K& c, int i, int j) {
    if (c == K(0)) return;
    auto it = t_.find({i, j});
    if (it == t_.end()) t_.emplace(Key{i, j}, c);
    else {
      it->second += c;
      if (it->second == K(0)) t_.erase(it);
    }
  }
  bool is_zero() const { return t_.empty(); }
  const std::map<Key, K>& terms() const { return t_; }
  K coeff(int i, int j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? K(0) : it->second;
  }

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (const auto& [k, c] : b.t_) r.add_term(c, k.first, k.second);
    return r;
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_)
        r.add_term(ca * cb, ka.first + kb.first, ka.second + kb.second);
    return r;
  }
  friend BiPoly operator*(const K& k, const BiPoly& p) {
    BiPoly r;
    for (const auto& [key, c] : p.t_) r.add_term(k * c, key.first, key.second);
    return r;
  }

  K eval(const K& x, const K& y) const {
    K acc(0);
    for (const auto& [k, c] : t_) {
      K term = c;
      for (int i = 0; i < k.first; ++i) term *= x;
      for (int j = 0; j < k.second; ++j) term *= y;
      acc += term;
    }
    return acc;
  }

  // Multiplicity at the origin: minimal total degree of a term, -1 if zero.
  int multiplicity() const {
    int m = -1;
    for (const auto& [k, c] : t_) {
      int tot = k.first + k.second;
      if (m < 0 || tot < m) m = tot;
    }
    return m;
  }

  int min_x_exponent() const {
    int m = -1;
    for (const auto& [k, c] : t_)
      if (m < 0 || k.first < m) m = k.first;
    return m;
  }
  int min_y_exponent() const {
    int m = -1;
    for (const auto& [k, c] : t_)
      if (m < 0 || k.second < m) m = k.second;
    return m;
  }

  BiPoly shift_down_x(int a) const {
    BiPoly r;
    for (const auto& [k, c] : t_) {
      if (k.first < a) throw PreconditionError("not divisible by x^a");
      r.add_term(c, k.first - a, k.second);
    }
    return r;
  }
  BiPoly shift_down_y(int a) const {
    BiPoly r;
    for (const auto& [k, c] : t_) {
      if (k.second < a) throw PreconditionError("not divisible by y^a");
      r.add_term(c, k.first, k.second - a);
    }
    return r;
  }

  // y -> y + c
  BiPoly translate_y(const K& c) const {
    std::map<int, UniPoly<K>> by_x;
    for (const auto& [k, co] : t_) {
      auto& p = by_x[k.first];
      std::vector<K> v = p.coeffs();
      if (static_cast<int>(v.size()) <= k.second)
        v.resize(static_cast<std::size_t>(k.second) + 1, K(0));
      v[static_cast<std::size_t>(k.second)] = co;
      p = UniPoly<K>(std::move(v));
    }
    BiPoly r;
    for (auto& [i, p] : by_x) {
      UniPoly<K> sh = p.shift(c);
      for (int j = 0; j <= sh.degree(); ++j) r.add_term(sh.coeff(j), i, j);
    }
    return r;
  }

  // Blow-up chart (x, y) -> (x, x (y + c)), divided by x^m.
  BiPoly blowup_chart_y(const K& c, int m) const {
    BiPoly sub;
    for (const auto& [k, co] : t_) sub.add_term(co, k.first + k.second, k.second);
    return sub.translate_y(c).shift_down_x(m);
  }
  // Blow-up chart (x, y) -> (x y, y), divided by y^m (the vertical direction).
  BiPoly blowup_chart_x(int m) const {
    BiPoly sub;
    for (const auto& [k, co] : t_) sub.add_term(co, k.first, k.first + k.second);
    return sub.shift_down_y(m);
  }

  // Tangent-direction polynomial: sum of c_{i,j} v^j over i + j = m.
  UniPoly<K> tangent_directions() const {
    int m = multiplicity();
    std::vector<K> v(static_cast<std::size_t>(m) + 1, K(0));
    for (const auto& [k, c] : t_)
      if (k.first + k.second == m) v[static_cast<std::size_t>(k.second)] = c;
    return UniPoly<K>(std::move(v));
  }

  template <class K2>
  BiPoly<K2> lift() const {
    BiPoly<K2> r;
    for (const auto& [k, c] : t_) r.add_term(K2(c), k.first, k.second);
    return r;
  }

  TruncSeries<K> eval_series(const TruncSeries<K>& x, const TruncSeries<K>& y) const {
    int trunc = std::min(x.truncation(), y.truncation());
    int mx = 0, my = 0;
    for (const auto& [k, c] : t_) {
      mx = std::max(mx, k.first);
      my = std::max(my, k.second);
    }
    std::vector<TruncSeries<K>> xp{TruncSeries<K>::monomial(K(1), 0, trunc)};
    std::vector<TruncSeries<K>> yp{TruncSeries<K>::monomial(K(1), 0, trunc)};
    for (int i = 1; i <= mx; ++i) xp.push_back(xp.back() * x);
    for (int j = 1; j <= my; ++j) yp.push_back(yp.back() * y);
    TruncSeries<K> acc(trunc);
    for (const auto& [k, c] : t_)
      acc = acc + c * (xp[static_cast<std::size_t>(k.first)] * yp[static_cast<std::size_t>(k.second)]);
    return acc;
  }

 private:
  std::map<Key, K> t_;
};

using QBiPoly = BiPoly<Rational>;

namespace detail {

// Roots of a QuadExt polynomial inside its field, with an optional one-level
// quadratic escalation for rational coefficients: conjugate root pairs are
// then appended explicitly. Whatever cannot be split is returned unfactored.
struct FieldRootsResult {
  std::vector<std::pair<QuadExt, int>> roots;
  UniPoly<QuadExt> remainder;
};

inline FieldRootsResult field_roots(UniPoly<QuadExt> f, bool allow_ext) {
  FieldRootsResult res;
  auto extract = [&](const QuadExt& r) {
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
  // Rational-root pass when every coefficient is rational.
  bool all_rational = true;
  for (int i = 0; i <= f.degree(); ++i)
    if (!f.coeff(i).is_rational()) {
      all_rational = false;
      break;
    }
  if (all_rational && f.degree() >= 1) {
    std::vector<Rational> rc;
    for (int i = 0; i <= f.degree(); ++i) rc.push_back(f.coeff(i).rational_part());
    for (const auto& [r, m] : rational_roots(QPoly(std::move(rc)))) {
      (void)m;
      extract(QuadExt(r));
    }
  }
  bool progress = true;
  while (progress && f.degree() >= 1) {
    progress = false;
    if (f.coeff(0) == QuadExt(0)) {
      progress = extract(QuadExt(0));
      continue;
    }
    if (f.degree() == 1) {
      progress = extract(QuadExt(0) - f.coeff(0) / f.coeff(1));
      continue;
    }
    if (f.degree() == 2) {
      QuadExt a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
      QuadExt disc = b * b - QuadExt(4) * a * c;
      if (auto s = quad_sqrt(disc)) {
        QuadExt two_a = QuadExt(2) * a;
        progress = extract((QuadExt(0) - b + *s) / two_a);
        extract((QuadExt(0) - b - *s) / two_a);
        continue;
      }
      if (allow_ext && a.is_rational() && b.is_rational() && disc.is_rational()) {
        Rational d = disc.rational_part();
        QuadExt root(-b.rational_part() / (2 * a.rational_part()),
                     Rational(1) / (2 * a.rational_part()), d);
        if (extract(root)) extract(root.conj());
        continue;
      }
      break;
    }
    break;
  }
  res.remainder = f;
  return res;
}

inline Int delta_blowup_rec(const BiPoly<QuadExt>& f, bool in_extension, int depth) {
  if (depth > 256) throw UnsupportedError("blow-up recursion too deep");
  int m = f.multiplicity();
  if (m <= 1) return 0;
  Int total = Int(m) * (m - 1) / 2;
  UniPoly<QuadExt> phi = f.tangent_directions();
  // Directions inside the current field recurse with weight 1; a conjugate
  // pair over a new quadratic extension recurses once, weighted by the
  // residue degree 2.
  auto split = field_roots(phi, false);
  for (const auto& [r, mult] : split.roots) {
    (void)mult;
    BiPoly<QuadExt> g = f.blowup_chart_y(r, m);
    total += delta_blowup_rec(g, in_extension, depth + 1);
  }
  if (split.remainder.degree() == 2 && !in_extension) {
    auto pair_roots = field_roots(split.remainder, true);
    if (pair_roots.roots.empty())
      throw UnsupportedError("irrational cluster beyond supported degree");
    BiPoly<QuadExt> g = f.blowup_chart_y(pair_roots.roots.front().first, m);
    total += 2 * delta_blowup_rec(g, true, depth + 1);
  } else if (split.remainder.degree() >= 1) {
    throw UnsupportedError("irrational cluster beyond supported degree");
  }
  if (phi.degree() < m) {
    BiPoly<QuadExt> g = f.blowup_chart_x(m);
    total += delta_blowup_rec(g, in_extension, depth + 1);
  }
  return total;
}

}  // namespace detail

// Oracle A: delta invariant of the germ of f at the origin by recursive
// point blow-ups over Q, with conjugate quadratic clusters weighted by their
// residue degree.
inline Int delta_blowup(const QBiPoly& f) {
  if (f.is_zero()) throw PreconditionError("delta of the zero polynomial");
  if (f.multiplicity() == 0) throw PreconditionError("germ does not pass through the point");
  return detail::delta_blowup_rec(f.lift<QuadExt>(), false, 0);
}

// ---------------------------------------------------------------------------
// Oracle B: branches by Newton polygon expansion.
// ---------------------------------------------------------------------------

struct PuiseuxBranch {
  TruncSeries<QuadExt> x;
  TruncSeries<QuadExt> y;
};

namespace detail {

inline std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> newton_edges(
    const BiPoly<QuadExt>& f) {
  std::map<int, int> min_j_for_i;
  for (const auto& [k, c] : f.terms()) {
    auto it = min_j_for_i.find(k.first);
    if (it == min_j_for_i.end() || k.second < it->second) min_j_for_i[k.first] = k.second;
  }
  std::vector<std::pair<int, int>> hull;
  for (const auto& p : min_j_for_i) {
    std::pair<int, int> pt{p.first, p.second};
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      long long cross = static_cast<long long>(b.first - a.first) * (pt.second - a.second) -
                        static_cast<long long>(b.second - a.second) * (pt.first - a.first);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(pt);
  }
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> edges;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i)
    if (hull[i].second > hull[i + 1].second) edges.emplace_back(hull[i], hull[i + 1]);
  return edges;
}

// x*a + y*b = gcd(a, b) for nonnegative a, b.
inline void ext_gcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return;
  }
  long long x1, y1;
  ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
}

inline QuadExt qpow(const QuadExt& base, long long e) {
  if (e < 0) return QuadExt(1) / qpow(base, -e);
  QuadExt acc(1), b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

// Solve G(t, w) = 0 for w(t) with w(0) = 0, given dG/dw(0, 0) != 0.
inline TruncSeries<QuadExt> solve_regular_series(const BiPoly<QuadExt>& g, int trunc) {
  std::map<int, UniPoly<QuadExt>> by_w;
  for (const auto& [k, c] : g.terms()) {
    auto& p = by_w[k.second];
    std::vector<QuadExt> v = p.coeffs();
    if (static_cast<int>(v.size()) <= k.first)
      v.resize(static_cast<std::size_t>(k.first) + 1, QuadExt(0));
    v[static_cast<std::size_t>(k.first)] = c;
    p = UniPoly<QuadExt>(std::move(v));
  }
  QuadExt d = by_w.count(1) ? by_w[1].coeff(0) : QuadExt(0);
  if (d == QuadExt(0)) throw PreconditionError("series solve requires a regular point");
  int max_w = by_w.rbegin()->first;
  TruncSeries<QuadExt> w(trunc);
  for (int ord = 1; ord < trunc; ++ord) {
    TruncSeries<QuadExt> acc(trunc);
    for (int j = max_w; j >= 0; --j) {
      acc = acc * w;
      auto it = by_w.find(j);
      if (it != by_w.end()) acc = acc + TruncSeries<QuadExt>::from_poly(it->second, trunc);
    }
    QuadExt rho = acc.coeff(ord);
    if (!(rho == QuadExt(0))) w.set_coeff(ord, QuadExt(0) - rho / d);
  }
  return w;
}

inline void newton_branches_rec(BiPoly<QuadExt> g, int trunc, int depth,
                                std::vector<PuiseuxBranch>& out) {
  if (depth > 64) throw UnsupportedError("branch expansion recursion too deep");
  int vx = g.min_x_exponent();
  if (vx > 0) {
    out.push_back({TruncSeries<QuadExt>(trunc), TruncSeries<QuadExt>::monomial(QuadExt(1), 1, trunc)});
    g = g.shift_down_x(vx);
  }
  int vy = g.min_y_exponent();
  if (vy > 0) {
    out.push_back({TruncSeries<QuadExt>::monomial(QuadExt(1), 1, trunc), TruncSeries<QuadExt>(trunc)});
    g = g.shift_down_y(vy);
  }
  if (g.is_zero() || g.multiplicity() == 0) return;

  for (const auto& edge : newton_edges(g)) {
    auto [p1, p2] = edge;
    long long di = p2.first - p1.first;
    long long dj = p1.second - p2.second;
    long long gg = std::gcd(di, dj);
    long long qbar = di / gg;  // weight of y
    long long pbar = dj / gg;  // weight of x
    UniPoly<QuadExt> phi;
    {
      std::vector<QuadExt> v(static_cast<std::size_t>(gg) + 1, QuadExt(0));
      for (long long k = 0; k <= gg; ++k)
        v[static_cast<std::size_t>(k)] = g.coeff(static_cast<int>(p1.first + k * qbar),
                                                 static_cast<int>(p1.second - k * pbar));
      phi = UniPoly<QuadExt>(std::move(v));
    }
    long long n_val = pbar * p1.first + qbar * p1.second;
    auto split = field_roots(phi, true);
    if (split.remainder.degree() >= 1)
      throw UnsupportedError("branch expansion needs a root beyond a quadratic extension");
    for (const auto& [z0, mult] : split.roots) {
      // sigma*qbar - tau*pbar = 1
      long long u, v;
      ext_gcd(qbar, pbar, u, v);  // u*qbar + v*pbar = 1
      long long sigma = u, tau = -v;
      QuadExt zx = qpow(z0, sigma);
      QuadExt zy = qpow(z0, tau);
      // x = zx t^pbar, y = zy t^qbar (1 + w), divided by t^n_val.
      BiPoly<QuadExt> gnew;
      for (const auto& [key, c] : g.terms()) {
        long long tpow = pbar * key.first + qbar * key.second - n_val;
        QuadExt scal = c * qpow(zx, key.first) * qpow(zy, key.second);
        std::vector<QuadExt> binom(static_cast<std::size_t>(key.second) + 1, QuadExt(0));
        binom[0] = QuadExt(1);
        for (int rep = 0; rep < key.second; ++rep)
          for (int b = rep + 1; b >= 1; --b)
            binom[static_cast<std::size_t>(b)] += binom[static_cast<std::size_t>(b - 1)];
        for (int b = 0; b <= key.second; ++b)
          gnew.add_term(scal * binom[static_cast<std::size_t>(b)], static_cast<int>(tpow), b);
      }
      if (mult == 1) {
        TruncSeries<QuadExt> w = solve_regular_series(gnew, trunc);
        PuiseuxBranch br;
        br.x = TruncSeries<QuadExt>::monomial(zx, static_cast<int>(pbar), trunc);
        TruncSeries<QuadExt> unit = TruncSeries<QuadExt>::monomial(QuadExt(1), 0, trunc) + w;
        br.y = TruncSeries<QuadExt>::monomial(zy, static_cast<int>(qbar), trunc) * unit;
        out.push_back(br);
      } else {
        std::vector<PuiseuxBranch> inner;
        newton_branches_rec(gnew, trunc, depth + 1, inner);
        for (const auto& ib : inner) {
          if (ib.x.known_zero()) continue;  // exceptional direction
          TruncSeries<QuadExt> tp = TruncSeries<QuadExt>::monomial(QuadExt(1), 0, trunc);
          for (long long rep = 0; rep < pbar; ++rep) tp = tp * ib.x;
          TruncSeries<QuadExt> tq = TruncSeries<QuadExt>::monomial(QuadExt(1), 0, trunc);
          for (long long rep = 0; rep < qbar; ++rep) tq = tq * ib.x;
          PuiseuxBranch br;
          br.x = zx * tp;
          TruncSeries<QuadExt> unit = TruncSeries<QuadExt>::monomial(QuadExt(1), 0, trunc) + ib.y;
          br.y = zy * (tq * unit);
          out.push_back(br);
        }
      }
    }
  }
}

inline int series_floor_order(const TruncSeries<QuadExt>& s) {
  auto o = s.order();
  return o ? *o : s.truncation();
}

struct BranchState {
  TruncSeries<QuadExt> x, y;
  int mult() const { return std::min(series_floor_order(x), series_floor_order(y)); }
};

inline TruncSeries<QuadExt> series_quot(const TruncSeries<QuadExt>& num,
                                        const TruncSeries<QuadExt>& den) {
  auto od = den.order();
  if (!od) throw PreconditionError("series division by zero; raise GEISER_TRUNC");
  return num.shift_down(*od).div_unit(den.shift_down(*od));
}

// Direction after one blow-up: 0 = finite chart with its constant, 1 = vertical.
inline std::pair<int, QuadExt> branch_direction(const BranchState& b) {
  int ox = series_floor_order(b.x), oy = series_floor_order(b.y);
  if (ox <= oy) return {0, series_quot(b.y, b.x).coeff(0)};
  return {1, QuadExt(0)};
}

inline BranchState blow_up_branch(const BranchState& b) {
  int ox = series_floor_order(b.x), oy = series_floor_order(b.y);
  BranchState nb;
  if (ox <= oy) {
    TruncSeries<QuadExt> ratio = series_quot(b.y, b.x);
    QuadExt c = ratio.coeff(0);
    nb.x = b.x;
    nb.y = ratio - TruncSeries<QuadExt>::monomial(c, 0, ratio.truncation());
  } else {
    nb.x = series_quot(b.x, b.y);
    nb.y = b.y;
  }
  return nb;
}

inline Int branch_delta(BranchState b, int guard = 512) {
  Int total = 0;
  while (guard-- > 0) {
    int m = b.mult();
    if (m <= 1) return total;
    total += Int(m) * (m - 1) / 2;
    b = blow_up_branch(b);
  }
  throw UnsupportedError("branch multiplicity sequence did not terminate");
}

// Sum of m_i * m_i' over the infinitely near points the branches share.
inline Int branch_intersection(BranchState a, BranchState b, int guard = 512) {
  Int total = 0;
  while (guard-- > 0) {
    total += Int(a.mult()) * b.mult();
    auto da = branch_direction(a);
    auto db = branch_direction(b);
    if (da.first != db.first || !(da.second == db.second)) return total;
    a = blow_up_branch(a);
    b = blow_up_branch(b);
  }
  throw UnsupportedError("branches agree beyond the truncation order; raise GEISER_TRUNC");
}

}  // namespace detail

// All branches of f at the origin as truncated parametrizations; conjugate
// branches over a quadratic extension appear individually.
inline std::vector<PuiseuxBranch> newton_branches(const QBiPoly& f, int trunc = 0) {
  if (trunc <= 0) trunc = default_truncation();
  if (f.is_zero()) throw PreconditionError("branches of the zero polynomial");
  std::vector<PuiseuxBranch> out;
  detail::newton_branches_rec(f.lift<QuadExt>(), trunc, 0, out);
  return out;
}

// Oracle B: delta invariant from branch expansions (per-branch contributions
// plus pairwise intersection multiplicities).
inline Int delta_newton(const QBiPoly& f, int trunc = 0) {
  auto branches = newton_branches(f, trunc);
  std::vector<detail::BranchState> states;
  for (const auto& b : branches) states.push_back({b.x, b.y});
  Int total = 0;
  for (const auto& s : states) total += detail::branch_delta(s);
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j)
      total += detail::branch_intersection(states[i], states[j]);
  return total;
}

}  // namespace geiser
