#pragma once

#include "geiser/cusp.hpp"
#include "geiser/rational.hpp"

#include <string>
#include <vector>

namespace geiser {

// A degree-d del Pezzo surface with nodal anticanonical boundary; the two
// involutions exist once r = d - 2 >= 2.
struct SurfaceContext {
  int d = 9;
  SurfaceContext() = default;
  explicit SurfaceContext(int degree) : d(degree) {
    if (d < 3 || d > 9) throw PreconditionError("surface degree must lie in 3..9");
  }
  int r() const { return d - 2; }
  void require_pair() const {
    if (d < 4) throw PreconditionError("the involution pair needs degree >= 4");
  }
};

// Normalized degree plus contact profile; for a curve meeting the boundary
// only at the node, d * n equals the sum of the two contact orders.
struct CurveClass {
  SurfaceContext ctx;
  Rational n;
  ContactProfile profile;

  static CurveClass at_node(const SurfaceContext& ctx, long long p, long long q) {
    CurveClass c;
    c.ctx = ctx;
    c.profile = geiser::at_node(p, q);
    c.n = Rational(p + q, ctx.d);
    return c;
  }
  Rational mult() const {
    if (const auto* nd = std::get_if<AtNode>(&profile)) return Rational(std::min(nd->p, nd->q));
    return Rational(0);
  }
};

enum class Letter { Plus, Minus };

inline char letter_char(Letter l) { return l == Letter::Plus ? '+' : '-'; }

// Reduced alternating word over {sigma+, sigma-}; both letters are
// involutions, so equal neighbours cancel.
class GeiserWord {
 public:
  GeiserWord() = default;
  static GeiserWord parse(const std::string& s) {
    GeiserWord w;
    for (std::size_t i = 0; i < s.size(); ++i) {
      char c = s[i];
      if (c == '+') w.append(Letter::Plus);
      else if (c == '-') w.append(Letter::Minus);
      else if (!std::isspace(static_cast<unsigned char>(c)))
        throw ParseError("word letters must be '+' or '-'", i);
    }
    return w;
  }
  void append(Letter l) {
    if (!letters_.empty() && letters_.back() == l) letters_.pop_back();
    else letters_.push_back(l);
  }
  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  std::string str() const {
    std::string s;
    for (Letter l : letters_) s += letter_char(l);
    return s;
  }
  friend bool operator==(const GeiserWord&, const GeiserWord&) = default;

 private:
  std::vector<Letter> letters_;
};

// Closed form of the involution that blows up along the plus branch (the one
// carrying the contact order q), for a germ with orders (p, q):
//   q < rp  ->  (p, rp - q)
//   q > rp  ->  (q - rp, p + r(q - rp))
//   q = rp  ->  the image meets the boundary at one smooth point, order p.
inline ContactProfile sigma_plus_profile(const SurfaceContext& ctx, const ContactProfile& pr) {
  ctx.require_pair();
  const auto* g = std::get_if<AtNode>(&pr);
  if (!g)
    throw PreconditionError("the involutions act only on germs at the node");
  long long r = ctx.r();
  long long p = g->p, q = g->q;
  if (q < r * p) return AtNode{p, r * p - q};
  if (q > r * p) return AtNode{q - r * p, p + r * (q - r * p)};
  return AtSmoothPoint{p};
}

inline ContactProfile swap_branches(const ContactProfile& pr) {
  if (const auto* g = std::get_if<AtNode>(&pr)) return AtNode{g->q, g->p};
  return pr;
}

// Mirror involution along the minus branch.
inline ContactProfile sigma_minus_profile(const SurfaceContext& ctx, const ContactProfile& pr) {
  return swap_branches(sigma_plus_profile(ctx, swap_branches(pr)));
}

inline ContactProfile sigma_profile(const SurfaceContext& ctx, const ContactProfile& pr, Letter l) {
  return l == Letter::Plus ? sigma_plus_profile(ctx, pr) : sigma_minus_profile(ctx, pr);
}

inline Rational profile_ndeg(const SurfaceContext& ctx, const ContactProfile& pr) {
  if (const auto* g = std::get_if<AtNode>(&pr)) return Rational(g->p + g->q, ctx.d);
  if (const auto* s = std::get_if<AtSmoothPoint>(&pr)) return Rational(s->k, ctx.d);
  throw PreconditionError("disjoint profile has no boundary intersection");
}

// Normalized degree after one letter, computed from the profile closed forms
// (total boundary intersection divided by the surface degree).
inline Rational ndeg_after(const SurfaceContext& ctx, const CurveClass& cls, Letter l) {
  return profile_ndeg(ctx, sigma_profile(ctx, cls.profile, l));
}

inline CurveClass apply_letter(const CurveClass& cls, Letter l) {
  CurveClass out;
  out.ctx = cls.ctx;
  out.profile = sigma_profile(cls.ctx, cls.profile, l);
  out.n = profile_ndeg(cls.ctx, out.profile);
  return out;
}

// Left-to-right evaluation; fails naming the offending prefix if some prefix
// leaves the node.
inline CurveClass apply_word(const SurfaceContext& ctx, CurveClass cls, const GeiserWord& word) {
  (void)ctx;
  std::string prefix;
  for (Letter l : word.letters()) {
    if (!std::holds_alternative<AtNode>(cls.profile))
      throw PreconditionError("word left the node after prefix '" + prefix + "'");
    prefix += letter_char(l);
    cls = apply_letter(cls, l);
  }
  return cls;
}

// Brute-force realization of one involution: blow up r times along the
// chosen branch, relabel by the covering involution, contract back down.
inline ContactProfile simulate_geiser(const SurfaceContext& ctx, const ContactProfile& pr,
                                      Letter branch) {
  ctx.require_pair();
  const auto* g = std::get_if<AtNode>(&pr);
  if (!g) throw PreconditionError("the simulation acts only on germs at the node");
  long long p = g->p, q = g->q;
  if (branch == Letter::Minus) {
    ContactProfile mirrored = simulate_geiser(ctx, AtNode{q, p}, Letter::Plus);
    return swap_branches(mirrored);
  }
  DualGraphChain chain = chain_after_r_blowups(p, q, ctx.r());
  apply_tau(chain);
  for (int i = 0; i < ctx.r(); ++i) contract_last(chain);
  return chain_profile(chain);
}

// Class group of the boundary complement for the three surface shapes.
struct ClassGroupDescriptor {
  int free_rank = 0;
  std::vector<int> torsion;
  std::string str() const {
    std::string s;
    if (free_rank == 1) s = "Z";
    else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
    for (int t : torsion) {
      if (!s.empty()) s += " + ";
      s += "Z/" + std::to_string(t);
    }
    if (s.empty()) s = "0";
    return s;
  }
};

enum class SurfaceKind { P2, P1xP1, BlownUp };

inline ClassGroupDescriptor class_group_of_complement(SurfaceKind kind, int d = 0) {
  ClassGroupDescriptor out;
  switch (kind) {
    case SurfaceKind::P2:
      out.torsion = {3};
      return out;
    case SurfaceKind::P1xP1:
      out.free_rank = 1;
      out.torsion = {2};
      return out;
    case SurfaceKind::BlownUp:
      if (d < 1 || d > 8) throw PreconditionError("blown-up surfaces have degree 1..8");
      out.free_rank = 9 - d;
      return out;
  }
  throw PreconditionError("unknown surface kind");
}

}  // namespace geiser
