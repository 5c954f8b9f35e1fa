#pragma once

#include "geiser/rational.hpp"

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

namespace geiser {

// How a curve germ meets the boundary curve near its node: contact orders
// (p, q) with the two branches, total contact k at a smooth point, or no
// intersection at all.
struct AtNode {
  long long p = 0;  // contact with the minus branch
  long long q = 0;  // contact with the plus branch
  friend bool operator==(const AtNode&, const AtNode&) = default;
};
struct AtSmoothPoint {
  long long k = 0;
  friend bool operator==(const AtSmoothPoint&, const AtSmoothPoint&) = default;
};
struct Disjoint {
  friend bool operator==(const Disjoint&, const Disjoint&) = default;
};

using ContactProfile = std::variant<AtNode, AtSmoothPoint, Disjoint>;

inline AtNode at_node(long long p, long long q) {
  if (p < 1 || q < 1) throw PreconditionError("node contact orders must be positive");
  return AtNode{p, q};
}

inline std::string profile_str(const ContactProfile& pr) {
  if (const auto* n = std::get_if<AtNode>(&pr))
    return "node(" + std::to_string(n->p) + "," + std::to_string(n->q) + ")";
  if (const auto* s = std::get_if<AtSmoothPoint>(&pr))
    return "smooth(" + std::to_string(s->k) + ")";
  return "disjoint";
}

// One blow-up of the node, tracked on the germ. With contact orders (p, q)
// against the two curves through the center:
//   p > q  ->  (p - q, q) between the left curve and the new exceptional,
//   p < q  ->  (p, q - p) between the new exceptional and the right curve,
//   p = q  ->  the germ meets the new exceptional alone, with order p.
inline ContactProfile blow_up_step(const AtNode& g) {
  if (g.p > g.q) return AtNode{g.p - g.q, g.q};
  if (g.q > g.p) return AtNode{g.p, g.q - g.p};
  return AtSmoothPoint{g.p};
}

// A (p,q) cusp type: multiplicity p, second order q; normalized means p does
// not divide q (or the germ is smooth, p = 1).
struct CuspType {
  long long p = 1;
  long long q = 1;
  bool normalized() const { return p == 1 || (q % p != 0); }
};

// Multiplicities of the infinitely near points of a germ.
struct MultiplicitySequence {
  std::vector<long long> entries;
};

// Subtractive-Euclid multiplicity sequence for a germ with parametrization
// orders (p, q). A smooth germ reports a single 1.
inline MultiplicitySequence euclid_sequence(long long p, long long q) {
  if (p < 1 || q < 1) throw PreconditionError("orders must be positive");
  MultiplicitySequence seq;
  if (std::min(p, q) == 1) {
    seq.entries.push_back(1);
    return seq;
  }
  while (std::min(p, q) >= 1) {
    long long m = std::min(p, q);
    seq.entries.push_back(m);
    long long mx = std::max(p, q);
    p = m;
    q = mx - m;
  }
  return seq;
}

inline long long delta_invariant(const MultiplicitySequence& seq) {
  long long d = 0;
  for (long long m : seq.entries) d += m * (m - 1) / 2;
  return d;
}

// ---------------------------------------------------------------------------
// Exceptional chains over the node.
//
// The boundary configuration after blowing up repeatedly at the plus branch
// is the cycle  N -- E_1 -- ... -- E_r -- N.  We store it cut open as a path
// [B-, E_1, ..., E_r, B+] whose two ends are the branches of the boundary
// transform. The tracked germ sits on one edge, on one exceptional vertex,
// or on the boundary transform away from the chain.
// ---------------------------------------------------------------------------

struct ChainVertex {
  enum class Kind { BranchMinus, BranchPlus, Exceptional };
  Kind kind = Kind::Exceptional;
  int index = 0;              // creation index, exceptional vertices only
  int self_intersection = 0;  // exceptional vertices only
};

struct GermAttachment {
  enum class Kind { OnEdge, OnVertex, OnBoundary, Detached };
  Kind kind = Kind::OnEdge;
  // OnEdge: between path positions (pos, pos+1), orders (left, right).
  // OnVertex: at a general point of path position pos, order left.
  // OnBoundary: at a general point of the boundary transform, order left.
  std::size_t pos = 0;
  long long left = 0;
  long long right = 0;
};

struct DualGraphChain {
  std::vector<ChainVertex> vertices;  // path order
  GermAttachment germ;

  std::size_t exceptional_count() const { return vertices.size() - 2; }
};

inline DualGraphChain initial_chain(long long p, long long q) {
  DualGraphChain c;
  c.vertices.push_back({ChainVertex::Kind::BranchMinus, 0, 0});
  c.vertices.push_back({ChainVertex::Kind::BranchPlus, 0, 0});
  c.germ = {GermAttachment::Kind::OnEdge, 0, p, q};
  if (p < 1 || q < 1) throw PreconditionError("node contact orders must be positive");
  return c;
}

// Blow up the intersection point of the last exceptional vertex (initially
// the node) with the plus branch.
inline void blow_up_plus_end(DualGraphChain& c) {
  std::size_t last = c.vertices.size() - 2;  // position left of B+
  int new_index = static_cast<int>(c.exceptional_count()) + 1;
  if (c.vertices[last].kind == ChainVertex::Kind::Exceptional)
    c.vertices[last].self_intersection -= 1;
  ChainVertex e{ChainVertex::Kind::Exceptional, new_index, -1};
  c.vertices.insert(c.vertices.begin() + static_cast<std::ptrdiff_t>(last) + 1, e);

  auto& g = c.germ;
  bool at_center = g.kind == GermAttachment::Kind::OnEdge && g.pos == last;
  if (!at_center) return;  // center is away from the germ
  long long a = g.left, b = g.right;
  if (a > b) {
    g = {GermAttachment::Kind::OnEdge, last, a - b, b};
  } else if (b > a) {
    g = {GermAttachment::Kind::OnEdge, last + 1, a, b - a};
  } else {
    g = {GermAttachment::Kind::OnVertex, last + 1, a, 0};
  }
}

// r blow-ups of the node along the plus branch with the germ tracked.
inline DualGraphChain chain_after_r_blowups(long long p, long long q, int r) {
  if (r < 1) throw PreconditionError("need at least one blow-up");
  DualGraphChain c = initial_chain(p, q);
  for (int i = 0; i < r; ++i) blow_up_plus_end(c);
  return c;
}

// The covering involution on the anticanonical cycle: the boundary transform
// and the last exceptional vertex swap, E_i and E_{r-i} swap. On the cut-open
// path this reverses edge positions; a germ on the last exceptional vertex
// moves to a general boundary point and vice versa.
inline void apply_tau(DualGraphChain& c) {
  std::size_t r = c.exceptional_count();
  if (r < 1) throw PreconditionError("tau needs at least one exceptional vertex");
  auto& g = c.germ;
  switch (g.kind) {
    case GermAttachment::Kind::OnEdge: {
      // Edge j (0-based, 0..r) maps to edge r-1-j for j < r; edge r to itself.
      // Orders swap sides in both cases.
      std::size_t j = g.pos;
      std::size_t nj = (j == r) ? r : r - 1 - j;
      g = {GermAttachment::Kind::OnEdge, nj, g.right, g.left};
      break;
    }
    case GermAttachment::Kind::OnVertex: {
      std::size_t i = g.pos;  // path position of E_i
      if (i == r) {
        g = {GermAttachment::Kind::OnBoundary, 0, g.left, 0};
      } else {
        g = {GermAttachment::Kind::OnVertex, r - i, g.left, 0};
      }
      break;
    }
    case GermAttachment::Kind::OnBoundary:
      g = {GermAttachment::Kind::OnVertex, r, g.left, 0};
      break;
    case GermAttachment::Kind::Detached:
      break;
  }
}

// Contract the last exceptional vertex (self-intersection -1). The germ
// transforms by the inverse of the blow-up transition.
inline void contract_last(DualGraphChain& c) {
  std::size_t r = c.exceptional_count();
  if (r < 1) throw PreconditionError("nothing to contract");
  std::size_t vpos = r;  // path position of the last exceptional vertex
  if (c.vertices[vpos].self_intersection != -1)
    throw PreconditionError("last exceptional vertex is not contractible");
  auto& g = c.germ;
  if (g.kind == GermAttachment::Kind::OnEdge) {
    if (g.pos == vpos - 1) {
      // (left curve, E) with orders (a, e) -> (a + e, e) at the image point.
      g = {GermAttachment::Kind::OnEdge, vpos - 1, g.left + g.right, g.right};
    } else if (g.pos == vpos) {
      // (E, B+) with orders (e, b) -> (e, e + b).
      g = {GermAttachment::Kind::OnEdge, vpos - 1, g.left, g.left + g.right};
    }
    // other edges unaffected
  } else if (g.kind == GermAttachment::Kind::OnVertex && g.pos == vpos) {
    g = {GermAttachment::Kind::OnEdge, vpos - 1, g.left, g.left};
  }
  if (c.vertices[vpos - 1].kind == ChainVertex::Kind::Exceptional)
    c.vertices[vpos - 1].self_intersection += 1;
  c.vertices.erase(c.vertices.begin() + static_cast<std::ptrdiff_t>(vpos));
}

// Reads the germ profile off a fully contracted chain [B-, B+].
inline ContactProfile chain_profile(const DualGraphChain& c) {
  if (c.exceptional_count() != 0) throw PreconditionError("chain not fully contracted");
  switch (c.germ.kind) {
    case GermAttachment::Kind::OnEdge:
      return AtNode{c.germ.left, c.germ.right};
    case GermAttachment::Kind::OnBoundary:
      return AtSmoothPoint{c.germ.left};
    default:
      return Disjoint{};
  }
}

// ---------------------------------------------------------------------------
// Discrepancy ledger.
//
// Resolving the germ of cC by point blow-ups and writing the log pullback
// as (pullback) + sum e_k E_k gives the recurrence
//   e_k = 1 + sum of e_j over exceptional curves through the center - c*m_k,
// m_k the multiplicity of the strict transform at the k-th center. Input
// (1, 1) is the boundary node itself (two transversal branches, so m_1 = 2);
// all other inputs are unibranch germs with orders (p, q).
// ---------------------------------------------------------------------------

struct LedgerRow {
  int index = 0;                     // exceptional curve E_index
  std::vector<int> centers_on;      // earlier exceptional curves through the center
  long long mult = 0;               // m_k
  Rational coeff;                   // e_k
};

struct DiscrepancyLedger {
  Rational weight;  // c
  bool node_germ = false;
  std::vector<LedgerRow> rows;
  Rational min_coeff() const {
    Rational m = rows.front().coeff;
    for (const auto& r : rows) m = std::min(m, r.coeff);
    return m;
  }
  long long germ_multiplicity() const { return rows.front().mult; }
};

inline DiscrepancyLedger ledger(long long p, long long q, const Rational& c) {
  if (!(c > 0 && c <= 1)) throw PreconditionError("weight must satisfy 0 < c <= 1");
  if (p < 1 || q < 1) throw PreconditionError("orders must be positive");
  DiscrepancyLedger led;
  led.weight = c;
  if (p == 1 && q == 1) {
    // Boundary node: one blow-up separates the two branches.
    led.node_germ = true;
    led.rows.push_back({1, {}, 2, 1 - c * 2});
    return led;
  }
  // Unibranch germ against two virtual transversal axes; only exceptional
  // curves accumulate coefficients. -1 marks a virtual axis.
  int left = -1, right = -1;
  long long a = p, b = q;
  std::vector<Rational> coeff_of;  // by exceptional index - 1
  int next = 1;
  while (true) {
    long long m = std::min(a, b);
    std::vector<int> on;
    Rational e = 1 - c * Rational(m);
    if (left >= 1) {
      e += coeff_of[static_cast<std::size_t>(left - 1)];
      on.push_back(left);
    }
    if (right >= 1) {
      e += coeff_of[static_cast<std::size_t>(right - 1)];
      on.push_back(right);
    }
    coeff_of.push_back(e);
    led.rows.push_back({next, on, m, e});
    if (a > b) {
      a = a - b;
      right = next;
    } else if (b > a) {
      b = b - a;
      left = next;
    } else {
      // Germ continues on the new exceptional curve alone; resolution of the
      // tracked pair data stops here.
      break;
    }
    ++next;
    // Stop once the germ is smooth and crosses at most one exceptional curve
    // transversally.
    if (std::min(a, b) == 1) {
      bool tangent_to_real = (left >= 1 && a > 1) || (right >= 1 && b > 1);
      bool between_two_real = left >= 1 && right >= 1;
      if (!tangent_to_real && !between_two_real) break;
    }
  }
  return led;
}

enum class PairClass { Terminal, Canonical, LogCanonical, Worse };

inline std::string pair_class_str(PairClass c) {
  switch (c) {
    case PairClass::Terminal: return "terminal";
    case PairClass::Canonical: return "canonical";
    case PairClass::LogCanonical: return "log-canonical";
    case PairClass::Worse: return "worse";
  }
  return "?";
}

// Classification read off the ledger: terminal needs every coefficient
// positive for every further blow-up (hence also c < 1, from blowing up a
// free point of the germ), canonical needs them nonnegative, log-canonical
// at least -1.
inline PairClass canonical_class_of_ledger(const DiscrepancyLedger& led) {
  Rational m = led.min_coeff();
  if (m < -1) return PairClass::Worse;
  if (m < 0) return PairClass::LogCanonical;
  if (m > 0 && led.weight < 1) return PairClass::Terminal;
  return PairClass::Canonical;
}

inline PairClass canonical_class(long long p, long long q, const Rational& c) {
  return canonical_class_of_ledger(ledger(p, q, c));
}

}  // namespace geiser
