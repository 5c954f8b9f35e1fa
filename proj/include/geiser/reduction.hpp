#pragma once

#include "geiser/geiser_action.hpp"

#include <numeric>
#include <optional>
#include <vector>

namespace geiser {

// Genus-bound admissibility for a class -m*K + F with a (p, q) contact germ:
//   (p - 1)(q - 1) <= d m (m - 1) + 2 + (F^2).
struct AdmissibilityQuery {
  int d = 9;
  Rational m;
  long long p = 1;
  long long q = 1;
  long long f_self = 0;  // (F^2) <= 0
};

struct AdmissibilityCertificate {
  bool admissible = false;
  bool equality = false;
  Rational lhs;
  Rational rhs;
  bool coprime = false;
};

inline AdmissibilityCertificate admissible(const AdmissibilityQuery& query) {
  if (query.p < 1 || query.q < 1) throw PreconditionError("contact orders must be positive");
  if (query.f_self > 0) throw PreconditionError("(F^2) must be nonpositive");
  AdmissibilityCertificate cert;
  cert.lhs = Rational((query.p - 1) * (query.q - 1));
  cert.rhs = Rational(query.d) * query.m * (query.m - 1) + 2 + Rational(query.f_self);
  cert.admissible = cert.lhs <= cert.rhs;
  cert.equality = cert.lhs == cert.rhs;
  cert.coprime = std::gcd(query.p, query.q) == 1;
  return cert;
}

enum class MultiplicityBound { Below2n, Exceptional, Violates };

inline std::string multiplicity_bound_str(MultiplicityBound b) {
  switch (b) {
    case MultiplicityBound::Below2n: return "below_2n";
    case MultiplicityBound::Exceptional: return "exceptional";
    case MultiplicityBound::Violates: return "violates";
  }
  return "?";
}

// Classifies the multiplicity of a (p, q) germ with p + q = d m against the
// 2m bound. When p = q the germ is a (p, q') cusp with q' > p, so the genus
// certificate is evaluated with q' = p + 1. Smooth germs (mu = 1) carry no
// multiplicity obstruction and count as below the bound whenever the genus
// certificate holds.
inline MultiplicityBound multiplicity_bound(int d, const Rational& m, long long p, long long q) {
  if (Rational(p + q) != Rational(d) * m)
    throw PreconditionError("p + q must equal d*m");
  long long mu = std::min(p, q);
  if (Rational(mu) < 2 * m) return MultiplicityBound::Below2n;
  AdmissibilityQuery query{d, m, p, q, 0};
  if (p == q) query.q = p + 1;
  if (!admissible(query).admissible) return MultiplicityBound::Violates;
  return mu == 1 ? MultiplicityBound::Below2n : MultiplicityBound::Exceptional;
}

enum class ReductionOutcome {
  Strict,          // final mult < ndeg, unique minimizer
  Tie,             // final mult = ndeg, two minimizers
  ExceptionalD45,  // d in {4,5} with mult = 2*ndeg; no letter decreases
  Stuck,           // mult > ndeg at the orbit minimum; no letter decreases
};

inline std::string reduction_outcome_str(ReductionOutcome o) {
  switch (o) {
    case ReductionOutcome::Strict: return "strict";
    case ReductionOutcome::Tie: return "tie";
    case ReductionOutcome::ExceptionalD45: return "exceptional_d45";
    case ReductionOutcome::Stuck: return "stuck";
  }
  return "?";
}

struct ReductionStep {
  Letter letter;
  ContactProfile profile_after;
  Rational ndeg_after;
};

struct ReductionReport {
  GeiserWord word;
  CurveClass final_class;
  ReductionOutcome outcome = ReductionOutcome::Strict;
  std::vector<ReductionStep> trace;
  AdmissibilityCertificate certificate;
};

// Greedy degree reduction: while mult > ndeg, apply the letter that lowers
// the normalized degree. Stops at the target mult <= ndeg, at a smooth-point
// exit, or at a class where neither letter decreases.
inline ReductionReport reduce(const SurfaceContext& ctx, const CurveClass& input) {
  ctx.require_pair();
  const auto* g = std::get_if<AtNode>(&input.profile);
  if (!g) throw PreconditionError("reduce needs a germ at the node");
  ReductionReport rep;
  rep.certificate = admissible({ctx.d, input.n, g->p, g->q, 0});
  if (!rep.certificate.admissible)
    throw PreconditionError("class fails the genus bound: (p-1)(q-1) = " +
                            rat_str(rep.certificate.lhs) + " > " + rat_str(rep.certificate.rhs));
  CurveClass cur = input;
  rep.word = GeiserWord();
  while (true) {
    const auto* nd = std::get_if<AtNode>(&cur.profile);
    if (!nd) break;                    // left the node: mult 0, target reached
    Rational mu(std::min(nd->p, nd->q));
    if (mu <= cur.n) break;            // target reached
    Rational n_plus = ndeg_after(ctx, cur, Letter::Plus);
    Rational n_minus = ndeg_after(ctx, cur, Letter::Minus);
    Letter best = n_plus <= n_minus ? Letter::Plus : Letter::Minus;
    Rational n_best = std::min(n_plus, n_minus);
    if (!(n_best < cur.n)) break;      // no letter decreases
    cur = apply_letter(cur, best);
    rep.word.append(best);
    rep.trace.push_back({best, cur.profile, cur.n});
  }
  rep.final_class = cur;
  if (const auto* nd = std::get_if<AtNode>(&cur.profile)) {
    Rational mu(std::min(nd->p, nd->q));
    if (mu < cur.n) rep.outcome = ReductionOutcome::Strict;
    else if (mu == cur.n) rep.outcome = ReductionOutcome::Tie;
    else if ((ctx.d == 4 || ctx.d == 5) && mu == 2 * cur.n)
      rep.outcome = ReductionOutcome::ExceptionalD45;
    else rep.outcome = ReductionOutcome::Stuck;
  } else {
    rep.outcome = ReductionOutcome::Strict;  // smooth-point exit, mult 0
  }
  return rep;
}

// All reduced words of length <= depth (the identity included).
inline std::vector<GeiserWord> reduced_words_up_to(int depth) {
  std::vector<GeiserWord> out;
  out.emplace_back();
  for (Letter first : {Letter::Plus, Letter::Minus}) {
    GeiserWord w;
    Letter next = first;
    for (int len = 1; len <= depth; ++len) {
      w.append(next);
      next = next == Letter::Plus ? Letter::Minus : Letter::Plus;
      out.push_back(w);
    }
  }
  return out;
}

struct WordSearchResult {
  Rational min_ndeg;
  std::vector<GeiserWord> minimizers;
};

// Exhaustive scan over reduced words: minimal reachable normalized degree and
// every word attaining it. Words whose prefix leaves the node stop there.
inline WordSearchResult exhaustive_word_search(const SurfaceContext& ctx, const CurveClass& input,
                                               int depth) {
  WordSearchResult res;
  bool first = true;
  for (const auto& w : reduced_words_up_to(depth)) {
    CurveClass cur = input;
    bool valid = true;
    for (Letter l : w.letters()) {
      if (!std::holds_alternative<AtNode>(cur.profile)) {
        valid = false;  // cannot extend past a smooth-point exit
        break;
      }
      cur = apply_letter(cur, l);
    }
    if (!valid) continue;
    if (first || cur.n < res.min_ndeg) {
      res.min_ndeg = cur.n;
      res.minimizers.clear();
      res.minimizers.push_back(w);
      first = false;
    } else if (cur.n == res.min_ndeg) {
      res.minimizers.push_back(w);
    }
  }
  return res;
}

}  // namespace geiser
