#pragma once

#include "geiser/hompoly.hpp"
#include "geiser/rational.hpp"

#include <cctype>
#include <set>
#include <string>
#include <vector>

namespace geiser {

struct InhomogeneousError : Error {
  std::vector<int> degrees;
  explicit InhomogeneousError(std::vector<int> degs)
      : Error(make_message(degs)), degrees(std::move(degs)) {}
  static std::string make_message(const std::vector<int>& degs) {
    std::string s = "inhomogeneous polynomial; term degrees:";
    for (int d : degs) s += " " + std::to_string(d);
    return s;
  }
};

namespace detail {

struct PolyLexer {
  const std::string& text;
  std::size_t pos = 0;
  explicit PolyLexer(const std::string& t) : text(t) {}
  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  char take() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    return text[pos++];
  }
  Int read_integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError("expected an integer", start);
    return Int(text.substr(start, pos - start));
  }
};

struct RawTerm {
  Rational coeff;
  std::array<int, 3> exps{0, 0, 0};
  int degree() const { return exps[0] + exps[1] + exps[2]; }
};

// factor := rational | var ('^' integer)?
// term   := factor ('*' factor)*
inline RawTerm parse_term(PolyLexer& lex) {
  RawTerm term;
  term.coeff = 1;
  bool expect_factor = true;
  while (expect_factor) {
    char c = lex.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num = lex.read_integer();
      Int den(1);
      if (lex.peek() == '/') {
        lex.take();
        std::size_t at = lex.pos;
        den = lex.read_integer();
        if (den == 0) throw ParseError("zero denominator", at);
      }
      term.coeff *= Rational(num, den);
    } else if (c == 'x' || c == 'y' || c == 'z') {
      lex.take();
      int var = c == 'x' ? 0 : c == 'y' ? 1 : 2;
      int e = 1;
      if (lex.peek() == '^') {
        lex.take();
        std::size_t at = lex.pos;
        Int ei = lex.read_integer();
        if (ei > 1000) throw ParseError("exponent too large", at);
        e = static_cast<int>(ei);
      }
      term.exps[static_cast<std::size_t>(var)] += e;
    } else {
      throw ParseError("expected a coefficient or variable", lex.pos);
    }
    if (lex.peek() == '*') {
      lex.take();
      expect_factor = true;
    } else {
      expect_factor = false;
    }
  }
  return term;
}

}  // namespace detail

// Parses a +/- separated sum of monomials c*x^i*y^j*z^k with exact rational
// coefficients. Multiplication and powers are always explicit. Rejects
// inhomogeneous input.
inline HomPoly3 parse_hompoly(const std::string& text) {
  detail::PolyLexer lex(text);
  std::vector<detail::RawTerm> terms;
  bool negate = false;
  if (lex.peek() == '-') {
    lex.take();
    negate = true;
  } else if (lex.peek() == '+') {
    lex.take();
  }
  while (true) {
    detail::RawTerm t = detail::parse_term(lex);
    if (negate) t.coeff = -t.coeff;
    terms.push_back(t);
    if (lex.done()) break;
    char c = lex.take();
    if (c == '+') negate = false;
    else if (c == '-') negate = true;
    else throw ParseError(std::string("unexpected character '") + c + "'", lex.pos - 1);
  }
  if (terms.empty()) throw ParseError("empty polynomial", 0);
  std::set<int> degrees;
  for (const auto& t : terms) degrees.insert(t.degree());
  if (degrees.size() > 1)
    throw InhomogeneousError(std::vector<int>(degrees.begin(), degrees.end()));
  HomPoly3 p(*degrees.begin());
  for (const auto& t : terms) p.add_term(t.coeff, t.exps);
  return p;
}

}  // namespace geiser
