#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace geiser {

// Expression templates are disabled so that auto, initializer lists, and
// std::min behave like they do for ordinary value types.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;

// Exact rational numbers, always in lowest terms with positive denominator.
using Rational =
    boost::multiprecision::number<boost::multiprecision::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct PreconditionError : Error {
  using Error::Error;
};

struct UnsupportedError : Error {
  using Error::Error;
};

// Normalizing constructor: sign moves to the numerator.
inline Rational make_rational(Int num, Int den) {
  if (den == 0) throw PreconditionError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline Rational rat(long long n, long long d = 1) { return make_rational(Int(n), Int(d)); }

inline Int rat_num(const Rational& r) { return numerator(r); }
inline Int rat_den(const Rational& r) { return denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// Canonical serialization: always "num/den", e.g. "5/1", "-2/3".
inline std::string rat_str(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string int_str(const Int& n) { return n.str(); }

// Accepts "a", "a/b", with optional leading sign on a.
inline Rational parse_rational(const std::string& text) {
  auto bad = [&](std::size_t pos) { throw ParseError("invalid rational '" + text + "'", pos); };
  if (text.empty()) bad(0);
  std::size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) bad(slash + 1);
    return make_rational(num, den);
  } catch (const std::runtime_error&) {
    bad(0);
  }
  return Rational();  // unreachable
}

inline Rational rat_pow(const Rational& base, long long e) {
  if (e < 0) {
    if (base == 0) throw PreconditionError("zero to a negative power");
    return Rational(1) / rat_pow(base, -e);
  }
  Rational acc(1), b = base;
  long long k = e;
  while (k > 0) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// Exact square root over Q if it exists.
inline std::optional<Rational> rat_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  Int n = numerator(r), d = denominator(r);
  Int sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rational(sn, sd);
}

}  // namespace geiser
