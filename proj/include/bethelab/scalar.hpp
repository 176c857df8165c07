#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bethelab/errors.hpp"

namespace bethelab {

/// Exact coefficient field: arbitrary-precision rationals.
using Rational = mpq_class;

/// Floating coefficient field: complex doubles with tolerance-based equality.
using Cplx = std::complex<double>;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }

  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static bool equal(const Rational& a, const Rational& b, double /*tol*/ = 0.0) {
    return cmp(a, b) == 0;
  }
  static bool less(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }

  /// |x| as an element of the field.
  static Rational abs(const Rational& x) { return sgn(x) < 0 ? Rational(-x) : x; }
  static double abs_approx(const Rational& x) { return std::fabs(x.get_d()); }

  static Rational inverse(const Rational& x) {
    if (is_zero(x)) throw DivisionByZero("rational inverse of zero");
    return Rational(1) / x;
  }

  static std::string str(const Rational& x) { return x.get_str(); }

  /// Parses "p", "-p" or "p/r".
  static Rational parse(const std::string& text) {
    Rational x;
    if (x.set_str(text, 10) != 0) throw ConfigError("cannot parse rational '" + text + "'");
    if (sgn(x.get_den()) == 0) throw ConfigError("zero denominator in '" + text + "'");
    x.canonicalize();
    return x;
  }
};

template <>
struct scalar_traits<Cplx> {
  static constexpr bool is_exact = false;
  static constexpr double default_tol = 1e-12;

  static Cplx zero() { return Cplx(0.0, 0.0); }
  static Cplx one() { return Cplx(1.0, 0.0); }

  static bool is_zero(const Cplx& x) { return x == Cplx(0.0, 0.0); }
  static bool equal(const Cplx& a, const Cplx& b, double tol = default_tol) {
    return std::abs(a - b) <= tol;
  }
  /// Lexicographic (re, im) order; used only to fix deterministic canonical forms.
  static bool less(const Cplx& a, const Cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  }

  static Cplx abs(const Cplx& x) { return Cplx(std::abs(x), 0.0); }
  static double abs_approx(const Cplx& x) { return std::abs(x); }

  static Cplx inverse(const Cplx& x) {
    if (is_zero(x)) throw DivisionByZero("complex inverse of zero");
    return Cplx(1.0, 0.0) / x;
  }

  static std::string str(const Cplx& x) {
    std::ostringstream os;
    os.precision(17);
    os << x.real() << (x.imag() < 0 ? "" : "+") << x.imag() << "i";
    return os.str();
  }
};

/// Strict weak order usable as a comparator for maps keyed by scalars.
template <class S>
struct ScalarLess {
  bool operator()(const S& a, const S& b) const { return scalar_traits<S>::less(a, b); }
};

template <class S>
bool is_zero(const S& x) {
  return scalar_traits<S>::is_zero(x);
}

template <class S>
S inverse(const S& x) {
  return scalar_traits<S>::inverse(x);
}

/// Seeded source of small random rationals, with collision avoidance.
///
/// Draws numerator in [-40, 40] and denominator in [1, 12]; the pool remembers
/// every value it handed out so repeated draws are pairwise distinct.  Used by
/// randomized identity checks, which require generic (pairwise distinct,
/// nonzero) evaluation points.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  /// Fresh nonzero rational, distinct from everything drawn so far.
  Rational next() {
    std::uniform_int_distribution<int> num(-40, 40);
    std::uniform_int_distribution<int> den(1, 12);
    for (int attempt = 0; attempt < 10000; ++attempt) {
      int p = num(rng_);
      if (p == 0) continue;
      Rational x(p, den(rng_));
      x.canonicalize();
      if (used_.insert(x).second) return x;
    }
    throw Error("rational sampler pool exhausted");
  }

  /// Fresh deformation parameter: nonzero and != +-1.
  Rational next_q() {
    for (;;) {
      Rational q = next();
      if (cmp(q, 1) != 0 && cmp(q, -1) != 0) return q;
    }
  }

  std::vector<Rational> take(int count) {
    std::vector<Rational> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(next());
    return out;
  }

  void reserve(const Rational& x) { used_.insert(x); }

 private:
  std::mt19937_64 rng_;
  std::set<Rational> used_;
};

/// Seeded source of generic complex points away from zero.
class ComplexSampler {
 public:
  explicit ComplexSampler(std::uint64_t seed) : rng_(seed) {}

  Cplx next() {
    std::uniform_real_distribution<double> re(-2.0, 2.0);
    for (;;) {
      Cplx z(re(rng_), re(rng_));
      if (std::abs(z) < 0.15) continue;
      bool fresh = true;
      for (const Cplx& w : used_)
        if (std::abs(z - w) < 1e-6) fresh = false;
      if (!fresh) continue;
      used_.push_back(z);
      return z;
    }
  }

  Cplx next_q() {
    for (;;) {
      Cplx q = next();
      if (std::abs(std::abs(q) - 1.0) > 0.05) return q;
    }
  }

  std::vector<Cplx> take(int count) {
    std::vector<Cplx> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(next());
    return out;
  }

 private:
  std::mt19937_64 rng_;
  std::vector<Cplx> used_;
};

template <class S>
struct sampler_for;

template <>
struct sampler_for<Rational> {
  using type = RationalSampler;
};

template <>
struct sampler_for<Cplx> {
  using type = ComplexSampler;
};

}  // namespace bethelab
