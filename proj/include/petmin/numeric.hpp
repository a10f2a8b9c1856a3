#ifndef PETMIN_NUMERIC_HPP
#define PETMIN_NUMERIC_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace petmin {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

// Error taxonomy, mapped to process exit codes by the CLI.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(bits * 0.30103) + 4;
}

// Sets the working mpfr precision for the enclosing scope.
struct PrecisionGuard {
  unsigned saved;
  explicit PrecisionGuard(unsigned precision_bits)
      : saved(Real::default_precision()) {
    Real::default_precision(bits_to_digits10(precision_bits));
  }
  ~PrecisionGuard() { Real::default_precision(saved); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;
};

inline Real const_pi() {
  Real x;
  mpfr_const_pi(x.backend().data(), MPFR_RNDN);
  return x;
}

inline Real to_real(const Rat& q) {
  Real n(numerator(q));
  Real d(denominator(q));
  return n / d;
}

inline Real pow_int(const Real& x, long e) {
  Real r;
  mpfr_pow_si(r.backend().data(), x.backend().data(), e, MPFR_RNDN);
  return r;
}

inline Int factorial_int(unsigned n) {
  Int r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// Upper incomplete gamma for integer s >= 1:
//   Gamma(s, x) = (s-1)! e^{-x} sum_{m=0}^{s-1} x^m / m!
inline Real upper_gamma_int(unsigned s, const Real& x) {
  if (s < 1) throw NumericError("upper_gamma_int: s must be >= 1");
  Real sum = 1;
  Real term = 1;
  for (unsigned m = 1; m <= s - 1; ++m) {
    term *= x / m;
    sum += term;
  }
  return Real(factorial_int(s - 1)) * exp(-x) * sum;
}

struct Complex {
  Real re, im;
  Complex() : re(0), im(0) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(const Real& r) : re(r), im(0) {}

  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator*(const Complex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex conj() const { return {re, -im}; }
  Real abs2() const { return re * re + im * im; }
  Real abs() const { return sqrt(abs2()); }
};

inline Complex operator*(const Real& s, const Complex& z) {
  return {s * z.re, s * z.im};
}

// exp(2*pi*i*z) for z = x + iy, y > 0.
inline Complex cis_q(const Real& x, const Real& y) {
  Real two_pi = 2 * const_pi();
  Real mod = exp(-two_pi * y);
  Real s, c;
  Real arg = two_pi * x;
  s = sin(arg);
  c = cos(arg);
  return {mod * c, mod * s};
}

// --- deterministic decimal formatting ---------------------------------

// Enough digits that parsing the string back recovers the same binary value
// at the same working precision.
inline std::string real_to_string_exact(const Real& x) {
  unsigned digits = static_cast<unsigned>(x.precision()) + 3;
  std::ostringstream os;
  os.precision(digits);
  os << std::scientific << x;
  return os.str();
}

inline Real real_from_string(const std::string& s) { return Real(s); }

// 17 significant digits, the convention for all reals in emitted artifacts.
inline std::string format_real17(const Real& x) {
  std::ostringstream os;
  os.precision(17);
  os << std::scientific << x;
  return os.str();
}

inline std::string format_double17(double x) {
  std::ostringstream os;
  os.precision(17);
  os << std::scientific << x;
  return os.str();
}

}  // namespace petmin

#endif
