#ifndef PETMIN_QSERIES_HPP
#define PETMIN_QSERIES_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "petmin/numeric.hpp"

namespace petmin {

// Truncated Laurent series in q with exact rational coefficients.
// coeffs[i] is the coefficient of q^(valuation + i); all exponents
// strictly below trunc_order are known. A series that vanishes
// identically below trunc_order is stored with empty coeffs and
// valuation == trunc_order.
class QSeries {
 public:
  QSeries() : valuation_(0), trunc_order_(0) {}

  QSeries(long valuation, long trunc_order, std::vector<Rat> coeffs)
      : valuation_(valuation),
        trunc_order_(trunc_order),
        coeffs_(std::move(coeffs)) {
    if (static_cast<long>(coeffs_.size()) != trunc_order_ - valuation_)
      throw NumericError("QSeries: coefficient span does not match bounds");
    normalize();
  }

  static QSeries zero(long trunc_order) {
    QSeries s;
    s.valuation_ = trunc_order;
    s.trunc_order_ = trunc_order;
    return s;
  }

  static QSeries monomial(const Rat& c, long exponent, long trunc_order) {
    if (exponent >= trunc_order) throw NumericError("QSeries: monomial beyond truncation");
    std::vector<Rat> v(trunc_order - exponent, Rat(0));
    v[0] = c;
    return QSeries(exponent, trunc_order, std::move(v));
  }

  long valuation() const { return valuation_; }
  long trunc_order() const { return trunc_order_; }
  bool is_zero() const { return coeffs_.empty(); }

  const Rat& coeff(long e) const {
    static const Rat kZero(0);
    if (e >= trunc_order_)
      throw NumericError("QSeries: coefficient read at or beyond truncation");
    if (e < valuation_) return kZero;
    return coeffs_[e - valuation_];
  }

  const std::vector<Rat>& raw_coeffs() const { return coeffs_; }

  bool is_integral() const {
    for (const Rat& c : coeffs_)
      if (denominator(c) != 1) return false;
    return true;
  }

  QSeries truncated(long new_trunc) const {
    if (new_trunc > trunc_order_)
      throw NumericError("QSeries: cannot extend truncation");
    if (new_trunc <= valuation_) return zero(new_trunc);
    std::vector<Rat> v(coeffs_.begin(), coeffs_.begin() + (new_trunc - valuation_));
    return QSeries(valuation_, new_trunc, std::move(v));
  }

  QSeries operator-() const {
    QSeries r = *this;
    for (Rat& c : r.coeffs_) c = -c;
    return r;
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) {
    long t = std::min(a.trunc_order_, b.trunc_order_);
    long v = std::min(a.is_zero() ? t : a.valuation_, b.is_zero() ? t : b.valuation_);
    if (v >= t) return zero(t);
    std::vector<Rat> c(t - v, Rat(0));
    for (long e = a.valuation_; e < std::min(a.trunc_order_, t); ++e)
      c[e - v] += a.coeff(e);
    for (long e = b.valuation_; e < std::min(b.trunc_order_, t); ++e)
      c[e - v] += b.coeff(e);
    return QSeries(v, t, std::move(c));
  }

  friend QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

  friend QSeries operator*(const Rat& s, const QSeries& a) {
    if (s == 0) return zero(a.trunc_order_);
    QSeries r = a;
    for (Rat& c : r.coeffs_) c *= s;
    return r;
  }

  // Product, exact to the truncation derivable from the factors.
  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    if (a.is_zero() || b.is_zero()) {
      long t = std::min(a.is_zero() ? a.trunc_order_ + b.valuation_ : a.valuation_ + b.trunc_order_,
                        b.is_zero() ? b.trunc_order_ + a.valuation_ : b.valuation_ + a.trunc_order_);
      return zero(t);
    }
    long v = a.valuation_ + b.valuation_;
    long t = std::min(a.trunc_order_ + b.valuation_, b.trunc_order_ + a.valuation_);
    std::vector<Rat> c(t - v, Rat(0));
    long na = a.trunc_order_ - a.valuation_;
    long nb = b.trunc_order_ - b.valuation_;
    for (long i = 0; i < na; ++i) {
      if (a.coeffs_[i] == 0) continue;
      long jmax = std::min(nb, t - v - i);
      for (long j = 0; j < jmax; ++j) {
        if (b.coeffs_[j] == 0) continue;
        c[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return QSeries(v, t, std::move(c));
  }

  // Exact quotient a / b; requires b nonzero. Rational division by the
  // leading coefficient of b at each step. The quotient is known on the
  // window where every needed coefficient of a and b is known.
  friend QSeries operator/(const QSeries& a, const QSeries& b) {
    if (b.is_zero()) throw NumericError("QSeries: division by zero series");
    if (a.is_zero()) return zero(a.trunc_order_ - b.valuation_);
    long v = a.valuation_ - b.valuation_;
    long span = std::min(a.trunc_order_ - a.valuation_, b.trunc_order_ - b.valuation_);
    const Rat& lead = b.coeffs_[0];
    std::vector<Rat> q(span, Rat(0));
    for (long m = 0; m < span; ++m) {
      // target coefficient of q^(a.valuation_ + m) in the product q*b
      Rat acc = a.coeff(a.valuation_ + m);
      for (long i = 0; i < m; ++i) {
        long be = m - i;  // offset into b beyond its valuation
        if (be < static_cast<long>(b.coeffs_.size()) && q[i] != 0)
          acc -= q[i] * b.coeffs_[be];
      }
      q[m] = acc / lead;
    }
    return QSeries(v, v + span, std::move(q));
  }

  QSeries pow(unsigned e) const {
    if (e == 0) {
      // truncation from repeated self-multiplication of a unit is the
      // full window anchored at exponent 0
      return monomial(Rat(1), 0, trunc_order_ - valuation_);
    }
    QSeries acc = *this;
    // square-and-multiply
    unsigned msb = 31 - __builtin_clz(e);
    for (int bit = static_cast<int>(msb) - 1; bit >= 0; --bit) {
      acc = acc * acc;
      if (e & (1u << bit)) acc = acc * (*this);
    }
    return acc;
  }

  // f(q) -> f(q^m)
  QSeries substituted(long m) const {
    if (m < 1) throw NumericError("QSeries: substitution power must be positive");
    long t = m * (trunc_order_ - 1) + 1;
    if (is_zero()) return zero(m * trunc_order_ - m + 1);
    long v = m * valuation_;
    std::vector<Rat> c(t - v, Rat(0));
    for (long i = 0; i < static_cast<long>(coeffs_.size()); ++i)
      c[i * m] = coeffs_[i];
    return QSeries(v, t, std::move(c));
  }

  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.valuation_ == b.valuation_ && a.trunc_order_ == b.trunc_order_ &&
           a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize() {
    size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      valuation_ = trunc_order_;
    } else if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + lead);
      valuation_ += static_cast<long>(lead);
    }
  }

  long valuation_;
  long trunc_order_;
  std::vector<Rat> coeffs_;
};

// Euler's function prod_{n>=1} (1 - q^n) by the pentagonal number theorem.
inline QSeries euler_product(long trunc_order) {
  std::vector<Rat> c(trunc_order, Rat(0));
  for (long j = 0;; ++j) {
    long e1 = j * (3 * j - 1) / 2;
    long e2 = j * (3 * j + 1) / 2;
    if (e1 >= trunc_order && e2 >= trunc_order) break;
    Rat sgn((j % 2 == 0) ? 1 : -1);
    if (e1 < trunc_order) c[e1] += sgn;
    if (e2 < trunc_order && j > 0) c[e2] += sgn;
  }
  return QSeries(0, trunc_order, std::move(c));
}

// Delta(z) = q prod (1-q^n)^24; coefficients available through q^order.
inline QSeries delta_series(long order) {
  if (order < 2) throw NumericError("delta_series: order must be >= 2");
  long t = order;  // window for the eta part
  QSeries e = euler_product(t);
  QSeries e2 = e * e;
  QSeries e4 = e2 * e2;
  QSeries e8 = e4 * e4;
  QSeries e24 = e8 * e8 * e8;
  QSeries q = QSeries::monomial(Rat(1), 1, t + 1);
  return q * e24;
}

// E4 = 1 + 240 sum sigma_3(n) q^n.
inline QSeries eisenstein_e4(long trunc_order) {
  std::vector<Int> sigma3(trunc_order, Int(0));
  for (long d = 1; d < trunc_order; ++d) {
    Int d3 = Int(d) * d * d;
    for (long n = d; n < trunc_order; n += d) sigma3[n] += d3;
  }
  std::vector<Rat> c(trunc_order, Rat(0));
  c[0] = 1;
  for (long n = 1; n < trunc_order; ++n) c[n] = Rat(240 * sigma3[n]);
  return QSeries(0, trunc_order, std::move(c));
}

// j = E4^3 / Delta; coefficients available through q^order.
inline QSeries j_series(long order) {
  if (order < 1) throw NumericError("j_series: order must be >= 1");
  long t = order + 3;
  QSeries e4 = eisenstein_e4(t);
  QSeries num = e4 * e4 * e4;
  QSeries den = delta_series(t);
  return (num / den).truncated(order + 1);
}

}  // namespace petmin

#endif
