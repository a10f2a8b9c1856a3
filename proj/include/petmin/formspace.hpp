#ifndef PETMIN_FORMSPACE_HPP
#define PETMIN_FORMSPACE_HPP

#include <array>
#include <numeric>
#include <vector>

#include "petmin/intlinalg.hpp"
#include "petmin/qseries.hpp"

namespace petmin {

// Congruence group: N == 1 means the full modular group, otherwise
// Gamma_0(N) with N in the configured allowlist.
struct GroupId {
  int N = 1;
  bool is_level_one() const { return N == 1; }
  long index() const {  // [Gamma(1) : Gamma_0(N)] for prime N
    if (N == 1) return 1;
    return N + 1;
  }
  friend bool operator==(const GroupId&, const GroupId&) = default;
};

inline bool gamma0_allowed(int N) { return N == 2 || N == 3 || N == 5 || N == 7; }

// Integral basis element of a space of weight-12k cusp forms, with its
// expansion at every cusp. cusp_series[c] is a series in the local
// parameter t = e^{2 pi i tau / w_c}; index 0 is the cusp at infinity.
struct FormElement {
  std::vector<QSeries> cusp_series;
  const QSeries& at_infinity() const { return cusp_series[0]; }
  long valuation() const { return cusp_series[0].valuation(); }
};

struct FormSpace {
  GroupId group;
  int k = 1;  // weight is 12k
  long trunc_order = 0;
  std::vector<long> cusp_widths;  // [0] is the cusp at infinity
  std::vector<FormElement> basis;
  // When this space was carved out of a parent space, rows give the basis
  // elements in parent-lattice coordinates. Empty otherwise.
  IMat coords_in_parent;

  int dim() const { return static_cast<int>(basis.size()); }
  int weight() const { return 12 * k; }
  size_t num_cusps() const { return cusp_widths.size(); }
};

inline long default_trunc_order(int k, int N) {
  long y_freq = static_cast<long>(std::ceil(1.2 * N));  // 1/Im at the narrowest cusp cell
  long t = std::max<long>(64, 16L * k + 8 * y_freq);
  // the Gram strip sums need coefficients somewhat past 2.5k per width unit
  t = std::max<long>(t, 3L * k * N + 24);
  return t;
}

// ---- level 1 -------------------------------------------------------------

// Echelon (Miller) basis of the lattice of integral cusp forms of weight
// 12k for the full modular group: Z-span of {Delta^k j^t, t=0..k-1},
// reduced so the t-th element is q^(k-t) + O(q^(k+1)).
inline FormSpace integral_cusp_basis(int k, long order) {
  if (k < 1) throw ConfigError("integral_cusp_basis: k must be >= 1");
  if (order < 2 * k + 4) throw ConfigError("integral_cusp_basis: order too small to echelonize");
  QSeries dk = delta_series(order).pow(static_cast<unsigned>(k));
  QSeries j = j_series(order);
  std::vector<QSeries> by_val(k + 1);  // index = valuation
  QSeries cur = dk;
  for (int t = 0; t < k; ++t) {
    by_val[k - t] = cur;
    if (t + 1 < k) cur = cur * j;
  }
  // clear coefficients at exponents v+1..k of the valuation-v element
  for (long v = k - 1; v >= 1; --v) {
    for (long u = v + 1; u <= k; ++u) {
      Rat c = by_val[v].coeff(u);
      if (c != 0) by_val[v] = by_val[v] - c * by_val[u];
    }
  }
  FormSpace fs;
  fs.group = GroupId{1};
  fs.k = k;
  fs.cusp_widths = {1};
  long t_min = order + 1;
  for (long v = 1; v <= k; ++v) t_min = std::min(t_min, by_val[v].trunc_order());
  fs.trunc_order = t_min;
  for (long t = 0; t < k; ++t) {
    FormElement el;
    el.cusp_series = {by_val[k - t].truncated(t_min)};
    if (!el.cusp_series[0].is_integral())
      throw NumericError("integral_cusp_basis: non-integral echelon coefficient");
    if (el.cusp_series[0].coeff(k - t) != 1)
      throw NumericError("integral_cusp_basis: echelon pivot is not 1");
    fs.basis.push_back(std::move(el));
  }
  return fs;
}

// ---- Gamma_0(N), N in {2,3,5,7} -------------------------------------------

// prod_{N !| n} (1 - q^n), the eta-quotient core of the Hauptmodul.
inline QSeries eta_quotient_core(int N, long trunc) {
  QSeries num = euler_product(trunc);
  QSeries den = euler_product((trunc + N - 1) / N + 1).substituted(N).truncated(trunc);
  return num / den;
}

// Hauptmodul t_N = q^{-1} prod_{N !| n} (1-q^n)^{24/(N-1)}: integer
// q-expansion, simple pole at infinity, simple zero at the cusp 0.
inline QSeries hauptmodul_gamma0(int N, long trunc) {
  unsigned e = 24u / static_cast<unsigned>(N - 1);
  QSeries core = eta_quotient_core(N, trunc + 2).pow(e);
  return QSeries::monomial(Rat(1), -1, core.trunc_order() - 1) * core;
}

inline int gamma0_cuspform_dim(int N, int k) { return (N + 1) * k - 1; }

// Echelonized integral basis of S_{12k}(Gamma_0(N)): elements
// Delta(Nz)^k t_N^m for m = Nk-1 .. 1-k, reduced over Z. Every element
// carries its exact expansion at both cusps (infinity, then 0).
inline FormSpace gamma0_cusp_basis(int N, int k, long order) {
  if (!gamma0_allowed(N)) throw ConfigError("gamma0_cusp_basis: N must be one of 2,3,5,7");
  if (k < 1) throw ConfigError("gamma0_cusp_basis: k must be >= 1");
  int d = gamma0_cuspform_dim(N, k);
  if (order < 2 * d + 6) throw ConfigError("gamma0_cusp_basis: order too small to echelonize");

  // expansions at infinity, in q
  QSeries delta_N = delta_series((order + N - 1) / N + 2).substituted(N).truncated(order + 2);
  QSeries dNk = delta_N.pow(static_cast<unsigned>(k));
  QSeries t = hauptmodul_gamma0(N, order + 2);
  QSeries t_inv = QSeries::monomial(Rat(1), 0, t.trunc_order() + 2) / t;

  // expansions at the cusp 0, in t = e^{2 pi i tau / N}:
  //   Delta(Nz)|sigma = N^{-12} Delta(tau/N),  t_N|sigma = N^{12/(N-1)} s(t)
  // with s = t * core(t)^{-24/(N-1)}.
  int p12 = 12 / (N - 1);
  QSeries delta_t = delta_series(order + 2);  // Delta(tau/N) as a t-series
  unsigned e = 24u / static_cast<unsigned>(N - 1);
  QSeries core = eta_quotient_core(N, order + 2);
  QSeries s = QSeries::monomial(Rat(1), 1, core.trunc_order() + 1) /
              core.pow(e);  // t / core^e, valuation 1
  QSeries s_inv = QSeries::monomial(Rat(1), 0, s.trunc_order() + 2) / s;

  // Walk m downward from Nk-1 so the infinity-valuation Nk - m ascends 1..d.
  std::vector<QSeries> inf_by_val(d + 1), zero_by_val(d + 1);
  {
    QSeries f_inf = dNk;          // m = 0 at infinity
    QSeries f_zero = delta_t.pow(static_cast<unsigned>(k));  // m = 0 at cusp 0, N-powers handled below
    // move to m = Nk-1 by multiplying t^(Nk-1)
    for (int m = 0; m < N * k - 1; ++m) {
      f_inf = f_inf * t;
      f_zero = f_zero * s;
    }
    for (int m = N * k - 1; m >= 1 - k; --m) {
      long v = N * static_cast<long>(k) - m;
      Rat scale = Rat(1);
      {  // N^{-12k + m*12/(N-1)}
        long ex = -12L * k + static_cast<long>(p12) * m;
        Int Np = 1;
        for (long i = 0; i < std::abs(ex); ++i) Np *= N;
        scale = (ex >= 0) ? Rat(Np) : Rat(1, Np);
      }
      inf_by_val[v] = f_inf;
      zero_by_val[v] = scale * f_zero;
      if (m > 1 - k) {
        f_inf = f_inf * t_inv;
        f_zero = f_zero * s_inv;
      }
    }
  }

  // integer echelon reduction on the infinity expansions, mirrored at 0
  for (long v = d - 1; v >= 1; --v) {
    for (long u = v + 1; u <= d; ++u) {
      Rat c = inf_by_val[v].coeff(u);
      if (c != 0) {
        inf_by_val[v] = inf_by_val[v] - c * inf_by_val[u];
        zero_by_val[v] = zero_by_val[v] - c * zero_by_val[u];
      }
    }
  }

  FormSpace fs;
  fs.group = GroupId{N};
  fs.k = k;
  fs.cusp_widths = {1, N};
  long t_min = order + 1;
  for (long v = 1; v <= d; ++v)
    t_min = std::min({t_min, inf_by_val[v].trunc_order(), zero_by_val[v].trunc_order()});
  fs.trunc_order = t_min;
  for (long v = 1; v <= d; ++v) {
    FormElement el;
    el.cusp_series = {inf_by_val[v].truncated(t_min), zero_by_val[v].truncated(t_min)};
    if (!el.cusp_series[0].is_integral())
      throw NumericError("gamma0_cusp_basis: non-integral echelon coefficient");
    if (el.cusp_series[0].coeff(v) != 1)
      throw NumericError("gamma0_cusp_basis: echelon pivot is not 1");
    if (el.cusp_series[1].valuation() < 1)
      throw InvariantViolation("gamma0_cusp_basis: basis element does not vanish at the cusp 0");
    fs.basis.push_back(std::move(el));
  }
  if (fs.dim() != d)
    throw NumericError("gamma0_cusp_basis: failed to reach the expected dimension");
  return fs;
}

inline FormSpace cusp_basis(const GroupId& g, int k, long order) {
  return g.is_level_one() ? integral_cusp_basis(k, order) : gamma0_cusp_basis(g.N, k, order);
}

// ---- vanishing-order subspaces --------------------------------------------

// Sublattice of forms vanishing to order >= v at every cusp, with
// coordinates relative to the parent basis. For level 1 this is the tail
// of the echelon basis; in general it is the saturated kernel of the
// low-order coefficient conditions.
inline FormSpace truncated_sub_basis(const FormSpace& space, long v) {
  if (v < 1) throw ConfigError("truncated_sub_basis: v must be >= 1");
  int d = space.dim();

  if (space.group.is_level_one()) {
    FormSpace sub;
    sub.group = space.group;
    sub.k = space.k;
    sub.trunc_order = space.trunc_order;
    sub.cusp_widths = space.cusp_widths;
    for (int i = 0; i < d; ++i) {
      if (space.basis[i].valuation() >= v) {
        sub.basis.push_back(space.basis[i]);
        IVec coord(d, Int(0));
        coord[i] = 1;
        sub.coords_in_parent.push_back(std::move(coord));
      }
    }
    return sub;
  }

  // linear conditions: coefficients at exponents 1..v-1 of every cusp vanish
  IMat cond;
  for (size_t c = 0; c < space.num_cusps(); ++c) {
    for (long e = 1; e < v; ++e) {
      QVec row_q(d);
      Int lcm_den = 1;
      for (int i = 0; i < d; ++i) {
        row_q[i] = space.basis[i].cusp_series[c].coeff(e);
        lcm_den = lcm(lcm_den, denominator(row_q[i]));
      }
      IVec row(d);
      for (int i = 0; i < d; ++i) row[i] = numerator(row_q[i]) * (lcm_den / denominator(row_q[i]));
      cond.push_back(std::move(row));
    }
  }
  IMat coords = cond.empty() ? identity_mat(d) : kernel_int(cond);
  FormSpace sub;
  sub.group = space.group;
  sub.k = space.k;
  sub.trunc_order = space.trunc_order;
  sub.cusp_widths = space.cusp_widths;
  for (const IVec& x : coords) {
    FormElement el;
    for (size_t c = 0; c < space.num_cusps(); ++c) {
      QSeries acc = QSeries::zero(space.trunc_order);
      for (int i = 0; i < d; ++i)
        if (x[i] != 0) acc = acc + Rat(x[i]) * space.basis[i].cusp_series[c];
      el.cusp_series.push_back(std::move(acc));
    }
    sub.basis.push_back(std::move(el));
    sub.coords_in_parent.push_back(x);
  }
  return sub;
}

// ---- classical invariants of Gamma_0(N) (test/reporting oracle) ----------

struct Gamma0Invariants {
  long index;    // mu
  long eps2;
  long eps3;
  long cusps;    // eps_infinity
  long genus;
};

inline Gamma0Invariants gamma0_invariants(int N) {
  auto phi = [](long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        while (n % p == 0) n /= p;
        r -= r / p;
      }
    if (n > 1) r -= r / n;
    return r;
  };
  long mu = N;
  {
    long n = N;
    for (long p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        mu += mu / p;
        while (n % p == 0) n /= p;
      }
    if (n > 1) mu += mu / n;
  }
  long eps2 = 1, eps3 = 1;
  {
    long n = N;
    if (N % 4 == 0)
      eps2 = 0;
    else
      for (long p = 2; p <= n; ++p)
        if (n % p == 0) {
          while (n % p == 0) n /= p;
          eps2 *= (p == 2) ? 1 : (p % 4 == 1 ? 2 : 0);
          if (eps2 == 0) break;
        }
  }
  {
    long n = N;
    if (N % 9 == 0)
      eps3 = 0;
    else
      for (long p = 2; p <= n; ++p)
        if (n % p == 0) {
          while (n % p == 0) n /= p;
          eps3 *= (p == 3) ? 1 : (p % 3 == 1 ? 2 : 0);
          if (eps3 == 0) break;
        }
  }
  long cusps = 0;
  for (long dd = 1; dd <= N; ++dd)
    if (N % dd == 0) cusps += phi(std::gcd(dd, N / dd));
  Rat g = 1 + Rat(mu, 12) - Rat(eps2, 4) - Rat(eps3, 3) - Rat(cusps, 2);
  if (denominator(g) != 1) throw NumericError("gamma0_invariants: genus not integral");
  long genus = static_cast<long>(numerator(g));
  return {mu, eps2, eps3, cusps, genus};
}

// dim S_m(Gamma_0(N)) for even weight m >= 4 via the standard closed formula.
inline long cuspform_dim_formula(int N, int m) {
  if (N == 1) {
    if (m % 12 == 2) return m / 12 - 1;
    return m / 12;
  }
  Gamma0Invariants iv = gamma0_invariants(N);
  return (m - 1) * (iv.genus - 1) + (m / 4) * iv.eps2 + (m / 3) * iv.eps3 +
         (m / 2 - 1) * iv.cusps;
}

}  // namespace petmin

#endif
