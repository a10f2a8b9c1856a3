#ifndef PETMIN_INTLINALG_HPP
#define PETMIN_INTLINALG_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "petmin/numeric.hpp"

namespace petmin {

using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

inline IMat identity_mat(size_t n) {
  IMat I(n, IVec(n, Int(0)));
  for (size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

inline IMat transpose(const IMat& A) {
  if (A.empty()) return {};
  IMat T(A[0].size(), IVec(A.size()));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[0].size(); ++j) T[j][i] = A[i][j];
  return T;
}

inline IMat mat_mul(const IMat& A, const IMat& B) {
  size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), k = B.size();
  IMat C(n, IVec(m, Int(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (A[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j)
        if (B[l][j] != 0) C[i][j] += A[i][l] * B[l][j];
    }
  return C;
}

inline IVec vec_mat(const IVec& v, const IMat& A) {
  IVec r(A.empty() ? 0 : A[0].size(), Int(0));
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (size_t j = 0; j < r.size(); ++j)
      if (A[i][j] != 0) r[j] += v[i] * A[i][j];
  }
  return r;
}

// Nearest integer to a rational, half rounded up.
inline Int round_rat(const Rat& x) {
  Int n = numerator(x), d = denominator(x);  // d > 0
  Int q;
  mpz_fdiv_q(q.backend().data(), n.backend().data(), d.backend().data());
  if (2 * (n - q * d) >= d) q += 1;
  return q;
}

inline long rank_rational(IMat A) {
  size_t rows = A.size();
  if (rows == 0) return 0;
  size_t cols = A[0].size();
  long rank = 0;
  size_t pr = 0;
  for (size_t pc = 0; pc < cols && pr < rows; ++pc) {
    size_t piv = pr;
    while (piv < rows && A[piv][pc] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[pr], A[piv]);
    for (size_t i = pr + 1; i < rows; ++i) {
      if (A[i][pc] == 0) continue;
      Int g = gcd(A[pr][pc], A[i][pc]);
      Int a = A[pr][pc] / g, b = A[i][pc] / g;
      for (size_t j = pc; j < cols; ++j) A[i][j] = a * A[i][j] - b * A[pr][j];
    }
    ++pr;
    ++rank;
  }
  return rank;
}

// Row Hermite normal form: pivots positive, pivot columns strictly
// increasing, entries above a pivot reduced into [0, pivot). Zero rows
// dropped, so the result is a canonical basis of the row lattice.
inline IMat hnf_rows(IMat A) {
  size_t rows = A.size();
  if (rows == 0) return A;
  size_t cols = A[0].size();
  size_t pr = 0;
  for (size_t pc = 0; pc < cols && pr < rows; ++pc) {
    while (true) {
      size_t piv = rows;
      for (size_t i = pr; i < rows; ++i)
        if (A[i][pc] != 0 && (piv == rows || abs(A[i][pc]) < abs(A[piv][pc]))) piv = i;
      if (piv == rows) break;
      std::swap(A[pr], A[piv]);
      bool clean = true;
      for (size_t i = pr + 1; i < rows; ++i) {
        if (A[i][pc] == 0) continue;
        Int q = A[i][pc] / A[pr][pc];
        if (q != 0)
          for (size_t j = 0; j < cols; ++j) A[i][j] -= q * A[pr][j];
        if (A[i][pc] != 0) clean = false;
      }
      if (clean) break;
    }
    if (A[pr][pc] == 0) continue;
    if (A[pr][pc] < 0)
      for (size_t j = 0; j < cols; ++j) A[pr][j] = -A[pr][j];
    for (size_t i = 0; i < pr; ++i) {
      if (A[i][pc] == 0) continue;
      Int q;
      mpz_fdiv_q(q.backend().data(), A[i][pc].backend().data(), A[pr][pc].backend().data());
      if (q != 0)
        for (size_t j = 0; j < cols; ++j) A[i][j] -= q * A[pr][j];
    }
    ++pr;
  }
  A.resize(pr);
  return A;
}

namespace detail {

// Column reduction tracking U (A*U = reduced) and V = U^{-1}.
struct ColState {
  IMat A;
  IMat U;
  IMat V;
  size_t rank = 0;
};

inline ColState column_reduce_tracked(IMat A0) {
  ColState st;
  st.A = std::move(A0);
  size_t rows = st.A.size();
  size_t n = rows == 0 ? 0 : st.A[0].size();
  st.U = identity_mat(n);
  st.V = identity_mat(n);
  auto col_swap = [&](size_t a, size_t b) {
    for (size_t i = 0; i < rows; ++i) std::swap(st.A[i][a], st.A[i][b]);
    for (size_t i = 0; i < n; ++i) std::swap(st.U[i][a], st.U[i][b]);
    std::swap(st.V[a], st.V[b]);
  };
  auto col_axpy = [&](size_t dst, size_t src, const Int& q) {
    // col_dst -= q col_src ; row_src of V += q row_dst
    if (q == 0) return;
    for (size_t i = 0; i < rows; ++i) st.A[i][dst] -= q * st.A[i][src];
    for (size_t i = 0; i < n; ++i) st.U[i][dst] -= q * st.U[i][src];
    for (size_t j = 0; j < n; ++j) st.V[src][j] += q * st.V[dst][j];
  };
  auto col_negate = [&](size_t c) {
    for (size_t i = 0; i < rows; ++i) st.A[i][c] = -st.A[i][c];
    for (size_t i = 0; i < n; ++i) st.U[i][c] = -st.U[i][c];
    for (size_t j = 0; j < n; ++j) st.V[c][j] = -st.V[c][j];
  };
  size_t pc = 0;
  for (size_t pr = 0; pr < rows && pc < n; ++pr) {
    while (true) {
      size_t piv = n;
      for (size_t j = pc; j < n; ++j)
        if (st.A[pr][j] != 0 && (piv == n || abs(st.A[pr][j]) < abs(st.A[pr][piv]))) piv = j;
      if (piv == n) break;
      if (piv != pc) col_swap(pc, piv);
      bool clean = true;
      for (size_t j = pc + 1; j < n; ++j) {
        if (st.A[pr][j] == 0) continue;
        Int q = st.A[pr][j] / st.A[pr][pc];
        col_axpy(j, pc, q);
        if (st.A[pr][j] != 0) clean = false;
      }
      if (clean) break;
    }
    if (pc < n && st.A[pr][pc] != 0) {
      if (st.A[pr][pc] < 0) col_negate(pc);
      ++pc;
    }
  }
  st.rank = pc;
  return st;
}

}  // namespace detail

// Integer basis of { x : A x = 0 } (x a column vector), rows of the result.
inline IMat kernel_int(const IMat& A) {
  detail::ColState st = detail::column_reduce_tracked(A);
  size_t n = st.U.size();
  IMat K;
  for (size_t j = st.rank; j < n; ++j) {
    IVec col(n);
    for (size_t i = 0; i < n; ++i) col[i] = st.U[i][j];
    K.push_back(std::move(col));
  }
  return hnf_rows(std::move(K));
}

// Saturation of the row span of A inside Z^n, as canonical HNF rows.
inline IMat saturate_rows(const IMat& A) {
  if (A.empty()) return {};
  IMat K = kernel_int(A);
  if (K.empty()) return hnf_rows(identity_mat(A[0].size()));
  return kernel_int(K);
}

// Given rows S (r x d) forming a basis of a saturated sublattice, return a
// d x d unimodular matrix whose first r rows generate the same sublattice.
inline IMat extend_unimodular(const IMat& S) {
  size_t d = S.empty() ? 0 : S[0].size();
  size_t r = S.size();
  detail::ColState st = detail::column_reduce_tracked(S);
  if (st.rank != r) throw NumericError("extend_unimodular: rows not independent");
  Int det_h = 1;
  for (size_t i = 0; i < r; ++i) det_h *= st.A[i][i];
  if (det_h != 1 && det_h != -1)
    throw NumericError("extend_unimodular: rows do not span a saturated sublattice");
  // S = [H | 0] * V with H unimodular, so the first r rows of V = U^{-1}
  // generate the same lattice as S.
  (void)d;
  return st.V;
}

inline long dim_intersection(const IMat& A, const IMat& B) {
  if (A.empty() || B.empty()) return 0;
  IMat stacked = A;
  stacked.insert(stacked.end(), B.begin(), B.end());
  return rank_rational(A) + rank_rational(B) - rank_rational(stacked);
}

// ---- exact LLL on a Gram matrix -----------------------------------------

// Lattice reduction driven by the Gram matrix alone (delta = 99/100).
// Returns the unimodular transform U; the reduced Gram is U G U^T.
// Dimensions here are small (<= ~26), so the GSO is recomputed from
// scratch after each basis change.
inline IMat lll_reduce_gram(const QMat& G_in, const Rat& delta = Rat(99, 100)) {
  size_t d = G_in.size();
  if (d == 0) return {};
  IMat U = identity_mat(d);
  QMat G(d, QVec(d));
  std::vector<QVec> mu(d, QVec(d, Rat(0)));
  QVec Bq(d, Rat(0));

  auto refresh = [&]() {
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j <= i; ++j) {
        Rat s(0);
        for (size_t a = 0; a < d; ++a) {
          if (U[i][a] == 0) continue;
          Rat ua(U[i][a]);
          for (size_t b = 0; b < d; ++b)
            if (U[j][b] != 0) s += ua * Rat(U[j][b]) * G_in[a][b];
        }
        G[i][j] = s;
        G[j][i] = s;
      }
    for (size_t i = 0; i < d; ++i) {
      for (size_t j = 0; j < i; ++j) {
        Rat s = G[i][j];
        for (size_t l = 0; l < j; ++l) s -= mu[i][l] * mu[j][l] * Bq[l];
        if (Bq[j] == 0) throw NumericError("lll_reduce_gram: rank-deficient Gram");
        mu[i][j] = s / Bq[j];
      }
      Rat s = G[i][i];
      for (size_t l = 0; l < i; ++l) s -= mu[i][l] * mu[i][l] * Bq[l];
      Bq[i] = s;
      if (Bq[i] <= 0) throw NumericError("lll_reduce_gram: Gram not positive-definite");
    }
  };

  refresh();
  size_t k = 1;
  unsigned long guard = 0, guard_max = 200000;
  while (k < d) {
    if (++guard > guard_max) throw NumericError("lll_reduce_gram: iteration guard tripped");
    bool changed = false;
    for (size_t j = k; j-- > 0;) {
      Int q = round_rat(mu[k][j]);
      if (q != 0) {
        for (size_t l = 0; l < d; ++l) U[k][l] -= q * U[j][l];
        changed = true;
        refresh();
      }
    }
    (void)changed;
    if (Bq[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * Bq[k - 1]) {
      std::swap(U[k], U[k - 1]);
      refresh();
      if (k > 1) --k;
    } else {
      ++k;
    }
  }
  return U;
}

}  // namespace petmin

#endif
