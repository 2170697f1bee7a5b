#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "cyclemono/intpoly.hpp"
#include "cyclemono/ints.hpp"

namespace cyclemono {

class IntMat {
 public:
  IntMat() : r_(0), c_(0) {}
  IntMat(size_t r, size_t c) : r_(r), c_(c), d_(r * c, Int(0)) {}
  static IntMat identity(size_t n) {
    IntMat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static IntMat from_rows(const std::vector<std::vector<Int>>& rows) {
    IntMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.c_) throw std::invalid_argument("ragged rows");
      for (size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static IntMat from_columns(const std::vector<std::vector<Int>>& cols) {
    IntMat m(cols.empty() ? 0 : cols[0].size(), cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.r_) throw std::invalid_argument("ragged columns");
      for (size_t i = 0; i < m.r_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  bool is_square() const { return r_ == c_; }
  Int& operator()(size_t i, size_t j) { return d_[i * c_ + j]; }
  const Int& operator()(size_t i, size_t j) const { return d_[i * c_ + j]; }

  friend bool operator==(const IntMat& a, const IntMat& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
  }
  friend bool operator!=(const IntMat& a, const IntMat& b) { return !(a == b); }

  friend IntMat operator+(const IntMat& a, const IntMat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("shape mismatch");
    IntMat m(a.r_, a.c_);
    for (size_t i = 0; i < a.d_.size(); ++i) m.d_[i] = a.d_[i] + b.d_[i];
    return m;
  }
  friend IntMat operator-(const IntMat& a, const IntMat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("shape mismatch");
    IntMat m(a.r_, a.c_);
    for (size_t i = 0; i < a.d_.size(); ++i) m.d_[i] = a.d_[i] - b.d_[i];
    return m;
  }
  // skips zero entries of a, which keeps products with permutation-like
  // matrices at O(n^2)
  friend IntMat operator*(const IntMat& a, const IntMat& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("shape mismatch");
    IntMat m(a.r_, b.c_);
    for (size_t i = 0; i < a.r_; ++i)
      for (size_t k = 0; k < a.c_; ++k) {
        const Int& aik = a(i, k);
        if (aik == 0) continue;
        for (size_t j = 0; j < b.c_; ++j) {
          const Int& bkj = b(k, j);
          if (bkj != 0) m(i, j) += aik * bkj;
        }
      }
    return m;
  }
  friend IntMat operator*(const Int& s, const IntMat& a) {
    IntMat m(a.r_, a.c_);
    for (size_t i = 0; i < a.d_.size(); ++i) m.d_[i] = s * a.d_[i];
    return m;
  }

  std::vector<Int> apply(const std::vector<Int>& v) const {
    if (v.size() != c_) throw std::invalid_argument("shape mismatch");
    std::vector<Int> out(r_, Int(0));
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j)
        if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  IntMat transpose() const {
    IntMat m(c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  IntMat pow(unsigned long k) const {
    if (!is_square()) throw std::invalid_argument("pow of non-square matrix");
    IntMat r = identity(r_);
    IntMat base = *this;
    while (k) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  static IntMat block_diag(const std::vector<IntMat>& blocks) {
    size_t n = 0;
    for (auto& b : blocks) {
      if (!b.is_square()) throw std::invalid_argument("block_diag: non-square block");
      n += b.rows();
    }
    IntMat m(n, n);
    size_t off = 0;
    for (auto& b : blocks) {
      for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
      off += b.rows();
    }
    return m;
  }

  Int max_abs() const {
    Int m = 0;
    for (auto& x : d_) m = std::max(m, abs_int(x));
    return m;
  }

  bool is_zero() const {
    for (auto& x : d_)
      if (x != 0) return false;
    return true;
  }

 private:
  size_t r_, c_;
  std::vector<Int> d_;
};

// exact determinant by fraction-free (Bareiss) elimination
inline Int det_bareiss(IntMat m) {
  if (!m.is_square()) throw std::invalid_argument("det of non-square matrix");
  size_t n = m.rows();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      size_t piv = k + 1;
      while (piv < n && m(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Int num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = num / prev;
      }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

// rank over Q, fraction-free elimination with row and column pivot search;
// optionally reports which rows carry the pivots
inline size_t rank_int(IntMat m, std::vector<size_t>* pivot_rows = nullptr) {
  size_t rows = m.rows(), cols = m.cols();
  std::vector<size_t> rowperm(rows);
  for (size_t i = 0; i < rows; ++i) rowperm[i] = i;
  Int prev = 1;
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && m(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      for (size_t j = 0; j < cols; ++j) std::swap(m(rank, j), m(piv, j));
      std::swap(rowperm[rank], rowperm[piv]);
    }
    for (size_t i = rank + 1; i < rows; ++i)
      for (size_t j = col + 1; j < cols; ++j) m(i, j) = (m(rank, col) * m(i, j) - m(i, col) * m(rank, j)) / prev;
    for (size_t i = rank + 1; i < rows; ++i) m(i, col) = 0;
    prev = m(rank, col);
    if (pivot_rows) {
      if (rank == 0) pivot_rows->clear();
      pivot_rows->push_back(rowperm[rank]);
    }
    ++rank;
  }
  return rank;
}

namespace detail {

// characteristic polynomial mod p via Hessenberg reduction, coefficients
// lowest degree first
inline std::vector<std::uint64_t> charpoly_mod(const IntMat& a, std::uint64_t p) {
  size_t n = a.rows();
  std::vector<std::uint64_t> h(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Int v = a(i, j) % Int(p);
      if (v < 0) v += Int(p);
      h[i * n + j] = static_cast<std::uint64_t>(v);
    }
  auto H = [&](size_t i, size_t j) -> std::uint64_t& { return h[i * n + j]; };
  auto inv = [&](std::uint64_t x) { return powmod_u64(x, p - 2, p); };
  for (size_t k = 0; k + 2 < n; ++k) {
    size_t piv = k + 1;
    while (piv < n && H(piv, k) == 0) ++piv;
    if (piv == n) continue;
    if (piv != k + 1) {
      for (size_t j = 0; j < n; ++j) std::swap(H(k + 1, j), H(piv, j));
      for (size_t i = 0; i < n; ++i) std::swap(H(i, k + 1), H(i, piv));
    }
    std::uint64_t pinv = inv(H(k + 1, k));
    for (size_t i = k + 2; i < n; ++i) {
      if (H(i, k) == 0) continue;
      std::uint64_t f = mulmod_u64(H(i, k), pinv, p);
      // row_i -= f * row_{k+1}; col_{k+1} += f * col_i
      for (size_t j = 0; j < n; ++j)
        H(i, j) = (H(i, j) + p - mulmod_u64(f, H(k + 1, j), p)) % p;
      for (size_t j = 0; j < n; ++j)
        H(j, k + 1) = (H(j, k + 1) + mulmod_u64(f, H(j, i), p)) % p;
    }
  }
  // recurrence over leading principal Hessenberg minors
  std::vector<std::vector<std::uint64_t>> ps(n + 1);
  ps[0] = {1};
  for (size_t m = 1; m <= n; ++m) {
    std::vector<std::uint64_t> pm(m + 1, 0);
    // (t - H(m-1,m-1)) * ps[m-1]
    for (size_t i = 0; i < ps[m - 1].size(); ++i) {
      pm[i + 1] = (pm[i + 1] + ps[m - 1][i]) % p;
      pm[i] = (pm[i] + p - mulmod_u64(H(m - 1, m - 1) % p, ps[m - 1][i], p)) % p;
    }
    std::uint64_t sub = 1;
    for (size_t k = 1; k + 1 <= m; ++k) {
      sub = mulmod_u64(sub, H(m - k, m - k - 1), p);
      if (sub == 0) break;
      std::uint64_t coef = mulmod_u64(H(m - k - 1, m - 1), sub, p);
      if (coef == 0) continue;
      for (size_t i = 0; i < ps[m - k - 1].size(); ++i)
        pm[i] = (pm[i] + p - mulmod_u64(coef, ps[m - k - 1][i], p)) % p;
    }
    ps[m] = std::move(pm);
  }
  return ps[n];
}

}  // namespace detail

// exact characteristic polynomial det(tI - A) via Chinese remaindering of
// Hessenberg computations modulo large primes; the prime product is chosen
// to exceed twice the Hadamard-style bound on any coefficient, so the lift
// is deterministic
inline IntPoly char_poly_int(const IntMat& a) {
  if (!a.is_square()) throw std::invalid_argument("char_poly of non-square matrix");
  size_t n = a.rows();
  if (n == 0) return IntPoly::constant(1);
  Int M = a.max_abs();
  if (M == 0) M = 1;
  // |c_k| <= binom(n,k) * k^{k/2} * M^k  (k x k minors, Hadamard)
  Int bound = 1;
  Int binom = 1;
  Int Mk = 1;
  for (size_t k = 1; k <= n; ++k) {
    binom = binom * Int(n - k + 1) / Int(k);
    Mk *= M;
    Int kk = 1;
    for (size_t i = 0; i < (k + 1) / 2; ++i) kk *= Int(k);
    Int bk = binom * kk * Mk;
    bound = std::max(bound, bk);
  }
  bound = 2 * bound + 1;
  std::vector<std::uint64_t> primes;
  Int prod = 1;
  for (size_t i = 0; prod < bound; ++i) {
    primes.push_back(nth_crt_prime(i));
    prod *= Int(primes.back());
  }
  std::vector<Int> coeff(n + 1, Int(0));
  Int P = 1;
  for (std::uint64_t p : primes) {
    auto cp = detail::charpoly_mod(a, p);
    if (P == 1) {
      for (size_t i = 0; i <= n; ++i) coeff[i] = Int(cp[i]);
    } else {
      Int Pmodp = P % Int(p);
      std::uint64_t pm = static_cast<std::uint64_t>(Pmodp);
      std::uint64_t pinv = detail::powmod_u64(pm, p - 2, p);
      for (size_t i = 0; i <= n; ++i) {
        Int cur = coeff[i] % Int(p);
        if (cur < 0) cur += Int(p);
        std::uint64_t diff = (cp[i] + p - static_cast<std::uint64_t>(cur)) % p;
        std::uint64_t t = detail::mulmod_u64(diff, pinv, p);
        coeff[i] += P * Int(t);
      }
    }
    P *= Int(p);
  }
  Int half = P / 2;
  for (auto& c : coeff)
    if (c > half) c -= P;
  IntPoly result(std::move(coeff));
  // independent spot checks: monic of degree n, and c_{n-1} = -tr(A)
  Int tr = 0;
  for (size_t i = 0; i < n; ++i) tr += a(i, i);
  if (result.degree() != static_cast<long>(n) || !result.is_monic() || result[n - 1] != -tr)
    throw std::logic_error("char_poly_int: internal consistency check failed");
  return result;
}

// reference characteristic polynomial: fraction-free Bareiss elimination on
// tI - A over Z[t]; the leading principal minors are monic, so no pivoting
// is ever needed
inline IntPoly char_poly_bareiss(const IntMat& a) {
  if (!a.is_square()) throw std::invalid_argument("char_poly of non-square matrix");
  size_t n = a.rows();
  if (n == 0) return IntPoly::constant(1);
  std::vector<std::vector<IntPoly>> m(n, std::vector<IntPoly>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::vector<Int> c{-a(i, j)};
      if (i == j) c.push_back(1);
      m[i][j] = IntPoly(std::move(c));
    }
  IntPoly prev = IntPoly::constant(1);
  for (size_t k = 0; k + 1 < n; ++k) {
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = div_exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
    prev = m[k][k];
  }
  return m[n - 1][n - 1];
}

// q(A) by Horner
inline IntMat poly_at_matrix(const IntPoly& q, const IntMat& a) {
  if (!a.is_square()) throw std::invalid_argument("poly_at_matrix: non-square");
  size_t n = a.rows();
  IntMat r(n, n);
  for (long i = q.degree(); i >= 0; --i) {
    r = r * a;
    for (size_t k = 0; k < n; ++k) r(k, k) += q[static_cast<size_t>(i)];
  }
  return r;
}

// Smith normal form diagonal: nonzero invariant factors d_1 | d_2 | ...,
// all positive. Plain row/column reduction over Z.
inline std::vector<Int> snf_diagonal(IntMat m) {
  size_t rows = m.rows(), cols = m.cols();
  std::vector<Int> out;
  size_t t = 0;
  while (t < rows && t < cols) {
    // locate a nonzero entry of minimal absolute value in the working block
    size_t pi = t, pj = t;
    Int best = 0;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (m(i, j) != 0 && (best == 0 || abs_int(m(i, j)) < best)) {
          best = abs_int(m(i, j));
          pi = i;
          pj = j;
        }
    if (best == 0) break;
    for (size_t j = 0; j < cols; ++j) std::swap(m(t, j), m(pi, j));
    for (size_t i = 0; i < rows; ++i) std::swap(m(i, t), m(i, pj));
    bool clean = true;
    for (size_t i = t + 1; i < rows; ++i) {
      if (m(i, t) == 0) continue;
      Int q = m(i, t) / m(t, t);
      for (size_t j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
      if (m(i, t) != 0) clean = false;
    }
    for (size_t j = t + 1; j < cols; ++j) {
      if (m(t, j) == 0) continue;
      Int q = m(t, j) / m(t, t);
      for (size_t i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
      if (m(t, j) != 0) clean = false;
    }
    if (!clean) continue;
    // enforce divisibility of the remaining block by the pivot
    bool divides_all = true;
    for (size_t i = t + 1; i < rows && divides_all; ++i)
      for (size_t j = t + 1; j < cols; ++j)
        if (m(i, j) % m(t, t) != 0) {
          for (size_t jj = t; jj < cols; ++jj) m(t, jj) += m(i, jj);
          divides_all = false;
          break;
        }
    if (!divides_all) continue;
    out.push_back(abs_int(m(t, t)));
    ++t;
  }
  return out;
}

// row-style Hermite normal form H = T * A with T unimodular. H is in row
// echelon form with positive pivots and entries above each pivot reduced
// into [0, pivot). Returns (H, T, det_sign_of_T).
inline std::tuple<IntMat, IntMat, int> hnf_with_transform(IntMat m) {
  size_t rows = m.rows(), cols = m.cols();
  IntMat t = IntMat::identity(rows);
  int tsign = 1;
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    // Euclid downwards on the column
    while (true) {
      size_t piv = rows;
      Int best = 0;
      for (size_t i = r; i < rows; ++i)
        if (m(i, col) != 0 && (best == 0 || abs_int(m(i, col)) < best)) {
          best = abs_int(m(i, col));
          piv = i;
        }
      if (piv == rows) break;
      if (piv != r) {
        for (size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(piv, j));
        for (size_t j = 0; j < rows; ++j) std::swap(t(r, j), t(piv, j));
        tsign = -tsign;
      }
      bool done = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (m(i, col) == 0) continue;
        Int q = m(i, col) / m(r, col);
        for (size_t j = 0; j < cols; ++j) m(i, j) -= q * m(r, j);
        for (size_t j = 0; j < rows; ++j) t(i, j) -= q * t(r, j);
        if (m(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (r < rows && m(r, col) != 0) {
      if (m(r, col) < 0) {
        for (size_t j = 0; j < cols; ++j) m(r, j) = -m(r, j);
        for (size_t j = 0; j < rows; ++j) t(r, j) = -t(r, j);
        tsign = -tsign;
      }
      for (size_t i = 0; i < r; ++i) {
        Int q = m(i, col) / m(r, col);
        if (m(i, col) % m(r, col) < 0) q -= 1;
        if (q == 0) continue;
        for (size_t j = 0; j < cols; ++j) m(i, j) -= q * m(r, j);
        for (size_t j = 0; j < rows; ++j) t(i, j) -= q * t(r, j);
      }
      ++r;
    }
  }
  return {m, t, tsign};
}

inline IntMat hnf(const IntMat& m) { return std::get<0>(hnf_with_transform(m)); }

// nonzero rows of the HNF: canonical basis of the row lattice
inline IntMat hnf_basis(const IntMat& m) {
  IntMat h = hnf(m);
  size_t r = 0;
  for (size_t i = 0; i < h.rows(); ++i) {
    bool nonzero = false;
    for (size_t j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0) nonzero = true;
    if (nonzero) ++r;
  }
  IntMat out(r, h.cols());
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < h.cols(); ++j) out(i, j) = h(i, j);
  return out;
}

// inverse of a matrix with det = +-1; HNF of a unimodular matrix is the
// identity, so the transform is the inverse
inline IntMat inverse_unimodular(const IntMat& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  auto [h, t, sign] = hnf_with_transform(a);
  (void)sign;
  if (h != IntMat::identity(a.rows())) throw std::invalid_argument("matrix is not unimodular");
  return t;
}

// SNF with transforms: returns (U, D, V) with A = U * D * V, U and V
// unimodular, D diagonal (as a matrix of the same shape)
inline std::tuple<IntMat, IntMat, IntMat> snf_with_transforms(IntMat m) {
  size_t rows = m.rows(), cols = m.cols();
  IntMat uinv = IntMat::identity(rows);  // accumulates row ops applied to m
  IntMat vinv = IntMat::identity(cols);  // accumulates col ops applied to m
  size_t t = 0;
  while (t < rows && t < cols) {
    size_t pi = t, pj = t;
    Int best = 0;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (m(i, j) != 0 && (best == 0 || abs_int(m(i, j)) < best)) {
          best = abs_int(m(i, j));
          pi = i;
          pj = j;
        }
    if (best == 0) break;
    if (pi != t)
      for (size_t j = 0; j < cols; ++j) std::swap(m(t, j), m(pi, j));
    if (pi != t)
      for (size_t j = 0; j < rows; ++j) std::swap(uinv(t, j), uinv(pi, j));
    if (pj != t)
      for (size_t i = 0; i < rows; ++i) std::swap(m(i, t), m(i, pj));
    if (pj != t)
      for (size_t i = 0; i < cols; ++i) std::swap(vinv(i, t), vinv(i, pj));
    bool clean = true;
    for (size_t i = t + 1; i < rows; ++i) {
      if (m(i, t) == 0) continue;
      Int q = m(i, t) / m(t, t);
      for (size_t j = 0; j < cols; ++j) m(i, j) -= q * m(t, j);
      for (size_t j = 0; j < rows; ++j) uinv(i, j) -= q * uinv(t, j);
      if (m(i, t) != 0) clean = false;
    }
    for (size_t j = t + 1; j < cols; ++j) {
      if (m(t, j) == 0) continue;
      Int q = m(t, j) / m(t, t);
      for (size_t i = 0; i < rows; ++i) m(i, j) -= q * m(i, t);
      for (size_t i = 0; i < cols; ++i) vinv(i, j) -= q * vinv(i, t);
      if (m(t, j) != 0) clean = false;
    }
    if (!clean) continue;
    bool divides_all = true;
    for (size_t i = t + 1; i < rows && divides_all; ++i)
      for (size_t j = t + 1; j < cols; ++j)
        if (m(i, j) % m(t, t) != 0) {
          for (size_t jj = 0; jj < cols; ++jj) m(t, jj) += m(i, jj);
          for (size_t jj = 0; jj < rows; ++jj) uinv(t, jj) += uinv(i, jj);
          divides_all = false;
          break;
        }
    if (!divides_all) continue;
    if (m(t, t) < 0) {
      for (size_t j = 0; j < cols; ++j) m(t, j) = -m(t, j);
      for (size_t j = 0; j < rows; ++j) uinv(t, j) = -uinv(t, j);
    }
    ++t;
  }
  // m = uinv * A * vinv  =>  A = U * m * V with U = uinv^{-1}, V = vinv^{-1}
  IntMat u = inverse_unimodular(uinv);
  IntMat v = inverse_unimodular(vinv);
  return {u, m, v};
}

}  // namespace cyclemono
