#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyclemono/cyclecomb.hpp"
#include "cyclemono/matrix.hpp"
#include "cyclemono/singularity.hpp"

namespace cyclemono {

// valid column indices s for the boundary matrices: thick sets of size s
// exist and the bidegree is neither the top one nor (for even n) the
// sphere level n/2
inline long d1_s_min(long n) { return (n + 2) / 2; }
inline long d1_s_max(long n) { return n - 1; }

struct D1Matrix {
  long s;
  std::vector<SubsetInfo> row_sets;  // almost thick, size s-1
  std::vector<SubsetInfo> col_sets;  // thick, size s
  IntMat m;                          // rows x cols
};

// The composition of the boundary map on the top generators with the
// projection onto the almost-thick part: row B carries sign(B, B1) on the
// column of B1 = cover1(B) and -sign(B, B1) * a_{beta2} (resp.
// (-1)^n a_n when beta2(B) = n) on the column of B2 = cover2(B).
inline D1Matrix d1_matrix(const Exponents& e, long s) {
  long n = e.n;
  if (s < d1_s_min(n) || s > d1_s_max(n))
    throw std::invalid_argument("d1_matrix: s out of range");
  D1Matrix out;
  out.s = s;
  out.col_sets = thick_family(n, s);
  out.row_sets = almost_thick_family(n, s);
  std::map<std::uint64_t, size_t> col_of;
  for (size_t j = 0; j < out.col_sets.size(); ++j) col_of[out.col_sets[j].mask] = j;
  out.m = IntMat(out.row_sets.size(), out.col_sets.size());
  for (size_t i = 0; i < out.row_sets.size(); ++i) {
    const SubsetInfo& b = out.row_sets[i];
    SubsetInfo b1 = cover1(b), b2 = cover2(b);
    int s1 = sign_face(b, b1);
    long b2v = beta2(b);
    Int coef2 = (b2v == n) ? Int((n % 2 == 0 ? 1 : -1) * e.at(n)) : Int(e.at(b2v));
    out.m(i, col_of.at(b1.mask)) += s1;
    out.m(i, col_of.at(b2.mask)) -= Int(s1) * coef2;
  }
  return out;
}

struct D1Certificate {
  bool injective = false;
  Int certificate_minor = 0;  // nonzero maximal minor when injective
  bool replay_ok = false;     // the cyclic relation chains force d * z_A = 0
  Int replay_product = 0;     // product of coefficients along one chain
};

inline D1Certificate verify_d1_injective(const Exponents& e, long s) {
  D1Matrix d1 = d1_matrix(e, s);
  D1Certificate cert;
  std::vector<size_t> pivot_rows;
  size_t rank = rank_int(d1.m, &pivot_rows);
  cert.injective = rank == d1.m.cols();
  if (cert.injective) {
    IntMat sub(d1.m.cols(), d1.m.cols());
    for (size_t i = 0; i < pivot_rows.size(); ++i)
      for (size_t j = 0; j < d1.m.cols(); ++j) sub(i, j) = d1.m(pivot_rows[i], j);
    cert.certificate_minor = det_bareiss(sub);
    if (cert.certificate_minor == 0) throw std::logic_error("verify_d1_injective: bad certificate");
  }
  // replay of the relation chains: around a gap-shifting cycle the
  // coefficients multiply to abar_{n+1}, whose difference from 1 is +-d
  CellVectors cv = cell_vectors(e);
  cert.replay_ok = true;
  for (const SubsetInfo& a : d1.col_sets) {
    std::optional<SubsetInfo> b0;
    for (size_t j = 0; j < a.blocks.size(); ++j) {
      if (a.blocks[j].size() < 2) continue;
      b0 = classify_subset(a.n, a.mask & ~(std::uint64_t(1) << (a.beginnings[j] - 1)));
      break;
    }
    if (!b0) {
      cert.replay_ok = false;
      continue;
    }
    auto seq = claim1_sequence(*b0);
    Int prod = 1;
    for (const SubsetInfo& bi : seq) {
      long b2 = beta2(bi);
      prod *= (b2 == e.n) ? Int((e.n % 2 == 0 ? 1 : -1) * e.at(e.n)) : Int(e.at(b2));
    }
    cert.replay_product = prod;
    if (prod != cv.abar[e.n + 1]) cert.replay_ok = false;
  }
  return cert;
}

// lattice spanned by the classes [X_j^{(r-1)}], j = 1..d, inside the rank-d
// top lattice with basis [X_1^{(0)}], ..., [X_d^{(0)}]; returned as a
// canonical (Hermite) basis, one row per basis vector
inline IntMat xclass_lattice(long d, long n, long r) {
  if (r < 1 || r > (n + 3) / 2) throw std::invalid_argument("xclass_lattice: r out of range");
  size_t dd = static_cast<size_t>(d);
  IntMat rows = IntMat::identity(dd);
  for (long step = 0; step + 1 < r; ++step) {
    IntMat next(dd, dd);
    for (size_t j = 0; j < dd; ++j)
      for (size_t i = 0; i < dd; ++i) next(j, i) = rows(j, i) - rows((j + 1) % dd, i);
    rows = std::move(next);
  }
  return hnf_basis(rows);
}

// coordinates of v in the row lattice of basis (full row rank, echelon not
// required); nullopt if v is not in the lattice
inline std::optional<std::vector<Int>> lattice_coords(const IntMat& basis, const std::vector<Int>& v) {
  auto [h, t, sign] = hnf_with_transform(basis);
  (void)sign;
  size_t rows = basis.rows(), cols = basis.cols();
  std::vector<Int> rem = v, y(rows, Int(0));
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    if (h(r, col) == 0) continue;
    if (rem[col] % h(r, col) != 0) return std::nullopt;
    Int q = rem[col] / h(r, col);
    y[r] = q;
    for (size_t j = 0; j < cols; ++j) rem[j] -= q * h(r, j);
    ++r;
  }
  for (size_t j = 0; j < cols; ++j)
    if (rem[j] != 0) return std::nullopt;
  std::vector<Int> x(rows, Int(0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < rows; ++k) x[i] += y[k] * t(k, i);
  return x;
}

// index of the row lattice of `sub` inside the row lattice of `super`;
// throws if sub is not contained or the ranks differ
inline Int lattice_index(const IntMat& super, const IntMat& sub) {
  if (sub.rows() != super.rows()) throw std::invalid_argument("lattice_index: rank mismatch");
  IntMat coords(sub.rows(), super.rows());
  for (size_t i = 0; i < sub.rows(); ++i) {
    std::vector<Int> v(sub.cols());
    for (size_t j = 0; j < sub.cols(); ++j) v[j] = sub(i, j);
    auto x = lattice_coords(super, v);
    if (!x) throw std::invalid_argument("lattice_index: not a sublattice");
    for (size_t j = 0; j < super.rows(); ++j) coords(i, j) = (*x)[j];
  }
  return abs_int(det_bareiss(coords));
}

struct XClassFiltration {
  long d;
  long r_max;                     // (n + 3) / 2
  std::vector<IntMat> bases;      // bases[r-1] = basis of step r
  bool step2_primitive = false;   // step 2 is primitive of rank d-1
  std::vector<Int> step_indices;  // index of step r in step r-1, r >= 3
  bool indices_all_d = false;
  bool recursion_ok = false;      // the sum-divisible-by-d description matches
};

inline XClassFiltration xclass_filtration(const SingularityInvariants& inv) {
  long n = inv.e.n;
  long d = to_long(inv.d);
  XClassFiltration out;
  out.d = d;
  out.r_max = (n + 3) / 2;
  for (long r = 1; r <= out.r_max; ++r) out.bases.push_back(xclass_lattice(d, n, r));
  // step 2: rank d-1 and primitive
  if (out.r_max >= 2) {
    const IntMat& b2 = out.bases[1];
    auto snf = snf_diagonal(b2);
    out.step2_primitive = b2.rows() == static_cast<size_t>(d - 1);
    for (auto& x : snf)
      if (x != 1) out.step2_primitive = false;
  }
  out.indices_all_d = true;
  out.recursion_ok = true;
  size_t dd = static_cast<size_t>(d);
  for (long r = 3; r <= out.r_max; ++r) {
    Int idx = lattice_index(out.bases[r - 2], out.bases[r - 1]);
    out.step_indices.push_back(idx);
    if (idx != d) out.indices_all_d = false;
    // the step-r lattice consists of the step-(r-2)-class combinations whose
    // coefficient sum is divisible by d: generated by consecutive
    // differences together with d times one generator
    IntMat prev = IntMat::identity(dd);
    for (long step = 0; step + 2 < r; ++step) {
      IntMat next(dd, dd);
      for (size_t j = 0; j < dd; ++j)
        for (size_t i = 0; i < dd; ++i) next(j, i) = prev(j, i) - prev((j + 1) % dd, i);
      prev = std::move(next);
    }
    IntMat gens(dd + 1, dd);
    for (size_t j = 0; j < dd; ++j)
      for (size_t i = 0; i < dd; ++i) gens(j, i) = prev(j, i) - prev((j + 1) % dd, i);
    for (size_t i = 0; i < dd; ++i) gens(dd, i) = Int(d) * prev(0, i);
    if (hnf_basis(gens) != out.bases[r - 1]) out.recursion_ok = false;
  }
  return out;
}

struct Hn1Assembly {
  long rank;                        // mu
  std::vector<std::string> labels;  // basis labels
  bool even;
  Int relation_c;        // sum_j X_j = c * gamma for even n (0 for odd)
  Int gamma_ev_coeff;    // gamma = S_od + coeff * S_ev
};

inline Hn1Assembly assemble_Hn1(const SingularityInvariants& inv) {
  long n = inv.e.n;
  long d = to_long(inv.d);
  Hn1Assembly out;
  out.even = n % 2 == 0;
  out.rank = d + (out.even ? 1 : -1);
  if (to_long(inv.mu) != out.rank) throw std::logic_error("assemble_Hn1: rank != mu");
  for (long j = 1; j <= d - 1; ++j) out.labels.push_back("X" + std::to_string(j));
  out.relation_c = 0;
  out.gamma_ev_coeff = 0;
  if (out.even) {
    out.labels.push_back("S_od");
    out.labels.push_back("S_ev");
    CellVectors cv = cell_vectors(inv.e);
    Int prod_abar = 1, prod_a = 1;
    for (long k = 1; k <= n - 1; k += 2) {
      prod_abar *= cv.abar[k];
      prod_a *= inv.e.at(k);
    }
    long h = n / 2;
    int sign = ((h + 2) * (h + 1) / 2) % 2 == 0 ? 1 : -1;
    out.relation_c = sign * prod_abar;
    out.gamma_ev_coeff = prod_a;
  }
  return out;
}

}  // namespace cyclemono
