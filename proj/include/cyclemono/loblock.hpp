#pragma once

#include <stdexcept>
#include <vector>

#include "cyclemono/latpair.hpp"

namespace cyclemono {

// Rank-d pair on basis (gamma, delta_1, ..., delta_{d-1}) with
// delta_d := c*gamma - sum_{j<d} delta_j; the automorphism fixes gamma and
// cycles the deltas. For d = 1 this degenerates to the rank-1 identity.
struct LoBlock {
  long d;
  long c;
  LatticePair pair;
};

inline LoBlock lo_block(long d, long c) {
  if (d < 1) throw std::invalid_argument("lo_block: d must be >= 1");
  IntMat h(static_cast<size_t>(d), static_cast<size_t>(d));
  h(0, 0) = 1;
  if (d >= 2) {
    for (long j = 1; j + 1 <= d - 1; ++j) h(static_cast<size_t>(j + 1), static_cast<size_t>(j)) = 1;
    h(0, static_cast<size_t>(d - 1)) = c;
    for (long i = 1; i <= d - 1; ++i) h(static_cast<size_t>(i), static_cast<size_t>(d - 1)) = -1;
  }
  return LoBlock{d, c, LatticePair(std::move(h))};
}

namespace detail {

// coordinates of delta_j (j in 1..d) in the basis (gamma, delta_1..delta_{d-1})
inline std::vector<Int> lo_delta_coords(long d, long c, long j) {
  std::vector<Int> v(static_cast<size_t>(d), Int(0));
  if (j < 1 || j > d) throw std::logic_error("lo_delta_coords: index out of range");
  if (j < d) {
    v[static_cast<size_t>(j)] = 1;
  } else {
    v[0] = c;
    for (long i = 1; i <= d - 1; ++i) v[static_cast<size_t>(i)] = -1;
  }
  return v;
}

inline void add_into(std::vector<Int>& a, const std::vector<Int>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

}  // namespace detail

// Lo^{(d,1)} ~ Or(t^d - 1): with c = 1 the deltas alone form a Z-basis,
// on which the automorphism is the companion matrix of t^d - 1
inline IsomorphismWitness lo_unit_to_orlik(long d) {
  if (d < 1) throw std::invalid_argument("lo_unit_to_orlik: d must be >= 1");
  std::vector<std::vector<Int>> cols;
  for (long j = 1; j <= d; ++j) cols.push_back(detail::lo_delta_coords(d, 1, j));
  IntMat v = IntMat::from_columns(cols);
  IsomorphismWitness w{inverse_unimodular(v)};
  if (!verify_witness(lo_block(d, 1).pair, orlik_block(IntPoly::tn_minus_1(static_cast<size_t>(d))), w))
    throw std::logic_error("lo_unit_to_orlik: witness verification failed");
  return w;
}

struct PowerDecomposition {
  long g;  // gcd(d, v)
  long b;  // d / g
  LatticePair target;
  IsomorphismWitness witness;
};

// Decomposes (H^{(d,c)}, (h^{(d,c)})^v) as (g-1) * Or(t^b - 1)  (+)  Lo^{(b,c)}
// by regrouping the deltas into g cycles of length b under h^v and summing
// over cycles. The returned witness maps the source presentation to the
// block-diagonal target and is verified unimodular.
inline PowerDecomposition power_decompose(long d, long c, long v) {
  if (d < 1 || v < 1) throw std::invalid_argument("power_decompose: d, v must be >= 1");
  long g = to_long(gcd_int(Int(d), Int(v)));
  long b = d / g;
  LoBlock src = lo_block(d, c);
  LatticePair source(src.pair.matrix().pow(static_cast<unsigned long>(v)));

  // cycle a (0-based) starts at delta_{a+1} and advances by v (mod d)
  auto idx = [&](long a, long i) {  // i in 1..b
    long raw = (a + 1) + (i - 1) * v;
    return ((raw - 1) % d) + 1;
  };
  std::vector<std::vector<Int>> new_basis;  // columns in source coordinates
  for (long a = 0; a + 1 < g; ++a)
    for (long i = 1; i <= b; ++i) new_basis.push_back(detail::lo_delta_coords(d, c, idx(a, i)));
  std::vector<Int> gamma(static_cast<size_t>(d), Int(0));
  gamma[0] = 1;
  new_basis.push_back(gamma);
  for (long j = 1; j <= b - 1; ++j) {
    std::vector<Int> beta(static_cast<size_t>(d), Int(0));
    for (long a = 0; a < g; ++a) detail::add_into(beta, detail::lo_delta_coords(d, c, idx(a, j)));
    new_basis.push_back(beta);
  }
  IntMat v_mat = IntMat::from_columns(new_basis);
  Int dv = det_bareiss(v_mat);
  if (dv != 1 && dv != -1) throw std::logic_error("power_decompose: basis change is not unimodular");
  std::vector<LatticePair> blocks;
  for (long a = 0; a + 1 < g; ++a) blocks.push_back(orlik_block(IntPoly::tn_minus_1(static_cast<size_t>(b))));
  blocks.push_back(lo_block(b, c).pair);
  LatticePair target = direct_sum(blocks);
  IsomorphismWitness w{inverse_unimodular(v_mat)};
  if (!verify_witness(source, target, w))
    throw std::logic_error("power_decompose: witness verification failed");
  return PowerDecomposition{g, b, std::move(target), std::move(w)};
}

struct LoBasisChange {
  Int a;
  Int b;
  IsomorphismWitness witness;  // maps Lo^{(d,c)} to Lo^{(d,c_new)}
};

// Requires c = gcd(d,c) = gcd(d,c_new) with c >= 1. Finds a with
// gcd(a,d) = 1 and b with c_new = b*d + a*c, then performs the basis change
// delta~_j = b*gamma + sum_{i=0}^{a-1} delta_{j+i}, gamma~ = gamma.
inline LoBasisChange lo_basis_change(long d, long c, long c_new) {
  if (d < 1) throw std::invalid_argument("lo_basis_change: d must be >= 1");
  if (c < 1 || d % c != 0 || to_long(gcd_int(Int(d), Int(c))) != c)
    throw std::invalid_argument("lo_basis_change: c must be a positive divisor of d");
  long g_new = to_long(gcd_int(Int(d), Int(c_new)));
  if (g_new != c)
    throw std::invalid_argument("lo_basis_change: gcd mismatch, the pairs are not isomorphic");

  Int a, b;
  if (c_new == c) {
    a = 1;
    b = 0;
  } else if (c_new == 0) {
    // only reachable with c = gcd(d,0) = d
    a = 1;
    b = -1;
  } else {
    Int btilde = 1;
    for (auto [p, e] : factorize(d)) {
      long vp_cn = 0;
      long m = c_new < 0 ? -c_new : c_new;
      while (m % p == 0) {
        m /= p;
        ++vp_cn;
      }
      if (vp_cn == e && e > 0) btilde *= p;
    }
    b = -btilde - Int(c_new < 0 ? -c_new : c_new);
    a = Int(c_new) / c - b * (Int(d) / c);
    if (a < 1 || gcd_int(a, Int(d)) != 1 || b * d + a * c != c_new)
      throw std::logic_error("lo_basis_change: constructed pair (a, b) is invalid");
  }

  size_t n = static_cast<size_t>(d);
  std::vector<std::vector<Int>> cols;
  std::vector<Int> gamma(n, Int(0));
  gamma[0] = 1;
  cols.push_back(gamma);
  long a_l = to_long(a);
  for (long j = 1; j <= d - 1; ++j) {
    std::vector<Int> dj(n, Int(0));
    dj[0] = b;
    for (long i = 0; i < a_l; ++i) {
      long k = ((j + i - 1) % d) + 1;
      detail::add_into(dj, detail::lo_delta_coords(d, c, k));
    }
    cols.push_back(std::move(dj));
  }
  IntMat v_mat = IntMat::from_columns(cols);
  Int dv = det_bareiss(v_mat);
  if (dv != 1 && dv != -1) throw std::logic_error("lo_basis_change: basis change is not unimodular");
  IsomorphismWitness w{inverse_unimodular(v_mat)};
  if (!verify_witness(lo_block(d, c).pair, lo_block(d, c_new).pair, w))
    throw std::logic_error("lo_basis_change: witness verification failed");
  return LoBasisChange{std::move(a), std::move(b), std::move(w)};
}

// witness for Lo^{(d,c)} ~ Lo^{(d,c_new)} for arbitrary c, c_new with equal
// gcds, composed through the normalized representative gcd(d,c)
inline IsomorphismWitness lo_isomorphism(long d, long c, long c_new) {
  long g = to_long(gcd_int(Int(d), Int(c)));
  if (g == 0) g = d;  // both c and d were 0 is impossible since d >= 1
  long g2 = to_long(gcd_int(Int(d), Int(c_new)));
  if (g2 != g)
    throw std::invalid_argument("lo_isomorphism: gcd mismatch, the pairs are not isomorphic");
  IsomorphismWitness to_c = lo_basis_change(d, g, c).witness;
  IsomorphismWitness to_cn = lo_basis_change(d, g, c_new).witness;
  IsomorphismWitness w{to_cn.matrix * inverse_unimodular(to_c.matrix)};
  if (!verify_witness(lo_block(d, c).pair, lo_block(d, c_new).pair, w))
    throw std::logic_error("lo_isomorphism: witness verification failed");
  return w;
}

// gcd(d, c) with the convention gcd(d, 0) = d; cross-checked against the
// single nonzero elementary divisor of sum_{i<d} h^i on Lo^{(d,c)}
inline long lo_gcd_invariant(long d, long c) {
  long g = to_long(gcd_int(Int(d), Int(c)));
  if (g == 0) g = d;
  std::vector<Int> coeffs(static_cast<size_t>(d), Int(1));
  auto snf = snf_invariants(lo_block(d, c).pair, IntPoly(std::move(coeffs)));
  if (snf.size() != 1 || snf[0] != g)
    throw std::logic_error("lo_gcd_invariant: elementary divisor cross-check failed");
  return g;
}

}  // namespace cyclemono
