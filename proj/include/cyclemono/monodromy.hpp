#pragma once

#include <vector>

#include "cyclemono/loblock.hpp"
#include "cyclemono/singularity.hpp"

namespace cyclemono {

// Monodromy on the rank-mu homology lattice, in the basis
// (delta_1, ..., delta_{d-1}[, gamma, beta]). The automorphism shifts the
// delta indices by v_1 modulo d, where delta_d expands through the relation
// sum_j delta_j = 0 (odd n) or = c * gamma (even n); gamma and beta are fixed.
struct MonodromyModel {
  SingularityInvariants inv;
  long d;
  long v1;
  Int c;  // even n only; 0 for odd n
  LatticePair hmon;
};

inline MonodromyModel build_monodromy(const SingularityInvariants& inv) {
  long n = inv.e.n;
  long d = to_long(inv.d);
  long v1 = to_long(inv.v[0]);
  bool even = n % 2 == 0;
  Int c = 0;
  if (even) {
    CellVectors cv = cell_vectors(inv.e);
    Int prod = 1;
    for (long k = 1; k <= n - 1; k += 2) prod *= cv.abar[k];
    long h = n / 2;
    int sign = ((h + 2) * (h + 1) / 2) % 2 == 0 ? 1 : -1;
    c = sign * prod;
  }
  size_t rank = static_cast<size_t>(even ? d + 1 : d - 1);
  size_t gamma_idx = static_cast<size_t>(d - 1), beta_idx = static_cast<size_t>(d);
  IntMat h(rank, rank);
  // column of delta_d in this basis
  std::vector<Int> delta_d(rank, Int(0));
  for (long i = 0; i < d - 1; ++i) delta_d[static_cast<size_t>(i)] = -1;
  if (even) delta_d[gamma_idx] = c;
  for (long j = 1; j <= d - 1; ++j) {
    long t = cyc(j + v1, d);
    if (t < d) {
      h(static_cast<size_t>(t - 1), static_cast<size_t>(j - 1)) = 1;
    } else {
      for (size_t i = 0; i < rank; ++i) h(i, static_cast<size_t>(j - 1)) = delta_d[i];
    }
  }
  if (even) {
    h(gamma_idx, gamma_idx) = 1;
    h(beta_idx, beta_idx) = 1;
  }
  MonodromyModel model{inv, d, v1, c, LatticePair(std::move(h))};
  if (model.hmon.char_poly() != inv.charpoly)
    throw std::logic_error("build_monodromy: characteristic polynomial mismatch");
  long b = to_long(inv.b);
  if (model.hmon.order() != b) throw std::logic_error("build_monodromy: unexpected order");
  if (even && gcd_int(inv.b, c) != 1)
    throw std::logic_error("build_monodromy: gcd(b, c) != 1");
  return model;
}

struct Theorem13Result {
  LatticePair target;
  IsomorphismWitness witness;
};

namespace detail {

// coordinates of delta_j (j in 1..d) in the monodromy basis
inline std::vector<Int> monodromy_delta_coords(const MonodromyModel& m, long j) {
  bool even = m.inv.e.n % 2 == 0;
  size_t rank = m.hmon.rank();
  std::vector<Int> v(rank, Int(0));
  if (j < m.d) {
    v[static_cast<size_t>(j - 1)] = 1;
  } else {
    for (long i = 0; i < m.d - 1; ++i) v[static_cast<size_t>(i)] = -1;
    if (even) v[static_cast<size_t>(m.d - 1)] = m.c;
  }
  return v;
}

}  // namespace detail

// Builds the explicit unimodular witness from the monodromy pair to the
// standard decomposition. Odd n: regroup the deltas into gcd(d, v_1) cycles
// of length b and sum over cycles, the relation sum delta_j = 0 turning the
// last cycle into Or((t^b-1)/(t-1)). Even n: identify with the power of a
// Lo block plus a fixed line, decompose the power, and convert the leftover
// Lo block to Or(t^b-1) through the unit-c basis change.
inline Theorem13Result verify_theorem13(const MonodromyModel& model) {
  long n = model.inv.e.n;
  long d = model.d, v1 = model.v1;
  long g = to_long(gcd_int(Int(d), Int(v1)));
  long b = d / g;
  if (g != to_long(model.inv.g) || b != to_long(model.inv.b))
    throw std::logic_error("verify_theorem13: gcd bookkeeping mismatch");
  std::vector<LatticePair> blocks;
  for (auto& [mult, p] : predicted_decomposition(model.inv))
    for (long i = 0; i < mult; ++i) blocks.push_back(orlik_block(p));
  LatticePair target = direct_sum(blocks);

  IntMat u(0, 0);
  if (n % 2 == 1) {
    auto idx = [&](long a, long i) { return ((a + 1) + (i - 1) * v1 - 1) % d + 1; };
    std::vector<std::vector<Int>> cols;
    for (long a = 0; a + 1 < g; ++a)
      for (long i = 1; i <= b; ++i) cols.push_back(detail::monodromy_delta_coords(model, idx(a, i)));
    for (long j = 1; j <= b - 1; ++j) {
      std::vector<Int> beta(model.hmon.rank(), Int(0));
      for (long a = 0; a < g; ++a) {
        auto dj = detail::monodromy_delta_coords(model, idx(a, j));
        for (size_t i = 0; i < beta.size(); ++i) beta[i] += dj[i];
      }
      cols.push_back(std::move(beta));
    }
    IntMat v_mat = IntMat::from_columns(cols);
    Int dv = det_bareiss(v_mat);
    if (dv != 1 && dv != -1)
      throw std::logic_error("verify_theorem13: cycle regrouping is not unimodular");
    u = inverse_unimodular(v_mat);
  } else {
    size_t rank = model.hmon.rank();  // d + 1
    // stage 1: reorder (delta_1..delta_{d-1}, gamma, beta) as
    // (gamma, delta_1..delta_{d-1}; beta)
    IntMat p(rank, rank);
    p(0, static_cast<size_t>(d - 1)) = 1;  // gamma
    for (long j = 1; j <= d - 1; ++j) p(static_cast<size_t>(j), static_cast<size_t>(j - 1)) = 1;
    p(static_cast<size_t>(d), static_cast<size_t>(d)) = 1;  // beta
    long c = to_long(model.c);
    LatticePair stage1(IntMat::block_diag(
        {lo_block(d, c).pair.matrix().pow(static_cast<unsigned long>(v1)), IntMat::identity(1)}));
    if (p * model.hmon.matrix() != stage1.matrix() * p)
      throw std::logic_error("verify_theorem13: power-of-Lo identification failed");
    // stage 2: split off g-1 full blocks
    auto pd = power_decompose(d, c, v1);
    IntMat w2 = IntMat::block_diag({pd.witness.matrix, IntMat::identity(1)});
    // stage 3: Lo(b,c) ~ Lo(b,1) ~ Or(t^b-1), using gcd(b,c) = 1
    IntMat lo_to_unit = inverse_unimodular(lo_basis_change(b, 1, c).witness.matrix);
    IntMat w_lo = lo_unit_to_orlik(b).matrix * lo_to_unit;
    IntMat w3 = IntMat::block_diag(
        {IntMat::identity(static_cast<size_t>((g - 1) * b)), w_lo, IntMat::identity(1)});
    u = w3 * (w2 * p);
  }
  Theorem13Result res{std::move(target), IsomorphismWitness{std::move(u)}};
  if (!verify_witness(model.hmon, res.target, res.witness))
    throw std::logic_error("verify_theorem13: witness verification failed");
  return res;
}

struct WrongClaimCheck {
  bool charpoly_equal;        // always true: both sides realize the char poly
  bool separated;             // elementary divisors distinguish the two pairs
  std::vector<Int> snf_true;  // of sum_{i < order} h^i on the monodromy pair
  std::vector<Int> snf_wrong;
};

// The uncorrected claim for even n replaces g Or(t^b-1) + Or(t-1) by
// (g-1) Or(t^b-1) + Or((t^b-1)/(t-1)) + 2 Or(t-1). Both have the right
// characteristic polynomial; the elementary divisors of sum h^i separate
// them whenever they are non-isomorphic.
inline WrongClaimCheck cooper_wrong_claim_check(const MonodromyModel& model) {
  if (model.inv.e.n % 2 != 0)
    throw std::invalid_argument("cooper_wrong_claim_check: needs even n");
  long g = to_long(model.inv.g);
  size_t b = static_cast<size_t>(to_long(model.inv.b));
  IntPoly tbm1 = IntPoly::tn_minus_1(b);
  IntPoly tm1({Int(-1), Int(1)});
  std::vector<LatticePair> blocks;
  for (long i = 0; i + 1 < g; ++i) blocks.push_back(orlik_block(tbm1));
  blocks.push_back(orlik_block(div_exact(tbm1, tm1)));
  blocks.push_back(orlik_block(tm1));
  blocks.push_back(orlik_block(tm1));
  LatticePair wrong = direct_sum(blocks);
  WrongClaimCheck out;
  out.charpoly_equal = wrong.char_poly() == model.inv.charpoly;
  long order = model.hmon.order();
  std::vector<Int> ones(static_cast<size_t>(order), Int(1));
  IntPoly q(std::move(ones));
  out.snf_true = snf_invariants(model.hmon, q);
  out.snf_wrong = snf_invariants(wrong, q);
  out.separated = out.snf_true != out.snf_wrong;
  return out;
}

}  // namespace cyclemono
