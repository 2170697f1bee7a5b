#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cyclemono/intpoly.hpp"
#include "cyclemono/matrix.hpp"

namespace cyclemono {

// A free Z-module of finite rank together with an automorphism of finite
// order, given as a unimodular integer matrix in a chosen basis.
class LatticePair {
 public:
  LatticePair() : h_(IntMat::identity(0)) {}
  explicit LatticePair(IntMat h) : h_(std::move(h)) {
    if (!h_.is_square()) throw std::invalid_argument("LatticePair: matrix must be square");
    Int d = det_bareiss(h_);
    if (d != 1 && d != -1) throw std::invalid_argument("LatticePair: matrix must be unimodular");
  }

  size_t rank() const { return h_.rows(); }
  const IntMat& matrix() const { return h_; }

  const IntPoly& char_poly() const {
    if (!charpoly_) charpoly_ = char_poly_int(h_);
    return *charpoly_;
  }

  // smallest k >= 1 with h^k = id. Finite order forces the characteristic
  // polynomial to be a product of cyclotomics, and then the order is the
  // lcm of their indices; h^order = id is verified.
  long order() const {
    if (order_) return *order_;
    if (rank() == 0) {
      order_ = 1;
      return 1;
    }
    std::map<long, int> fac;
    try {
      fac = factor_into_cyclotomics(char_poly());
    } catch (const NotCyclotomicProduct&) {
      throw std::invalid_argument("LatticePair: characteristic polynomial is not a product of cyclotomics");
    }
    long ord = 1;
    for (auto& [m, e] : fac) ord = to_long(lcm_int(Int(ord), Int(m)));
    if (h_.pow(static_cast<unsigned long>(ord)) != IntMat::identity(rank()))
      throw std::invalid_argument("LatticePair: automorphism does not have finite order");
    order_ = ord;
    return ord;
  }

  friend bool operator==(const LatticePair& a, const LatticePair& b) { return a.h_ == b.h_; }
  friend bool operator!=(const LatticePair& a, const LatticePair& b) { return !(a == b); }

 private:
  IntMat h_;
  mutable std::optional<IntPoly> charpoly_;
  mutable std::optional<long> order_;
};

struct IsomorphismWitness {
  IntMat matrix;
};

// Or(p): companion matrix of p; the first standard basis vector is a
// generating element with basis (a0, h a0, ..., h^{deg-1} a0)
inline LatticePair orlik_block(const IntPoly& p) {
  if (!p.is_monic()) throw std::invalid_argument("orlik_block: polynomial must be monic");
  auto fac = factor_into_cyclotomics(p);
  for (auto& [m, e] : fac)
    if (e > 1) throw std::invalid_argument("orlik_block: polynomial must have simple zeros");
  size_t n = static_cast<size_t>(p.degree());
  IntMat h(n, n);
  for (size_t i = 0; i + 1 < n; ++i) h(i + 1, i) = 1;
  for (size_t i = 0; i < n; ++i) h(i, n - 1) = -p[i];
  return LatticePair(std::move(h));
}

inline LatticePair direct_sum(const std::vector<LatticePair>& pairs) {
  std::vector<IntMat> blocks;
  blocks.reserve(pairs.size());
  for (auto& p : pairs) blocks.push_back(p.matrix());
  return LatticePair(IntMat::block_diag(blocks));
}

inline IntPoly char_poly(const LatticePair& pair) { return pair.char_poly(); }

// nonzero elementary divisors of q(h); invariant under unimodular conjugation
inline std::vector<Int> snf_invariants(const LatticePair& pair, const IntPoly& q) {
  return snf_diagonal(poly_at_matrix(q, pair.matrix()));
}

inline bool verify_witness(const LatticePair& source, const LatticePair& target,
                           const IsomorphismWitness& w) {
  if (source.rank() != target.rank()) throw std::invalid_argument("verify_witness: rank mismatch");
  if (w.matrix.rows() != source.rank() || w.matrix.cols() != source.rank()) return false;
  Int d = det_bareiss(w.matrix);
  if (d != 1 && d != -1) return false;
  return w.matrix * source.matrix() == target.matrix() * w.matrix;
}

struct GeneratingElementSearch {
  std::optional<std::vector<Int>> element;
  bool budget_exhausted = false;
  unsigned long candidates_tried = 0;
};

// searches a0 with Z-basis (a0, h a0, ..., h^{rank-1} a0): standard basis
// vectors first, then all vectors with entries in {-1,0,1}, then {-2,...,2},
// stopping after `budget` candidates
inline GeneratingElementSearch find_generating_element(const LatticePair& pair,
                                                       unsigned long budget = 200000) {
  auto fac = factor_into_cyclotomics(pair.char_poly());
  for (auto& [m, e] : fac)
    if (e > 1)
      throw std::invalid_argument(
          "find_generating_element: characteristic polynomial must have simple zeros");
  size_t n = pair.rank();
  GeneratingElementSearch res;
  if (n == 0) {
    res.element = std::vector<Int>{};
    return res;
  }
  auto try_candidate = [&](const std::vector<Int>& a0) -> bool {
    ++res.candidates_tried;
    std::vector<std::vector<Int>> cols;
    cols.push_back(a0);
    for (size_t j = 1; j < n; ++j) cols.push_back(pair.matrix().apply(cols.back()));
    Int d = det_bareiss(IntMat::from_columns(cols));
    return d == 1 || d == -1;
  };
  for (size_t i = 0; i < n && res.candidates_tried < budget; ++i) {
    std::vector<Int> a0(n, Int(0));
    a0[i] = 1;
    if (try_candidate(a0)) {
      res.element = a0;
      return res;
    }
  }
  for (int radius = 1; radius <= 2; ++radius) {
    std::vector<int> odo(n, -radius);
    while (true) {
      if (res.candidates_tried >= budget) {
        res.budget_exhausted = true;
        return res;
      }
      std::vector<Int> a0(n);
      bool all_zero = true;
      for (size_t i = 0; i < n; ++i) {
        a0[i] = odo[i];
        if (odo[i] != 0) all_zero = false;
      }
      if (!all_zero && try_candidate(a0)) {
        res.element = a0;
        return res;
      }
      size_t pos = 0;
      while (pos < n && odo[pos] == radius) {
        odo[pos] = -radius;
        ++pos;
      }
      if (pos == n) break;
      ++odo[pos];
    }
  }
  res.budget_exhausted = true;
  return res;
}

}  // namespace cyclemono
