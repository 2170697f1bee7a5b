#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cyclemono/ints.hpp"

namespace cyclemono {

// Exponent tuple (a_1, ..., a_n), n >= 2. For even n the tuple is rejected
// when all even-indexed or all odd-indexed exponents are 1.
struct Exponents {
  long n;
  std::vector<long> a;  // a[j-1] = a_j

  Exponents(std::vector<long> exps) : n(static_cast<long>(exps.size())), a(std::move(exps)) {
    if (n < 2) throw std::invalid_argument("exponents: need n >= 2");
    for (long x : a)
      if (x < 1) throw std::invalid_argument("exponents: entries must be positive");
    if (n % 2 == 0) {
      bool all_even_one = true, all_odd_one = true;
      for (long j = 1; j <= n; ++j) {
        if (j % 2 == 0 && a[j - 1] != 1) all_even_one = false;
        if (j % 2 == 1 && a[j - 1] != 1) all_odd_one = false;
      }
      if (all_even_one)
        throw std::invalid_argument("exponents: degenerate, a_j = 1 for all even j");
      if (all_odd_one)
        throw std::invalid_argument("exponents: degenerate, a_j = 1 for all odd j");
    }
  }

  long at(long j) const {  // cyclic 1-based access
    long k = ((j - 1) % n + n) % n;
    return a[k];
  }
};

enum class Thickness { Thick, AlmostThick, Neither, Full };

// value in 1..n representing k mod n
inline long cyc(long k, long n) { return ((k - 1) % n + n) % n + 1; }

struct SubsetInfo {
  long n = 0;
  std::uint64_t mask = 0;
  std::vector<long> members;              // sorted ascending
  std::vector<std::vector<long>> blocks;  // maximal cyclic runs, by beginning
  std::vector<long> beginnings;           // k_1 < ... < k_b
  long b = 0;                             // block count = gap count
  Thickness thickness = Thickness::Neither;

  bool contains(long k) const { return (mask >> (k - 1)) & 1; }
  long size() const { return static_cast<long>(members.size()); }

  friend bool operator==(const SubsetInfo& x, const SubsetInfo& y) {
    return x.n == y.n && x.mask == y.mask;
  }
  friend bool operator<(const SubsetInfo& x, const SubsetInfo& y) { return x.mask < y.mask; }
};

inline SubsetInfo classify_subset(long n, std::uint64_t mask) {
  if (n < 1 || n > 63) throw std::invalid_argument("classify_subset: n out of range");
  if (mask == 0) throw std::invalid_argument("classify_subset: empty subset");
  if (mask >= (std::uint64_t(1) << n)) throw std::invalid_argument("classify_subset: mask out of range");
  SubsetInfo s;
  s.n = n;
  s.mask = mask;
  for (long k = 1; k <= n; ++k)
    if (s.contains(k)) s.members.push_back(k);
  if (s.size() == n) {
    s.thickness = Thickness::Full;
    return s;
  }
  for (long k = 1; k <= n; ++k)
    if (s.contains(k) && !s.contains(cyc(k - 1, n))) s.beginnings.push_back(k);
  s.b = static_cast<long>(s.beginnings.size());
  for (long k0 : s.beginnings) {
    std::vector<long> run{k0};
    long k = cyc(k0 + 1, n);
    while (s.contains(k)) {
      run.push_back(k);
      k = cyc(k + 1, n);
    }
    s.blocks.push_back(std::move(run));
  }
  if (s.b == n - s.size())
    s.thickness = Thickness::Thick;
  else if (s.b == n - s.size() - 1)
    s.thickness = Thickness::AlmostThick;
  else
    s.thickness = Thickness::Neither;
  return s;
}

inline SubsetInfo classify_subset(long n, const std::vector<long>& members) {
  std::uint64_t mask = 0;
  for (long k : members) {
    if (k < 1 || k > n) throw std::invalid_argument("classify_subset: member out of range");
    mask |= std::uint64_t(1) << (k - 1);
  }
  return classify_subset(n, mask);
}

// gaps of A = blocks of the complement
inline std::vector<std::vector<long>> gaps(const SubsetInfo& s) {
  std::uint64_t comp = ((std::uint64_t(1) << s.n) - 1) & ~s.mask;
  if (comp == 0) return {};
  return classify_subset(s.n, comp).blocks;
}

// sign of the permutation sending (1..n) to (alpha_1..alpha_{|A|}, k_1..k_b),
// where the alphas are N minus the block beginnings, ascending
inline int sign_thick(const SubsetInfo& a) {
  if (a.thickness != Thickness::Thick) throw std::invalid_argument("sign_thick: subset is not thick");
  std::vector<long> perm;
  for (long k = 1; k <= a.n; ++k)
    if (!std::binary_search(a.beginnings.begin(), a.beginnings.end(), k)) perm.push_back(k);
  perm.insert(perm.end(), a.beginnings.begin(), a.beginnings.end());
  int inversions = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

// face sign: A is listed ascending, except that n comes first when n is a
// member; removing the j-th listed element contributes (-1)^{j-1}
inline int sign_face(const SubsetInfo& b, const SubsetInfo& a) {
  if (b.n != a.n || (b.mask & ~a.mask) != 0 || a.size() != b.size() + 1)
    throw std::invalid_argument("sign_face: need B subset of A with |B| = |A| - 1");
  std::vector<long> listing;
  if (a.contains(a.n)) {
    listing.push_back(a.n);
    for (long k : a.members)
      if (k != a.n) listing.push_back(k);
  } else {
    listing = a.members;
  }
  std::uint64_t removed = a.mask & ~b.mask;
  long elem = 0;
  for (long k = 1; k <= a.n; ++k)
    if ((removed >> (k - 1)) & 1) elem = k;
  for (size_t j = 0; j < listing.size(); ++j)
    if (listing[j] == elem) return j % 2 == 0 ? 1 : -1;
  throw std::logic_error("sign_face: removed element not found");
}

// The signed products and integer vectors attached to an exponent tuple.
// Indices follow the 1-based conventions: abar[k] for k in 1..n+1,
// bvec[k] for k in 1..n+1, cvec[k] for k in 1..n; index 0 is unused.
struct CellVectors {
  long n;
  Int mu;  // product of the exponents
  Int d;   // mu - (-1)^n
  std::vector<Int> abar;
  std::vector<std::vector<Int>> bvec;
  std::vector<std::vector<Int>> cvec;
};

inline CellVectors cell_vectors(const Exponents& e) {
  CellVectors cv;
  cv.n = e.n;
  cv.mu = 1;
  for (long x : e.a) cv.mu *= x;
  cv.d = cv.mu - (e.n % 2 == 0 ? 1 : -1);
  cv.abar.assign(e.n + 2, Int(0));
  for (long k = 1; k <= e.n + 1; ++k) {
    Int prod = 1;
    for (long i = 1; i <= k - 1; ++i) prod *= e.a[i - 1];
    cv.abar[k] = (k % 2 == 1 ? prod : -prod);
  }
  cv.bvec.assign(e.n + 2, std::vector<Int>(e.n, Int(0)));
  for (long k = 1; k <= e.n + 1; ++k)
    for (long i = 1; i <= std::min(k - 1, e.n); ++i) cv.bvec[k][i - 1] = cv.abar[i];
  cv.cvec.assign(e.n + 1, std::vector<Int>(e.n, Int(0)));
  for (long k = 1; k <= e.n; ++k)
    for (long i = 1; i <= e.n; ++i)
      cv.cvec[k][i - 1] = i < k ? cv.abar[e.n + 1] * cv.abar[i] : cv.abar[i];
  // defining identities
  if (cv.abar[1] != 1) throw std::logic_error("cell_vectors: abar_1 != 1");
  Int sgn_n = e.n % 2 == 0 ? 1 : -1;
  if (cv.abar[e.n + 1] != sgn_n * cv.mu || cv.abar[e.n + 1] != sgn_n * cv.d + 1)
    throw std::logic_error("cell_vectors: abar_{n+1} identity failed");
  if (cv.cvec[1] != cv.bvec[e.n + 1]) throw std::logic_error("cell_vectors: c_1 != b_{n+1}");
  for (long k = 1; k <= e.n; ++k)
    for (long i = 0; i < e.n; ++i)
      if (cv.cvec[k][i] != sgn_n * cv.d * cv.bvec[k][i] + cv.cvec[1][i])
        throw std::logic_error("cell_vectors: c_k identity failed");
  return cv;
}

// p_j = (j/d) c_1
inline std::vector<Rat> p_point(const CellVectors& cv, long j) {
  std::vector<Rat> p(cv.n);
  for (long i = 0; i < cv.n; ++i) p[i] = Rat(Int(j) * cv.cvec[1][i], cv.d);
  return p;
}

// the vectors d^A_j spanning the subtorus T_A, one per block beginning
inline std::vector<std::vector<Int>> torus_dirs(const CellVectors& cv, const SubsetInfo& a) {
  if (a.thickness == Thickness::Full) throw std::invalid_argument("torus_dirs: need a proper subset");
  long bn = a.b;
  std::vector<std::vector<Int>> out;
  for (long j = 1; j <= bn; ++j) {
    long kj = a.beginnings[j - 1];
    std::vector<Int> num(cv.n);
    if (j < bn) {
      long kn = a.beginnings[j];
      for (long i = 0; i < cv.n; ++i) num[i] = cv.bvec[kn][i] - cv.bvec[kj][i];
    } else {
      long k1 = a.beginnings[0];
      for (long i = 0; i < cv.n; ++i)
        num[i] = cv.abar[cv.n + 1] * cv.bvec[k1][i] + cv.cvec[1][i] - cv.bvec[kj][i];
    }
    std::vector<Int> dir(cv.n);
    for (long i = 0; i < cv.n; ++i) {
      if (num[i] % cv.abar[kj] != 0) throw std::logic_error("torus_dirs: non-integral entry");
      dir[i] = num[i] / cv.abar[kj];
    }
    out.push_back(std::move(dir));
  }
  return out;
}

// thick sets of size s
inline std::vector<SubsetInfo> thick_family(long n, long s) {
  std::vector<SubsetInfo> out;
  if (s < 1 || s > n - 1) return out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    if (__builtin_popcountll(mask) != s) continue;
    SubsetInfo info = classify_subset(n, mask);
    if (info.thickness == Thickness::Thick) out.push_back(std::move(info));
  }
  return out;
}

// almost thick sets of size s - 1
inline std::vector<SubsetInfo> almost_thick_family(long n, long s) {
  std::vector<SubsetInfo> out;
  if (s - 1 < 1 || s - 1 > n - 2) return out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    if (__builtin_popcountll(mask) != s - 1) continue;
    SubsetInfo info = classify_subset(n, mask);
    if (info.thickness == Thickness::AlmostThick) out.push_back(std::move(info));
  }
  return out;
}

// first element of the unique two-element gap of an almost thick set
inline long beta1(const SubsetInfo& b) {
  if (b.thickness != Thickness::AlmostThick) throw std::invalid_argument("beta1: set is not almost thick");
  for (auto& gap : gaps(b))
    if (gap.size() == 2) return gap[0];
  throw std::logic_error("beta1: no two-element gap");
}

inline long beta2(const SubsetInfo& b) { return cyc(beta1(b) + 1, b.n); }

inline SubsetInfo with_element(const SubsetInfo& b, long k) {
  return classify_subset(b.n, b.mask | (std::uint64_t(1) << (k - 1)));
}

// B^{(1)} = B + {beta1}, B^{(2)} = B + {beta2}: the two thick covers
inline SubsetInfo cover1(const SubsetInfo& b) { return with_element(b, beta1(b)); }
inline SubsetInfo cover2(const SubsetInfo& b) { return with_element(b, beta2(b)); }

namespace detail {

inline bool claim1_extend(const SubsetInfo& target, std::vector<SubsetInfo>& seq,
                          std::uint64_t used_beta2, long n) {
  if (static_cast<long>(seq.size()) == n - 1) {
    // close the cycle: cover1 of the target must equal the last cover2;
    // beta2 values are distinct by construction, so they form a bijection
    const SubsetInfo& prev = seq.empty() ? target : seq.back();
    return cover1(target).mask == cover2(prev).mask;
  }
  const SubsetInfo& prev = seq.empty() ? target : seq.back();
  SubsetInfo a = cover2(prev);
  for (long k : a.members) {
    if (a.contains(cyc(k + 1, n))) continue;     // removing k must open a 2-gap
    if (!a.contains(cyc(k - 1, n))) continue;    // and not a 3-gap
    SubsetInfo cand = classify_subset(n, a.mask & ~(std::uint64_t(1) << (k - 1)));
    long b2 = beta2(cand);
    if ((used_beta2 >> (b2 - 1)) & 1) continue;
    seq.push_back(cand);
    if (claim1_extend(target, seq, used_beta2 | (std::uint64_t(1) << (b2 - 1)), n)) return true;
    seq.pop_back();
  }
  return false;
}

}  // namespace detail

// A cyclic gap-shifting sequence (B_1, ..., B_n) with B_n = B,
// cover1(B_{i+1}) = cover2(B_i) for all i (indices mod n), and
// i -> beta2(B_i) a bijection of {1..n}. Existence is guaranteed for
// almost thick B; failure to find one indicates a bug.
inline std::vector<SubsetInfo> claim1_sequence(const SubsetInfo& b) {
  if (b.thickness != Thickness::AlmostThick)
    throw std::invalid_argument("claim1_sequence: set is not almost thick");
  long n = b.n;
  std::vector<SubsetInfo> seq;  // B_1 .. B_{n-1}
  std::uint64_t used = std::uint64_t(1) << (beta2(b) - 1);
  if (!detail::claim1_extend(b, seq, used, n))
    throw std::logic_error("claim1_sequence: search failed");
  seq.push_back(b);
  return seq;
}

}  // namespace cyclemono
