#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cyclemono/cyclecomb.hpp"
#include "cyclemono/matrix.hpp"
#include "cyclemono/singularity.hpp"

namespace cyclemono {

// ---------------------------------------------------------------------------
// rational vector helpers
// ---------------------------------------------------------------------------

using RatVec = std::vector<Rat>;

inline bool is_integral_vec(const RatVec& v) {
  for (auto& x : v)
    if (!is_integer(x)) return false;
  return true;
}

inline int compare_rat(const Rat& a, const Rat& b) { return a < b ? -1 : (b < a ? 1 : 0); }

inline int compare_ratvec(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    int c = compare_rat(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

// rank over Q by Gaussian elimination
inline size_t rat_rank(std::vector<RatVec> rows) {
  size_t rank = 0;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      Rat f = rows[i][col] / rows[rank][col];
      for (size_t j = col; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// cells and chains
// ---------------------------------------------------------------------------

// A parallelepiped cell: symbolic simplex factor (the member set B, or the
// full set), a base point, and an ordered tuple of directions, all living in
// the coordinates of B. Canonical cells are produced by normalize_cell.
struct CellKey {
  bool full = false;
  std::uint64_t mask = 0;
  RatVec base;                // length n, zero outside B
  std::vector<RatVec> dirs;   // each length n, zero outside B

  friend bool operator<(const CellKey& x, const CellKey& y) {
    if (x.full != y.full) return x.full < y.full;
    if (x.mask != y.mask) return x.mask < y.mask;
    if (x.dirs.size() != y.dirs.size()) return x.dirs.size() < y.dirs.size();
    for (size_t i = 0; i < x.dirs.size(); ++i) {
      int c = compare_ratvec(x.dirs[i], y.dirs[i]);
      if (c != 0) return c < 0;
    }
    return compare_ratvec(x.base, y.base) < 0;
  }
  friend bool operator==(const CellKey& x, const CellKey& y) {
    return x.full == y.full && x.mask == y.mask && x.base == y.base && x.dirs == y.dirs;
  }
};

namespace chaindetail {

struct BCoords {
  long n = 0;
  std::vector<long> members;  // ascending, 1-based

  RatVec restrict_vec(const RatVec& v) const {
    RatVec out(members.size());
    for (size_t i = 0; i < members.size(); ++i) out[i] = v[members[i] - 1];
    return out;
  }
  RatVec embed_vec(const RatVec& v) const {
    RatVec out(n, Rat(0));
    for (size_t i = 0; i < members.size(); ++i) out[members[i] - 1] = v[i];
    return out;
  }
};

struct RawCell {
  bool full;
  std::uint64_t mask;
  std::vector<long> members;  // of B; all 1..n when full
  RatVec base;                // length n
  std::vector<RatVec> dirs;   // length n each
};

// pivot columns of an HNF row basis
inline std::vector<size_t> hnf_pivots(const IntMat& h) {
  std::vector<size_t> piv(h.rows());
  for (size_t i = 0; i < h.rows(); ++i) {
    size_t j = 0;
    while (j < h.cols() && h(i, j) == 0) ++j;
    piv[i] = j;
  }
  return piv;
}

// zero out the pivot coordinates of w by rational shears along the rows of h
inline void shear_reduce(RatVec& w, const IntMat& h, const std::vector<size_t>& pivots) {
  for (size_t i = 0; i < h.rows(); ++i) {
    Rat f = w[pivots[i]] / Rat(h(i, pivots[i]));
    if (f == 0) continue;
    for (size_t j = 0; j < w.size(); ++j) w[j] -= f * Rat(h(i, j));
  }
}

// canonical representative of q modulo the lattice generated by the rows of
// gens (rational entries allowed)
inline RatVec reduce_mod_rat_lattice(RatVec q, const std::vector<RatVec>& gens) {
  if (gens.empty()) return q;
  Int den = 1;
  for (auto& g : gens)
    for (auto& x : g) den = lcm_int(den, denom(x));
  for (auto& x : q) den = lcm_int(den, denom(x));
  IntMat m(gens.size(), q.size());
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) m(i, j) = numer(gens[i][j] * Rat(den));
  IntMat h = hnf_basis(m);
  std::vector<Int> qi(q.size());
  for (size_t j = 0; j < q.size(); ++j) qi[j] = numer(q[j] * Rat(den));
  auto pivots = hnf_pivots(h);
  for (size_t i = 0; i < h.rows(); ++i) {
    Int pv = h(i, pivots[i]);
    Int f = qi[pivots[i]] / pv;
    if (qi[pivots[i]] % pv < 0) f -= 1;
    if (f == 0) continue;
    for (size_t j = 0; j < q.size(); ++j) qi[j] -= f * h(i, j);
  }
  RatVec out(q.size());
  for (size_t j = 0; j < q.size(); ++j) out[j] = Rat(qi[j], den);
  return out;
}

// saturation of the row span of an integer matrix within Z^cols; returns
// the canonical HNF basis and multiplies coeff by the signed index of the
// original rows inside the saturation
inline IntMat saturate_rows(const IntMat& rows, Int& coeff) {
  auto [u, dmat, v] = snf_with_transforms(rows);
  size_t r = rows.rows();
  Int index = 1;
  for (size_t i = 0; i < r; ++i) {
    if (dmat(i, i) == 0) throw std::logic_error("saturate_rows: rows are dependent");
    index *= dmat(i, i);
  }
  IntMat sat(r, rows.cols());
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < rows.cols(); ++j) sat(i, j) = v(i, j);
  auto [h, t, tsign] = hnf_with_transform(sat);
  (void)t;
  coeff *= sgn(det_bareiss(u)) * index * tsign;
  return h;
}

struct NormCell {
  RatVec base;
  std::vector<RatVec> dirs;
  Int coeff;
};

// Per-cell normalization in the coordinates of B (dimension nb), with grid
// denominator grid_d. Emits zero or more normalized cells.
//
// The normal form: integral directions form the HNF basis of the saturated
// lattice they span (with the signed index absorbed into the coefficient);
// fractional directions have zero entries at the integral pivots, content 1,
// canonical sign and order; the base has zero entries at the integral
// pivots and is reduced modulo the projection of Z^B.
inline void normalize_cell(size_t nb, RatVec q, std::vector<RatVec> dirs, Int coeff,
                           std::vector<NormCell>& out) {
  if (coeff == 0) return;
  if (rat_rank(dirs) < dirs.size()) return;  // degenerate: zero chain

  // partition into integral prefix and fractional suffix, tracking the sign
  // of the stable partition permutation
  while (true) {
    // stable partition into integral prefix and fractional suffix; each
    // integral direction jumps over the fractional ones seen before it
    std::vector<RatVec> integral, fractional;
    for (auto& v : dirs) {
      if (is_integral_vec(v)) {
        if (fractional.size() % 2 == 1) coeff = -coeff;
        integral.push_back(v);
      } else {
        fractional.push_back(v);
      }
    }

    if (integral.empty()) {
      dirs = std::move(fractional);
      break;
    }
    IntMat rows(integral.size(), nb);
    for (size_t i = 0; i < integral.size(); ++i)
      for (size_t j = 0; j < nb; ++j) rows(i, j) = numer(integral[i][j]);
    IntMat h = saturate_rows(rows, coeff);
    auto pivots = hnf_pivots(h);
    shear_reduce(q, h, pivots);
    bool new_integral = false;
    for (auto& w : fractional) {
      shear_reduce(w, h, pivots);
      if (is_integral_vec(w)) new_integral = true;
    }
    std::vector<RatVec> rebuilt;
    for (size_t i = 0; i < h.rows(); ++i) {
      RatVec row(nb);
      for (size_t j = 0; j < nb; ++j) row[j] = Rat(h(i, j));
      rebuilt.push_back(std::move(row));
    }
    for (auto& w : fractional) rebuilt.push_back(std::move(w));
    dirs = std::move(rebuilt);
    if (!new_integral) break;
    // otherwise repeat: the integral sublattice grew
  }

  // here the integral directions are an HNF prefix; locate them again
  size_t n_int = 0;
  while (n_int < dirs.size() && is_integral_vec(dirs[n_int])) ++n_int;

  // content splitting of fractional directions: w = m*u with u of content 1;
  // m = I*L + k with L the period of u splits the cell into I copies with
  // direction L*u (integral) and k translates with direction u
  for (size_t di = n_int; di < dirs.size(); ++di) {
    RatVec& w = dirs[di];
    Int den = 1;
    for (auto& x : w) den = lcm_int(den, denom(x));
    Int content = 0;
    for (auto& x : w) content = gcd_int(content, numer(x * Rat(den)));
    if (content <= 1) continue;
    RatVec u(w.size());
    for (size_t j = 0; j < w.size(); ++j) u[j] = w[j] / Rat(content);
    Int period = 1;
    for (auto& x : u) period = lcm_int(period, denom(x));
    Int copies = content / period;  // direction (period * u) repeats
    Int rest = content % period;
    if (copies > 0) {
      std::vector<RatVec> d2 = dirs;
      for (size_t j = 0; j < u.size(); ++j) d2[di][j] = Rat(period) * u[j];
      normalize_cell(nb, q, std::move(d2), coeff * copies, out);
    }
    for (Int i = 0; i < rest; ++i) {
      std::vector<RatVec> d2 = dirs;
      d2[di] = u;
      RatVec q2 = q;
      for (size_t j = 0; j < u.size(); ++j) q2[j] += Rat(i) * u[j];
      normalize_cell(nb, std::move(q2), std::move(d2), coeff, out);
    }
    return;  // the emitted cells re-enter the pipeline
  }

  // sign normalization of fractional directions: first nonzero entry > 0
  for (size_t di = n_int; di < dirs.size(); ++di) {
    RatVec& w = dirs[di];
    size_t j = 0;
    while (j < w.size() && w[j] == 0) ++j;
    if (j < w.size() && w[j] < 0) {
      for (size_t i = 0; i < q.size(); ++i) q[i] += w[i];
      for (auto& x : w) x = -x;
      coeff = -coeff;
    }
  }

  // sort the fractional suffix, tracking the permutation sign
  for (size_t i = n_int; i < dirs.size(); ++i)
    for (size_t j = i + 1; j < dirs.size(); ++j)
      if (compare_ratvec(dirs[j], dirs[i]) < 0) {
        std::swap(dirs[i], dirs[j]);
        coeff = -coeff;
      }

  // base reduction modulo the projection of Z^B along the integral span
  if (n_int > 0) {
    IntMat h(n_int, nb);
    for (size_t i = 0; i < n_int; ++i)
      for (size_t j = 0; j < nb; ++j) h(i, j) = numer(dirs[i][j]);
    auto pivots = hnf_pivots(h);
    shear_reduce(q, h, pivots);
    std::vector<RatVec> proj_gens;
    for (size_t i = 0; i < nb; ++i) {
      RatVec e(nb, Rat(0));
      e[i] = 1;
      shear_reduce(e, h, pivots);
      bool zero = true;
      for (auto& x : e)
        if (x != 0) zero = false;
      if (!zero) proj_gens.push_back(std::move(e));
    }
    q = reduce_mod_rat_lattice(std::move(q), proj_gens);
  } else {
    for (auto& x : q) x = mod1(x);
  }

  out.push_back(NormCell{std::move(q), std::move(dirs), std::move(coeff)});
}

}  // namespace chaindetail

// formal Z-linear combination of canonical cells
class CubeChain {
 public:
  CubeChain() = default;
  explicit CubeChain(long n) : n_(n) {}

  long n() const { return n_; }
  const std::map<CellKey, Int>& cells() const { return cells_; }
  bool is_zero() const { return cells_.empty(); }
  size_t size() const { return cells_.size(); }

  static CubeChain zero(long n) { return CubeChain(n); }

  friend CubeChain operator+(const CubeChain& a, const CubeChain& b) {
    CubeChain out = a;
    for (auto& [k, c] : b.cells_) out.accumulate(k, c);
    out.fold_cycles();
    return out;
  }
  friend CubeChain operator-(const CubeChain& a, const CubeChain& b) {
    CubeChain out = a;
    for (auto& [k, c] : b.cells_) out.accumulate(k, -c);
    out.fold_cycles();
    return out;
  }
  friend CubeChain operator*(const Int& s, const CubeChain& a) {
    if (s == 0) return CubeChain(a.n_);
    CubeChain out(a.n_);
    for (auto& [k, c] : a.cells_) out.cells_[k] = s * c;
    return out;
  }
  friend bool operator==(const CubeChain& a, const CubeChain& b) { return (a - b).is_zero(); }

  // normalizes and adds one raw cell
  void add_raw(const chaindetail::RawCell& raw, const Int& coeff) {
    if (coeff == 0) return;
    chaindetail::BCoords bc{n_, raw.members};
    RatVec q = bc.restrict_vec(raw.base);
    std::vector<RatVec> dirs;
    for (auto& d : raw.dirs) dirs.push_back(bc.restrict_vec(d));
    std::vector<chaindetail::NormCell> normed;
    chaindetail::normalize_cell(raw.members.size(), std::move(q), std::move(dirs), coeff, normed);
    for (auto& nc : normed) {
      CellKey key;
      key.full = raw.full;
      key.mask = raw.mask;
      key.base = bc.embed_vec(nc.base);
      for (auto& d : nc.dirs) key.dirs.push_back(bc.embed_vec(d));
      accumulate(key, nc.coeff);
    }
  }

  // accumulates an already-canonical chain without folding; callers settle once
  void add_scaled(const CubeChain& other, const Int& s) {
    if (s == 0) return;
    for (auto& [k, c] : other.cells_) accumulate(k, s * c);
  }

  void settle() { fold_cycles(); }

 private:
  void accumulate(const CellKey& k, const Int& c) {
    if (c == 0) return;
    auto it = cells_.find(k);
    if (it == cells_.end()) {
      cells_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second == 0) cells_.erase(it);
    }
  }

  // Cycle folding: a complete family of period-many translates of a cell
  // along one of its fractional directions concatenates into a single cell
  // whose direction is integral. Runs to a fixpoint. Cells sharing the same
  // simplex factor and direction tuple are contiguous in the map, so each
  // pass walks the groups once; partner bases are probed with a light
  // canonical shift instead of a full normalization.
  void fold_cycles() {
    for (int guard = 0; guard < 1000000; ++guard) {
      if (!fold_once()) return;
    }
    throw std::logic_error("fold_cycles: did not stabilize");
  }

  struct GroupCtx {
    std::vector<long> members;
    std::vector<RatVec> dirs_b;      // restricted directions
    bool has_integral = false;
    IntMat h;                        // integral prefix rows
    std::vector<size_t> pivots;
    std::vector<RatVec> proj_gens;   // projection of Z^B along the integral span
  };

  GroupCtx make_ctx(const CellKey& key) const {
    GroupCtx ctx;
    for (long k = 1; k <= n_; ++k)
      if (key.full || ((key.mask >> (k - 1)) & 1)) ctx.members.push_back(k);
    chaindetail::BCoords bc{n_, ctx.members};
    for (auto& d : key.dirs) ctx.dirs_b.push_back(bc.restrict_vec(d));
    size_t n_int = 0;
    while (n_int < ctx.dirs_b.size() && is_integral_vec(ctx.dirs_b[n_int])) ++n_int;
    size_t nb = ctx.members.size();
    if (n_int > 0) {
      ctx.has_integral = true;
      ctx.h = IntMat(n_int, nb);
      for (size_t i = 0; i < n_int; ++i)
        for (size_t j = 0; j < nb; ++j) ctx.h(i, j) = numer(ctx.dirs_b[i][j]);
      ctx.pivots = chaindetail::hnf_pivots(ctx.h);
      for (size_t i = 0; i < nb; ++i) {
        RatVec e(nb, Rat(0));
        e[i] = 1;
        chaindetail::shear_reduce(e, ctx.h, ctx.pivots);
        bool zero = true;
        for (auto& x : e)
          if (x != 0) zero = false;
        if (!zero) ctx.proj_gens.push_back(std::move(e));
      }
    }
    return ctx;
  }

  // canonical base of q (restricted coords) under the group's reduction
  RatVec canon_base(const GroupCtx& ctx, RatVec q) const {
    if (ctx.has_integral) {
      chaindetail::shear_reduce(q, ctx.h, ctx.pivots);
      return chaindetail::reduce_mod_rat_lattice(std::move(q), ctx.proj_gens);
    }
    for (auto& x : q) x = mod1(x);
    return q;
  }

  bool fold_once() {
    auto group_begin = cells_.begin();
    while (group_begin != cells_.end()) {
      auto group_end = group_begin;
      while (group_end != cells_.end() && group_end->first.full == group_begin->first.full &&
             group_end->first.mask == group_begin->first.mask &&
             group_end->first.dirs == group_begin->first.dirs)
        ++group_end;
      if (try_fold_group(group_begin, group_end)) return true;
      group_begin = group_end;
    }
    return false;
  }

  bool try_fold_group(std::map<CellKey, Int>::iterator gb, std::map<CellKey, Int>::iterator ge) {
    const CellKey key0 = gb->first;  // copied: folding erases map nodes
    size_t group_size = 0;
    for (auto it = gb; it != ge; ++it) ++group_size;
    GroupCtx ctx;
    bool ctx_built = false;
    for (size_t di = 0; di < key0.dirs.size(); ++di) {
      if (is_integral_vec(key0.dirs[di])) continue;
      if (!ctx_built) {
        ctx = make_ctx(key0);
        ctx_built = true;
      }
      const RatVec& u = ctx.dirs_b[di];
      Int period = 1;
      for (auto& x : u) period = lcm_int(period, denom(x));
      if (period < 2 || Int(group_size) < period) continue;
      chaindetail::BCoords bc{n_, ctx.members};
      for (auto it = gb; it != ge; ++it) {
        // try to anchor a complete cycle at this member
        RatVec q = bc.restrict_vec(it->first.base);
        std::vector<std::map<CellKey, Int>::iterator> family{it};
        Int fold_amount = it->second;
        bool complete = true;
        for (Int i = 1; i < period && complete; ++i) {
          RatVec qi = q;
          for (size_t j = 0; j < u.size(); ++j) qi[j] += Rat(i) * u[j];
          CellKey ki;
          ki.full = key0.full;
          ki.mask = key0.mask;
          ki.dirs = key0.dirs;
          ki.base = bc.embed_vec(canon_base(ctx, std::move(qi)));
          auto fit = cells_.find(ki);
          if (fit == cells_.end()) {
            complete = false;
            break;
          }
          for (auto prev : family)
            if (prev == fit) {  // early-wrapping family, leave unfolded
              complete = false;
              break;
            }
          if (!complete) break;
          if (sgn(fit->second) != sgn(fold_amount)) {
            complete = false;
            break;
          }
          if (abs_int(fit->second) < abs_int(fold_amount)) fold_amount = fit->second;
          family.push_back(fit);
        }
        if (!complete || fold_amount == 0) continue;
        for (auto fit : family) fit->second -= fold_amount;
        for (auto fit : family)
          if (fit->second == 0) cells_.erase(fit);
        std::vector<RatVec> d2 = ctx.dirs_b;
        for (size_t j = 0; j < u.size(); ++j) d2[di][j] = Rat(period) * u[j];
        std::vector<chaindetail::NormCell> normed;
        chaindetail::normalize_cell(ctx.members.size(), q, std::move(d2), fold_amount, normed);
        for (auto& nc : normed) {
          CellKey k2;
          k2.full = key0.full;
          k2.mask = key0.mask;
          k2.base = bc.embed_vec(nc.base);
          for (auto& d : nc.dirs) k2.dirs.push_back(bc.embed_vec(d));
          accumulate(k2, nc.coeff);
        }
        return true;
      }
    }
    return false;
  }

  long n_ = 0;
  std::map<CellKey, Int> cells_;
};

}  // namespace cyclemono
