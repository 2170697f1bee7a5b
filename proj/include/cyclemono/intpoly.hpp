#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclemono/ints.hpp"

namespace cyclemono {

// Dense polynomial over Z, coefficients lowest degree first.
// The zero polynomial has an empty coefficient vector.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
  static IntPoly constant(Int v) {
    if (v == 0) return IntPoly();
    return IntPoly({std::move(v)});
  }
  static IntPoly monomial(size_t deg, Int v = 1) {
    std::vector<Int> c(deg + 1, Int(0));
    c[deg] = std::move(v);
    return IntPoly(std::move(c));
  }
  // t^n - 1
  static IntPoly tn_minus_1(size_t n) {
    std::vector<Int> c(n + 1, Int(0));
    c[0] = -1;
    c[n] = 1;
    return IntPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  // degree of the zero polynomial is -1 by convention
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& operator[](size_t i) const {
    static const Int zero(0);
    return i < c_.size() ? c_[i] : zero;
  }
  const Int& leading() const {
    if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPoly(std::move(c));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return IntPoly(std::move(c));
  }
  IntPoly operator-() const {
    std::vector<Int> c(c_);
    for (auto& x : c) x = -x;
    return IntPoly(std::move(c));
  }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    std::vector<Int> c(a.c_.size() + b.c_.size() - 1, Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return IntPoly(std::move(c));
  }
  friend IntPoly operator*(const Int& s, const IntPoly& a) {
    if (s == 0) return IntPoly();
    std::vector<Int> c(a.c_);
    for (auto& x : c) x *= s;
    return IntPoly(std::move(c));
  }

  IntPoly pow(unsigned long k) const {
    IntPoly r = IntPoly::constant(1);
    IntPoly base = *this;
    while (k) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  // quotient and remainder for division by a polynomial with unit leading
  // coefficient (+-1); general leading coefficients are not needed here
  std::pair<IntPoly, IntPoly> divmod(const IntPoly& b) const {
    if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (b.leading() != 1 && b.leading() != -1)
      throw std::invalid_argument("divmod requires unit leading coefficient");
    std::vector<Int> rem(c_);
    long db = b.degree();
    std::vector<Int> quo;
    if (static_cast<long>(rem.size()) - 1 >= db)
      quo.assign(rem.size() - db, Int(0));
    for (long i = static_cast<long>(rem.size()) - 1; i >= db; --i) {
      if (rem[i] == 0) continue;
      Int q = rem[i] / b.leading();
      quo[i - db] = q;
      for (long j = 0; j <= db; ++j) rem[i - db + j] -= q * b.c_[j];
    }
    return {IntPoly(std::move(quo)), IntPoly(std::move(rem))};
  }

  Int eval(const Int& x) const {
    Int r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  std::string pretty() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
      const Int& a = c_[i];
      if (a == 0) continue;
      Int mag = abs_int(a);
      if (first) {
        if (a < 0) os << "-";
        first = false;
      } else {
        os << (a < 0 ? " - " : " + ");
      }
      if (mag != 1 || i == 0) os << mag.str();
      if (i >= 1) {
        if (mag != 1) os << "*";
        os << "t";
        if (i >= 2) os << "^" << i;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Int> c_;
};

struct NotDivisible : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotCyclotomicProduct : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline IntPoly mul(const IntPoly& a, const IntPoly& b) { return a * b; }

inline IntPoly div_exact(const IntPoly& a, const IntPoly& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero()) throw NotDivisible("not divisible: " + a.pretty() + " by " + b.pretty());
  return q;
}

inline IntPoly pow(const IntPoly& a, unsigned long k) { return a.pow(k); }

// m-th cyclotomic polynomial, by Phi_m = (t^m - 1) / prod_{e|m, e<m} Phi_e
inline const IntPoly& cyclotomic(long m) {
  if (m < 1) throw std::invalid_argument("cyclotomic: m must be >= 1");
  static std::map<long, IntPoly> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  IntPoly p = IntPoly::tn_minus_1(static_cast<size_t>(m));
  for (long e : divisors(m)) {
    if (e == m) continue;
    p = div_exact(p, cyclotomic(e));
  }
  return cache.emplace(m, std::move(p)).first->second;
}

// exponents e_m >= 1 with p = prod Phi_m^{e_m}; throws NotCyclotomicProduct
// if a non-cyclotomic factor remains
inline std::map<long, int> factor_into_cyclotomics(const IntPoly& p) {
  if (p.is_zero() || !p.is_monic())
    throw std::invalid_argument("factor_into_cyclotomics: need monic nonzero polynomial");
  std::map<long, int> out;
  IntPoly rest = p;
  // any root of unity of order m dividing p forces phi(m) <= deg(p)
  for (long m = 1; rest.degree() > 0; ++m) {
    if (euler_phi(m) > rest.degree()) {
      bool any_left = false;
      for (long k = m + 1; k <= 2 * rest.degree() * rest.degree() + 1; ++k) {
        if (euler_phi(k) <= rest.degree()) {
          any_left = true;
          m = k - 1;
          break;
        }
      }
      if (!any_left) break;
      continue;
    }
    const IntPoly& phi = cyclotomic(m);
    while (true) {
      auto [q, r] = rest.divmod(phi);
      if (!r.is_zero()) break;
      rest = q;
      ++out[m];
    }
  }
  if (!rest.is_one()) throw NotCyclotomicProduct("not a product of cyclotomics: remainder " + rest.pretty());
  return out;
}

inline bool is_cyclotomic_product(const IntPoly& p) {
  try {
    factor_into_cyclotomics(p);
    return true;
  } catch (const NotCyclotomicProduct&) {
    return false;
  }
}

// the unique chain p_l | ... | p_1 with product p, each p_i monic with
// simple zeros and p_l != 1: p_i = prod over {m : e_m >= i} of Phi_m
inline std::vector<IntPoly> divisor_chain_decomposition(const IntPoly& p) {
  auto e = factor_into_cyclotomics(p);
  int emax = 0;
  for (auto& [m, mult] : e) emax = std::max(emax, mult);
  std::vector<IntPoly> chain;
  for (int i = 1; i <= emax; ++i) {
    IntPoly pi = IntPoly::constant(1);
    for (auto& [m, mult] : e)
      if (mult >= i) pi = pi * cyclotomic(m);
    chain.push_back(std::move(pi));
  }
  return chain;
}

}  // namespace cyclemono
