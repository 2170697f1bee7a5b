#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclemono {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int r = a % b;
    a = b;
    b = r;
  }
  return a;
}

inline Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs_int(a / gcd_int(a, b) * b);
}

// sign in {-1,0,1}
inline int sgn(const Int& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }

inline Int numer(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denom(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return denom(r) == 1; }

// floor of a rational as an Int
inline Int rat_floor(const Rat& r) {
  Int n = numer(r), d = denom(r);
  Int q = n / d;
  if (n % d != 0 && (n < 0) != (d < 0)) q -= 1;
  return q;
}

// canonical representative of r mod 1 in [0,1)
inline Rat mod1(const Rat& r) { return r - Rat(rat_floor(r)); }

inline long to_long(const Int& a) { return static_cast<long>(a); }

// prime factorization of a machine-size positive integer by trial division
inline std::vector<std::pair<long, int>> factorize(long m) {
  if (m <= 0) throw std::invalid_argument("factorize: need positive argument");
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

inline long euler_phi(long m) {
  long phi = 1;
  for (auto [p, e] : factorize(m)) {
    long pe = 1;
    for (int i = 1; i < e; ++i) pe *= p;
    phi *= pe * (p - 1);
  }
  return phi;
}

// all positive divisors, ascending
inline std::vector<long> divisors(long m) {
  std::vector<long> out{1};
  for (auto [p, e] : factorize(m)) {
    size_t upto = out.size();
    long pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (size_t k = 0; k < upto; ++k) out.push_back(out[k] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

// deterministic Miller-Rabin for 64-bit inputs
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

// descending sequence of distinct primes just below 2^62
inline std::uint64_t nth_crt_prime(size_t i) {
  static std::vector<std::uint64_t> primes;
  static std::uint64_t cursor = (1ull << 62) - 1;
  while (primes.size() <= i) {
    while (!detail::is_prime_u64(cursor)) --cursor;
    primes.push_back(cursor);
    --cursor;
  }
  return primes[i];
}

}  // namespace cyclemono
