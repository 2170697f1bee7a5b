#pragma once

#include <vector>

#include "cyclemono/cyclecomb.hpp"
#include "cyclemono/intpoly.hpp"

namespace cyclemono {

struct SingularityInvariants {
  Exponents e;
  Int d;                 // prod a_j - (-1)^n
  Int mu;                // prod a_j
  std::vector<Int> v;    // weight numerators v_1..v_n (w_j = v_j / d)
  Int g;                 // gcd(v_1, d)
  Int b;                 // d / g
  IntPoly charpoly;      // (t^b - 1)^g (t-1)^{(-1)^n}
};

// v_j = sum_{l=1}^{n} (-1)^{l-1} prod_{k=j+l}^{j+n-1} a_{(k) mod n}
inline SingularityInvariants invariants(const Exponents& e) {
  long n = e.n;
  Int mu = 1;
  for (long x : e.a) mu *= x;
  Int d = mu - (n % 2 == 0 ? 1 : -1);
  std::vector<Int> v(n);
  for (long j = 1; j <= n; ++j) {
    Int vj = 0;
    for (long l = 1; l <= n; ++l) {
      Int prod = 1;
      for (long k = j + l; k <= j + n - 1; ++k) prod *= e.at(k);
      vj += (l % 2 == 1) ? prod : -prod;
    }
    v[j - 1] = vj;
  }
  // the weights solve the circulant system a_j v_j + v_{j+1} = d uniquely
  for (long j = 1; j <= n; ++j) {
    if (Int(e.at(j)) * v[j - 1] + v[j % n] != d)
      throw std::logic_error("invariants: weight system cross-check failed");
    if (v[j - 1] <= 0 || v[j - 1] >= d) throw std::logic_error("invariants: weight out of (0,1)");
  }
  Int g = gcd_int(v[0], d);
  for (long j = 2; j <= n; ++j)
    if (gcd_int(v[j - 1], d) != g) throw std::logic_error("invariants: gcd(v_j, d) not constant");
  Int b = d / g;
  IntPoly charpoly = IntPoly::tn_minus_1(static_cast<size_t>(to_long(b))).pow(static_cast<unsigned long>(to_long(g)));
  IntPoly tm1({Int(-1), Int(1)});
  if (n % 2 == 0)
    charpoly = charpoly * tm1;
  else
    charpoly = div_exact(charpoly, tm1);
  if (charpoly.degree() != to_long(mu)) throw std::logic_error("invariants: charpoly degree != mu");
  return SingularityInvariants{e, std::move(d), std::move(mu), std::move(v), std::move(g), std::move(b),
                               std::move(charpoly)};
}

// Block list of the standard decomposition: for odd n
// (g-1) * Or(t^b-1) + Or((t^b-1)/(t-1)), for even n g * Or(t^b-1) + Or(t-1).
// Checked against the divisor chain of the characteristic polynomial.
inline std::vector<std::pair<long, IntPoly>> predicted_decomposition(const SingularityInvariants& inv) {
  long g = to_long(inv.g);
  size_t b = static_cast<size_t>(to_long(inv.b));
  IntPoly tbm1 = IntPoly::tn_minus_1(b);
  IntPoly tm1({Int(-1), Int(1)});
  std::vector<std::pair<long, IntPoly>> out;
  if (inv.e.n % 2 == 1) {
    if (g - 1 > 0) out.emplace_back(g - 1, tbm1);
    out.emplace_back(1, div_exact(tbm1, tm1));
  } else {
    out.emplace_back(g, tbm1);
    out.emplace_back(1, tm1);
  }
  // standardness: the flattened list is the divisor chain of the char poly
  std::vector<IntPoly> flat;
  for (auto& [m, p] : out)
    for (long i = 0; i < m; ++i) flat.push_back(p);
  auto chain = divisor_chain_decomposition(inv.charpoly);
  if (flat != chain) throw std::logic_error("predicted_decomposition: does not match the divisor chain");
  return out;
}

}  // namespace cyclemono
