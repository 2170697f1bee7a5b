#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cyclemono/intpoly.hpp"

using namespace cyclemono;

namespace {

IntPoly from_ints(std::initializer_list<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.emplace_back(c);
  return IntPoly(std::move(v));
}

}  // namespace

TEST_CASE("cyclotomic polynomials, small cases") {
  CHECK(cyclotomic(1) == from_ints({-1, 1}));
  CHECK(cyclotomic(2) == from_ints({1, 1}));
  CHECK(cyclotomic(3) == from_ints({1, 1, 1}));
  CHECK(cyclotomic(6) == from_ints({1, -1, 1}));
  CHECK(cyclotomic(12) == from_ints({1, 0, -1, 0, 1}));
  CHECK_THROWS_AS(cyclotomic(0), std::invalid_argument);
}

TEST_CASE("product of cyclotomics over divisors of 12 is t^12 - 1") {
  IntPoly prod = IntPoly::constant(1);
  for (long e : divisors(12)) prod = prod * cyclotomic(e);
  CHECK(prod == IntPoly::tn_minus_1(12));
}

TEST_CASE("ring arithmetic: mul, div_exact, pow") {
  IntPoly t3m1 = IntPoly::tn_minus_1(3);
  CHECK(div_exact(t3m1, from_ints({-1, 1})) == from_ints({1, 1, 1}));
  CHECK(mul(from_ints({-1, 1}), from_ints({1, 1})) == from_ints({-1, 0, 1}));
  CHECK(pow(t3m1, 2) == from_ints({1, 0, 0, -2, 0, 0, 1}));
  CHECK_THROWS_AS(div_exact(from_ints({1, 1}), from_ints({-1, 1})), NotDivisible);
  // div_exact(mul(a,b), b) == a
  IntPoly a = from_ints({2, -3, 0, 5});
  IntPoly b = from_ints({7, 0, 1});
  CHECK(div_exact(mul(a, b), b) == a);
}

TEST_CASE("factor_into_cyclotomics") {
  SECTION("t^5 - 1") {
    auto f = factor_into_cyclotomics(IntPoly::tn_minus_1(5));
    REQUIRE(f.size() == 2);
    CHECK(f.at(1) == 1);
    CHECK(f.at(5) == 1);
  }
  SECTION("(t^3-1)^2 (t^2+t+1)") {
    IntPoly p = pow(IntPoly::tn_minus_1(3), 2) * from_ints({1, 1, 1});
    auto f = factor_into_cyclotomics(p);
    REQUIRE(f.size() == 2);
    CHECK(f.at(1) == 2);
    CHECK(f.at(3) == 3);
  }
  SECTION("t^2 + 2 is rejected") {
    CHECK_THROWS_AS(factor_into_cyclotomics(from_ints({2, 0, 1})), NotCyclotomicProduct);
  }
  SECTION("t^2 - 2t + 1 = (t-1)^2") {
    auto f = factor_into_cyclotomics(from_ints({1, -2, 1}));
    CHECK(f.at(1) == 2);
  }
}

TEST_CASE("divisor_chain_decomposition") {
  SECTION("(t^5-1)(t-1)") {
    auto chain = divisor_chain_decomposition(IntPoly::tn_minus_1(5) * from_ints({-1, 1}));
    REQUIRE(chain.size() == 2);
    CHECK(chain[0] == IntPoly::tn_minus_1(5));
    CHECK(chain[1] == from_ints({-1, 1}));
  }
  SECTION("(t^3-1)^2 (t^2+t+1)") {
    IntPoly p = pow(IntPoly::tn_minus_1(3), 2) * from_ints({1, 1, 1});
    auto chain = divisor_chain_decomposition(p);
    REQUIRE(chain.size() == 3);
    CHECK(chain[0] == IntPoly::tn_minus_1(3));
    CHECK(chain[1] == IntPoly::tn_minus_1(3));
    CHECK(chain[2] == from_ints({1, 1, 1}));
  }
  SECTION("t - 1") {
    auto chain = divisor_chain_decomposition(from_ints({-1, 1}));
    REQUIRE(chain.size() == 1);
    CHECK(chain[0] == from_ints({-1, 1}));
  }
}

TEST_CASE("divisor chain properties on random cyclotomic products") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 30; ++trial) {
    std::map<long, int> exps;
    long total_deg = 0;
    while (true) {
      long m = 1 + static_cast<long>(rng() % 30);
      int e = 1 + static_cast<int>(rng() % 3);
      if (total_deg + euler_phi(m) * e > 200) break;
      exps[m] += e;
      total_deg += euler_phi(m) * e;
      if (rng() % 4 == 0) break;
    }
    IntPoly p = IntPoly::constant(1);
    for (auto& [m, e] : exps) p = p * pow(cyclotomic(m), static_cast<unsigned long>(e));

    // factorization round-trips on the exponent multiset
    CHECK(factor_into_cyclotomics(p) == exps);

    auto chain = divisor_chain_decomposition(p);
    REQUIRE(!chain.empty());
    // product of the chain is p
    IntPoly prod = IntPoly::constant(1);
    for (auto& q : chain) prod = prod * q;
    CHECK(prod == p);
    // successive divisibility p_{i+1} | p_i and p_l != 1
    for (size_t i = 0; i + 1 < chain.size(); ++i)
      CHECK_NOTHROW(div_exact(chain[i], chain[i + 1]));
    CHECK(!chain.back().is_one());
    // p_1 has simple zeros
    for (auto& [m, e] : factor_into_cyclotomics(chain[0])) {
      (void)m;
      CHECK(e == 1);
    }
  }
}

TEST_CASE("pretty printing") {
  CHECK(IntPoly::tn_minus_1(5).pretty() == "t^5 - 1");
  CHECK(from_ints({1, 1, 1}).pretty() == "t^2 + t + 1");
  CHECK(from_ints({0, -2}).pretty() == "-2*t");
  CHECK(IntPoly().pretty() == "0");
}
