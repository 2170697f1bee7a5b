#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cyclemono/latpair.hpp"
#include "cyclemono/loblock.hpp"

using namespace cyclemono;

namespace {

IntPoly from_ints(std::initializer_list<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.emplace_back(c);
  return IntPoly(std::move(v));
}

IntMat random_unimodular(std::mt19937& rng, size_t n, int ops = 10) {
  IntMat m = IntMat::identity(n);
  std::uniform_int_distribution<long> coef(-2, 2);
  std::uniform_int_distribution<size_t> pick(0, n - 1);
  for (int k = 0; k < ops; ++k) {
    size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    long c = coef(rng);
    for (size_t col = 0; col < n; ++col) m(i, col) += c * m(j, col);
  }
  return m;
}

}  // namespace

TEST_CASE("orlik_block") {
  SECTION("t - 1") {
    LatticePair p = orlik_block(from_ints({-1, 1}));
    CHECK(p.rank() == 1);
    CHECK(p.matrix()(0, 0) == 1);
    CHECK(p.order() == 1);
  }
  SECTION("t^5 - 1 is a 5-cycle") {
    LatticePair p = orlik_block(IntPoly::tn_minus_1(5));
    CHECK(p.rank() == 5);
    CHECK(p.order() == 5);
    for (size_t i = 0; i + 1 < 5; ++i) CHECK(p.matrix()(i + 1, i) == 1);
    CHECK(p.matrix()(0, 4) == 1);
    CHECK(p.char_poly() == IntPoly::tn_minus_1(5));
  }
  SECTION("t^2 + t + 1") {
    LatticePair p = orlik_block(from_ints({1, 1, 1}));
    CHECK(p.matrix()(0, 0) == 0);
    CHECK(p.matrix()(0, 1) == -1);
    CHECK(p.matrix()(1, 0) == 1);
    CHECK(p.matrix()(1, 1) == -1);
    CHECK(p.order() == 3);
    CHECK(p.matrix().pow(3) == IntMat::identity(2));
  }
  SECTION("repeated zeros rejected") {
    CHECK_THROWS_AS(orlik_block(from_ints({1, -2, 1})), std::invalid_argument);
  }
}

TEST_CASE("direct_sum") {
  LatticePair two_ones = direct_sum({orlik_block(from_ints({-1, 1})), orlik_block(from_ints({-1, 1}))});
  CHECK(two_ones.matrix() == IntMat::identity(2));

  LatticePair s = direct_sum({orlik_block(IntPoly::tn_minus_1(5)), orlik_block(from_ints({-1, 1}))});
  CHECK(s.rank() == 6);
  CHECK(s.char_poly() == IntPoly::tn_minus_1(5) * from_ints({-1, 1}));
  CHECK(s.order() == 5);

  LatticePair empty = direct_sum({});
  CHECK(empty.rank() == 0);
  CHECK(empty.char_poly() == IntPoly::constant(1));
}

TEST_CASE("char_poly of direct sums multiplies") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<LatticePair> parts;
    IntPoly prod = IntPoly::constant(1);
    for (int k = 0; k < 3; ++k) {
      long m = 1 + static_cast<long>(rng() % 6);
      IntPoly p = IntPoly::tn_minus_1(static_cast<size_t>(m));
      parts.push_back(orlik_block(p));
      prod = prod * p;
    }
    CHECK(char_poly(direct_sum(parts)) == prod);
  }
}

TEST_CASE("orlik_block order is the lcm of cyclotomic indices") {
  IntPoly p = cyclotomic(4) * cyclotomic(6);
  CHECK(orlik_block(p).order() == 12);
  CHECK(orlik_block(IntPoly::tn_minus_1(6)).order() == 6);
}

TEST_CASE("snf_invariants") {
  std::vector<Int> ones6(6, Int(1));
  IntPoly sum6(std::move(ones6));
  auto s1 = snf_invariants(lo_block(6, 2).pair, sum6);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0] == 2);
  auto s2 = snf_invariants(lo_block(6, 3).pair, sum6);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0] == 3);
  CHECK(snf_invariants(orlik_block(from_ints({-1, 1})), from_ints({-1, 1})).empty());
}

TEST_CASE("snf_invariants are conjugation invariant") {
  std::mt19937 rng(77);
  LatticePair base = lo_block(6, 4).pair;
  std::vector<Int> ones(6, Int(1));
  IntPoly q(std::move(ones));
  auto ref = snf_invariants(base, q);
  for (int trial = 0; trial < 8; ++trial) {
    IntMat u = random_unimodular(rng, 6);
    LatticePair conj(u * base.matrix() * inverse_unimodular(u));
    CHECK(snf_invariants(conj, q) == ref);
  }
}

TEST_CASE("verify_witness") {
  LatticePair or5 = orlik_block(IntPoly::tn_minus_1(5));
  SECTION("identity on equal pairs") {
    IsomorphismWitness id{IntMat::identity(5)};
    CHECK(verify_witness(or5, or5, id));
  }
  SECTION("identity fails between distinct pairs") {
    std::vector<LatticePair> ones(5, orlik_block(from_ints({-1, 1})));
    LatticePair sum = direct_sum(ones);
    IsomorphismWitness id{IntMat::identity(5)};
    CHECK(!verify_witness(or5, sum, id));
  }
  SECTION("rank mismatch throws") {
    LatticePair r1 = orlik_block(from_ints({-1, 1}));
    IsomorphismWitness id{IntMat::identity(1)};
    CHECK_THROWS_AS(verify_witness(or5, r1, id), std::invalid_argument);
  }
  SECTION("witness composition") {
    std::mt19937 rng(11);
    IntMat u = random_unimodular(rng, 5);
    IntMat v = random_unimodular(rng, 5);
    LatticePair b(u * or5.matrix() * inverse_unimodular(u));
    LatticePair c(v * b.matrix() * inverse_unimodular(v));
    IsomorphismWitness w1{u}, w2{v};
    CHECK(verify_witness(or5, b, w1));
    CHECK(verify_witness(b, c, w2));
    IsomorphismWitness w3{v * u};
    CHECK(verify_witness(or5, c, w3));
  }
}

TEST_CASE("find_generating_element") {
  SECTION("companion basis vector") {
    auto res = find_generating_element(orlik_block(IntPoly::tn_minus_1(5)));
    REQUIRE(res.element.has_value());
    CHECK((*res.element)[0] == 1);
  }
  SECTION("found after conjugation") {
    LatticePair or3 = orlik_block(IntPoly::tn_minus_1(3));
    std::vector<std::vector<std::vector<long>>> shears = {
        {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}},
        {{1, 0, 0}, {1, 1, 0}, {0, 1, 1}},
        {{1, 0, -1}, {0, 1, 1}, {0, 0, 1}},
        {{1, -1, 0}, {0, 1, -1}, {1, 0, 0}},
    };
    for (auto& rows : shears) {
      IntMat u(3, 3);
      for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) u(i, j) = rows[i][j];
      REQUIRE(abs_int(det_bareiss(u)) == 1);
      LatticePair conj(u * or3.matrix() * inverse_unimodular(u));
      auto res = find_generating_element(conj);
      REQUIRE(res.element.has_value());
      // the found element really generates
      std::vector<std::vector<Int>> cols{*res.element};
      for (int j = 1; j < 3; ++j) cols.push_back(conj.matrix().apply(cols.back()));
      Int d = det_bareiss(IntMat::from_columns(cols));
      CHECK((d == 1 || d == -1));
    }
  }
  SECTION("repeated zeros violate the precondition") {
    LatticePair id2(IntMat::identity(2));
    CHECK_THROWS_AS(find_generating_element(id2), std::invalid_argument);
  }
  SECTION("budget exhaustion is reported, distinct from impossibility") {
    LatticePair or6 = orlik_block(cyclotomic(4) * cyclotomic(6) * cyclotomic(1));
    auto res = find_generating_element(or6, 0);
    CHECK(res.budget_exhausted);
    CHECK(!res.element.has_value());
    CHECK(res.candidates_tried == 0);
    // with budget the same pair succeeds
    CHECK(find_generating_element(or6).element.has_value());
  }
}

TEST_CASE("non-unimodular matrices are rejected") {
  IntMat m(2, 2);
  m(0, 0) = 2;
  m(1, 1) = 1;
  CHECK_THROWS_AS(LatticePair(m), std::invalid_argument);
}

TEST_CASE("infinite order is rejected") {
  IntMat m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 1;
  m(1, 1) = 1;  // unipotent shear
  LatticePair p(m);
  CHECK_THROWS_AS(p.order(), std::invalid_argument);
}
