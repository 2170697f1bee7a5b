#include <catch2/catch_amalgamated.hpp>

#include "cyclemono/monodromy.hpp"

using namespace cyclemono;

TEST_CASE("build_monodromy for the worked examples") {
  SECTION("(2,3): rank 6, c = -1") {
    auto model = build_monodromy(invariants(Exponents({2, 3})));
    CHECK(model.hmon.rank() == 6);
    CHECK(model.v1 == 2);
    CHECK(model.c == -1);
    CHECK(model.hmon.char_poly() == IntPoly::tn_minus_1(5) * IntPoly({Int(-1), Int(1)}));
    // h delta_3 = delta_5 = c*gamma - sum_{j<5} delta_j
    IntMat h = model.hmon.matrix();
    std::vector<Int> col;
    for (size_t i = 0; i < 6; ++i) col.push_back(h(i, 2));
    CHECK(col == std::vector<Int>{-1, -1, -1, -1, -1, 0});
    CHECK(h(4, 4) == 1);  // gamma fixed
    CHECK(h(5, 5) == 1);  // beta fixed
  }
  SECTION("(1,1,1): matrix [-1]") {
    auto model = build_monodromy(invariants(Exponents({1, 1, 1})));
    CHECK(model.hmon.rank() == 1);
    CHECK(model.hmon.matrix()(0, 0) == -1);
    CHECK(model.hmon.char_poly() == IntPoly({Int(1), Int(1)}));
  }
  SECTION("order equals b") {
    for (auto exps : std::vector<std::vector<long>>{{2, 3}, {2, 2, 2}, {3, 4}, {2, 3, 2}}) {
      auto inv = invariants(Exponents(exps));
      auto model = build_monodromy(inv);
      CHECK(model.hmon.order() == to_long(inv.b));
    }
  }
}

TEST_CASE("verify_theorem13 on the worked examples") {
  SECTION("(2,3): Or(t^5-1) + Or(t-1)") {
    auto model = build_monodromy(invariants(Exponents({2, 3})));
    auto res = verify_theorem13(model);
    CHECK(res.target ==
          direct_sum({orlik_block(IntPoly::tn_minus_1(5)), orlik_block(IntPoly({Int(-1), Int(1)}))}));
    CHECK(verify_witness(model.hmon, res.target, res.witness));
  }
  SECTION("(2,2,2): 2 Or(t^3-1) + Or(t^2+t+1)") {
    auto model = build_monodromy(invariants(Exponents({2, 2, 2})));
    auto res = verify_theorem13(model);
    CHECK(res.target == direct_sum({orlik_block(IntPoly::tn_minus_1(3)),
                                    orlik_block(IntPoly::tn_minus_1(3)),
                                    orlik_block(IntPoly({Int(1), Int(1), Int(1)}))}));
  }
  SECTION("(1,1,1): Or(t+1)") {
    auto model = build_monodromy(invariants(Exponents({1, 1, 1})));
    auto res = verify_theorem13(model);
    CHECK(res.target.matrix()(0, 0) == -1);
    CHECK(abs_int(res.witness.matrix(0, 0)) == 1);
  }
}

TEST_CASE("verify_theorem13 across a small sweep") {
  std::vector<std::vector<long>> tuples = {
      {2, 3}, {3, 2}, {2, 2}, {4, 3}, {5, 5}, {2, 2, 2}, {1, 1, 1}, {1, 2, 3},
      {3, 3, 3}, {2, 1, 2, 3}, {2, 2, 2, 2}, {1, 2, 1, 2, 1}, {2, 1, 1, 1, 1, 2}};
  for (auto& exps : tuples) {
    auto model = build_monodromy(invariants(Exponents(exps)));
    CHECK_NOTHROW(verify_theorem13(model));
  }
}

TEST_CASE("cooper_wrong_claim_check") {
  SECTION("(2,3): char polys agree, elementary divisors separate") {
    auto model = build_monodromy(invariants(Exponents({2, 3})));
    auto check = cooper_wrong_claim_check(model);
    CHECK(check.charpoly_equal);
    CHECK(check.separated);
    // true pair: one unit plus the order; wrong pair: an extra copy of b
    CHECK(check.snf_true == std::vector<Int>{1, 5});
    CHECK(check.snf_wrong == std::vector<Int>{5, 5});
  }
  SECTION("even-n tuples always separate (b >= 2 forces it)") {
    for (auto exps : std::vector<std::vector<long>>{{2, 2}, {3, 2}, {2, 3, 1, 1}, {2, 2, 2, 2}}) {
      auto model = build_monodromy(invariants(Exponents(exps)));
      auto check = cooper_wrong_claim_check(model);
      CHECK(check.charpoly_equal);
      CHECK(check.separated);
    }
  }
  SECTION("odd n is rejected") {
    auto model = build_monodromy(invariants(Exponents({2, 2, 2})));
    CHECK_THROWS_AS(cooper_wrong_claim_check(model), std::invalid_argument);
  }
}
