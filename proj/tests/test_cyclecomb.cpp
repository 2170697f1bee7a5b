#include <catch2/catch_amalgamated.hpp>

#include "cyclemono/cyclecomb.hpp"

using namespace cyclemono;

TEST_CASE("exponent validation") {
  CHECK_NOTHROW(Exponents({2, 3}));
  CHECK_NOTHROW(Exponents({1, 1, 1}));  // odd n admits all-ones
  CHECK_THROWS_AS(Exponents({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Exponents({2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Exponents({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Exponents({1, 2, 1, 3}), std::invalid_argument);
  CHECK_NOTHROW(Exponents({2, 1, 1, 2}));  // neither parity class is all ones
  CHECK_THROWS_AS(Exponents({2}), std::invalid_argument);
  CHECK_THROWS_AS(Exponents({2, 0}), std::invalid_argument);
}

TEST_CASE("classify_subset") {
  SECTION("n=5, A={1,2,4}") {
    SubsetInfo s = classify_subset(5, std::vector<long>{1, 2, 4});
    REQUIRE(s.blocks.size() == 2);
    CHECK(s.blocks[0] == std::vector<long>{1, 2});
    CHECK(s.blocks[1] == std::vector<long>{4});
    CHECK(s.beginnings == std::vector<long>{1, 4});
    CHECK(s.b == 2);
    CHECK(s.thickness == Thickness::Thick);
  }
  SECTION("n=4, A={1,3} is thick") {
    SubsetInfo s = classify_subset(4, std::vector<long>{1, 3});
    CHECK(s.b == 2);
    CHECK(s.thickness == Thickness::Thick);
  }
  SECTION("n=3, A={1} is almost thick") {
    SubsetInfo s = classify_subset(3, std::vector<long>{1});
    CHECK(s.b == 1);
    CHECK(s.thickness == Thickness::AlmostThick);
    auto g = gaps(s);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == std::vector<long>{2, 3});
  }
  SECTION("wraparound block") {
    SubsetInfo s = classify_subset(5, std::vector<long>{1, 4, 5});
    REQUIRE(s.blocks.size() == 1);
    CHECK(s.beginnings == std::vector<long>{4});
    CHECK(s.blocks[0] == std::vector<long>{4, 5, 1});
    CHECK(s.thickness == Thickness::AlmostThick);
  }
  SECTION("empty subset rejected") {
    CHECK_THROWS_AS(classify_subset(4, std::uint64_t(0)), std::invalid_argument);
  }
  SECTION("full set flagged") {
    CHECK(classify_subset(3, std::vector<long>{1, 2, 3}).thickness == Thickness::Full);
  }
}

TEST_CASE("thickness by gap shape, exhaustively for n <= 8") {
  for (long n = 2; n <= 8; ++n) {
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << n); ++mask) {
      SubsetInfo s = classify_subset(n, mask);
      auto g = gaps(s);
      CHECK(static_cast<long>(g.size()) == s.b);
      bool all_singleton = true;
      int two_gaps = 0, bigger = 0;
      for (auto& gap : g) {
        if (gap.size() != 1) all_singleton = false;
        if (gap.size() == 2) ++two_gaps;
        if (gap.size() > 2) ++bigger;
      }
      CHECK((s.thickness == Thickness::Thick) == all_singleton);
      CHECK((s.thickness == Thickness::AlmostThick) == (two_gaps == 1 && bigger == 0));
      if (s.thickness == Thickness::Thick) {
        CHECK(s.size() >= (n + 1) / 2);
        CHECK(s.size() <= n - 1);
      }
      if (s.thickness == Thickness::AlmostThick) {
        CHECK(s.size() >= n / 2);
        CHECK(s.size() <= n - 2);
      }
    }
  }
}

TEST_CASE("sign_thick") {
  CHECK(sign_thick(classify_subset(4, std::vector<long>{1, 3})) == -1);
  CHECK(sign_thick(classify_subset(4, std::vector<long>{2, 4})) == -1);
  CHECK(sign_thick(classify_subset(5, std::vector<long>{1, 2, 4})) == 1);
  CHECK_THROWS_AS(sign_thick(classify_subset(3, std::vector<long>{1})), std::invalid_argument);
}

TEST_CASE("sign_thick closed forms for the half-size sets at even n") {
  for (long n = 2; n <= 8; n += 2) {
    std::vector<long> odd, even;
    for (long k = 1; k <= n; k += 2) odd.push_back(k);
    for (long k = 2; k <= n; k += 2) even.push_back(k);
    long h = n / 2;
    int expect_od = ((h * (h + 1) / 2) % 2 == 0) ? 1 : -1;
    int expect_ev = (((h - 1) * h / 2) % 2 == 0) ? 1 : -1;
    CHECK(sign_thick(classify_subset(n, odd)) == expect_od);
    CHECK(sign_thick(classify_subset(n, even)) == expect_ev);
  }
}

TEST_CASE("sign_face") {
  // listing starts with n whenever n is a member
  SubsetInfo a13 = classify_subset(3, std::vector<long>{1, 3});
  CHECK(sign_face(classify_subset(3, std::vector<long>{3}), a13) == -1);  // removes 1 = k_2
  CHECK(sign_face(classify_subset(3, std::vector<long>{1}), a13) == 1);   // removes 3 = k_1
  SubsetInfo a123 = classify_subset(3, std::vector<long>{1, 2, 3});
  CHECK(sign_face(classify_subset(3, std::vector<long>{1, 2}), a123) == 1);   // removes 3, listed first
  CHECK(sign_face(classify_subset(3, std::vector<long>{2, 3}), a123) == -1);  // removes 1 = k_2
  CHECK(sign_face(classify_subset(3, std::vector<long>{1, 3}), a123) == 1);   // removes 2 = k_3
  SubsetInfo a12 = classify_subset(4, std::vector<long>{1, 2});
  CHECK(sign_face(classify_subset(4, std::vector<long>{2}), a12) == 1);
  CHECK(sign_face(classify_subset(4, std::vector<long>{1}), a12) == -1);
  CHECK_THROWS_AS(sign_face(a12, a12), std::invalid_argument);
}

TEST_CASE("double faces cancel: sum of sign(C,B)sign(B,A) vanishes, n <= 7") {
  for (long n = 3; n <= 7; ++n) {
    for (std::uint64_t amask = 1; amask < (std::uint64_t(1) << n); ++amask) {
      if (__builtin_popcountll(amask) < 3) continue;
      SubsetInfo a = classify_subset(n, amask);
      for (std::uint64_t cmask = 1; cmask < amask; ++cmask) {
        if ((cmask & ~amask) != 0) continue;
        if (__builtin_popcountll(cmask) != __builtin_popcountll(amask) - 2) continue;
        SubsetInfo c = classify_subset(n, cmask);
        int total = 0;
        for (long k = 1; k <= n; ++k) {
          std::uint64_t bm = cmask | (std::uint64_t(1) << (k - 1));
          if (bm == cmask || (bm & ~amask) != 0 || bm == amask) continue;
          if (__builtin_popcountll(bm) != __builtin_popcountll(cmask) + 1) continue;
          SubsetInfo b = classify_subset(n, bm);
          total += sign_face(c, b) * sign_face(b, a);
        }
        CHECK(total == 0);
      }
    }
  }
}

TEST_CASE("cell vectors for (2,3)") {
  Exponents e({2, 3});
  CellVectors cv = cell_vectors(e);
  CHECK(cv.mu == 6);
  CHECK(cv.d == 5);
  CHECK(cv.abar[1] == 1);
  CHECK(cv.abar[2] == -2);
  CHECK(cv.abar[3] == 6);
  CHECK(cv.bvec[2] == std::vector<Int>{1, 0});
  CHECK(cv.bvec[3] == std::vector<Int>{1, -2});
  CHECK(cv.cvec[1] == std::vector<Int>{1, -2});
  CHECK(cv.cvec[2] == std::vector<Int>{6, -2});
}

TEST_CASE("torus direction vectors") {
  SECTION("(2,2,2), A={1}: single direction equals c_1") {
    Exponents e({2, 2, 2});
    CellVectors cv = cell_vectors(e);
    auto dirs = torus_dirs(cv, classify_subset(3, std::vector<long>{1}));
    REQUIRE(dirs.size() == 1);
    CHECK(dirs[0] == cv.cvec[1]);
  }
  SECTION("entries are integral for a corpus") {
    for (auto exps : std::vector<std::vector<long>>{{2, 3}, {3, 2, 2}, {2, 2, 2, 3}, {4, 5}, {2, 1, 3, 1, 2}}) {
      Exponents e(exps);
      CellVectors cv = cell_vectors(e);
      for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << e.n); ++mask) {
        SubsetInfo a = classify_subset(e.n, mask);
        CHECK_NOTHROW(torus_dirs(cv, a));
      }
    }
  }
}

TEST_CASE("p_{j+1} - p_j - c_k/d is integral for every k") {
  for (auto exps : std::vector<std::vector<long>>{{2, 3}, {2, 2, 2}, {3, 4}, {2, 3, 2, 3}}) {
    Exponents e(exps);
    CellVectors cv = cell_vectors(e);
    long d = to_long(cv.d);
    for (long j = 1; j <= d; ++j) {
      auto pj = p_point(cv, j);
      auto pj1 = p_point(cv, j + 1);
      for (long k = 1; k <= e.n; ++k)
        for (long i = 0; i < e.n; ++i) {
          Rat diff = pj1[i] - pj[i] - Rat(cv.cvec[k][i], cv.d);
          CHECK(is_integer(diff));
        }
    }
  }
}

TEST_CASE("thick and almost thick families") {
  auto a1 = thick_family(3, 2);
  CHECK(a1.size() == 3);
  auto bs = almost_thick_family(3, 2);
  CHECK(bs.size() == 3);
  // empty below the thickness threshold
  CHECK(almost_thick_family(5, 2).empty());
  CHECK(thick_family(5, 2).empty());
  for (long n = 2; n <= 8; ++n)
    for (long s = 1; s <= n - 1; ++s) {
      size_t count = 0;
      for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << n); ++mask) {
        SubsetInfo info = classify_subset(n, mask);
        if (info.thickness == Thickness::Thick && info.size() == s) ++count;
      }
      CHECK(thick_family(n, s).size() == count);
    }
}

TEST_CASE("beta values and covers") {
  SubsetInfo b = classify_subset(3, std::vector<long>{3});
  CHECK(beta1(b) == 1);
  CHECK(beta2(b) == 2);
  CHECK(cover1(b).members == std::vector<long>{1, 3});
  CHECK(cover2(b).members == std::vector<long>{2, 3});
  SubsetInfo wrap = classify_subset(4, std::vector<long>{1, 2});
  CHECK(beta1(wrap) == 3);
  CHECK(beta2(wrap) == 4);
  // the two covers are the unique thick covers with one more element
  for (long n = 3; n <= 7; ++n)
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << n); ++mask) {
      SubsetInfo s = classify_subset(n, mask);
      if (s.thickness != Thickness::AlmostThick) continue;
      SubsetInfo c1 = cover1(s), c2 = cover2(s);
      CHECK(c1.thickness == Thickness::Thick);
      CHECK(c2.thickness == Thickness::Thick);
      CHECK(c1.b == s.b);
      CHECK(c2.b == s.b);
      for (long k = 1; k <= n; ++k) {
        if (s.contains(k)) continue;
        SubsetInfo cover = with_element(s, k);
        bool is_thick = cover.thickness == Thickness::Thick;
        CHECK(is_thick == (cover == c1 || cover == c2));
      }
    }
}

TEST_CASE("claim1_sequence") {
  SECTION("n=3, B={1}") {
    SubsetInfo b = classify_subset(3, std::vector<long>{1});
    auto seq = claim1_sequence(b);
    REQUIRE(seq.size() == 3);
    CHECK(seq[0].members == std::vector<long>{3});
    CHECK(seq[1].members == std::vector<long>{2});
    CHECK(seq[2].members == std::vector<long>{1});
  }
  SECTION("properties hold for all almost thick sets, n <= 7") {
    for (long n = 3; n <= 7; ++n) {
      for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << n); ++mask) {
        SubsetInfo b = classify_subset(n, mask);
        if (b.thickness != Thickness::AlmostThick) continue;
        auto seq = claim1_sequence(b);
        REQUIRE(static_cast<long>(seq.size()) == n);
        CHECK(seq.back() == b);
        std::uint64_t betas = 0;
        for (long i = 0; i < n; ++i) {
          const SubsetInfo& next = seq[(i + 1) % n];
          CHECK(cover1(next) == cover2(seq[i]));
          betas |= std::uint64_t(1) << (beta2(seq[i]) - 1);
        }
        CHECK(betas == (std::uint64_t(1) << n) - 1);
      }
    }
  }
}
