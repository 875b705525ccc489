#include "doctest.h"
#include "oracles.hpp"

#include "hashbound/binary_codes.hpp"
#include "hashbound/coding_bounds.hpp"
#include "hashbound/errors.hpp"

using namespace hashbound;

TEST_CASE("binomial") {
  CHECK(binomial(12, 0) == 1);
  CHECK(binomial(12, 3) == 220);
  CHECK(binomial(12, 13) == 0);
  CHECK(binomial(0, 0) == 1);

  const auto tri = oracle::pascal(128);
  for (unsigned n = 0; n <= 128; ++n) {
    for (unsigned k = 0; k <= n; ++k) REQUIRE(binomial(n, k) == tri[n][k]);
  }
  // C(128, 64) does not fit in 64 bits.
  CHECK(binomial(128, 64) > BigUint(std::numeric_limits<std::uint64_t>::max()));
}

TEST_CASE("sphere_volume") {
  CHECK(sphere_volume(12, 1) == 1);
  CHECK(sphere_volume(12, 8) == 299);  // 1 + 12 + 66 + 220
  CHECK(sphere_volume(12, 9) == 794);  // radius 4 adds C(12, 4) = 495
  CHECK(sphere_volume(16, 7) == 697);
  CHECK(sphere_volume(12, 0) == 0);

  SUBCASE("matches the Pascal-triangle sum for L <= 20") {
    const auto tri = oracle::pascal(20);
    for (int L = 1; L <= 20; ++L) {
      for (int d = 1; d <= 2 * L + 2; ++d) REQUIRE(sphere_volume(L, d) == oracle::sphere_volume(tri, L, d));
    }
  }
  SUBCASE("non-decreasing in d") {
    for (int L = 1; L <= 40; ++L) {
      for (int d = 1; d <= L; ++d) REQUIRE(sphere_volume(L, d) <= sphere_volume(L, d + 1));
    }
  }
  SUBCASE("q-ary factor") {
    // 1 + 5*2 + C(5,2)*4 for Q = 3, radius 2
    CHECK(sphere_volume(5, 5, 3) == 51);
  }
}

TEST_CASE("bound_holds") {
  CHECK(bound_holds({12, 10}, 8));        // 10 * 299 = 2990 <= 4096
  CHECK_FALSE(bound_holds({12, 10}, 9));  // 10 * 794 = 7940 > 4096
  CHECK_FALSE(bound_holds({12, 10}, 11));
  CHECK(bound_holds({1, 2}, 1));
  // boundary: M * V == 2^L exactly; the perfect Hamming(7,4) code, 16 words, d = 3
  CHECK(bound_holds({7, 16}, 3));
  CHECK_FALSE(bound_holds({7, 17}, 3));
}

TEST_CASE("solve_d_min_star examples") {
  CHECK(solve_d_min_star({12, 10}) == 9);
  CHECK(solve_d_min_star({16, 100}) == 7);
  CHECK(solve_d_min_star({12, 2}) == 12);
  CHECK(solve_d_min_star({1, 2}) == 1);
}

TEST_CASE("solve_d_min_star rejects invalid problems") {
  CHECK_THROWS_AS(solve_d_min_star({12, 1}), InputError);
  CHECK_THROWS_AS(solve_d_min_star({12, 0}), InputError);
  CHECK_THROWS_AS(solve_d_min_star({0, 2}), InputError);
  CHECK_THROWS_AS(solve_d_min_star({3, 9}), InputError);
  CHECK_NOTHROW(solve_d_min_star({3, 8}));
}

TEST_CASE("solver defining property and scan equivalence for small L") {
  const auto tri = oracle::pascal(12);
  for (int L = 1; L <= 12; ++L) {
    for (std::uint64_t M = 2; M <= (1ULL << L); ++M) {
      const BoundProblem p{L, M};
      const MarginSet m = derive_margins(p);
      REQUIRE(m.d_min_star == oracle::d_min_star_scan(tri, L, M));
      REQUIRE(bound_holds(p, m.unclamped_d_min_star - 1));
      REQUIRE_FALSE(bound_holds(p, m.unclamped_d_min_star));
      REQUIRE(m.clamped == (m.unclamped_d_min_star > L));
    }
  }
}

TEST_CASE("solver monotonicity") {
  for (int L = 1; L <= 14; ++L) {
    int previous = L + 1;
    for (std::uint64_t M = 2; M <= (1ULL << L); ++M) {
      const int d = solve_d_min_star({L, M});
      REQUIRE(d <= previous);
      previous = d;
    }
  }
  for (std::uint64_t M : {2ULL, 3ULL, 10ULL, 100ULL}) {
    int previous = 0;
    for (int L = 1; L <= 70; ++L) {
      if (BigUint(M) > (BigUint(1) << L)) continue;
      const int d = solve_d_min_star({L, M});
      REQUIRE(d >= previous);
      previous = d;
    }
  }
}

TEST_CASE("derive_margins") {
  auto check = [](int L, std::uint64_t M, int d, int neg) {
    const MarginSet m = derive_margins({L, M});
    CHECK(m.d_min_star == d);
    CHECK(m.alpha_pos == L);
    CHECK(m.alpha_neg == neg);
    CHECK(m.alpha_pos - m.alpha_neg == 2 * m.d_min_star);
  };
  check(12, 10, 9, -6);
  check(48, 10, 41, -34);
  check(64, 100, 47, -30);
  check(12, 2, 12, -12);

  SUBCASE("parity and range") {
    for (int L = 1; L <= 64; ++L) {
      for (std::uint64_t M : {2ULL, 5ULL, 10ULL, 100ULL, 1000ULL}) {
        if (BigUint(M) > (BigUint(1) << L)) continue;
        const MarginSet m = derive_margins({L, M});
        REQUIRE((L - m.alpha_neg) % 2 == 0);
        REQUIRE(m.alpha_neg >= -L);
        REQUIRE(m.alpha_neg <= L);
        REQUIRE(m.d_min_star >= 1);
        REQUIRE(m.d_min_star <= L);
      }
    }
  }
}

TEST_CASE("any real codebook satisfies the bound at its own minimum distance") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int L = 1 + static_cast<int>(rng.below(16));
    const std::uint64_t cap = 1ULL << L;
    const std::uint64_t M = 2 + rng.below(std::min<std::uint64_t>(cap - 1, 20));
    Codebook book;
    while (book.size() < M) {
      auto c = oracle::random_code(rng, L);
      if (std::find(book.codes.begin(), book.codes.end(), c) == book.codes.end()) book.codes.push_back(c);
    }
    const int d = codebook_min_distance(book);
    const BoundProblem p{L, M};
    REQUIRE(bound_holds(p, d));
    REQUIRE(d <= solve_d_min_star(p));
  }
}
