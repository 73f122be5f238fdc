#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "mfl/error.hpp"
#include "mfl/rational.hpp"

using namespace mfl;

TEST_CASE("normalization") {
  CHECK(Rat64{6, 4} == Rat64{3, 2});
  CHECK(Rat64{-6, 4} == Rat64{-3, 2});
  CHECK(Rat64{6, -4} == Rat64{-3, 2});
  CHECK(Rat64{-6, -4} == Rat64{3, 2});
  CHECK(Rat64{0, 7} == Rat64{0});
  CHECK(Rat64{0, -7}.den == 1);
  CHECK(Rat64{42}.den == 1);
  CHECK_THROWS_AS(Rat64(1, 0), Error);
}

TEST_CASE("arithmetic is exact") {
  Rat64 a{1, 3}, b{1, 6};
  CHECK(a + b == Rat64{1, 2});
  CHECK(a - b == Rat64{1, 6});
  CHECK(a * b == Rat64{1, 18});
  CHECK(a / b == Rat64{2});
  CHECK(Rat64{3, 4} * Rat64{4, 3} == Rat64{1});
  // 1/2^k sums telescope exactly (k capped so cross products keep headroom)
  Rat64 s{0};
  for (int k = 1; k <= 30; ++k) s = s + Rat64{1, std::int64_t(1) << k};
  CHECK(s == Rat64{(std::int64_t(1) << 30) - 1, std::int64_t(1) << 30});
  CHECK_THROWS_AS(Rat64(1) / Rat64(0), Error);
}

TEST_CASE("comparison by cross multiplication") {
  CHECK(Rat64{1, 3} < Rat64{1, 2});
  CHECK(Rat64{-1, 2} < Rat64{-1, 3});
  CHECK(Rat64{2, 4} <= Rat64{1, 2});
  CHECK(Rat64{1, 2} >= Rat64{2, 4});
  CHECK(Rat64{7, 8} > Rat64{6, 7});
  CHECK(Rat64{1, 3} != Rat64{2, 3});
  CHECK(rat_max(Rat64{1, 3}, Rat64{1, 2}) == Rat64{1, 2});
  CHECK(rat_min(Rat64{1, 3}, Rat64{1, 2}) == Rat64{1, 3});
}

TEST_CASE("overflow is an error, not a wrap") {
  Rat64 big{INT64_MAX, 1};
  CHECK_THROWS_AS(big * big, Error);
  CHECK_THROWS_AS((big + Rat64{1, 3}), Error);
  // near the edge but fine
  Rat64 h{INT64_MAX / 2, 1};
  CHECK(h + h == Rat64{(INT64_MAX / 2) * 2, 1});
}

TEST_CASE("string form") {
  CHECK(Rat64{5}.str() == "5");
  CHECK(Rat64{-3, 7}.str() == "-3/7");
  CHECK(Rat64{4, 8}.str() == "1/2");
}

TEST_CASE("extended rationals order below infinity") {
  ExtRat i = ExtRat::inf();
  ExtRat f = ExtRat::finite({3, 2});
  CHECK(f < i);
  CHECK_FALSE(i < f);
  CHECK_FALSE(i < i);
  CHECK(i == ExtRat::inf());
  CHECK(f == ExtRat::finite({6, 4}));
  CHECK(f <= i);
  CHECK(i <= i);
  CHECK(i.str() == "infinite");
  CHECK(f.str() == "3/2");
}
