#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "mfl/error.hpp"
#include "mfl/graph.hpp"
#include "mfl/metric.hpp"

using namespace mfl;
using std::int64_t;

static int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

TEST_CASE("oracle equals breadth-first search on all pairs") {
  struct Probe {
    Family f;
    int level;
  };
  for (auto [f, level] : {Probe{Family::diamond, 1}, Probe{Family::diamond, 2},
                          Probe{Family::diamond, 3}, Probe{Family::laakso, 1},
                          Probe{Family::laakso, 2}, Probe{Family::m_variant, 1},
                          Probe{Family::quaternary_tree, 2}}) {
    auto g = generate(f, level);
    auto gw = generate(f, level, Normalization::weighted);
    for (std::int32_t u = 0; u < g.n_vertices; ++u) {
      auto d = sssp(g, u);
      for (std::int32_t v = 0; v < g.n_vertices; ++v) {
        auto o = distance_oracle(g, u, v);
        REQUIRE(o.hops == d.hops[(size_t)v]);
        REQUIRE(o.distance == Rat64{o.hops});
        auto ow = distance_oracle(gw, u, v);
        REQUIRE(ow.hops == d.hops[(size_t)v]);
        REQUIRE(ow.distance == Rat64{ow.hops} * gw.edge_length);
      }
    }
  }
}

TEST_CASE("oracle notes its fallback") {
  auto d2 = generate(Family::diamond, 2);
  CHECK(distance_oracle(d2, 0, 5).note == nullptr);
  auto q2 = generate(Family::quaternary_tree, 2);
  CHECK(distance_oracle(q2, 1, 8).note != nullptr);
}

TEST_CASE("diameters") {
  for (int n = 0; n <= 5; ++n) {
    CHECK(diameter_hops(generate(Family::diamond, n)) == ipow(2, n));
    if (n <= 4) CHECK(diameter_hops(generate(Family::laakso, n)) == ipow(4, n));
    if (n <= 2) CHECK(diameter_hops(generate(Family::m_variant, n)) == ipow(8, n));
  }
  for (int a = 1; a <= 4; ++a)
    CHECK(diameter_hops(generate(Family::quaternary_tree, a)) == 2 * a);
  // weighted families normalize to unit diameter
  CHECK(diameter(generate(Family::diamond, 4, Normalization::weighted)) == Rat64{1});
  CHECK(diameter(generate(Family::laakso, 3, Normalization::weighted)) == Rat64{1});
  CHECK(diameter(generate(Family::m_variant, 2, Normalization::weighted)) == Rat64{1});
}

TEST_CASE("bottom balls of the diamonds") {
  for (int n = 2; n <= 6; ++n) {
    auto d = generate(Family::diamond, n);
    auto b = ball(d, d.bottom, Rat64{1});
    CHECK((int64_t)b.size() == ipow(2, n) + 1);
  }
}

TEST_CASE("ball basics") {
  auto l1 = generate(Family::laakso, 1);
  // junction_low = id 2; neighbors are bottom and both midpoints
  auto b = ball(l1, 2, Rat64{1});
  CHECK(b == std::vector<std::int32_t>{0, 2, 3, 4});
  CHECK(ball(l1, 3, Rat64{0}) == std::vector<std::int32_t>{3});
  CHECK((int64_t)ball(l1, 0, diameter(l1)).size() == l1.n_vertices);
  // weighted: radius 1/2 on D_2 is a two-hop ball
  auto d2w = generate(Family::diamond, 2, Normalization::weighted);
  auto d2 = generate(Family::diamond, 2);
  CHECK(ball(d2w, 0, Rat64{1, 2}) == ball(d2, 0, Rat64{2}));
  CHECK_THROWS_AS(ball(d2, 0, Rat64{-1}), Error);
  CHECK_THROWS_AS(ball(d2, 99, Rat64{1}), Error);
}

TEST_CASE("radius to hops truncates to the lattice") {
  auto d2w = generate(Family::diamond, 2, Normalization::weighted);  // edge length 1/4
  CHECK(radius_to_hops(d2w, Rat64{1, 4}) == 1);
  CHECK(radius_to_hops(d2w, Rat64{3, 8}) == 1);
  CHECK(radius_to_hops(d2w, Rat64{1, 2}) == 2);
  CHECK(radius_to_hops(d2w, Rat64{1}) == 4);
  CHECK(radius_to_hops(d2w, Rat64{5}) == 20);
  CHECK(radius_to_hops(d2w, Rat64{1, 5}) == 0);
  CHECK(hops_to_length(d2w, 3) == Rat64{3, 4});
}

TEST_CASE("triangle inequality on sampled triples") {
  auto g = generate(Family::laakso, 2);
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::int32_t> pick(0, g.n_vertices - 1);
  for (int it = 0; it < 200; ++it) {
    std::int32_t a = pick(rng), b = pick(rng), c = pick(rng);
    auto da = sssp(g, a), db = sssp(g, b);
    CHECK(da.hops[(size_t)c] <= da.hops[(size_t)b] + db.hops[(size_t)c]);
  }
}

TEST_CASE("eccentricities: serial equals parallel, max is the diameter") {
  for (auto f : {Family::diamond, Family::laakso}) {
    auto g = generate(f, 3);
    auto es = eccentricities(g, Exec::serial);
    auto ep = eccentricities(g, Exec::omp);
    REQUIRE(es == ep);
    int64_t mx = 0;
    for (auto e : es) mx = std::max(mx, e);
    CHECK(mx == diameter_hops(g));
  }
}

TEST_CASE("geometry profile: serial equals parallel") {
  auto g = generate(Family::diamond, 3);
  std::vector<Rat64> radii = {Rat64{0}, Rat64{1}, Rat64{2}, Rat64{4}, Rat64{8}};
  auto ps = geometry_profile(g, radii, Exec::serial);
  auto pp = geometry_profile(g, radii, Exec::omp);
  REQUIRE(ps.entries == pp.entries);
  REQUIRE(ps.entries.size() == radii.size());
  CHECK(ps.entries[0].second == 1);                       // radius 0: singletons
  CHECK(ps.entries[1].second == 9);                       // bottom ball is the largest
  CHECK(ps.entries.back().second == g.n_vertices);        // radius = diameter
  for (size_t i = 1; i < ps.entries.size(); ++i)
    CHECK(ps.entries[i - 1].second <= ps.entries[i].second);
}

TEST_CASE("vertex range errors") {
  auto g = generate(Family::diamond, 2);
  CHECK_THROWS_AS(distance_oracle(g, -1, 0), Error);
  CHECK_THROWS_AS(distance_oracle(g, 0, g.n_vertices), Error);
  CHECK_THROWS_AS(sssp(g, 99), Error);
}
