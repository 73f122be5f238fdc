#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mfl/cycles.hpp"
#include "mfl/error.hpp"
#include "mfl/graph.hpp"
#include "mfl/metric.hpp"

using namespace mfl;
using std::int64_t;

static std::map<int64_t, int> length_census(const std::vector<Cycle>& cs) {
  std::map<int64_t, int> m;
  for (auto& c : cs) m[c.hops()]++;
  return m;
}

static std::set<std::int32_t> vset(const Cycle& c) {
  return std::set<std::int32_t>(c.vertices.begin(), c.vertices.end());
}

TEST_CASE("canonical form is rotation and reflection invariant") {
  Cycle a{{0, 2, 1, 3}};
  Cycle b{{1, 3, 0, 2}};
  Cycle c{{0, 3, 1, 2}};
  CHECK(canonical_cycle(a).vertices == canonical_cycle(b).vertices);
  CHECK(canonical_cycle(a).vertices == canonical_cycle(c).vertices);
  CHECK(canonical_cycle(a).vertices[0] == 0);
}

TEST_CASE("cycle validation") {
  auto d1 = generate(Family::diamond, 1);
  Cycle good{{0, 2, 1, 3}};
  CHECK_NOTHROW(check_cycle(d1, good));
  CHECK_THROWS_AS(check_cycle(d1, Cycle{{0, 1, 2, 3}}), Error);  // 0-1 is not an edge
  CHECK_THROWS_AS(check_cycle(d1, Cycle{{0, 2}}), Error);        // too short
  CHECK_THROWS_AS(check_cycle(d1, Cycle{{0, 2, 0, 3}}), Error);  // repeated vertex
}

TEST_CASE("enumeration censuses") {
  auto d1 = generate(Family::diamond, 1);
  CHECK(enumerate_simple_cycles(d1).size() == 1);

  auto d2 = generate(Family::diamond, 2);
  auto c2 = enumerate_simple_cycles(d2);
  CHECK(c2.size() == 20);
  CHECK(length_census(c2) == std::map<int64_t, int>{{4, 4}, {8, 16}});

  auto l1 = generate(Family::laakso, 1);
  auto cl1 = enumerate_simple_cycles(l1);
  CHECK(cl1.size() == 1);
  CHECK(cl1[0].hops() == 4);

  auto l2 = generate(Family::laakso, 2);
  auto cl2 = enumerate_simple_cycles(l2);
  CHECK(cl2.size() == 22);
  CHECK(length_census(cl2) == std::map<int64_t, int>{{4, 6}, {16, 16}});

  CHECK(enumerate_simple_cycles(generate(Family::quaternary_tree, 2)).empty());

  // every enumerated cycle is simple and canonical; output is sorted
  for (auto& c : c2) {
    check_cycle(d2, c);
    CHECK(c.vertices == canonical_cycle(c).vertices);
  }
  for (size_t i = 1; i < c2.size(); ++i) {
    bool ordered = c2[i - 1].hops() < c2[i].hops() ||
                   (c2[i - 1].hops() == c2[i].hops() && c2[i - 1].vertices < c2[i].vertices);
    CHECK(ordered);
  }
  CHECK_THROWS_AS(enumerate_simple_cycles(d2, 10), Error);
}

TEST_CASE("level-3 diamond census") {
  auto d3 = generate(Family::diamond, 3);
  auto cs = enumerate_simple_cycles(d3);
  CHECK(cs.size() == 4176);
  CHECK(length_census(cs) == std::map<int64_t, int>{{4, 16}, {8, 64}, {16, 4096}});
}

TEST_CASE("classification puts each cycle in one subdiamond") {
  auto d2 = generate(Family::diamond, 2);
  auto cs = enumerate_simple_cycles(d2);
  std::map<std::string, int> per_sub;
  for (auto& c : cs) {
    auto s = classify_cycle(d2, c);
    CHECK(c.hops() == 2 * s.height);
    per_sub[s.path_string()]++;
    // the cycle passes through all four corners and stays inside the copy
    auto vs = vset(c);
    CHECK(vs.count(s.top) == 1);
    CHECK(vs.count(s.bottom) == 1);
    CHECK(vs.count(s.leftmost) == 1);
    CHECK(vs.count(s.rightmost) == 1);
    for (auto v : vs) CHECK(copy_contains(d2, s.path, s.path_len, v));
  }
  CHECK(per_sub.size() == 5);
  CHECK(per_sub[""] == 16);
  for (auto& [path, count] : per_sub)
    if (!path.empty()) CHECK(count == 1);
}

TEST_CASE("level-3 classification tallies") {
  auto d3 = generate(Family::diamond, 3);
  auto cs = enumerate_simple_cycles(d3);
  std::map<int64_t, std::map<std::string, int>> by_height;
  for (auto& c : cs) {
    auto s = classify_cycle(d3, c);
    CHECK(c.hops() == 2 * s.height);
    by_height[s.height][s.path_string()]++;
  }
  CHECK(by_height[2].size() == 16);
  CHECK(by_height[4].size() == 4);
  CHECK(by_height[8].size() == 1);
  for (auto& [path, count] : by_height[2]) CHECK(count == 1);
  for (auto& [path, count] : by_height[4]) CHECK(count == 16);
  CHECK(by_height[8][""] == 4096);
}

TEST_CASE("principal cycles of the top subdiamond") {
  auto d2 = generate(Family::diamond, 2);
  auto root = subdiamond_at(d2, 0, 0);
  std::set<std::vector<std::int32_t>> seen;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          auto cy = principal_cycle(d2, root, {a, b}, {c, d});
          check_cycle(d2, cy);
          CHECK(cy.hops() == 8);
          auto vs = vset(cy);
          CHECK(vs.count(root.top) == 1);
          CHECK(vs.count(root.bottom) == 1);
          CHECK(vs.count(root.leftmost) == 1);
          CHECK(vs.count(root.rightmost) == 1);
          seen.insert(canonical_cycle(cy).vertices);
        }
  CHECK(seen.size() == 16);  // 4 left geodesics x 4 right geodesics
}

TEST_CASE("canonical geodesics") {
  auto d2 = generate(Family::diamond, 2);
  auto g0 = canonical_geodesic(d2, 0, 0);
  CHECK(g0.size() == 5);  // height 4, both endpoints
  CHECK(g0.front() == d2.bottom);
  CHECK(g0.back() == d2.top);
  auto dist = sssp(d2, d2.bottom);
  for (size_t i = 0; i < g0.size(); ++i) CHECK(dist.hops[(size_t)g0[i]] == (int64_t)i);
  auto l2 = generate(Family::laakso, 2);
  CHECK(canonical_geodesic(l2, 0, 0).size() == 17);
}

TEST_CASE("central cycles of laakso copies") {
  auto l1 = generate(Family::laakso, 1);
  auto c = central_cycle(l1, 0, 0);
  check_cycle(l1, c);
  CHECK(c.hops() == 4);
  CHECK(vset(c) == std::set<std::int32_t>{2, 3, 4, 5});

  auto l2 = generate(Family::laakso, 2);
  CHECK(central_cycle(l2, 0, 0).hops() == 16);
  std::set<std::vector<std::int32_t>> smalls;
  for (int lbl = 0; lbl < 6; ++lbl) {
    auto cc = central_cycle(l2, (std::uint64_t)lbl, 1);
    check_cycle(l2, cc);
    CHECK(cc.hops() == 4);
    smalls.insert(canonical_cycle(cc).vertices);
  }
  CHECK(smalls.size() == 6);  // exactly the six 4-cycles of the census
}

TEST_CASE("isometric cycles really are isometric") {
  auto l2 = generate(Family::laakso, 2);
  for (int h : {1, 2}) {
    auto c = isometric_cycle(l2, h);
    check_cycle(l2, c);
    int64_t len = c.hops();
    CHECK(len == (h == 1 ? 4 : 16));
    for (size_t i = 0; i < c.vertices.size(); ++i) {
      auto d = sssp(l2, c.vertices[i]);
      for (size_t j = 0; j < c.vertices.size(); ++j) {
        int64_t k = (int64_t)(j >= i ? j - i : i - j);
        CHECK(d.hops[(size_t)c.vertices[j]] == std::min(k, len - k));
      }
    }
  }
}

TEST_CASE("cycle family of the level-3 laakso graph") {
  auto l3 = generate(Family::laakso, 3);
  auto fam = cycle_family(l3, 2, 1);
  CHECK(fam.n == 3);
  CHECK(fam.s == 2);
  CHECK(fam.t == 1);
  REQUIRE(fam.tree.size() == 5);
  REQUIRE(fam.tree.count(""));
  CHECK(fam.tree.at("").hops() == 16);
  std::vector<std::set<std::int32_t>> kids;
  for (auto& [label, c] : fam.tree) {
    check_cycle(l3, c);
    CHECK(c.hops() == (label.empty() ? 16 : 4));
    if (!label.empty()) {
      CHECK(label.size() == 1);
      CHECK(label.find_first_not_of("0123") == std::string::npos);
      kids.push_back(vset(c));
      // contact with the parent
      auto rv = vset(fam.tree.at(""));
      std::vector<std::int32_t> inter;
      std::set_intersection(kids.back().begin(), kids.back().end(), rv.begin(), rv.end(),
                            std::back_inserter(inter));
      CHECK_FALSE(inter.empty());
    }
  }
  for (size_t i = 0; i < kids.size(); ++i)
    for (size_t j = i + 1; j < kids.size(); ++j) {
      std::vector<std::int32_t> inter;
      std::set_intersection(kids[i].begin(), kids[i].end(), kids[j].begin(), kids[j].end(),
                            std::back_inserter(inter));
      CHECK(inter.empty());
    }
  // the root touches the full-scale isometric cycle
  auto big = isometric_cycle(l3, 3);
  auto rv = vset(fam.tree.at("")), bv = vset(big);
  std::vector<std::int32_t> inter;
  std::set_intersection(rv.begin(), rv.end(), bv.begin(), bv.end(), std::back_inserter(inter));
  CHECK_FALSE(inter.empty());
}

TEST_CASE("deeper family shapes") {
  auto l4 = generate(Family::laakso, 4);
  auto f31 = cycle_family(l4, 3, 1);
  CHECK(f31.tree.size() == 21);  // 1 + 4 + 16
  CHECK(f31.tree.at("").hops() == 64);
  auto f32 = cycle_family(l4, 3, 2);
  CHECK(f32.tree.size() == 5);
  for (auto& [label, c] : f32.tree) CHECK(c.hops() == (label.empty() ? 64 : 16));
}

TEST_CASE("collapse: one height-2 subdiamond") {
  auto d2 = generate(Family::diamond, 2);
  auto s = subdiamond_at(d2, 0, 1);
  auto q = collapse_subdiamonds(d2, {s});
  CHECK(q.graph.n_vertices == 11);
  CHECK(q.graph.n_edges == 14);
  CHECK(q.graph.family == Family::generic);
  REQUIRE(q.collapsed.size() == 1);
  CHECK((int64_t)q.projection.size() == d2.n_vertices);
  // distances to the collapsed poles survive for every vertex
  auto dq_top = sssp(q.graph, q.projection[(size_t)s.top]);
  auto dq_bot = sssp(q.graph, q.projection[(size_t)s.bottom]);
  auto dg_top = sssp(d2, s.top);
  auto dg_bot = sssp(d2, s.bottom);
  for (std::int32_t v = 0; v < d2.n_vertices; ++v) {
    CHECK(dq_top.hops[(size_t)q.projection[(size_t)v]] == dg_top.hops[(size_t)v]);
    CHECK(dq_bot.hops[(size_t)q.projection[(size_t)v]] == dg_bot.hops[(size_t)v]);
  }
}

TEST_CASE("collapse: every height-2 subdiamond") {
  auto d2 = generate(Family::diamond, 2);
  auto subs = enumerate_subdiamonds(d2, 2);
  std::vector<Subdiamond> h2;
  for (auto& s : subs)
    if (s.height == 2) h2.push_back(s);
  REQUIRE(h2.size() == 4);
  auto q = collapse_subdiamonds(d2, h2);
  CHECK(q.graph.n_vertices == 8);  // the once-subdivided level-1 diamond
  CHECK(q.graph.n_edges == 8);

  auto d3 = generate(Family::diamond, 3);
  auto subs3 = enumerate_subdiamonds(d3, 2);
  std::vector<Subdiamond> h2_3;
  for (auto& s : subs3)
    if (s.height == 2) h2_3.push_back(s);
  REQUIRE(h2_3.size() == 16);
  auto q3 = collapse_subdiamonds(d3, h2_3);
  CHECK(q3.graph.n_vertices == 28);  // the once-subdivided level-2 diamond
  CHECK(q3.graph.n_edges == 32);
  std::map<int, int> degs;
  for (auto& [u, v] : q3.graph.edges) {
    degs[u]++;
    degs[v]++;
  }
  std::map<int, int> hist;
  for (auto& [v, d] : degs) hist[d]++;
  CHECK(hist == std::map<int, int>{{2, 24}, {4, 4}});
}

TEST_CASE("collapse: the whole diamond becomes a path") {
  auto d3 = generate(Family::diamond, 3);
  auto q = collapse_subdiamonds(d3, {subdiamond_at(d3, 0, 0)});
  CHECK(q.graph.n_vertices == 9);
  CHECK(q.graph.n_edges == 8);
  CHECK(diameter_hops(q.graph) == 8);
  CHECK(q.graph.generic_labels[0] == "d:bottom");
  CHECK(q.graph.generic_labels[1] == "d:top");
  bool found_interior = false;
  for (auto& l : q.graph.generic_labels)
    if (l.rfind("collapsed:", 0) == 0) found_interior = true;
  CHECK(found_interior);
}

TEST_CASE("collapse rejects nested subdiamonds") {
  auto d2 = generate(Family::diamond, 2);
  CHECK_THROWS_AS(
      collapse_subdiamonds(d2, {subdiamond_at(d2, 0, 0), subdiamond_at(d2, 0, 1)}), Error);
}
