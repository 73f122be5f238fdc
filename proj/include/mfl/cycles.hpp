#pragma once
#include <map>
#include <string>
#include <vector>

#include "mfl/graph.hpp"

namespace mfl {

struct Cycle {
  std::vector<std::int32_t> vertices;  // closed walk, first vertex not repeated
  std::int64_t hops() const { return static_cast<std::int64_t>(vertices.size()); }
  Rat64 length(const MetricGraph& g) const { return Rat64{hops()} * g.edge_length; }
};

// Canonical form: start at the least vertex id, walk toward the
// lexicographically smaller of the two directions.
Cycle canonical_cycle(const Cycle& c);

// Throws if the sequence is not a simple cycle of g.
void check_cycle(const MetricGraph& g, const Cycle& c);

// One top-to-bottom geodesic per side of a subdiamond, joined into the cycle
// through top, bottom, leftmost and rightmost. Selector entries (0 = left
// branch, 1 = right branch) are consumed in recursion preorder; exhausted
// selectors continue all-left (left side) / all-right (right side).
Cycle principal_cycle(const MetricGraph& g, const Subdiamond& s,
                      const std::vector<int>& left_selector = {},
                      const std::vector<int>& right_selector = {});

// All simple cycles, deduplicated by canonical form, sorted by (length,
// vertex sequence). Errors out (budget) past `cap` cycles.
std::vector<Cycle> enumerate_simple_cycles(const MetricGraph& g, std::int64_t cap = 1'000'000);

// The unique subdiamond whose principal cycles include this cycle.
Subdiamond classify_cycle(const MetricGraph& g, const Cycle& c);

// Bottom-to-top canonical geodesic of the sub-copy at `path` (always
// descending through the left/first branch). Works for any recursive family.
std::vector<std::int32_t> canonical_geodesic(const MetricGraph& g, std::uint64_t path, int len);

// Central cycle of a Laakso gadget copy: the expanded quadrilateral through
// its two junctions and both middle branches; length 4^(n-|path|).
Cycle central_cycle(const MetricGraph& g, std::uint64_t path, int len);

// Isometrically embedded 4^h cycle. `copy_path` picks the gadget copy
// (length n-h over labels 0..5); empty default = all-0 descent.
Cycle isometric_cycle(const MetricGraph& g, int h, const std::string& copy_path = "");

struct CycleFamily {
  int n = 0, s = 0, t = 0;
  std::map<std::string, Cycle> tree;  // label sequences over {0,1,2,3}, "" = root
};

// The labelled tree of touching-but-disjoint cycles inside L_n: the root has
// length 4^s, children shrink by a factor 4 down to 4^t. `root_path`
// overrides the default root copy ("1" then all-0).
CycleFamily cycle_family(const MetricGraph& g, int s, int t, const std::string& root_path = "");

struct QuotientGraph {
  MetricGraph graph;                     // generic family
  std::vector<std::int32_t> projection;  // V(original) -> V(quotient)
  std::vector<Subdiamond> collapsed;
};

// Replace each listed subdiamond of height 2^mu by a path of length 2^mu;
// inside a collapsed subdiamond, a vertex maps to the path position given by
// its distance from the subdiamond's top.
QuotientGraph collapse_subdiamonds(const MetricGraph& g, const std::vector<Subdiamond>& list);

}  // namespace mfl
