#pragma once
#include <cstdint>
#include <vector>

#include "mfl/graph.hpp"

namespace mfl {

// Every metric kernel with nontrivial cost exists in two variants: a serial
// reference implementation and an OpenMP one. Both must produce identical
// results; tests compare them and the benchmark tool times them.
enum class Exec { serial, omp };

struct DistanceVector {
  std::int32_t source = 0;
  std::vector<std::int64_t> hops;
};

DistanceVector sssp(const MetricGraph& g, std::int32_t source);

inline Rat64 hops_to_length(const MetricGraph& g, std::int64_t hops) {
  return Rat64{hops} * g.edge_length;
}

// Largest hop count h with h * edge_length <= radius.
std::int64_t radius_to_hops(const MetricGraph& g, const Rat64& radius);

// Reference all-pairs kernel: eccentricity of every vertex, in hops.
std::vector<std::int64_t> eccentricities(const MetricGraph& g, Exec ex);

// Exact diameter via iterative fringe refinement (few BFS runs in practice).
std::int64_t diameter_hops(const MetricGraph& g);
Rat64 diameter(const MetricGraph& g);

// Vertices within `radius` of `center`, ascending ids.
std::vector<std::int32_t> ball(const MetricGraph& g, std::int32_t center, const Rat64& radius);

// Hierarchical distance oracle: O(level) per query via the gadget skeleton;
// falls back to BFS (with a note) for families without the recursive address
// structure.
struct OracleResult {
  Rat64 distance;
  std::int64_t hops = 0;
  const char* note = nullptr;  // set when the BFS fallback was used
};
OracleResult distance_oracle(const MetricGraph& g, std::int32_t u, std::int32_t v);

struct GeometryProfile {
  std::vector<std::pair<Rat64, std::int64_t>> entries;  // (radius, max ball cardinality)
};
GeometryProfile geometry_profile(const MetricGraph& g, const std::vector<Rat64>& radii, Exec ex);

enum class DoublingStrategy { witness_bottom_ball, scan_all_balls };

// Ball-form doubling evidence, reported for a single witness ball. Covering
// a ball B by sets of diameter at most diam(B)/2 needs at least as many sets
// as any packing of points pairwise further than diam(B)/2 apart, and at most
// as many as a greedy cover by balls of radius diam(B)/4 (their diameter is
// at most half of diam(B)). The scan strategy ranks every (center, radius)
// ball by a deterministic greedy packing, takes the first maximizer as the
// witness, then certifies its lower bound exactly (max independent set on the
// half-diameter conflict graph, plus the pairing bound when no three points
// are pairwise within half the diameter) and runs the greedy cover on it.
// The bounds describe the witness ball only, not every scanned ball.
struct DoublingReport {
  DoublingStrategy strategy = DoublingStrategy::witness_bottom_ball;
  std::int32_t ball_center = 0;
  Rat64 ball_radius{0};
  std::int64_t witness_lower_bound = 1;
  std::int64_t greedy_upper_bound = 1;
  std::int64_t scanned_balls = 0;
  bool complete = true;        // false when the scan limit cut the scan short
  bool witness_exact = false;  // lower bound certified by a completed MIS search
};

DoublingReport doubling_bounds(const MetricGraph& g, DoublingStrategy strategy,
                               std::int64_t scan_limit, Exec ex);

}  // namespace mfl
