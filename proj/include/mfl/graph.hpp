#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mfl/address.hpp"
#include "mfl/rational.hpp"

namespace mfl {

enum class Family : std::uint8_t { diamond, laakso, m_variant, quaternary_tree, generic };
enum class Normalization : std::uint8_t { unweighted, weighted };

const char* family_name(Family f);
Family family_from_name(const std::string& s);  // accepts long and one-letter names

// Replacement gadget of a recursive family: nodes are 0 = tail, 1..slots =
// new vertices, slots+1 = head; every gadget edge joins consecutive heights.
struct GadgetSpec {
  int slots;                  // new vertices per replaced edge
  int height;                 // graph distance tail..head inside the gadget
  std::vector<std::pair<int, int>> edges;   // (node, node), oriented bottom->top
  std::vector<int> slot_y;    // height of each slot above the gadget tail
  std::vector<const char*> slot_name;
};

const GadgetSpec& gadget(Family f);

struct MetricGraph {
  Family family = Family::generic;
  Normalization normalization = Normalization::unweighted;
  int level = 0;
  Rat64 edge_length{1};
  std::int32_t n_vertices = 0;
  std::int64_t n_edges = 0;

  std::vector<VertexAddress> addr;           // empty for generic graphs
  std::vector<std::string> generic_labels;   // generic graphs only
  std::vector<std::int64_t> y;               // height above the bottom root, in hops

  std::vector<std::pair<std::int32_t, std::int32_t>> edges;  // generation order, tail->head
  std::vector<std::int64_t> adj_off;         // CSR over sorted neighbor lists
  std::vector<std::int32_t> adj;

  std::int32_t bottom = 0, top = 0;

  std::unordered_map<AddrKey, std::int32_t, AddrKeyHash> addr_index;

  std::span<const std::int32_t> neighbors(std::int32_t v) const {
    return {adj.data() + adj_off[v], adj.data() + adj_off[v + 1]};
  }
  std::string label(std::int32_t v) const;
  std::int32_t resolve(const VertexAddress& a) const;  // -1 if absent
  void build_csr();   // from `edges`
  void check_vertex(std::int64_t v, const char* what) const;
};

// Edge-count cap for generation; MFL_MAX_EDGES overrides.
std::int64_t max_edges_cap();

MetricGraph generate(Family family, int level, Normalization norm = Normalization::unweighted);

// The level-(n-1) graph plus its address-preserving injection into `upper`.
struct LowerInclusion {
  MetricGraph lower;
  std::vector<std::int32_t> map;  // V(lower) -> V(upper)
};
LowerInclusion include_lower_level(const MetricGraph& upper);

// Subgraph of a diamond graph that evolved from a single edge of the level-k
// graph; meets the rest of the graph only at its top and bottom.
struct Subdiamond {
  std::uint64_t path = 0;       // edge-label sequence of length `path_len`
  std::uint8_t path_len = 0;
  std::int64_t height = 0;      // hops; 2^(n-k) for diamonds
  std::int32_t bottom = -1, top = -1, leftmost = -1, rightmost = -1;

  std::string path_string() const { return path_str(path, path_len); }
};

// (tail, head) endpoint ids of the sub-copy at `path` in any recursive-family
// graph; path may be empty (whole graph).
std::pair<std::int32_t, std::int32_t> copy_endpoints(const MetricGraph& g, std::uint64_t path, int len);

// True if vertex v belongs to the sub-copy at `path` (endpoints included).
bool copy_contains(const MetricGraph& g, std::uint64_t path, int len, std::int32_t v);

Subdiamond subdiamond_at(const MetricGraph& g, std::uint64_t path, int len);

std::vector<Subdiamond> enumerate_subdiamonds(const MetricGraph& g, std::int64_t min_height);

}  // namespace mfl
