#include "mfl/graph.hpp"

#include <algorithm>
#include <cstdlib>

namespace mfl {

const char* family_name(Family f) {
  switch (f) {
    case Family::diamond: return "diamond";
    case Family::laakso: return "laakso";
    case Family::m_variant: return "m_variant";
    case Family::quaternary_tree: return "quaternary_tree";
    case Family::generic: return "generic";
  }
  fail_internal("bad family enum");
}

Family family_from_name(const std::string& s) {
  if (s == "diamond" || s == "d") return Family::diamond;
  if (s == "laakso" || s == "l") return Family::laakso;
  if (s == "m_variant" || s == "m") return Family::m_variant;
  if (s == "quaternary_tree" || s == "quaternary" || s == "q") return Family::quaternary_tree;
  fail_usage("unknown family '" + s + "' (expected diamond|laakso|m_variant|quaternary_tree)");
}

const GadgetSpec& gadget(Family f) {
  // Node numbering: 0 = tail, 1..slots = new vertices bottom-to-top (left
  // branch before right), slots+1 = head. Edge order fixes the label alphabet.
  static const GadgetSpec diamond{
      2, 2,
      {{0, 1}, {1, 3}, {0, 2}, {2, 3}},
      {1, 1},
      {"a", "b"}};
  static const GadgetSpec laakso{
      4, 4,
      {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 5}},
      {1, 2, 2, 3},
      {"jl", "ml", "mr", "jh"}};
  static const GadgetSpec m{
      8, 8,
      {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 5}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}},
      {1, 2, 3, 3, 4, 5, 6, 7},
      {"p0", "jl", "ml", "mr", "jh", "q0", "q1", "q2"}};
  switch (f) {
    case Family::diamond: return diamond;
    case Family::laakso: return laakso;
    case Family::m_variant: return m;
    default: fail_domain(std::string("no replacement gadget for family ") + family_name(f));
  }
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::int64_t max_edges_cap() {
  if (const char* s = std::getenv("MFL_MAX_EDGES")) {
    char* end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    fail_usage("MFL_MAX_EDGES must be a positive integer");
  }
  return 10'000'000;
}

void MetricGraph::check_vertex(std::int64_t v, const char* what) const {
  if (v < 0 || v >= n_vertices)
    fail_domain(std::string(what) + " id " + std::to_string(v) + " out of range [0, " +
                std::to_string(n_vertices) + ")");
}

std::string MetricGraph::label(std::int32_t v) const {
  if (family == Family::generic) return generic_labels[static_cast<size_t>(v)];
  const VertexAddress& a = addr[static_cast<size_t>(v)];
  const char* pfx = "?";
  switch (family) {
    case Family::diamond: pfx = "d"; break;
    case Family::laakso: pfx = "l"; break;
    case Family::m_variant: pfx = "m"; break;
    case Family::quaternary_tree:
      return "q:" + path_str(a.path, a.path_len);
    default: break;
  }
  if (a.kind == VertexKind::root_bottom) return std::string(pfx) + ":bottom";
  if (a.kind == VertexKind::root_top) return std::string(pfx) + ":top";
  return std::string(pfx) + ":" + std::to_string(a.birth) + ":" + path_str(a.path, a.path_len) +
         ":" + gadget(family).slot_name[a.slot];
}

std::int32_t MetricGraph::resolve(const VertexAddress& a) const {
  auto it = addr_index.find(addr_key(a));
  return it == addr_index.end() ? -1 : it->second;
}

void MetricGraph::build_csr() {
  adj_off.assign(static_cast<size_t>(n_vertices) + 1, 0);
  for (auto [u, v] : edges) {
    ++adj_off[static_cast<size_t>(u) + 1];
    ++adj_off[static_cast<size_t>(v) + 1];
  }
  for (size_t i = 1; i < adj_off.size(); ++i) adj_off[i] += adj_off[i - 1];
  adj.resize(static_cast<size_t>(adj_off.back()));
  std::vector<std::int64_t> pos(adj_off.begin(), adj_off.end() - 1);
  for (auto [u, v] : edges) {
    adj[static_cast<size_t>(pos[static_cast<size_t>(u)]++)] = v;
    adj[static_cast<size_t>(pos[static_cast<size_t>(v)]++)] = u;
  }
  for (std::int32_t v = 0; v < n_vertices; ++v)
    std::sort(adj.begin() + adj_off[v], adj.begin() + adj_off[v + 1]);
}

static void index_addresses(MetricGraph& g) {
  g.addr_index.reserve(g.addr.size());
  for (std::int32_t v = 0; v < g.n_vertices; ++v) {
    if (!g.addr_index.emplace(addr_key(g.addr[static_cast<size_t>(v)]), v).second)
      fail_internal("duplicate vertex address " + g.label(v));
  }
}

static MetricGraph generate_quaternary(int depth, Normalization norm) {
  MetricGraph g;
  g.family = Family::quaternary_tree;
  g.normalization = norm;
  g.level = depth;
  g.edge_length = Rat64{1};  // quaternary trees are used unweighted
  std::int64_t vcount = (ipow(4, depth + 1) - 1) / 3;
  if (vcount - 1 > max_edges_cap())
    fail_budget("quaternary_tree depth " + std::to_string(depth) + " has " +
                std::to_string(vcount - 1) + " edges, over the cap " +
                std::to_string(max_edges_cap()) + " (MFL_MAX_EDGES)");
  g.n_vertices = static_cast<std::int32_t>(vcount);
  g.addr.reserve(static_cast<size_t>(vcount));
  g.y.reserve(static_cast<size_t>(vcount));
  g.addr.push_back(VertexAddress{VertexKind::root_bottom, 0, 0, 0, 0});
  g.y.push_back(0);
  std::int32_t level_begin = 0, next_id = 1;
  for (int d = 1; d <= depth; ++d) {
    std::int32_t level_end = next_id;
    // [level_begin, level_end) is exactly the previous depth's node range
    for (std::int32_t p = level_begin; p < level_end; ++p) {
      for (int c = 0; c < 4; ++c) {
        VertexAddress a;
        a.kind = VertexKind::derived;
        a.birth = static_cast<std::uint8_t>(d);
        a.path_len = static_cast<std::uint8_t>(d);
        a.path = path_append(g.addr[static_cast<size_t>(p)].path, c);
        g.addr.push_back(a);
        g.y.push_back(d);
        g.edges.emplace_back(p, next_id);
        ++next_id;
      }
    }
    level_begin = level_end;
  }
  if (next_id != g.n_vertices) fail_internal("quaternary count mismatch");
  g.n_edges = static_cast<std::int64_t>(g.edges.size());
  g.bottom = 0;
  g.top = 0;
  g.build_csr();
  index_addresses(g);
  return g;
}

MetricGraph generate(Family family, int level, Normalization norm) {
  if (level < 0) fail_domain("level must be >= 0");
  if (level > kMaxPathLen) fail_domain("level exceeds supported address depth");
  if (family == Family::generic) fail_usage("cannot generate a generic-family graph");
  if (family == Family::quaternary_tree) return generate_quaternary(level, norm);

  const GadgetSpec& gs = gadget(family);
  int glabels = static_cast<int>(gs.edges.size());
  __int128 ecount = 1;
  for (int i = 0; i < level; ++i) {
    ecount *= glabels;
    if (ecount > max_edges_cap())
      fail_budget(std::string(family_name(family)) + " level " + std::to_string(level) +
                  " exceeds the edge cap " + std::to_string(max_edges_cap()) +
                  " (MFL_MAX_EDGES)");
  }

  MetricGraph g;
  g.family = family;
  g.normalization = norm;
  g.level = level;
  g.edge_length = norm == Normalization::weighted ? Rat64{1, ipow(gs.height, level)} : Rat64{1};

  g.addr.push_back(VertexAddress{VertexKind::root_bottom, 0, 0, 0, 0});
  g.addr.push_back(VertexAddress{VertexKind::root_top, 0, 0, 0, 0});
  g.y = {0, 1};
  g.edges.emplace_back(0, 1);

  std::vector<std::int32_t> node(static_cast<size_t>(gs.slots) + 2);
  for (int k = 1; k <= level; ++k) {
    for (auto& h : g.y) h *= gs.height;
    std::vector<std::pair<std::int32_t, std::int32_t>> next;
    next.reserve(g.edges.size() * static_cast<size_t>(glabels));
    std::int32_t next_id = static_cast<std::int32_t>(g.addr.size());
    for (size_t ei = 0; ei < g.edges.size(); ++ei) {
      // The parent edge path is the base-g expansion of the edge's position.
      std::uint64_t path = 0;
      {
        size_t x = ei;
        std::uint64_t m = 1;
        for (int d = 0; d < k - 1; ++d) {
          path += (x % static_cast<size_t>(glabels)) * m;
          x /= static_cast<size_t>(glabels);
          m *= 10;
        }
      }
      auto [t, h] = g.edges[ei];
      node[0] = t;
      node[static_cast<size_t>(gs.slots) + 1] = h;
      for (int s = 0; s < gs.slots; ++s) {
        VertexAddress a;
        a.kind = VertexKind::derived;
        a.birth = static_cast<std::uint8_t>(k);
        a.slot = static_cast<std::uint8_t>(s);
        a.path_len = static_cast<std::uint8_t>(k - 1);
        a.path = path;
        g.addr.push_back(a);
        g.y.push_back(g.y[static_cast<size_t>(t)] + gs.slot_y[static_cast<size_t>(s)]);
        node[static_cast<size_t>(s) + 1] = next_id++;
      }
      for (auto [en, ex] : gs.edges)
        next.emplace_back(node[static_cast<size_t>(en)], node[static_cast<size_t>(ex)]);
    }
    g.edges = std::move(next);
  }

  g.n_vertices = static_cast<std::int32_t>(g.addr.size());
  g.n_edges = static_cast<std::int64_t>(g.edges.size());
  g.bottom = 0;
  g.top = 1;
  g.build_csr();
  index_addresses(g);
  return g;
}

LowerInclusion include_lower_level(const MetricGraph& upper) {
  if (upper.family != Family::diamond && upper.family != Family::laakso &&
      upper.family != Family::m_variant)
    fail_domain("include_lower_level requires a recursive family graph");
  if (upper.level < 1) fail_domain("include_lower_level requires level >= 1");
  LowerInclusion inc;
  inc.lower = generate(upper.family, upper.level - 1, upper.normalization);
  inc.map.resize(static_cast<size_t>(inc.lower.n_vertices));
  for (std::int32_t v = 0; v < inc.lower.n_vertices; ++v) {
    std::int32_t w = upper.resolve(inc.lower.addr[static_cast<size_t>(v)]);
    if (w < 0) fail_internal("lower-level vertex missing upstairs: " + inc.lower.label(v));
    inc.map[static_cast<size_t>(v)] = w;
  }
  return inc;
}

std::pair<std::int32_t, std::int32_t> copy_endpoints(const MetricGraph& g, std::uint64_t path,
                                                     int len) {
  const GadgetSpec& gs = gadget(g.family);
  std::int32_t t = g.bottom, h = g.top;
  std::uint64_t prefix = 0;
  for (int i = 0; i < len; ++i) {
    int c = path_digit(path, len, i);
    if (c >= static_cast<int>(gs.edges.size())) fail_domain("edge label out of range in path");
    auto [en, ex] = gs.edges[static_cast<size_t>(c)];
    auto node_id = [&](int node) -> std::int32_t {
      if (node == 0) return t;
      if (node == gs.slots + 1) return h;
      VertexAddress a;
      a.kind = VertexKind::derived;
      a.birth = static_cast<std::uint8_t>(i + 1);
      a.slot = static_cast<std::uint8_t>(node - 1);
      a.path_len = static_cast<std::uint8_t>(i);
      a.path = prefix;
      std::int32_t id = g.resolve(a);
      if (id < 0) fail_domain("path too deep for level " + std::to_string(g.level));
      return id;
    };
    std::int32_t nt = node_id(en), nh = node_id(ex);
    t = nt;
    h = nh;
    prefix = path_append(prefix, c);
  }
  return {t, h};
}

bool copy_contains(const MetricGraph& g, std::uint64_t path, int len, std::int32_t v) {
  auto [t, h] = copy_endpoints(g, path, len);
  if (v == t || v == h) return true;
  const VertexAddress& a = g.addr[static_cast<size_t>(v)];
  if (a.kind != VertexKind::derived) return false;
  return path_is_prefix(path, len, a.path, a.path_len);
}

Subdiamond subdiamond_at(const MetricGraph& g, std::uint64_t path, int len) {
  if (g.family != Family::diamond) fail_domain("subdiamonds exist only in diamond graphs");
  if (len > g.level - 1) fail_domain("subdiamond height below 2");
  Subdiamond s;
  s.path = path;
  s.path_len = static_cast<std::uint8_t>(len);
  s.height = ipow(2, g.level - len);
  auto [t, h] = copy_endpoints(g, path, len);
  s.bottom = t;
  s.top = h;
  VertexAddress a;
  a.kind = VertexKind::derived;
  a.birth = static_cast<std::uint8_t>(len + 1);
  a.path_len = static_cast<std::uint8_t>(len);
  a.path = path;
  a.slot = 0;
  s.leftmost = g.resolve(a);
  a.slot = 1;
  s.rightmost = g.resolve(a);
  if (s.leftmost < 0 || s.rightmost < 0) fail_internal("subdiamond corners missing");
  return s;
}

std::vector<Subdiamond> enumerate_subdiamonds(const MetricGraph& g, std::int64_t min_height) {
  if (g.family != Family::diamond) fail_domain("enumerate_subdiamonds requires a diamond graph");
  std::int64_t full = ipow(2, g.level);
  if (min_height < 2 || min_height > full || (min_height & (min_height - 1)) != 0)
    fail_domain("min_height must be a power of 2 in [2, 2^level]");
  std::vector<Subdiamond> out;
  for (int k = 0; k <= g.level; ++k) {
    if (ipow(2, g.level - k) < min_height) break;
    std::int64_t npaths = ipow(4, k);
    for (std::int64_t i = 0; i < npaths; ++i) {
      std::uint64_t path = 0;
      std::int64_t x = i;
      std::uint64_t m = 1;
      for (int d = 0; d < k; ++d) {
        path += static_cast<std::uint64_t>(x % 4) * m;
        x /= 4;
        m *= 10;
      }
      out.push_back(subdiamond_at(g, path, k));
    }
  }
  return out;
}

}  // namespace mfl
