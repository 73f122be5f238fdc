#include "mfl/cycles.hpp"

#include <algorithm>
#include <set>

namespace mfl {

std::int64_t ipow(std::int64_t b, int e);  // graph.cpp

namespace {

bool adjacent(const MetricGraph& g, std::int32_t u, std::int32_t v) {
  auto nb = g.neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::int32_t slot_vertex(const MetricGraph& g, std::uint64_t path, int len, int slot) {
  VertexAddress a;
  a.kind = VertexKind::derived;
  a.birth = static_cast<std::uint8_t>(len + 1);
  a.slot = static_cast<std::uint8_t>(slot);
  a.path_len = static_cast<std::uint8_t>(len);
  a.path = path;
  std::int32_t id = g.resolve(a);
  if (id < 0) fail_internal("missing gadget slot vertex");
  return id;
}

// Left-branch bottom-to-top chain of a gadget: (edge label, lower node, upper
// node) taking the first upward edge at every node.
std::vector<std::pair<int, int>> left_chain(Family f) {
  const GadgetSpec& gs = gadget(f);
  std::vector<std::pair<int, int>> chain;  // (edge label, node reached)
  int at = 0;
  while (at != gs.slots + 1) {
    for (size_t e = 0; e < gs.edges.size(); ++e) {
      if (gs.edges[e].first == at) {
        chain.emplace_back(static_cast<int>(e), gs.edges[e].second);
        at = gs.edges[e].second;
        break;
      }
    }
  }
  return chain;
}

void canonical_geodesic_rec(const MetricGraph& g, std::uint64_t path, int len, std::int32_t tail,
                            std::int32_t head, const std::vector<std::pair<int, int>>& chain,
                            std::vector<std::int32_t>& out) {
  if (len == g.level) {
    out.push_back(head);
    return;
  }
  std::int32_t at = tail;
  for (auto [label, node] : chain) {
    std::int32_t next = node == gadget(g.family).slots + 1
                            ? head
                            : slot_vertex(g, path, len, node - 1);
    canonical_geodesic_rec(g, path_append(path, label), len + 1, at, next, chain, out);
    at = next;
  }
}

}  // namespace

Cycle canonical_cycle(const Cycle& c) {
  size_t n = c.vertices.size();
  size_t lo = 0;
  for (size_t i = 1; i < n; ++i)
    if (c.vertices[i] < c.vertices[lo]) lo = i;
  std::vector<std::int32_t> fwd(n), bwd(n);
  for (size_t i = 0; i < n; ++i) {
    fwd[i] = c.vertices[(lo + i) % n];
    bwd[i] = c.vertices[(lo + n - i) % n];
  }
  return Cycle{std::min(fwd, bwd)};
}

void check_cycle(const MetricGraph& g, const Cycle& c) {
  size_t n = c.vertices.size();
  if (n < 3) fail_domain("cycle needs at least 3 vertices");
  std::vector<std::int32_t> sorted = c.vertices;
  for (std::int32_t v : sorted) g.check_vertex(v, "cycle vertex");
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail_domain("cycle repeats a vertex");
  for (size_t i = 0; i < n; ++i)
    if (!adjacent(g, c.vertices[i], c.vertices[(i + 1) % n]))
      fail_domain("cycle has non-adjacent consecutive vertices");
}

std::vector<std::int32_t> canonical_geodesic(const MetricGraph& g, std::uint64_t path, int len) {
  auto [t, h] = copy_endpoints(g, path, len);
  std::vector<std::int32_t> out{t};
  canonical_geodesic_rec(g, path, len, t, h, left_chain(g.family), out);
  return out;
}

namespace {

// One side of a principal cycle: a bottom-to-top geodesic of the subdiamond
// through the given corner. Branch choices below the corner level are
// consumed from the selector in preorder.
struct SelectorCursor {
  const std::vector<int>* sel;
  size_t pos = 0;
  int fill;
  int next() {
    int c = pos < sel->size() ? (*sel)[pos] : fill;
    ++pos;
    if (c != 0 && c != 1) fail_domain("selector entries must be 0 (left) or 1 (right)");
    return c;
  }
};

void diamond_geodesic_rec(const MetricGraph& g, std::uint64_t path, int len, std::int32_t tail,
                          std::int32_t head, SelectorCursor& cur, std::vector<std::int32_t>& out) {
  if (len == g.level) {
    out.push_back(head);
    return;
  }
  int side = cur.next();
  std::int32_t mid = slot_vertex(g, path, len, side);
  diamond_geodesic_rec(g, path_append(path, side == 0 ? 0 : 2), len + 1, tail, mid, cur, out);
  diamond_geodesic_rec(g, path_append(path, side == 0 ? 1 : 3), len + 1, mid, head, cur, out);
}

}  // namespace

Cycle principal_cycle(const MetricGraph& g, const Subdiamond& s, const std::vector<int>& left_selector,
                      const std::vector<int>& right_selector) {
  if (g.family != Family::diamond) fail_domain("principal cycles live in diamond graphs");
  if (s.height < 2) fail_domain("subdiamond of height < 2 carries no cycle");
  int len = s.path_len;
  SelectorCursor lcur{&left_selector, 0, 0}, rcur{&right_selector, 0, 1};
  std::vector<std::int32_t> left{s.bottom}, right{s.bottom};
  diamond_geodesic_rec(g, path_append(s.path, 0), len + 1, s.bottom, s.leftmost, lcur, left);
  diamond_geodesic_rec(g, path_append(s.path, 1), len + 1, s.leftmost, s.top, lcur, left);
  diamond_geodesic_rec(g, path_append(s.path, 2), len + 1, s.bottom, s.rightmost, rcur, right);
  diamond_geodesic_rec(g, path_append(s.path, 3), len + 1, s.rightmost, s.top, rcur, right);
  Cycle c;
  c.vertices = left;
  for (size_t i = right.size() - 2; i >= 1; --i) c.vertices.push_back(right[i]);
  return c;
}

std::vector<Cycle> enumerate_simple_cycles(const MetricGraph& g, std::int64_t cap) {
  if (cap <= 0) fail_domain("cycle cap must be positive");
  constexpr std::int64_t kStepBudget = 200'000'000;
  std::vector<Cycle> out;
  std::vector<std::uint8_t> in_path(static_cast<size_t>(g.n_vertices), 0);
  std::vector<std::int32_t> path;
  std::int64_t steps = 0;

  auto dfs = [&](auto&& self, std::int32_t anchor, std::int32_t u) -> void {
    if (++steps > kStepBudget) fail_budget("cycle enumeration exceeded the step budget");
    for (std::int32_t w : g.neighbors(u)) {
      if (w == anchor && path.size() >= 3) {
        if (path[1] < path.back()) {
          if (static_cast<std::int64_t>(out.size()) == cap)
            fail_budget("more than " + std::to_string(cap) +
                        " cycles (cap reached; enumeration stopped)");
          out.push_back(Cycle{path});
        }
      } else if (w > anchor && !in_path[static_cast<size_t>(w)]) {
        in_path[static_cast<size_t>(w)] = 1;
        path.push_back(w);
        self(self, anchor, w);
        path.pop_back();
        in_path[static_cast<size_t>(w)] = 0;
      }
    }
  };

  for (std::int32_t a = 0; a < g.n_vertices; ++a) {
    path.assign(1, a);
    in_path[static_cast<size_t>(a)] = 1;
    dfs(dfs, a, a);
    in_path[static_cast<size_t>(a)] = 0;
  }
  std::sort(out.begin(), out.end(), [](const Cycle& x, const Cycle& y) {
    if (x.vertices.size() != y.vertices.size()) return x.vertices.size() < y.vertices.size();
    return x.vertices < y.vertices;
  });
  return out;
}

Subdiamond classify_cycle(const MetricGraph& g, const Cycle& c) {
  if (g.family != Family::diamond) fail_domain("classify_cycle requires a diamond graph");
  check_cycle(g, c);
  size_t m = c.vertices.size();
  size_t ibot = 0, itop = 0;
  for (size_t i = 1; i < m; ++i) {
    if (g.y[static_cast<size_t>(c.vertices[i])] < g.y[static_cast<size_t>(c.vertices[ibot])]) ibot = i;
    if (g.y[static_cast<size_t>(c.vertices[i])] > g.y[static_cast<size_t>(c.vertices[itop])]) itop = i;
  }
  std::int32_t bot = c.vertices[ibot], top = c.vertices[itop];
  for (size_t i = 0; i < m; ++i) {
    if (i != ibot && g.y[static_cast<size_t>(c.vertices[i])] == g.y[static_cast<size_t>(bot)])
      fail_internal("cycle has two lowest vertices; not principal");
    if (i != itop && g.y[static_cast<size_t>(c.vertices[i])] == g.y[static_cast<size_t>(top)])
      fail_internal("cycle has two highest vertices; not principal");
  }
  std::int64_t h = g.y[static_cast<size_t>(top)] - g.y[static_cast<size_t>(bot)];
  if (static_cast<std::int64_t>(m) != 2 * h || h < 2 || (h & (h - 1)) != 0)
    fail_internal("cycle length incompatible with any subdiamond");
  int k = g.level;
  for (std::int64_t x = h; x > 1; x /= 2) --k;

  std::uint64_t path = 0;
  std::int32_t t = g.bottom, hh = g.top;
  for (int d = 0; d < k; ++d) {
    int found = -1;
    std::int32_t ft = -1, fh = -1;
    std::int32_t a = slot_vertex(g, path, d, 0), b = slot_vertex(g, path, d, 1);
    const std::int32_t child_t[4] = {t, a, t, b};
    const std::int32_t child_h[4] = {a, hh, b, hh};
    for (int cl = 0; cl < 4; ++cl) {
      std::uint64_t cp = path_append(path, cl);
      auto contains = [&](std::int32_t v) {
        if (v == child_t[cl] || v == child_h[cl]) return true;
        const VertexAddress& av = g.addr[static_cast<size_t>(v)];
        return av.kind == VertexKind::derived &&
               path_is_prefix(cp, d + 1, av.path, av.path_len);
      };
      if (contains(bot) && contains(top)) {
        found = cl;
        ft = child_t[cl];
        fh = child_h[cl];
        break;
      }
    }
    if (found < 0) fail_internal("cycle fits no subdiamond at depth " + std::to_string(d));
    path = path_append(path, found);
    t = ft;
    hh = fh;
  }
  if (t != bot || hh != top) fail_internal("cycle extremes are not subdiamond endpoints");

  Subdiamond s = subdiamond_at(g, path, k);
  bool left_on = false, right_on = false;
  for (std::int32_t v : c.vertices) {
    if (v == s.leftmost) left_on = true;
    if (v == s.rightmost) right_on = true;
    if (!(v == s.bottom || v == s.top ||
          (g.addr[static_cast<size_t>(v)].kind == VertexKind::derived &&
           path_is_prefix(s.path, s.path_len, g.addr[static_cast<size_t>(v)].path,
                          g.addr[static_cast<size_t>(v)].path_len))))
      fail_internal("cycle leaves its subdiamond");
  }
  if (!left_on || !right_on) fail_internal("cycle misses a subdiamond corner");
  return s;
}

Cycle central_cycle(const MetricGraph& g, std::uint64_t path, int len) {
  if (g.family != Family::laakso) fail_domain("central cycles live in Laakso graphs");
  if (len > g.level - 1) fail_domain("no central cycle below the last level");
  std::vector<std::int32_t> a1 = canonical_geodesic(g, path_append(path, 1), len + 1);
  std::vector<std::int32_t> a3 = canonical_geodesic(g, path_append(path, 3), len + 1);
  std::vector<std::int32_t> a4 = canonical_geodesic(g, path_append(path, 4), len + 1);
  std::vector<std::int32_t> a2 = canonical_geodesic(g, path_append(path, 2), len + 1);
  Cycle c;
  c.vertices = a1;                                              // jl .. ml
  c.vertices.insert(c.vertices.end(), a3.begin() + 1, a3.end());  // .. jh
  for (size_t i = a4.size() - 1; i >= 1; --i) c.vertices.push_back(a4[i - 1]);  // .. mr
  for (size_t i = a2.size() - 1; i >= 2; --i) c.vertices.push_back(a2[i - 1]);  // .. back to jl
  return c;
}

Cycle isometric_cycle(const MetricGraph& g, int h, const std::string& copy_path) {
  if (g.family != Family::laakso) fail_domain("isometric 4^h cycles live in Laakso graphs");
  if (h < 1 || h > g.level) fail_domain("h must be within [1, level]");
  int len = g.level - h;
  std::uint64_t path = 0;
  if (!copy_path.empty()) {
    if (static_cast<int>(copy_path.size()) != len)
      fail_domain("copy selector must have length level - h = " + std::to_string(len));
    for (char ch : copy_path) {
      if (ch < '0' || ch > '5') fail_domain("copy selector labels must be 0..5");
      path = path_append(path, ch - '0');
    }
  }
  return central_cycle(g, path, len);
}

CycleFamily cycle_family(const MetricGraph& g, int s, int t, const std::string& root_path) {
  if (g.family != Family::laakso) fail_domain("cycle families live in Laakso graphs");
  int n = g.level;
  if (!(n > s && s > t && t >= 1)) fail_domain("cycle_family needs n > s > t >= 1");

  std::uint64_t root = 0;
  if (root_path.empty()) {
    root = 1;
    for (int i = 1; i < n - s; ++i) root = path_append(root, 0);
  } else {
    if (static_cast<int>(root_path.size()) != n - s)
      fail_domain("root path must have length n - s = " + std::to_string(n - s));
    for (char ch : root_path) {
      if (ch < '0' || ch > '5') fail_domain("root path labels must be 0..5");
      root = path_append(root, ch - '0');
    }
  }

  CycleFamily fam;
  fam.n = n;
  fam.s = s;
  fam.t = t;

  auto interior_of = [&](std::uint64_t cp, int cl, std::int32_t v) {
    const VertexAddress& a = g.addr[static_cast<size_t>(v)];
    return a.kind == VertexKind::derived && path_is_prefix(cp, cl, a.path, a.path_len);
  };

  auto build = [&](auto&& self, const std::string& tau, std::uint64_t path, int len) -> void {
    Cycle cyc = central_cycle(g, path, len);
    fam.tree[tau] = cyc;
    if (static_cast<int>(tau.size()) == s - t) return;

    // Order the four sub-copies by first interior contact along the cycle,
    // walking from the lowest vertex toward its smaller-id neighbor.
    size_t m = cyc.vertices.size();
    size_t lo = 0;
    for (size_t i = 1; i < m; ++i)
      if (g.y[static_cast<size_t>(cyc.vertices[i])] < g.y[static_cast<size_t>(cyc.vertices[lo])])
        lo = i;
    bool forward = cyc.vertices[(lo + 1) % m] < cyc.vertices[(lo + m - 1) % m];
    std::vector<std::int32_t> walk(m);
    for (size_t i = 0; i < m; ++i)
      walk[i] = forward ? cyc.vertices[(lo + i) % m] : cyc.vertices[(lo + m - i) % m];

    const int kids[4] = {1, 2, 3, 4};
    std::pair<size_t, int> touch[4];
    for (int ki = 0; ki < 4; ++ki) {
      std::uint64_t cp = path_append(path, kids[ki]);
      size_t first = m;
      for (size_t i = 0; i < m; ++i)
        if (interior_of(cp, len + 1, walk[i])) { first = i; break; }
      if (first == m) fail_internal("gadget arc missing from central cycle");
      touch[ki] = {first, kids[ki]};
    }
    std::sort(touch, touch + 4);
    for (int ki = 0; ki < 4; ++ki)
      self(self, tau + static_cast<char>('0' + ki), path_append(path, touch[ki].second), len + 1);
  };
  build(build, "", root, n - s);

  // Construction-time verification of the family laws.
  Cycle canon = central_cycle(g, 0, 0);
  std::set<std::int32_t> canon_set(canon.vertices.begin(), canon.vertices.end());
  for (const auto& [tau, cyc] : fam.tree) {
    std::int64_t want = ipow(4, s - static_cast<int>(tau.size()));
    if (cyc.hops() != want) fail_internal("family cycle has wrong length at '" + tau + "'");
  }
  for (const auto& [tau, cyc] : fam.tree) {
    if (static_cast<int>(tau.size()) == s - t) continue;
    std::set<std::int32_t> parent(cyc.vertices.begin(), cyc.vertices.end());
    std::vector<std::set<std::int32_t>> kid_sets;
    for (int ki = 0; ki < 4; ++ki) {
      const Cycle& kid = fam.tree.at(tau + static_cast<char>('0' + ki));
      kid_sets.emplace_back(kid.vertices.begin(), kid.vertices.end());
      bool touches = false;
      for (std::int32_t v : kid_sets.back())
        if (parent.count(v)) { touches = true; break; }
      if (!touches) fail_internal("family child does not touch its parent");
    }
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        for (std::int32_t v : kid_sets[static_cast<size_t>(a)])
          if (kid_sets[static_cast<size_t>(b)].count(v))
            fail_internal("family children intersect");
  }
  bool root_touches = false;
  for (std::int32_t v : fam.tree.at("").vertices)
    if (canon_set.count(v)) { root_touches = true; break; }
  if (!root_touches) fail_domain("chosen root copy does not touch the canonical cycle");
  return fam;
}

QuotientGraph collapse_subdiamonds(const MetricGraph& g, const std::vector<Subdiamond>& list) {
  if (g.family != Family::diamond) fail_domain("collapse_subdiamonds requires a diamond graph");
  for (const Subdiamond& s : list)
    if (s.height < 2 || s.height != ipow(2, g.level - s.path_len))
      fail_domain("malformed subdiamond in collapse list");
  for (size_t i = 0; i < list.size(); ++i)
    for (size_t j = i + 1; j < list.size(); ++j) {
      if (path_is_prefix(list[i].path, list[i].path_len, list[j].path, list[j].path_len) ||
          path_is_prefix(list[j].path, list[j].path_len, list[i].path, list[i].path_len))
        fail_domain("nested subdiamonds " + list[i].path_string() + " and " +
                    list[j].path_string());
    }

  const std::int32_t V = g.n_vertices;
  std::vector<std::int32_t> owner(static_cast<size_t>(V), -1);
  for (size_t si = 0; si < list.size(); ++si) {
    const Subdiamond& s = list[si];
    for (std::int32_t v = 0; v < V; ++v) {
      const VertexAddress& a = g.addr[static_cast<size_t>(v)];
      if (a.kind == VertexKind::derived && path_is_prefix(s.path, s.path_len, a.path, a.path_len)) {
        if (owner[static_cast<size_t>(v)] >= 0) fail_internal("overlapping subdiamond interiors");
        owner[static_cast<size_t>(v)] = static_cast<std::int32_t>(si);
      }
    }
  }

  QuotientGraph q;
  q.collapsed = list;
  q.projection.assign(static_cast<size_t>(V), -1);
  MetricGraph& out = q.graph;
  out.family = Family::generic;
  out.normalization = g.normalization;
  out.level = g.level;
  out.edge_length = g.edge_length;

  for (std::int32_t v = 0; v < V; ++v) {
    if (owner[static_cast<size_t>(v)] >= 0) continue;
    q.projection[static_cast<size_t>(v)] = static_cast<std::int32_t>(out.generic_labels.size());
    out.generic_labels.push_back(g.label(v));
    out.y.push_back(g.y[static_cast<size_t>(v)]);
  }
  // path interiors, one run of h-1 vertices per collapsed subdiamond
  std::vector<std::int32_t> path_base(list.size());
  for (size_t si = 0; si < list.size(); ++si) {
    const Subdiamond& s = list[si];
    path_base[si] = static_cast<std::int32_t>(out.generic_labels.size());
    for (std::int64_t pos = 1; pos < s.height; ++pos) {
      out.generic_labels.push_back("collapsed:" + s.path_string() + ":" + std::to_string(pos));
      out.y.push_back(g.y[static_cast<size_t>(s.top)] - pos);
    }
  }
  for (std::int32_t v = 0; v < V; ++v) {
    std::int32_t si = owner[static_cast<size_t>(v)];
    if (si < 0) continue;
    const Subdiamond& s = list[static_cast<size_t>(si)];
    std::int64_t pos = g.y[static_cast<size_t>(s.top)] - g.y[static_cast<size_t>(v)];
    if (pos <= 0 || pos >= s.height) fail_internal("interior vertex at boundary position");
    q.projection[static_cast<size_t>(v)] = path_base[static_cast<size_t>(si)] +
                                           static_cast<std::int32_t>(pos) - 1;
  }

  std::set<std::pair<std::int32_t, std::int32_t>> edge_set;
  for (auto [u, v] : g.edges) {
    std::int32_t pu = q.projection[static_cast<size_t>(u)], pv = q.projection[static_cast<size_t>(v)];
    if (pu == pv) fail_internal("collapse produced a self-loop");
    edge_set.insert({std::min(pu, pv), std::max(pu, pv)});
  }
  out.edges.assign(edge_set.begin(), edge_set.end());
  out.n_vertices = static_cast<std::int32_t>(out.generic_labels.size());
  out.n_edges = static_cast<std::int64_t>(out.edges.size());
  out.bottom = q.projection[static_cast<size_t>(g.bottom)];
  out.top = q.projection[static_cast<size_t>(g.top)];
  out.build_csr();
  return q;
}

}  // namespace mfl
