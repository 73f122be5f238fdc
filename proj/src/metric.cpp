#include "mfl/metric.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mfl {

std::int64_t ipow(std::int64_t b, int e);  // graph.cpp

namespace {

// BFS into a caller-provided buffer; -1 marks unreached (graphs here are
// connected, but the quotient code reuses this defensively).
void bfs(const MetricGraph& g, std::int32_t source, std::vector<std::int64_t>& dist,
         std::vector<std::int32_t>& queue) {
  dist.assign(static_cast<size_t>(g.n_vertices), -1);
  queue.clear();
  queue.push_back(source);
  dist[static_cast<size_t>(source)] = 0;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    std::int32_t u = queue[qi];
    std::int64_t du = dist[static_cast<size_t>(u)];
    for (std::int32_t w : g.neighbors(u)) {
      if (dist[static_cast<size_t>(w)] < 0) {
        dist[static_cast<size_t>(w)] = du + 1;
        queue.push_back(w);
      }
    }
  }
}

std::int64_t ecc_of(const MetricGraph& g, std::int32_t v, std::vector<std::int64_t>& dist,
                    std::vector<std::int32_t>& queue) {
  bfs(g, v, dist, queue);
  return *std::max_element(dist.begin(), dist.end());
}

}  // namespace

DistanceVector sssp(const MetricGraph& g, std::int32_t source) {
  g.check_vertex(source, "source");
  DistanceVector dv;
  dv.source = source;
  std::vector<std::int32_t> queue;
  queue.reserve(static_cast<size_t>(g.n_vertices));
  bfs(g, source, dv.hops, queue);
  return dv;
}

std::int64_t radius_to_hops(const MetricGraph& g, const Rat64& radius) {
  if (radius < Rat64{0}) fail_domain("radius must be nonnegative");
  Rat64 q = radius / g.edge_length;
  return q.num / q.den;
}

std::vector<std::int64_t> eccentricities(const MetricGraph& g, Exec ex) {
  std::vector<std::int64_t> ecc(static_cast<size_t>(g.n_vertices));
  if (ex == Exec::serial) {
    std::vector<std::int64_t> dist;
    std::vector<std::int32_t> queue;
    queue.reserve(static_cast<size_t>(g.n_vertices));
    for (std::int32_t v = 0; v < g.n_vertices; ++v) ecc[static_cast<size_t>(v)] = ecc_of(g, v, dist, queue);
    return ecc;
  }
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<std::int64_t> dist;
    std::vector<std::int32_t> queue;
    queue.reserve(static_cast<size_t>(g.n_vertices));
#pragma omp for schedule(dynamic, 16)
    for (std::int32_t v = 0; v < g.n_vertices; ++v)
      ecc[static_cast<size_t>(v)] = ecc_of(g, v, dist, queue);
  }
  return ecc;
#else
  return eccentricities(g, Exec::serial);
#endif
}

std::int64_t diameter_hops(const MetricGraph& g) {
  if (g.n_vertices == 0) fail_domain("diameter of an empty graph");
  if (g.n_vertices == 1) return 0;
  std::vector<std::int64_t> dist;
  std::vector<std::int32_t> queue;
  queue.reserve(static_cast<size_t>(g.n_vertices));

  auto farthest = [&](const std::vector<std::int64_t>& d) {
    std::int32_t best = 0;
    for (std::int32_t v = 1; v < g.n_vertices; ++v)
      if (d[static_cast<size_t>(v)] > d[static_cast<size_t>(best)]) best = v;
    return best;
  };

  // Double sweep for a strong initial lower bound and a central root.
  bfs(g, 0, dist, queue);
  std::int32_t a = farthest(dist);
  std::vector<std::int32_t> parent(static_cast<size_t>(g.n_vertices), -1);
  bfs(g, a, dist, queue);
  std::int32_t b = farthest(dist);
  std::int64_t lb = dist[static_cast<size_t>(b)];
  // parents along the BFS from a, to pick the midpoint of an a..b geodesic
  {
    std::vector<std::int64_t> da = dist;
    parent[static_cast<size_t>(a)] = a;
    for (std::int32_t u : queue)
      for (std::int32_t w : g.neighbors(u))
        if (da[static_cast<size_t>(w)] == da[static_cast<size_t>(u)] + 1 &&
            parent[static_cast<size_t>(w)] < 0)
          parent[static_cast<size_t>(w)] = u;
    // unreached parents stay -1; connected graphs fill everything
  }
  std::int32_t r = b;
  for (std::int64_t i = 0; i < lb / 2; ++i) r = parent[static_cast<size_t>(r)];

  bfs(g, r, dist, queue);
  std::int64_t max_depth = *std::max_element(dist.begin(), dist.end());
  lb = std::max(lb, max_depth);

  // Fringe processing: vertices at depth i from r, descending i. Once
  // i <= lb/2, no remaining vertex can extend the diameter.
  std::vector<std::vector<std::int32_t>> fringe(static_cast<size_t>(max_depth) + 1);
  for (std::int32_t v = 0; v < g.n_vertices; ++v)
    fringe[static_cast<size_t>(dist[static_cast<size_t>(v)])].push_back(v);
  std::vector<std::int64_t> d2;
  for (std::int64_t i = max_depth; 2 * i > lb; --i) {
    for (std::int32_t v : fringe[static_cast<size_t>(i)]) {
      lb = std::max(lb, ecc_of(g, v, d2, queue));
      if (2 * i <= lb) break;
    }
  }
  return lb;
}

Rat64 diameter(const MetricGraph& g) { return hops_to_length(g, diameter_hops(g)); }

std::vector<std::int32_t> ball(const MetricGraph& g, std::int32_t center, const Rat64& radius) {
  g.check_vertex(center, "center");
  std::int64_t rh = radius_to_hops(g, radius);
  std::vector<std::int64_t> dist(static_cast<size_t>(g.n_vertices), -1);
  std::vector<std::int32_t> queue{center};
  dist[static_cast<size_t>(center)] = 0;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    std::int32_t u = queue[qi];
    std::int64_t du = dist[static_cast<size_t>(u)];
    if (du == rh) continue;
    for (std::int32_t w : g.neighbors(u)) {
      if (dist[static_cast<size_t>(w)] < 0) {
        dist[static_cast<size_t>(w)] = du + 1;
        queue.push_back(w);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

namespace {

// Skeleton hop distances of a family's replacement gadget, nodes indexed
// 0 = tail, 1..slots = slots, slots+1 = head. Computed once from the level-1
// graph, whose generation order puts slot s at vertex id 2+s.
struct Skeleton {
  int nodes = 0;
  std::array<std::array<std::int64_t, 10>, 10> d{};
};

Skeleton make_skeleton(Family f) {
  MetricGraph g1 = generate(f, 1, Normalization::unweighted);
  const GadgetSpec& gs = gadget(f);
  Skeleton sk;
  sk.nodes = gs.slots + 2;
  auto node_vertex = [&](int node) -> std::int32_t {
    if (node == 0) return g1.bottom;
    if (node == gs.slots + 1) return g1.top;
    return static_cast<std::int32_t>(1 + node);
  };
  for (int i = 0; i < sk.nodes; ++i) {
    DistanceVector dv = sssp(g1, node_vertex(i));
    for (int j = 0; j < sk.nodes; ++j)
      sk.d[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          dv.hops[static_cast<size_t>(node_vertex(j))];
  }
  return sk;
}

const Skeleton& skeleton(Family f) {
  static const Skeleton dia = make_skeleton(Family::diamond);
  static const Skeleton laa = make_skeleton(Family::laakso);
  static const Skeleton mva = make_skeleton(Family::m_variant);
  switch (f) {
    case Family::diamond: return dia;
    case Family::laakso: return laa;
    default: return mva;
  }
}

// Exact u-v hop distance by folding u and v outward through their nested
// gadget copies. A copy meets the rest of the graph only at its two
// endpoints, so positions reduce to skeleton nodes plus hop offsets.
std::int64_t oracle_hops(const MetricGraph& g, std::int32_t u, std::int32_t v) {
  if (u == v) return 0;
  const std::int64_t H = g.y[static_cast<size_t>(g.top)];
  const VertexAddress& au = g.addr[static_cast<size_t>(u)];
  const VertexAddress& av = g.addr[static_cast<size_t>(v)];
  if (au.kind == VertexKind::root_bottom) return g.y[static_cast<size_t>(v)];
  if (au.kind == VertexKind::root_top) return H - g.y[static_cast<size_t>(v)];
  if (av.kind == VertexKind::root_bottom) return g.y[static_cast<size_t>(u)];
  if (av.kind == VertexKind::root_top) return H - g.y[static_cast<size_t>(u)];

  const Skeleton& sk = skeleton(g.family);
  const GadgetSpec& gs = gadget(g.family);
  const int T = 0, HD = gs.slots + 1;
  const int n = g.level;
  const int lu = au.path_len, lv = av.path_len;
  auto unit = [&](int k) { return ipow(gs.height, k); };

  int L = 0;
  while (L < lu && L < lv && path_digit(au.path, lu, L) == path_digit(av.path, lv, L)) ++L;

  struct Access {
    int node[2];
    std::int64_t off[2];
    int count;
  };
  auto fold = [&](const VertexAddress& a, int la) -> Access {
    if (la == L) return {{a.slot + 1, 0}, {0, 0}, 1};
    std::int64_t db = sk.d[static_cast<size_t>(a.slot) + 1][static_cast<size_t>(T)] * unit(n - la - 1);
    std::int64_t dt = sk.d[static_cast<size_t>(a.slot) + 1][static_cast<size_t>(HD)] * unit(n - la - 1);
    for (int j = la - 1; j >= L + 1; --j) {
      auto [en, ex] = gs.edges[static_cast<size_t>(path_digit(a.path, la, j))];
      std::int64_t h = unit(n - j - 1);
      std::int64_t ndb = std::min(db + sk.d[static_cast<size_t>(en)][static_cast<size_t>(T)] * h,
                                  dt + sk.d[static_cast<size_t>(ex)][static_cast<size_t>(T)] * h);
      std::int64_t ndt = std::min(db + sk.d[static_cast<size_t>(en)][static_cast<size_t>(HD)] * h,
                                  dt + sk.d[static_cast<size_t>(ex)][static_cast<size_t>(HD)] * h);
      db = ndb;
      dt = ndt;
    }
    auto [en, ex] = gs.edges[static_cast<size_t>(path_digit(a.path, la, L))];
    return {{en, ex}, {db, dt}, 2};
  };

  Access acu = fold(au, lu), acv = fold(av, lv);
  std::int64_t h = unit(n - L - 1);
  std::int64_t best = -1;
  for (int i = 0; i < acu.count; ++i)
    for (int j = 0; j < acv.count; ++j) {
      std::int64_t cand =
          acu.off[i] +
          sk.d[static_cast<size_t>(acu.node[i])][static_cast<size_t>(acv.node[j])] * h +
          acv.off[j];
      if (best < 0 || cand < best) best = cand;
    }
  return best;
}

}  // namespace

OracleResult distance_oracle(const MetricGraph& g, std::int32_t u, std::int32_t v) {
  g.check_vertex(u, "vertex");
  g.check_vertex(v, "vertex");
  if (g.family != Family::diamond && g.family != Family::laakso &&
      g.family != Family::m_variant) {
    DistanceVector dv = sssp(g, u);
    std::int64_t h = dv.hops[static_cast<size_t>(v)];
    if (h < 0) fail_domain("vertices are not connected");
    return {hops_to_length(g, h), h, "bfs fallback: no recursive address structure"};
  }
  std::int64_t h = oracle_hops(g, u, v);
  return {hops_to_length(g, h), h, nullptr};
}

GeometryProfile geometry_profile(const MetricGraph& g, const std::vector<Rat64>& radii, Exec ex) {
  if (radii.empty()) fail_domain("geometry_profile needs at least one radius");
  std::vector<std::int64_t> rh(radii.size());
  for (size_t i = 0; i < radii.size(); ++i) rh[i] = radius_to_hops(g, radii[i]);
  std::int64_t max_r = *std::max_element(rh.begin(), rh.end());

  std::vector<std::int64_t> best(radii.size(), 0);
  auto scan_center = [&](std::int32_t c, std::vector<std::int64_t>& dist,
                         std::vector<std::int32_t>& queue, std::vector<std::int64_t>& hist,
                         std::vector<std::int64_t>& local_best) {
    bfs(g, c, dist, queue);
    std::fill(hist.begin(), hist.end(), 0);
    for (std::int64_t d : dist)
      if (d >= 0 && d <= max_r) ++hist[static_cast<size_t>(d)];
    std::partial_sum(hist.begin(), hist.end(), hist.begin());
    for (size_t i = 0; i < rh.size(); ++i)
      local_best[i] = std::max(local_best[i], hist[static_cast<size_t>(rh[i])]);
  };

  if (ex == Exec::serial) {
    std::vector<std::int64_t> dist, hist(static_cast<size_t>(max_r) + 1);
    std::vector<std::int32_t> queue;
    for (std::int32_t c = 0; c < g.n_vertices; ++c) scan_center(c, dist, queue, hist, best);
  } else {
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<std::int64_t> dist, hist(static_cast<size_t>(max_r) + 1);
      std::vector<std::int32_t> queue;
      std::vector<std::int64_t> local(radii.size(), 0);
#pragma omp for schedule(dynamic, 16)
      for (std::int32_t c = 0; c < g.n_vertices; ++c) scan_center(c, dist, queue, hist, local);
#pragma omp critical
      for (size_t i = 0; i < best.size(); ++i) best[i] = std::max(best[i], local[i]);
    }
#else
    return geometry_profile(g, radii, Exec::serial);
#endif
  }

  GeometryProfile p;
  for (size_t i = 0; i < radii.size(); ++i) p.entries.emplace_back(radii[i], best[i]);
  return p;
}

}  // namespace mfl
