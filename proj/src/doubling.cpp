#include <algorithm>
#include <bit>
#include <cstring>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "mfl/metric.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mfl {

namespace {

constexpr std::int32_t kScanMaxVertices = 4096;
constexpr std::int64_t kMisNodeBudget = 200'000;
constexpr std::int32_t kMisMaxBall = 4096;

using DistFn = std::function<std::int64_t(std::int32_t, std::int32_t)>;

// All-pairs hop distances plus, per vertex, the vertex list sorted by
// (distance, id) with bucket offsets. Backs the ball scan.
struct ScanIndex {
  std::int32_t V = 0;
  std::int64_t diam = 0;
  std::vector<std::int16_t> dist;       // V*V
  std::vector<std::uint16_t> order;     // V*V, row v = ids sorted by (dist from v, id)
  std::vector<std::int32_t> bucket;     // V*(diam+2), prefix offsets into order rows
  std::int16_t d(std::int32_t u, std::int32_t v) const {
    return dist[static_cast<size_t>(u) * static_cast<size_t>(V) + static_cast<size_t>(v)];
  }
  const std::int16_t* row_dist(std::int32_t v) const {
    return dist.data() + static_cast<size_t>(v) * static_cast<size_t>(V);
  }
  const std::uint16_t* row_order(std::int32_t v) const {
    return order.data() + static_cast<size_t>(v) * static_cast<size_t>(V);
  }
  const std::int32_t* row_bucket(std::int32_t v) const {
    return bucket.data() + static_cast<size_t>(v) * static_cast<size_t>(diam + 2);
  }
};

ScanIndex build_scan_index(const MetricGraph& g, Exec ex) {
  if (g.n_vertices > kScanMaxVertices)
    fail_budget("scan_all_balls needs an all-pairs matrix; vertex count " +
                std::to_string(g.n_vertices) + " exceeds the limit " +
                std::to_string(kScanMaxVertices));
  ScanIndex ix;
  ix.V = g.n_vertices;
  ix.diam = diameter_hops(g);
  if (ix.diam > 32000) fail_budget("hop diameter too large for the scan matrix");
  size_t V = static_cast<size_t>(ix.V);
  ix.dist.assign(V * V, -1);
  ix.order.resize(V * V);
  ix.bucket.assign(V * static_cast<size_t>(ix.diam + 2), 0);

  auto fill_row = [&](std::int32_t s, std::vector<std::int64_t>& dist64,
                      std::vector<std::int32_t>& queue) {
    dist64.assign(V, -1);
    queue.clear();
    queue.push_back(s);
    dist64[static_cast<size_t>(s)] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      std::int32_t u = queue[qi];
      for (std::int32_t w : g.neighbors(u))
        if (dist64[static_cast<size_t>(w)] < 0) {
          dist64[static_cast<size_t>(w)] = dist64[static_cast<size_t>(u)] + 1;
          queue.push_back(w);
        }
    }
    std::int16_t* drow = ix.dist.data() + static_cast<size_t>(s) * V;
    std::int32_t* brow = ix.bucket.data() + static_cast<size_t>(s) * static_cast<size_t>(ix.diam + 2);
    for (size_t v = 0; v < V; ++v) {
      drow[v] = static_cast<std::int16_t>(dist64[v]);
      ++brow[dist64[v] + 1];
    }
    for (std::int64_t i = 1; i <= ix.diam + 1; ++i) brow[i] += brow[i - 1];
    std::vector<std::int32_t> pos(brow, brow + ix.diam + 1);
    std::uint16_t* orow = ix.order.data() + static_cast<size_t>(s) * V;
    for (size_t v = 0; v < V; ++v) orow[pos[static_cast<size_t>(drow[v])]++] = static_cast<std::uint16_t>(v);
  };

  if (ex == Exec::serial) {
    std::vector<std::int64_t> d64;
    std::vector<std::int32_t> q;
    for (std::int32_t s = 0; s < ix.V; ++s) fill_row(s, d64, q);
  } else {
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<std::int64_t> d64;
      std::vector<std::int32_t> q;
#pragma omp for schedule(dynamic, 16)
      for (std::int32_t s = 0; s < ix.V; ++s) fill_row(s, d64, q);
    }
#else
    std::vector<std::int64_t> d64;
    std::vector<std::int32_t> q;
    for (std::int32_t s = 0; s < ix.V; ++s) fill_row(s, d64, q);
#endif
  }
  return ix;
}

// Exact max independent set on the conflict graph (members within distance h
// of each other), branch and bound with a node budget. Returns -1 if the
// budget ran out.
std::int64_t exact_mis(const std::vector<std::int32_t>& members, const DistFn& dd,
                       std::int64_t h, std::int64_t seed_best) {
  std::int32_t m = static_cast<std::int32_t>(members.size());
  if (m > kMisMaxBall) return -1;
  size_t W = (static_cast<size_t>(m) + 63) / 64;
  // order by conflict degree, densest first, so early branches prune hard
  std::vector<std::int32_t> deg(static_cast<size_t>(m), 0);
  std::vector<std::uint64_t> nb(W * static_cast<size_t>(m), 0);
  for (std::int32_t i = 0; i < m; ++i)
    for (std::int32_t j = i + 1; j < m; ++j)
      if (dd(members[static_cast<size_t>(i)], members[static_cast<size_t>(j)]) <= h) {
        ++deg[static_cast<size_t>(i)];
        ++deg[static_cast<size_t>(j)];
      }
  std::vector<std::int32_t> perm(static_cast<size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::int32_t a, std::int32_t b) {
    if (deg[static_cast<size_t>(a)] != deg[static_cast<size_t>(b)])
      return deg[static_cast<size_t>(a)] > deg[static_cast<size_t>(b)];
    return a < b;
  });
  std::vector<std::int32_t> rank(static_cast<size_t>(m));
  for (std::int32_t i = 0; i < m; ++i) rank[static_cast<size_t>(perm[static_cast<size_t>(i)])] = i;
  for (std::int32_t i = 0; i < m; ++i)
    for (std::int32_t j = i + 1; j < m; ++j)
      if (dd(members[static_cast<size_t>(i)], members[static_cast<size_t>(j)]) <= h) {
        std::int32_t a = rank[static_cast<size_t>(i)], b = rank[static_cast<size_t>(j)];
        nb[static_cast<size_t>(a) * W + (static_cast<size_t>(b) >> 6)] |= 1ULL << (b & 63);
        nb[static_cast<size_t>(b) * W + (static_cast<size_t>(a) >> 6)] |= 1ULL << (a & 63);
      }

  std::int64_t best = seed_best, nodes = 0;
  bool aborted = false;
  std::vector<std::vector<std::uint64_t>> pool(static_cast<size_t>(m) + 2,
                                               std::vector<std::uint64_t>(W));
  auto popcnt = [&](const std::uint64_t* s) {
    std::int64_t c = 0;
    for (size_t w = 0; w < W; ++w) c += std::popcount(s[w]);
    return c;
  };
  auto rec = [&](auto&& self, std::uint64_t* cand, std::int64_t size, int depth) -> void {
    if (aborted) return;
    if (++nodes > kMisNodeBudget) { aborted = true; return; }
    std::int64_t pc = popcnt(cand);
    if (pc == 0) {
      best = std::max(best, size);
      return;
    }
    if (size + pc <= best) return;
    std::int32_t v = -1;
    for (size_t w = 0; w < W; ++w)
      if (cand[w]) { v = static_cast<std::int32_t>(w * 64 + static_cast<size_t>(std::countr_zero(cand[w]))); break; }
    std::uint64_t* next = pool[static_cast<size_t>(depth)].data();
    // include v
    for (size_t w = 0; w < W; ++w) next[w] = cand[w] & ~nb[static_cast<size_t>(v) * W + w];
    next[static_cast<size_t>(v) >> 6] &= ~(1ULL << (v & 63));
    self(self, next, size + 1, depth + 1);
    // exclude v
    cand[static_cast<size_t>(v) >> 6] &= ~(1ULL << (v & 63));
    self(self, cand, size, depth + 1);
  };
  std::vector<std::uint64_t> all(W, 0);
  for (std::int32_t i = 0; i < m; ++i) all[static_cast<size_t>(i) >> 6] |= 1ULL << (i & 63);
  rec(rec, all.data(), 0, 0);
  return aborted ? -1 : best;
}

// Exact hop diameter of a member set.
std::int64_t set_diameter(const std::vector<std::int32_t>& members, const DistFn& dd) {
  std::int64_t bd = 0;
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i + 1; j < members.size(); ++j)
      bd = std::max(bd, dd(members[i], members[j]));
  return bd;
}

// Greedy packing over members in ascending id order: admit a point when it is
// further than h from everything admitted so far. Any such set certifies that
// a cover by sets of diameter at most h needs at least its size.
std::int64_t greedy_packing(const std::vector<std::int32_t>& members_by_id, const DistFn& dd,
                            std::int64_t h, std::vector<std::int32_t>& scratch) {
  scratch.clear();
  for (std::int32_t w : members_by_id) {
    bool ok = true;
    for (std::int32_t s : scratch)
      if (dd(w, s) <= h) { ok = false; break; }
    if (ok) scratch.push_back(w);
  }
  return static_cast<std::int64_t>(scratch.size());
}

// Pairing bound: when no three members are pairwise within h, every set of
// diameter at most h holds at most two members, so ceil(|B| / 2) sets are
// needed. Returns 0 when a triple exists.
std::int64_t pairing_bound(const std::vector<std::int32_t>& members, const DistFn& dd,
                           std::int64_t h) {
  std::int32_t m = static_cast<std::int32_t>(members.size());
  if (m > kMisMaxBall) return 0;
  size_t W = (static_cast<size_t>(m) + 63) / 64;
  std::vector<std::uint64_t> nb(W * static_cast<size_t>(m), 0);
  for (std::int32_t i = 0; i < m; ++i)
    for (std::int32_t j = i + 1; j < m; ++j)
      if (dd(members[static_cast<size_t>(i)], members[static_cast<size_t>(j)]) <= h) {
        nb[static_cast<size_t>(i) * W + (static_cast<size_t>(j) >> 6)] |= 1ULL << (j & 63);
        nb[static_cast<size_t>(j) * W + (static_cast<size_t>(i) >> 6)] |= 1ULL << (i & 63);
      }
  for (std::int32_t i = 0; i < m; ++i)
    for (std::int32_t j = i + 1; j < m; ++j) {
      if (!(nb[static_cast<size_t>(i) * W + (static_cast<size_t>(j) >> 6)] & (1ULL << (j & 63))))
        continue;
      for (size_t w = 0; w < W; ++w)
        if (nb[static_cast<size_t>(i) * W + w] & nb[static_cast<size_t>(j) * W + w]) return 0;
    }
  return (static_cast<std::int64_t>(m) + 1) / 2;
}

// Greedy cover of the members by balls of radius rho drawn around members,
// intersected with the ball. Ties go to the lowest center id. With rho = 0
// this degenerates to singletons.
std::int64_t greedy_cover(const std::vector<std::int32_t>& members_by_id, const DistFn& dd,
                          std::int64_t rho) {
  std::int32_t m = static_cast<std::int32_t>(members_by_id.size());
  if (m == 0) return 0;
  if (rho <= 0) return m;
  std::vector<char> covered(static_cast<size_t>(m), 0);
  std::int64_t count = 0, remaining = m;
  while (remaining > 0) {
    std::int32_t best = -1;
    std::int64_t best_cov = 0;
    for (std::int32_t i = 0; i < m; ++i) {
      std::int64_t cov = 0;
      for (std::int32_t j = 0; j < m; ++j)
        if (!covered[static_cast<size_t>(j)] &&
            dd(members_by_id[static_cast<size_t>(i)], members_by_id[static_cast<size_t>(j)]) <= rho)
          ++cov;
      if (cov > best_cov) { best_cov = cov; best = i; }
    }
    if (best < 0) fail_internal("greedy cover stalled");
    for (std::int32_t j = 0; j < m; ++j)
      if (!covered[static_cast<size_t>(j)] &&
          dd(members_by_id[static_cast<size_t>(best)], members_by_id[static_cast<size_t>(j)]) <= rho) {
        covered[static_cast<size_t>(j)] = 1;
        --remaining;
      }
    ++count;
  }
  return count;
}

// Certify and bound one ball: exact-MIS upgrade of the packing lower bound,
// pairing bound, greedy cover upper bound. Fills everything but the scan
// bookkeeping fields of the report.
void finish_witness(DoublingReport& rep, const std::vector<std::int32_t>& members_by_id,
                    const DistFn& dd, std::int64_t seed_lower) {
  std::int64_t bd = set_diameter(members_by_id, dd);
  std::int64_t h = bd / 2;
  rep.witness_lower_bound = std::max<std::int64_t>(seed_lower, 1);
  std::int64_t mis = exact_mis(members_by_id, dd, h, rep.witness_lower_bound);
  if (mis >= 0) {
    rep.witness_lower_bound = mis;
    rep.witness_exact = true;
  }
  rep.witness_lower_bound = std::max(rep.witness_lower_bound, pairing_bound(members_by_id, dd, h));
  rep.greedy_upper_bound =
      std::max<std::int64_t>(1, greedy_cover(members_by_id, dd, bd / 4));
}

DoublingReport witness_bottom(const MetricGraph& g) {
  DoublingReport rep;
  rep.strategy = DoublingStrategy::witness_bottom_ball;
  rep.ball_center = g.bottom;
  rep.ball_radius = g.edge_length;  // one hop
  std::vector<std::int32_t> B = ball(g, g.bottom, g.edge_length);
  rep.scanned_balls = 1;
  if (B.size() <= 1) {
    rep.ball_radius = Rat64{0};
    rep.witness_exact = true;
    return rep;
  }

  bool family = g.family == Family::diamond || g.family == Family::laakso ||
                g.family == Family::m_variant;
  std::vector<DistanceVector> rows;  // fallback: BFS rows for ball members
  std::unordered_map<std::int32_t, size_t> row_of;
  if (!family) {
    rows.reserve(B.size());
    for (size_t i = 0; i < B.size(); ++i) {
      row_of[B[i]] = i;
      rows.push_back(sssp(g, B[i]));
    }
  }
  DistFn dd = [&](std::int32_t a, std::int32_t b) -> std::int64_t {
    if (family) return distance_oracle(g, a, b).hops;
    return rows[row_of[a]].hops[static_cast<size_t>(b)];
  };

  std::vector<std::int32_t> scratch;
  std::int64_t bd = set_diameter(B, dd);
  std::int64_t seed = greedy_packing(B, dd, bd / 2, scratch);
  finish_witness(rep, B, dd, seed);
  return rep;
}

}  // namespace

DoublingReport doubling_bounds(const MetricGraph& g, DoublingStrategy strategy,
                               std::int64_t scan_limit, Exec ex) {
  if (g.n_vertices == 0) fail_domain("doubling_bounds on an empty graph");
  if (strategy == DoublingStrategy::witness_bottom_ball) return witness_bottom(g);

  if (scan_limit <= 0) fail_domain("scan limit must be positive");
  DoublingReport rep;
  rep.strategy = DoublingStrategy::scan_all_balls;
  rep.ball_center = 0;
  rep.ball_radius = Rat64{0};
  if (g.n_vertices == 1) {
    rep.witness_exact = true;
    return rep;
  }

  ScanIndex ix = build_scan_index(g, ex);
  std::int64_t rmax = ix.diam / 2;

  // The scan schedule is fixed up front so the limit, the witness tie-breaks
  // and the thread decomposition cannot interact.
  std::vector<std::pair<std::int32_t, std::int32_t>> jobs;
  std::vector<size_t> center_begin(static_cast<size_t>(ix.V) + 1, 0);
  bool complete = true;
  for (std::int32_t c = 0; c < ix.V; ++c) {
    center_begin[static_cast<size_t>(c)] = jobs.size();
    if (complete) {
      const std::int32_t* buck = ix.row_bucket(c);
      for (std::int64_t r = 1; r <= rmax; ++r) {
        if (buck[r + 1] == buck[r]) continue;  // radius not realized at this center
        if (static_cast<std::int64_t>(jobs.size()) == scan_limit) {
          complete = false;
          break;
        }
        jobs.emplace_back(c, static_cast<std::int32_t>(r));
      }
    }
  }
  center_begin[static_cast<size_t>(ix.V)] = jobs.size();
  rep.complete = complete;
  rep.scanned_balls = static_cast<std::int64_t>(jobs.size());
  if (jobs.empty()) {
    rep.witness_exact = true;  // no ball has radius between 1 and diameter/2
    return rep;
  }

  // Per ball: exact diameter (grown incrementally per center), then the
  // deterministic greedy packing in ascending id order.
  std::vector<std::int64_t> lowers(jobs.size(), 0);
  auto run_center = [&](std::int32_t c, std::vector<std::int16_t>& bestrow,
                        std::vector<std::int64_t>& bd_at,
                        std::vector<std::int32_t>& members, std::vector<std::int32_t>& sel) {
    size_t jb = center_begin[static_cast<size_t>(c)];
    size_t je = center_begin[static_cast<size_t>(c) + 1];
    if (jb == je) return;
    std::int64_t top_r = jobs[je - 1].second;
    const std::int32_t* buck = ix.row_bucket(c);
    const std::uint16_t* ord = ix.row_order(c);
    bestrow.assign(static_cast<size_t>(ix.V), 0);
    bd_at.assign(static_cast<size_t>(top_r) + 1, 0);
    std::int64_t bd = 0;
    std::int32_t idx = 0;
    for (std::int64_t r = 0; r <= top_r; ++r) {
      for (; idx < buck[r + 1]; ++idx) {
        std::uint16_t w = ord[idx];
        bd = std::max<std::int64_t>(bd, bestrow[w]);
        const std::int16_t* wrow = ix.row_dist(w);
        for (std::int32_t v = 0; v < ix.V; ++v)
          bestrow[static_cast<size_t>(v)] = std::max(bestrow[static_cast<size_t>(v)], wrow[v]);
      }
      bd_at[static_cast<size_t>(r)] = bd;
    }
    const std::int16_t* crow = ix.row_dist(c);
    for (size_t i = jb; i < je; ++i) {
      std::int32_t r = jobs[i].second;
      std::int64_t h = bd_at[static_cast<size_t>(r)] / 2;
      members.clear();
      for (std::int32_t v = 0; v < ix.V; ++v)
        if (crow[v] >= 0 && crow[v] <= r) members.push_back(v);
      sel.clear();
      for (std::int32_t w : members) {
        bool ok = true;
        for (std::int32_t s : sel)
          if (ix.d(w, s) <= h) { ok = false; break; }
        if (ok) sel.push_back(w);
      }
      lowers[i] = static_cast<std::int64_t>(sel.size());
    }
  };

  if (ex == Exec::serial) {
    std::vector<std::int16_t> bestrow;
    std::vector<std::int64_t> bd_at;
    std::vector<std::int32_t> members, sel;
    for (std::int32_t c = 0; c < ix.V; ++c) run_center(c, bestrow, bd_at, members, sel);
  } else {
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<std::int16_t> bestrow;
      std::vector<std::int64_t> bd_at;
      std::vector<std::int32_t> members, sel;
#pragma omp for schedule(dynamic, 8)
      for (std::int32_t c = 0; c < ix.V; ++c) run_center(c, bestrow, bd_at, members, sel);
    }
#else
    std::vector<std::int16_t> bestrow;
    std::vector<std::int64_t> bd_at;
    std::vector<std::int32_t> members, sel;
    for (std::int32_t c = 0; c < ix.V; ++c) run_center(c, bestrow, bd_at, members, sel);
#endif
  }

  size_t wit = 0;
  for (size_t i = 1; i < jobs.size(); ++i)
    if (lowers[i] > lowers[wit]) wit = i;

  auto [c, r] = jobs[wit];
  rep.ball_center = c;
  rep.ball_radius = hops_to_length(g, r);
  const std::int16_t* crow = ix.row_dist(c);
  std::vector<std::int32_t> members;
  for (std::int32_t v = 0; v < ix.V; ++v)
    if (crow[v] >= 0 && crow[v] <= r) members.push_back(v);
  DistFn dd = [&ix](std::int32_t a, std::int32_t b) { return static_cast<std::int64_t>(ix.d(a, b)); };
  finish_witness(rep, members, dd, lowers[wit]);
  return rep;
}

}  // namespace mfl
