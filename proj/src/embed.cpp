#include "mfl/embed.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_map>

#include "mfl/metric.hpp"

namespace mfl {

namespace {

// a1/b1 < a2/b2 for nonnegative numerators, positive denominators
bool ratio_less(std::int64_t a1, std::int64_t b1, std::int64_t a2, std::int64_t b2) {
  return static_cast<__int128>(a1) * b2 < static_cast<__int128>(a2) * b1;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::int32_t resolve_slot(const MetricGraph& g, const char* path, int slot) {
  VertexAddress a;
  int len = 0;
  std::uint64_t packed = 0;
  for (const char* p = path; *p; ++p, ++len) packed = path_append(packed, *p - '0');
  if (len == 0 && slot < 0) return -1;
  a.kind = VertexKind::derived;
  a.birth = static_cast<std::uint8_t>(len + 1);
  a.slot = static_cast<std::uint8_t>(slot);
  a.path_len = static_cast<std::uint8_t>(len);
  a.path = packed;
  std::int32_t id = g.resolve(a);
  if (id < 0) fail_internal("constructed address missing from target graph");
  return id;
}

}  // namespace

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::upper_bound_only: return "upper_bound_only";
    default: return "infeasible_injective";
  }
}

std::vector<std::int32_t> hop_matrix(const MetricGraph& g) {
  constexpr std::int32_t kCap = 4096;
  if (g.n_vertices > kCap)
    fail_budget("dense distance matrix limited to " + std::to_string(kCap) + " vertices");
  const std::int32_t V = g.n_vertices;
  std::vector<std::int32_t> m(static_cast<size_t>(V) * static_cast<size_t>(V));
  for (std::int32_t s = 0; s < V; ++s) {
    DistanceVector row = sssp(g, s);
    for (std::int32_t v = 0; v < V; ++v) {
      if (row.hops[static_cast<size_t>(v)] < 0) fail_domain("graph must be connected");
      m[static_cast<size_t>(s) * V + v] = static_cast<std::int32_t>(row.hops[static_cast<size_t>(v)]);
    }
  }
  return m;
}

DistortionReport evaluate(const EmbeddingMap& map) {
  if (map.source == nullptr || map.target == nullptr) fail_domain("map lacks source or target");
  const MetricGraph& S = *map.source;
  const MetricGraph& T = *map.target;
  const std::int32_t p = S.n_vertices;
  if (p < 2) fail_domain("source needs at least 2 vertices");
  if (static_cast<std::int32_t>(map.assignment.size()) != p)
    fail_domain("assignment must cover every source vertex");
  for (std::int32_t w : map.assignment) T.check_vertex(w, "assignment image");

  std::vector<std::vector<std::int64_t>> hs(static_cast<size_t>(p));
  for (std::int32_t v = 0; v < p; ++v) {
    hs[static_cast<size_t>(v)] = sssp(S, v).hops;
    for (std::int64_t h : hs[static_cast<size_t>(v)])
      if (h < 0) fail_domain("source must be connected");
  }
  std::unordered_map<std::int32_t, std::vector<std::int64_t>> ht;
  for (std::int32_t w : map.assignment)
    if (!ht.count(w)) ht.emplace(w, sssp(T, w).hops);

  std::int64_t en = 0, ed = 1, cn = 0, cd = 1;  // expansion, contraction hop ratios
  VertexPair ew, cw;
  bool collapsed = false;
  VertexPair collapse_pair;
  for (std::int32_t u = 0; u < p; ++u) {
    const auto& rowt = ht.at(map.assignment[static_cast<size_t>(u)]);
    for (std::int32_t v = u + 1; v < p; ++v) {
      std::int64_t a = rowt[static_cast<size_t>(map.assignment[static_cast<size_t>(v)])];
      std::int64_t b = hs[static_cast<size_t>(u)][static_cast<size_t>(v)];
      if (a == 0) {
        if (!collapsed) collapse_pair = {u, v};
        collapsed = true;
        continue;
      }
      if (ratio_less(en, ed, a, b)) {
        en = a;
        ed = b;
        ew = {u, v};
      }
      if (ratio_less(cn, cd, b, a)) {
        cn = b;
        cd = a;
        cw = {u, v};
      }
    }
  }

  DistortionReport r;
  Rat64 scale = T.edge_length / S.edge_length;
  if (en > 0) {
    r.expansion = ExtRat::finite(Rat64{en, ed} * scale);
    r.witness_expansion_pair = ew;
  }
  if (collapsed) {
    r.contraction = ExtRat::inf();
    r.distortion = ExtRat::inf();
    r.witness_contraction_pair = collapse_pair;
    return r;
  }
  r.contraction = ExtRat::finite(Rat64{cn, cd} / scale);
  r.witness_contraction_pair = cw;
  r.distortion = ExtRat::finite(Rat64{en, ed} * Rat64{cn, cd});
  return r;
}

ExtRat distortion_lower_bound(const MetricGraph& source, const MetricGraph& target,
                              int subset_size, std::int64_t budget, int samples,
                              std::uint64_t seed) {
  if (subset_size < 2 || subset_size > 4) fail_domain("subset_size must be 2, 3 or 4");
  if (samples < 1) fail_domain("need at least one subset sample");
  const std::int32_t p = source.n_vertices, q = target.n_vertices;
  if (p < subset_size) fail_domain("source has fewer vertices than subset_size");
  __int128 cost = 1;
  for (int i = 0; i < subset_size; ++i) cost *= q;
  if (budget <= 0 || cost > budget)
    fail_budget("budget too small for one exhaustive subset placement");

  std::vector<std::int32_t> hs = hop_matrix(source);
  std::vector<std::int32_t> ht = hop_matrix(target);
  const int k = subset_size;

  // Choose subsets: all of them when few, otherwise seeded sampling.
  std::vector<std::vector<std::int32_t>> subsets;
  __int128 total = 1;
  for (int i = 0; i < k; ++i) total = total * (p - i) / (i + 1);
  if (total <= samples) {
    std::vector<std::int32_t> pick(static_cast<size_t>(k));
    auto rec = [&](auto&& self, int pos, std::int32_t from) -> void {
      if (pos == k) {
        subsets.push_back(pick);
        return;
      }
      for (std::int32_t v = from; v <= p - (k - pos); ++v) {
        pick[static_cast<size_t>(pos)] = v;
        self(self, pos + 1, v + 1);
      }
    };
    rec(rec, 0, 0);
  } else {
    std::mt19937_64 rng(mix64(seed));
    std::set<std::vector<std::int32_t>> seen;
    int attempts = 0;
    while (static_cast<int>(subsets.size()) < samples && attempts < samples * 20) {
      ++attempts;
      std::set<std::int32_t> pick;
      while (static_cast<int>(pick.size()) < k)
        pick.insert(static_cast<std::int32_t>(rng() % static_cast<std::uint64_t>(p)));
      std::vector<std::int32_t> v(pick.begin(), pick.end());
      if (seen.insert(v).second) subsets.push_back(v);
    }
  }

  ExtRat best_lower = ExtRat::finite({1, 1});
  std::vector<std::int32_t> img(static_cast<size_t>(k));
  for (const auto& sub : subsets) {
    // exact minimum distortion of this k-point subspace into the target
    bool have = false;
    std::int64_t bn = 0, bd = 1;  // best product so far
    auto place = [&](auto&& self, int pos, std::int64_t en, std::int64_t ed, std::int64_t cn,
                     std::int64_t cd) -> void {
      if (pos == k) {
        if (!have || ratio_less(en * cn, ed * cd, bn, bd)) {
          have = true;
          bn = en * cn;
          bd = ed * cd;
        }
        return;
      }
      for (std::int32_t w = 0; w < q; ++w) {
        std::int64_t nen = en, ned = ed, ncn = cn, ncd = cd;
        bool dead = false;
        for (int i = 0; i < pos && !dead; ++i) {
          std::int64_t a = ht[static_cast<size_t>(img[static_cast<size_t>(i)]) * q + w];
          std::int64_t b = hs[static_cast<size_t>(sub[static_cast<size_t>(i)]) * p +
                              sub[static_cast<size_t>(pos)]];
          if (a == 0) {
            dead = true;
            break;
          }
          if (ratio_less(nen, ned, a, b)) { nen = a; ned = b; }
          if (ratio_less(ncn, ncd, b, a)) { ncn = b; ncd = a; }
        }
        if (dead) continue;
        if (have && !ratio_less(nen * ncn, ned * ncd, bn, bd)) continue;
        img[static_cast<size_t>(pos)] = w;
        self(self, pos + 1, nen, ned, ncn, ncd);
      }
    };
    place(place, 0, 0, 1, 0, 1);
    ExtRat sub_val = have ? ExtRat::finite(Rat64{bn, bd}) : ExtRat::inf();
    if (best_lower < sub_val) best_lower = sub_val;
  }
  return best_lower;
}

ConstructedEmbedding construct_l1_to_d2() {
  ConstructedEmbedding ce;
  ce.source = generate(Family::laakso, 1, Normalization::unweighted);
  ce.target = generate(Family::diamond, 2, Normalization::unweighted);
  const MetricGraph& t = ce.target;
  // L_1 ids: 0 bottom, 1 top, 2 jl, 3 ml, 4 mr, 5 jh
  ce.assignment = {
      resolve_slot(t, "0", 0),  // bottom -> neighbor of the target bottom, left copy
      resolve_slot(t, "3", 0),  // top -> one step above the collapsible square
      t.bottom,                 // jl -> bottom corner of the right bottom square
      resolve_slot(t, "2", 0),  // ml
      resolve_slot(t, "2", 1),  // mr
      resolve_slot(t, "", 1),   // jh -> top corner of that square
  };
  return ce;
}

ConstructedEmbedding construct_m_embedding(int n) {
  if (n < 0) fail_domain("level must be nonnegative");
  ConstructedEmbedding ce;
  ce.source = generate(Family::m_variant, n, Normalization::unweighted);
  ce.target = generate(Family::diamond, 3 * n, Normalization::unweighted);
  const MetricGraph& src = ce.source;
  const MetricGraph& t = ce.target;
  ce.assignment.assign(static_cast<size_t>(src.n_vertices), -1);
  ce.assignment[0] = t.bottom;
  ce.assignment[1] = t.top;
  if (n == 0) return ce;

  // Stage 1: the ten-vertex gadget onto a bottom segment, a height-2 square
  // and a top segment of the 3-level target.
  static const std::pair<const char*, int> kBase[8] = {
      {"00", 0}, {"0", 0}, {"01", 0}, {"01", 1}, {"", 0}, {"10", 0}, {"1", 0}, {"11", 0}};
  for (int s = 0; s < 8; ++s)
    ce.assignment[static_cast<size_t>(2 + s)] = resolve_slot(t, kBase[s].first, kBase[s].second);

  // Stage j: each gadget copy subdividing an edge of the previous source
  // stage lands in the 3-level expansion of that edge's image.
  for (int j = 2; j <= n; ++j) {
    MetricGraph sm = generate(Family::m_variant, j - 1, Normalization::unweighted);
    MetricGraph sd = generate(Family::diamond, 3 * (j - 1), Normalization::unweighted);
    std::unordered_map<std::uint64_t, std::int64_t> edge_index;
    edge_index.reserve(static_cast<size_t>(sd.n_edges) * 2);
    for (std::int64_t e = 0; e < sd.n_edges; ++e) {
      auto [u, v] = sd.edges[static_cast<size_t>(e)];
      edge_index[(static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
                 static_cast<std::uint32_t>(v)] = e;
    }
    for (std::int32_t w = sm.n_vertices; w < src.n_vertices; ++w) {
      const VertexAddress& a = src.addr[static_cast<size_t>(w)];
      if (a.birth != j) continue;
      std::int64_t k = 0;
      for (int i = 0; i < a.path_len; ++i) k = k * 10 + path_digit(a.path, a.path_len, i);
      auto [te, he] = sm.edges[static_cast<size_t>(k)];
      std::int32_t ft = ce.assignment[static_cast<size_t>(te)];
      std::int32_t fh = ce.assignment[static_cast<size_t>(he)];
      auto it = edge_index.find((static_cast<std::uint64_t>(static_cast<std::uint32_t>(ft)) << 32) |
                                static_cast<std::uint32_t>(fh));
      if (it == edge_index.end()) fail_internal("stage image is not an edge of the target stage");
      std::int64_t kp = it->second;
      int plen = 3 * (j - 1);
      std::uint64_t q4 = 0;
      {
        std::int64_t rem = kp;
        std::uint64_t rev = 0;
        for (int i = 0; i < plen; ++i) {
          rev = rev * 10 + static_cast<std::uint64_t>(rem % 4);
          rem /= 4;
        }
        for (int i = 0; i < plen; ++i) {
          q4 = path_append(q4, static_cast<int>(rev % 10));
          rev /= 10;
        }
      }
      std::pair<const char*, int> rel = kBase[a.slot];
      std::uint64_t full = q4;
      int fl = plen;
      for (const char* p = rel.first; *p; ++p, ++fl) full = path_append(full, *p - '0');
      VertexAddress da;
      da.kind = VertexKind::derived;
      da.birth = static_cast<std::uint8_t>(fl + 1);
      da.slot = static_cast<std::uint8_t>(rel.second);
      da.path_len = static_cast<std::uint8_t>(fl);
      da.path = full;
      std::int32_t id = t.resolve(da);
      if (id < 0) fail_internal("recursive image address missing from target");
      ce.assignment[static_cast<size_t>(w)] = id;
    }
  }
  for (std::int32_t v = 0; v < src.n_vertices; ++v)
    if (ce.assignment[static_cast<size_t>(v)] < 0) fail_internal("embedding left a vertex unmapped");
  return ce;
}

std::vector<GrowthRow> growth_experiment(int n_max, const std::vector<int>& target_levels,
                                         const GrowthOptions& opts) {
  if (n_max < 1) fail_domain("need n_max >= 1");
  if (target_levels.empty()) fail_domain("need at least one target level");
  std::vector<GrowthRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    MetricGraph src = generate(Family::laakso, n, Normalization::unweighted);
    for (int m : target_levels) {
      MetricGraph tgt = generate(Family::diamond, m, Normalization::unweighted);
      GrowthRow row;
      row.n = n;
      row.m = m;
      if (src.n_vertices > tgt.n_vertices) {
        row.upper = ExtRat::inf();
      } else {
        row.upper = min_distortion_heuristic(src, tgt, opts.seed, opts.iterations).value;
      }
      row.lower = distortion_lower_bound(src, tgt, opts.subset_size, opts.subset_budget,
                                         opts.subset_samples, opts.seed);
      if (row.upper < row.lower) fail_internal("growth table row violates lower <= upper");
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace mfl
