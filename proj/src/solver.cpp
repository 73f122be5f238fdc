#include <algorithm>
#include <array>
#include <map>
#include <random>

#include "mfl/embed.hpp"
#include "mfl/metric.hpp"

namespace mfl {

namespace {

std::uint64_t mix64s(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool rless(std::int64_t a1, std::int64_t b1, std::int64_t a2, std::int64_t b2) {
  return static_cast<__int128>(a1) * b2 < static_cast<__int128>(a2) * b1;
}

// Hop-ratio product (distortion up to scale); infinite marks collapsed maps.
struct HopVal {
  bool inf = true;
  std::int64_t n = 1, d = 1;
  static HopVal finite(std::int64_t nn, std::int64_t dd) { return {false, nn, dd}; }
  bool operator<(const HopVal& o) const {
    if (inf != o.inf) return o.inf;
    if (inf) return false;
    return rless(n, d, o.n, o.d);
  }
  ExtRat to_extrat() const { return inf ? ExtRat::inf() : ExtRat::finite(Rat64{n, d}); }
};

std::vector<std::int32_t> source_order(const MetricGraph& s) {
  std::vector<std::int64_t> ecc = eccentricities(s, Exec::serial);
  std::int32_t root = 0;
  for (std::int32_t v = 1; v < s.n_vertices; ++v)
    if (ecc[static_cast<size_t>(v)] > ecc[static_cast<size_t>(root)]) root = v;
  std::vector<std::int32_t> order;
  std::vector<std::uint8_t> seen(static_cast<size_t>(s.n_vertices), 0);
  order.push_back(root);
  seen[static_cast<size_t>(root)] = 1;
  for (size_t head = 0; head < order.size(); ++head)
    for (std::int32_t w : s.neighbors(order[head]))
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        order.push_back(w);
      }
  return order;
}

// One representative target vertex per structural symmetry class; classes are
// derived from the recursive construction (slot type, birth level, grading),
// folding in the mirror and, where present, the top-bottom flip.
std::vector<std::int32_t> root_candidates(const MetricGraph& t) {
  if (t.family == Family::generic) {
    std::vector<std::int32_t> all(static_cast<size_t>(t.n_vertices));
    for (std::int32_t v = 0; v < t.n_vertices; ++v) all[static_cast<size_t>(v)] = v;
    return all;
  }
  const std::int64_t H = t.y[static_cast<size_t>(t.top)];
  std::map<std::array<std::int64_t, 3>, std::int32_t> reps;
  for (std::int32_t v = 0; v < t.n_vertices; ++v) {
    const VertexAddress& a = t.addr[static_cast<size_t>(v)];
    std::int64_t y = t.y[static_cast<size_t>(v)];
    std::array<std::int64_t, 3> key{};
    switch (t.family) {
      case Family::quaternary_tree:
        key = {y, 0, 0};
        break;
      case Family::diamond:
        if (a.kind == VertexKind::derived)
          key = {a.birth, std::min(y, H - y), 1};
        else
          key = {0, 0, 0};
        break;
      case Family::laakso: {
        if (a.kind == VertexKind::derived) {
          std::int64_t type = a.slot == 0 ? 0 : (a.slot == 3 ? 2 : 1);
          std::array<std::int64_t, 3> c1{a.birth, type, y};
          std::array<std::int64_t, 3> c2{a.birth, 2 - type, H - y};
          key = std::min(c1, c2);
        } else {
          key = {0, 0, 0};
        }
        break;
      }
      default: {  // m_variant has a mirror but no top-bottom flip
        if (a.kind == VertexKind::derived) {
          std::int64_t slot = a.slot == 3 ? 2 : a.slot;
          key = {a.birth, slot, y};
        } else {
          key = {0, 0, y};
        }
        break;
      }
    }
    auto it = reps.find(key);
    if (it == reps.end()) reps.emplace(key, v);
  }
  std::vector<std::int32_t> out;
  out.reserve(reps.size());
  for (auto& [k, v] : reps) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

HopVal assignment_value(const std::vector<std::int32_t>& f, const std::vector<std::int32_t>& hs,
                        const std::vector<std::int32_t>& ht, std::int32_t p, std::int32_t q) {
  std::int64_t en = 0, ed = 1, cn = 0, cd = 1;
  for (std::int32_t u = 0; u < p; ++u)
    for (std::int32_t v = u + 1; v < p; ++v) {
      std::int64_t a = ht[static_cast<size_t>(f[static_cast<size_t>(u)]) * q +
                         f[static_cast<size_t>(v)]];
      std::int64_t b = hs[static_cast<size_t>(u) * p + v];
      if (a == 0) return HopVal{};  // collapsed pair
      if (rless(en, ed, a, b)) { en = a; ed = b; }
      if (rless(cn, cd, b, a)) { cn = b; cd = a; }
    }
  return HopVal::finite(en * cn, ed * cd);
}

}  // namespace

SolverResult min_distortion_exact(const MetricGraph& source, const MetricGraph& target,
                                  const SolveOptions& opts) {
  if (opts.node_budget <= 0) fail_domain("node budget must be positive");
  const std::int32_t p = source.n_vertices, q = target.n_vertices;
  if (p < 2) fail_domain("source needs at least 2 vertices");
  if (!opts.preload.empty() && static_cast<std::int32_t>(opts.preload.size()) != p)
    fail_domain("preloaded assignment must cover every source vertex");
  for (std::int32_t w : opts.preload) target.check_vertex(w, "preloaded image");

  SolverResult res;
  if (p > q) {
    res.status = SolveStatus::infeasible_injective;
    res.value = ExtRat::inf();
    res.assignment.assign(static_cast<size_t>(p), 0);
    return res;
  }

  std::vector<std::int32_t> hs = hop_matrix(source);
  std::vector<std::int32_t> ht = hop_matrix(target);

  // Incumbent: preload if provided, otherwise a cheap deterministic heuristic.
  std::vector<std::int32_t> inc_assign;
  HopVal inc_value;
  if (!opts.preload.empty()) {
    inc_assign = opts.preload;
    inc_value = assignment_value(inc_assign, hs, ht, p, q);
  } else {
    SolverResult h = min_distortion_heuristic(source, target, 0x5eedULL, 4);
    inc_assign = h.assignment;
    inc_value = assignment_value(inc_assign, hs, ht, p, q);
  }

  // Effective pruning threshold: leaves are accepted only strictly below it.
  HopVal threshold = inc_value;
  bool ext_bound = opts.has_bound;
  if (ext_bound) {
    HopVal b;
    if (opts.bound.infinite) {
      b = HopVal{};
    } else {
      b = HopVal::finite(opts.bound.value.num, opts.bound.value.den);
    }
    if (b < threshold) threshold = b;
  }

  std::vector<std::int32_t> order = source_order(source);
  std::vector<std::int32_t> roots = root_candidates(target);

  std::vector<std::int32_t> f(static_cast<size_t>(p), -1);
  std::vector<std::uint8_t> used(static_cast<size_t>(q), 0);
  std::int64_t nodes = 0;
  bool aborted = false;

  struct Cand {
    std::int64_t score;
    std::int32_t w;
    bool operator<(const Cand& o) const {
      return score != o.score ? score < o.score : w < o.w;
    }
  };

  auto dfs = [&](auto&& self, std::int32_t i, std::int64_t en, std::int64_t ed, std::int64_t cn,
                 std::int64_t cd) -> void {
    if (aborted) return;
    std::int32_t v = order[static_cast<size_t>(i)];
    std::vector<Cand> cands;
    if (i == 0) {
      for (std::int32_t w : roots) cands.push_back({0, w});
    } else {
      cands.reserve(static_cast<size_t>(q));
      for (std::int32_t w = 0; w < q; ++w) {
        if (used[static_cast<size_t>(w)]) continue;
        std::int64_t score = 0;
        for (std::int32_t u : source.neighbors(v)) {
          std::int32_t fu = f[static_cast<size_t>(u)];
          if (fu < 0) continue;
          score += std::llabs(static_cast<std::int64_t>(ht[static_cast<size_t>(fu) * q + w]) -
                              hs[static_cast<size_t>(v) * p + u]);
        }
        cands.push_back({score, w});
      }
      std::sort(cands.begin(), cands.end());
    }
    for (const Cand& c : cands) {
      if (aborted) return;
      if (++nodes > opts.node_budget) {
        aborted = true;
        return;
      }
      std::int32_t w = c.w;
      std::int64_t nen = en, ned = ed, ncn = cn, ncd = cd;
      bool dead = false;
      for (std::int32_t j = 0; j < i; ++j) {
        std::int32_t u = order[static_cast<size_t>(j)];
        std::int64_t a = ht[static_cast<size_t>(f[static_cast<size_t>(u)]) * q + w];
        std::int64_t b = hs[static_cast<size_t>(v) * p + u];
        if (rless(nen, ned, a, b)) { nen = a; ned = b; }
        if (rless(ncn, ncd, b, a)) { ncn = b; ncd = a; }
        HopVal lb = HopVal::finite(nen * ncn, ned * ncd);
        if (!(lb < threshold)) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
      if (i == p - 1) {
        HopVal leaf = HopVal::finite(nen * ncn, ned * ncd);
        if (leaf < threshold) {
          threshold = leaf;
          inc_value = leaf;
          for (std::int32_t j = 0; j < p; ++j)
            inc_assign[static_cast<size_t>(order[static_cast<size_t>(j)])] =
                j == i ? w : f[static_cast<size_t>(order[static_cast<size_t>(j)])];
          ++res.improving_leaves;
        }
        continue;
      }
      f[static_cast<size_t>(v)] = w;
      used[static_cast<size_t>(w)] = 1;
      self(self, i + 1, nen, ned, ncn, ncd);
      f[static_cast<size_t>(v)] = -1;
      used[static_cast<size_t>(w)] = 0;
    }
  };
  dfs(dfs, 0, 0, 1, 0, 1);

  res.nodes_explored = nodes;
  res.value = inc_value.to_extrat();
  res.assignment = inc_assign;
  if (aborted) {
    res.status = SolveStatus::upper_bound_only;
    res.certificate = {false, threshold.to_extrat()};
    return res;
  }
  bool bound_cut = ext_bound && threshold < inc_value;
  res.status = bound_cut ? SolveStatus::upper_bound_only : SolveStatus::optimal;
  res.certificate = {true, threshold.to_extrat()};
  if (res.status != SolveStatus::optimal || inc_value.inf) return res;

  // Lexicographically least witness achieving the optimal value: a second
  // sweep in plain vertex order with pruning at the (now known) optimum.
  std::vector<std::int32_t> lex(static_cast<size_t>(p), -1);
  std::fill(used.begin(), used.end(), 0);
  bool found = false;
  auto dfs2 = [&](auto&& self, std::int32_t v, std::int64_t en, std::int64_t ed, std::int64_t cn,
                  std::int64_t cd) -> void {
    if (found || aborted) return;
    for (std::int32_t w = 0; w < q && !found; ++w) {
      if (used[static_cast<size_t>(w)]) continue;
      if (++nodes > opts.node_budget) {
        aborted = true;
        return;
      }
      std::int64_t nen = en, ned = ed, ncn = cn, ncd = cd;
      bool dead = false;
      for (std::int32_t u = 0; u < v; ++u) {
        std::int64_t a = ht[static_cast<size_t>(lex[static_cast<size_t>(u)]) * q + w];
        std::int64_t b = hs[static_cast<size_t>(v) * p + u];
        if (rless(nen, ned, a, b)) { nen = a; ned = b; }
        if (rless(ncn, ncd, b, a)) { ncn = b; ncd = a; }
        if (inc_value < HopVal::finite(nen * ncn, ned * ncd)) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
      lex[static_cast<size_t>(v)] = w;
      if (v == p - 1) {
        found = true;
        return;
      }
      used[static_cast<size_t>(w)] = 1;
      self(self, v + 1, nen, ned, ncn, ncd);
      used[static_cast<size_t>(w)] = 0;
      if (!found) lex[static_cast<size_t>(v)] = -1;
    }
  };
  dfs2(dfs2, 0, 0, 1, 0, 1);
  res.nodes_explored = nodes;
  if (found) res.assignment = lex;
  return res;
}

SolverResult min_distortion_heuristic(const MetricGraph& source, const MetricGraph& target,
                                      std::uint64_t seed, int iterations) {
  if (iterations < 1) fail_domain("need at least one iteration");
  const std::int32_t p = source.n_vertices, q = target.n_vertices;
  if (p < 2) fail_domain("source needs at least 2 vertices");
  std::vector<std::int32_t> hs = hop_matrix(source);
  std::vector<std::int32_t> ht = hop_matrix(target);
  const bool injective = p <= q;

  SolverResult res;
  res.status = SolveStatus::upper_bound_only;
  HopVal best_val;
  std::vector<std::int32_t> best_assign;
  std::int64_t nodes = 0, accepted = 0;

  std::vector<std::int32_t> f(static_cast<size_t>(p));
  std::vector<std::uint8_t> used(static_cast<size_t>(q), 0);
  for (int r = 0; r < iterations; ++r) {
    std::mt19937_64 rng(mix64s(seed) ^ mix64s(static_cast<std::uint64_t>(r) + 1));
    std::fill(used.begin(), used.end(), 0);
    if (injective) {
      std::vector<std::int32_t> avail(static_cast<size_t>(q));
      for (std::int32_t w = 0; w < q; ++w) avail[static_cast<size_t>(w)] = w;
      for (std::int32_t v = 0; v < p; ++v) {
        size_t k = static_cast<size_t>(rng() % static_cast<std::uint64_t>(q - v));
        f[static_cast<size_t>(v)] = avail[k];
        avail[k] = avail[static_cast<size_t>(q - v) - 1];
      }
      for (std::int32_t v = 0; v < p; ++v) used[static_cast<size_t>(f[static_cast<size_t>(v)])] = 1;
    } else {
      for (std::int32_t v = 0; v < p; ++v)
        f[static_cast<size_t>(v)] = static_cast<std::int32_t>(rng() % static_cast<std::uint64_t>(q));
    }

    HopVal cur = assignment_value(f, hs, ht, p, q);
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::int32_t v = 0; v < p && !improved; ++v) {
        // ratio maxima over pairs avoiding v
        std::int64_t ren = 0, red = 1, rcn = 0, rcd = 1;
        bool rest_dead = false;
        for (std::int32_t u1 = 0; u1 < p && !rest_dead; ++u1) {
          if (u1 == v) continue;
          for (std::int32_t u2 = u1 + 1; u2 < p; ++u2) {
            if (u2 == v) continue;
            std::int64_t a = ht[static_cast<size_t>(f[static_cast<size_t>(u1)]) * q +
                               f[static_cast<size_t>(u2)]];
            std::int64_t b = hs[static_cast<size_t>(u1) * p + u2];
            if (a == 0) {
              rest_dead = true;
              break;
            }
            if (rless(ren, red, a, b)) { ren = a; red = b; }
            if (rless(rcn, rcd, b, a)) { rcn = b; rcd = a; }
          }
        }
        if (rest_dead) continue;  // collapse not involving v; another v must fix it
        for (std::int32_t w = 0; w < q; ++w) {
          if (w == f[static_cast<size_t>(v)]) continue;
          if (injective && used[static_cast<size_t>(w)]) continue;
          ++nodes;
          std::int64_t nen = ren, ned = red, ncn = rcn, ncd = rcd;
          bool dead = false;
          for (std::int32_t u = 0; u < p; ++u) {
            if (u == v) continue;
            std::int64_t a = ht[static_cast<size_t>(f[static_cast<size_t>(u)]) * q + w];
            std::int64_t b = hs[static_cast<size_t>(v) * p + u];
            if (a == 0) {
              dead = true;
              break;
            }
            if (rless(nen, ned, a, b)) { nen = a; ned = b; }
            if (rless(ncn, ncd, b, a)) { ncn = b; ncd = a; }
          }
          if (dead) continue;
          HopVal cand = HopVal::finite(nen * ncn, ned * ncd);
          if (cand < cur) {
            used[static_cast<size_t>(f[static_cast<size_t>(v)])] = 0;
            f[static_cast<size_t>(v)] = w;
            used[static_cast<size_t>(w)] = 1;
            cur = cand;
            improved = true;
            ++accepted;
            break;
          }
        }
      }
    }
    if (cur < best_val || (!(best_val < cur) && (best_assign.empty() || f < best_assign))) {
      best_val = cur;
      best_assign = f;
    }
  }

  res.value = best_val.to_extrat();
  res.assignment = best_assign;
  res.nodes_explored = nodes;
  res.improving_leaves = accepted;
  return res;
}

}  // namespace mfl
