#pragma once

#include <cstdint>
#include <vector>

#include "mfl/graph.hpp"
#include "mfl/rational.hpp"

namespace mfl {

// Vertex map between two metric graphs. Distances are compared after an
// implicit optimal rescaling, so scale_hint is informational only.
struct EmbeddingMap {
  const MetricGraph* source = nullptr;
  const MetricGraph* target = nullptr;
  std::vector<std::int32_t> assignment;  // per source vertex id
  bool has_scale_hint = false;
  Rat64 scale_hint{1, 1};
};

struct VertexPair {
  std::int32_t u = -1;
  std::int32_t v = -1;
};

struct DistortionReport {
  ExtRat expansion = ExtRat::finite({0, 1});    // max d_Y / d_X
  ExtRat contraction = ExtRat::finite({0, 1});  // max d_X / d_Y
  ExtRat distortion = ExtRat::finite({1, 1});
  VertexPair witness_expansion_pair;
  VertexPair witness_contraction_pair;
};

DistortionReport evaluate(const EmbeddingMap& map);

enum class SolveStatus { optimal, upper_bound_only, infeasible_injective };

const char* solve_status_name(SolveStatus s);

struct SolveCertificate {
  bool exhausted = false;
  ExtRat bound = ExtRat::inf();  // pruning threshold the tree was exhausted at
};

struct SolveOptions {
  std::int64_t node_budget = 1'000'000'000;
  std::vector<std::int32_t> preload;  // optional incumbent assignment
  bool has_bound = false;
  ExtRat bound = ExtRat::inf();  // optional external pruning threshold
};

struct SolverResult {
  SolveStatus status = SolveStatus::upper_bound_only;
  ExtRat value = ExtRat::inf();
  std::vector<std::int32_t> assignment;
  std::int64_t nodes_explored = 0;
  std::int64_t improving_leaves = 0;
  SolveCertificate certificate;
};

SolverResult min_distortion_exact(const MetricGraph& source, const MetricGraph& target,
                                  const SolveOptions& opts = {});

SolverResult min_distortion_heuristic(const MetricGraph& source, const MetricGraph& target,
                                      std::uint64_t seed, int iterations);

ExtRat distortion_lower_bound(const MetricGraph& source, const MetricGraph& target,
                              int subset_size, std::int64_t budget, int samples = 32,
                              std::uint64_t seed = 0);

// Owns both graphs so the returned map's references stay valid.
struct ConstructedEmbedding {
  MetricGraph source;
  MetricGraph target;
  std::vector<std::int32_t> assignment;
  EmbeddingMap map() const {
    EmbeddingMap m;
    m.source = &source;
    m.target = &target;
    m.assignment = assignment;
    m.has_scale_hint = true;
    m.scale_hint = {1, 1};
    return m;
  }
};

ConstructedEmbedding construct_m_embedding(int n);
ConstructedEmbedding construct_l1_to_d2();

struct GrowthRow {
  int n = 0;  // source level
  int m = 0;  // target level
  ExtRat upper = ExtRat::inf();
  ExtRat lower = ExtRat::finite({1, 1});
};

struct GrowthOptions {
  std::uint64_t seed = 1;
  int iterations = 20;
  int subset_size = 3;
  int subset_samples = 20;
  std::int64_t subset_budget = 100'000'000;
};

std::vector<GrowthRow> growth_experiment(int n_max, const std::vector<int>& target_levels,
                                         const GrowthOptions& opts = {});

// Shared with the solver: dense hop matrix, guarded by a size cap.
std::vector<std::int32_t> hop_matrix(const MetricGraph& g);

}  // namespace mfl
