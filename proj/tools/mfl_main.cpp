#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfl/cycles.hpp"
#include "mfl/embed.hpp"
#include "mfl/error.hpp"
#include "mfl/graph.hpp"
#include "mfl/metric.hpp"
#include "mfl/serialize.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace mfl;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::int64_t parse_int(const std::string& s, const char* what) {
  try {
    size_t pos = 0;
    std::int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail_usage(std::string("cannot parse ") + what + " '" + s + "'");
  }
}

Rat64 parse_rational(const std::string& s, const char* what) {
  auto parts = split(s, '/');
  if (parts.size() == 1) return Rat64{parse_int(parts[0], what), 1};
  if (parts.size() == 2) {
    std::int64_t den = parse_int(parts[1], what);
    if (den == 0) fail_usage(std::string(what) + " has zero denominator");
    return Rat64{parse_int(parts[0], what), den};
  }
  fail_usage(std::string("cannot parse ") + what + " '" + s + "'");
}

// family:level[:weighted], with family names accepted in full or abbreviated
MetricGraph parse_graph(const std::string& s) {
  auto parts = split(s, ':');
  if (parts.size() < 2 || parts.size() > 3) fail_usage("graph syntax is family:level[:weighted]");
  Family f = family_from_name(parts[0]);
  int level = static_cast<int>(parse_int(parts[1], "level"));
  Normalization norm = Normalization::unweighted;
  if (parts.size() == 3) {
    if (parts[2] == "weighted")
      norm = Normalization::weighted;
    else if (parts[2] != "unweighted")
      fail_usage("normalization must be 'weighted' or 'unweighted'");
  }
  return generate(f, level, norm);
}

std::vector<std::int32_t> parse_ids(const std::string& s, const char* what) {
  std::vector<std::int32_t> out;
  if (s.empty()) return out;
  for (const std::string& part : split(s, ','))
    out.push_back(static_cast<std::int32_t>(parse_int(part, what)));
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) fail_domain("cannot open output file '" + out_path + "'");
  f << text;
}

struct CommonOpts {
  std::string out;
  std::string format = "document";
  int threads = 1;
};

Exec pick_exec(const CommonOpts& c) {
#ifdef _OPENMP
  if (c.threads > 1) {
    omp_set_num_threads(c.threads);
    return Exec::omp;
  }
#endif
  return Exec::serial;
}

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--out", c.out, "write the report to this file instead of stdout");
  cmd->add_option("--format", c.format, "output format: document or csv");
  cmd->add_option("--threads", c.threads, "worker threads for parallel kernels");
}

void require_document(const CommonOpts& c) {
  if (c.format != "document")
    fail_domain("csv output is only available for tabular reports (profile, growth)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"recursive graph families: metric structure, cycles and embedding distortion"};
  app.require_subcommand(1);

  int exit_code = 0;
  auto guard = [&exit_code](auto&& fn) {
    return [&exit_code, fn]() {
      try {
        fn();
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind) {
          case ErrorKind::usage: exit_code = 64; break;
          case ErrorKind::budget: exit_code = 2; break;
          default: exit_code = 1; break;
        }
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        exit_code = 1;
      }
    };
  };

  // gen
  struct {
    std::string family;
    int level = 0;
    bool weighted = false;
    CommonOpts common;
  } gen_o;
  auto* gen_cmd = app.add_subcommand("gen", "generate a graph and print it");
  gen_cmd->add_option("--family", gen_o.family, "diamond|laakso|m|quaternary")->required();
  gen_cmd->add_option("--level", gen_o.level, "recursion level")->required();
  gen_cmd->add_flag("--weighted", gen_o.weighted, "scale edges to keep unit diameter");
  add_common(gen_cmd, gen_o.common);
  gen_cmd->callback(guard([&] {
    require_document(gen_o.common);
    MetricGraph g = generate(family_from_name(gen_o.family), gen_o.level,
                             gen_o.weighted ? Normalization::weighted : Normalization::unweighted);
    RunConfig cfg{"gen",
                  {{"family", family_name(g.family)},
                   {"level", std::to_string(g.level)},
                   {"normalization", gen_o.weighted ? "weighted" : "unweighted"}},
                  gen_o.common.format};
    emit(document(cfg, graph_json(g)), gen_o.common.out);
  }));

  // dist
  struct {
    std::string graph;
    std::int64_t from = 0, to = 0;
    CommonOpts common;
  } dist_o;
  auto* dist_cmd = app.add_subcommand("dist", "exact distance between two vertices");
  dist_cmd->add_option("--graph", dist_o.graph, "family:level[:weighted]")->required();
  dist_cmd->add_option("--from", dist_o.from, "source vertex id")->required();
  dist_cmd->add_option("--to", dist_o.to, "target vertex id")->required();
  add_common(dist_cmd, dist_o.common);
  dist_cmd->callback(guard([&] {
    require_document(dist_o.common);
    MetricGraph g = parse_graph(dist_o.graph);
    auto u = static_cast<std::int32_t>(dist_o.from);
    auto v = static_cast<std::int32_t>(dist_o.to);
    OracleResult r = distance_oracle(g, u, v);
    RunConfig cfg{"dist",
                  {{"graph", dist_o.graph},
                   {"from", std::to_string(u)},
                   {"to", std::to_string(v)}},
                  dist_o.common.format};
    emit(document(cfg, oracle_json(g, u, v, r)), dist_o.common.out);
  }));

  // diam
  struct {
    std::string graph;
    CommonOpts common;
  } diam_o;
  auto* diam_cmd = app.add_subcommand("diam", "exact diameter");
  diam_cmd->add_option("--graph", diam_o.graph, "family:level[:weighted]")->required();
  add_common(diam_cmd, diam_o.common);
  diam_cmd->callback(guard([&] {
    require_document(diam_o.common);
    MetricGraph g = parse_graph(diam_o.graph);
    std::int64_t hops = diameter_hops(g);
    RunConfig cfg{"diam", {{"graph", diam_o.graph}}, diam_o.common.format};
    emit(document(cfg, diameter_json(g.edge_length * Rat64{hops, 1}, hops)), diam_o.common.out);
  }));

  // ball
  struct {
    std::string graph;
    std::int64_t center = 0;
    std::string radius;
    CommonOpts common;
  } ball_o;
  auto* ball_cmd = app.add_subcommand("ball", "closed metric ball around a vertex");
  ball_cmd->add_option("--graph", ball_o.graph, "family:level[:weighted]")->required();
  ball_cmd->add_option("--center", ball_o.center, "center vertex id")->required();
  ball_cmd->add_option("--radius", ball_o.radius, "radius, e.g. 2 or 3/4")->required();
  add_common(ball_cmd, ball_o.common);
  ball_cmd->callback(guard([&] {
    require_document(ball_o.common);
    MetricGraph g = parse_graph(ball_o.graph);
    Rat64 r = parse_rational(ball_o.radius, "radius");
    auto c = static_cast<std::int32_t>(ball_o.center);
    std::vector<std::int32_t> members = ball(g, c, r);
    RunConfig cfg{"ball",
                  {{"graph", ball_o.graph},
                   {"center", std::to_string(c)},
                   {"radius", r.str()}},
                  ball_o.common.format};
    emit(document(cfg, ball_json(g, c, r, members)), ball_o.common.out);
  }));

  // doubling
  struct {
    std::string graph;
    std::string strategy = "scan";
    std::int64_t scan_limit = 1'000'000;
    CommonOpts common;
  } dbl_o;
  auto* dbl_cmd = app.add_subcommand("doubling", "packing/cover doubling bounds");
  dbl_cmd->add_option("--graph", dbl_o.graph, "family:level[:weighted]")->required();
  dbl_cmd->add_option("--strategy", dbl_o.strategy, "witness or scan");
  dbl_cmd->add_option("--scan-limit", dbl_o.scan_limit, "max (center, radius) pairs scanned");
  add_common(dbl_cmd, dbl_o.common);
  dbl_cmd->callback(guard([&] {
    require_document(dbl_o.common);
    MetricGraph g = parse_graph(dbl_o.graph);
    DoublingStrategy st;
    if (dbl_o.strategy == "witness")
      st = DoublingStrategy::witness_bottom_ball;
    else if (dbl_o.strategy == "scan")
      st = DoublingStrategy::scan_all_balls;
    else
      fail_usage("strategy must be 'witness' or 'scan'");
    DoublingReport r = doubling_bounds(g, st, dbl_o.scan_limit, pick_exec(dbl_o.common));
    RunConfig cfg{"doubling",
                  {{"graph", dbl_o.graph},
                   {"strategy", dbl_o.strategy},
                   {"scan_limit", std::to_string(dbl_o.scan_limit)},
                   {"threads", std::to_string(dbl_o.common.threads)}},
                  dbl_o.common.format};
    emit(document(cfg, doubling_json(r)), dbl_o.common.out);
  }));

  // profile
  struct {
    std::string graph;
    std::string radii;
    CommonOpts common;
  } prof_o;
  auto* prof_cmd = app.add_subcommand("profile", "max ball cardinality per radius");
  prof_cmd->add_option("--graph", prof_o.graph, "family:level[:weighted]")->required();
  prof_cmd->add_option("--radii", prof_o.radii, "comma-separated radii, e.g. 1,2,5/2")->required();
  add_common(prof_cmd, prof_o.common);
  prof_cmd->callback(guard([&] {
    if (prof_o.common.format != "document" && prof_o.common.format != "csv")
      fail_usage("format must be 'document' or 'csv'");
    MetricGraph g = parse_graph(prof_o.graph);
    std::vector<Rat64> radii;
    for (const std::string& part : split(prof_o.radii, ','))
      radii.push_back(parse_rational(part, "radius"));
    GeometryProfile p = geometry_profile(g, radii, pick_exec(prof_o.common));
    RunConfig cfg{"profile",
                  {{"graph", prof_o.graph},
                   {"radii", prof_o.radii},
                   {"threads", std::to_string(prof_o.common.threads)}},
                  prof_o.common.format};
    if (prof_o.common.format == "csv")
      emit(profile_csv(cfg, p), prof_o.common.out);
    else
      emit(document(cfg, profile_json(p)), prof_o.common.out);
  }));

  // cycles
  auto* cyc_cmd = app.add_subcommand("cycles", "cycle structure");
  cyc_cmd->require_subcommand(1);

  struct {
    std::string graph;
    std::int64_t cap = 1'000'000;
    CommonOpts common;
  } ce_o;
  auto* ce_cmd = cyc_cmd->add_subcommand("enumerate", "all simple cycles, canonical form");
  ce_cmd->add_option("--graph", ce_o.graph, "family:level[:weighted]")->required();
  ce_cmd->add_option("--cap", ce_o.cap, "abort beyond this many cycles");
  add_common(ce_cmd, ce_o.common);
  ce_cmd->callback(guard([&] {
    require_document(ce_o.common);
    MetricGraph g = parse_graph(ce_o.graph);
    std::vector<Cycle> cs = enumerate_simple_cycles(g, ce_o.cap);
    RunConfig cfg{"cycles enumerate",
                  {{"graph", ce_o.graph}, {"cap", std::to_string(ce_o.cap)}},
                  ce_o.common.format};
    emit(document(cfg, cycles_json(cs)), ce_o.common.out);
  }));

  struct {
    std::string graph;
    std::int64_t cap = 1'000'000;
    CommonOpts common;
  } cc_o;
  auto* cc_cmd = cyc_cmd->add_subcommand("classify-all", "classify every simple cycle");
  cc_cmd->add_option("--graph", cc_o.graph, "family:level[:weighted]")->required();
  cc_cmd->add_option("--cap", cc_o.cap, "abort beyond this many cycles");
  add_common(cc_cmd, cc_o.common);
  cc_cmd->callback(guard([&] {
    require_document(cc_o.common);
    MetricGraph g = parse_graph(cc_o.graph);
    std::vector<Cycle> cs = enumerate_simple_cycles(g, cc_o.cap);
    std::vector<std::pair<Cycle, Subdiamond>> rows;
    rows.reserve(cs.size());
    for (const Cycle& c : cs) rows.emplace_back(c, classify_cycle(g, c));
    RunConfig cfg{"cycles classify-all",
                  {{"graph", cc_o.graph}, {"cap", std::to_string(cc_o.cap)}},
                  cc_o.common.format};
    emit(document(cfg, classification_json(rows)), cc_o.common.out);
  }));

  struct {
    std::string graph;
    int s = 0, t = 0;
    std::string root;
    CommonOpts common;
  } cf_o;
  auto* cf_cmd = cyc_cmd->add_subcommand("family", "nested family of isometric cycles");
  cf_cmd->add_option("--graph", cf_o.graph, "family:level[:weighted]")->required();
  cf_cmd->add_option("--s", cf_o.s, "root cycle scale")->required();
  cf_cmd->add_option("--t", cf_o.t, "leaf cycle scale")->required();
  cf_cmd->add_option("--root", cf_o.root, "override the root copy path");
  add_common(cf_cmd, cf_o.common);
  cf_cmd->callback(guard([&] {
    require_document(cf_o.common);
    MetricGraph g = parse_graph(cf_o.graph);
    CycleFamily f = cycle_family(g, cf_o.s, cf_o.t, cf_o.root);
    RunConfig cfg{"cycles family",
                  {{"graph", cf_o.graph},
                   {"s", std::to_string(cf_o.s)},
                   {"t", std::to_string(cf_o.t)},
                   {"root", cf_o.root}},
                  cf_o.common.format};
    emit(document(cfg, family_json(f)), cf_o.common.out);
  }));

  struct {
    std::string graph;
    std::string paths;
    std::int64_t height = 0;
    CommonOpts common;
  } col_o;
  auto* col_cmd = cyc_cmd->add_subcommand("collapse", "collapse subdiamonds to paths");
  col_cmd->add_option("--graph", col_o.graph, "family:level[:weighted]")->required();
  auto* col_paths_opt = col_cmd->add_option(
      "--paths", col_o.paths, "comma-separated copy paths; the empty path is the full diamond");
  col_cmd->add_option("--height", col_o.height, "collapse every subdiamond of this height");
  add_common(col_cmd, col_o.common);
  col_cmd->callback(guard([&] {
    require_document(col_o.common);
    MetricGraph g = parse_graph(col_o.graph);
    std::vector<Subdiamond> list;
    if (col_o.height > 0) {
      for (const Subdiamond& s : enumerate_subdiamonds(g, col_o.height))
        if (s.height == col_o.height) list.push_back(s);
    } else if (col_paths_opt->count() > 0) {
      for (const std::string& p : split(col_o.paths, ',')) {
        std::uint64_t packed = 0;
        for (char ch : p) {
          if (ch < '0' || ch > '3') fail_domain("copy path labels must be 0..3");
          packed = path_append(packed, ch - '0');
        }
        list.push_back(subdiamond_at(g, packed, static_cast<int>(p.size())));
      }
    } else {
      fail_usage("pass --paths or --height");
    }
    QuotientGraph q = collapse_subdiamonds(g, list);
    RunConfig cfg{"cycles collapse",
                  {{"graph", col_o.graph},
                   {"paths", col_o.paths},
                   {"height", std::to_string(col_o.height)}},
                  col_o.common.format};
    emit(document(cfg, quotient_json(q)), col_o.common.out);
  }));

  // embed
  auto* emb_cmd = app.add_subcommand("embed", "distortion evaluation and search");
  emb_cmd->require_subcommand(1);

  struct {
    std::string source, target, assignment;
    CommonOpts common;
  } ev_o;
  auto* ev_cmd = emb_cmd->add_subcommand("eval", "distortion of an explicit map");
  ev_cmd->add_option("--source", ev_o.source, "family:level[:weighted]")->required();
  ev_cmd->add_option("--target", ev_o.target, "family:level[:weighted]")->required();
  ev_cmd->add_option("--assignment", ev_o.assignment, "comma-separated image ids")->required();
  add_common(ev_cmd, ev_o.common);
  ev_cmd->callback(guard([&] {
    require_document(ev_o.common);
    MetricGraph s = parse_graph(ev_o.source);
    MetricGraph t = parse_graph(ev_o.target);
    EmbeddingMap m;
    m.source = &s;
    m.target = &t;
    m.assignment = parse_ids(ev_o.assignment, "assignment entry");
    DistortionReport r = evaluate(m);
    RunConfig cfg{"embed eval",
                  {{"source", ev_o.source},
                   {"target", ev_o.target},
                   {"assignment", ev_o.assignment}},
                  ev_o.common.format};
    emit(document(cfg, distortion_json(r)), ev_o.common.out);
  }));

  struct {
    std::string source, target, preload, bound;
    std::int64_t budget = 1'000'000'000;
    CommonOpts common;
  } ex_o;
  auto* ex_cmd = emb_cmd->add_subcommand("exact", "exact minimum distortion (branch and bound)");
  ex_cmd->add_option("--source", ex_o.source, "family:level[:weighted]")->required();
  ex_cmd->add_option("--target", ex_o.target, "family:level[:weighted]")->required();
  ex_cmd->add_option("--budget", ex_o.budget, "node budget");
  ex_cmd->add_option("--preload", ex_o.preload, "comma-separated incumbent assignment");
  ex_cmd->add_option("--bound", ex_o.bound, "external pruning threshold, e.g. 3/2");
  add_common(ex_cmd, ex_o.common);
  ex_cmd->callback(guard([&] {
    require_document(ex_o.common);
    MetricGraph s = parse_graph(ex_o.source);
    MetricGraph t = parse_graph(ex_o.target);
    SolveOptions opts;
    opts.node_budget = ex_o.budget;
    opts.preload = parse_ids(ex_o.preload, "preload entry");
    if (!ex_o.bound.empty()) {
      opts.has_bound = true;
      opts.bound = ExtRat::finite(parse_rational(ex_o.bound, "bound"));
    }
    SolverResult r = min_distortion_exact(s, t, opts);
    RunConfig cfg{"embed exact",
                  {{"source", ex_o.source},
                   {"target", ex_o.target},
                   {"budget", std::to_string(ex_o.budget)},
                   {"preload", ex_o.preload},
                   {"bound", ex_o.bound}},
                  ex_o.common.format};
    emit(document(cfg, solver_json(r)), ex_o.common.out);
  }));

  struct {
    std::string source, target;
    std::uint64_t seed = 1;
    int iterations = 20;
    CommonOpts common;
  } he_o;
  auto* he_cmd = emb_cmd->add_subcommand("heuristic", "local-search distortion upper bound");
  he_cmd->add_option("--source", he_o.source, "family:level[:weighted]")->required();
  he_cmd->add_option("--target", he_o.target, "family:level[:weighted]")->required();
  he_cmd->add_option("--seed", he_o.seed, "random seed");
  he_cmd->add_option("--iterations", he_o.iterations, "restart count");
  add_common(he_cmd, he_o.common);
  he_cmd->callback(guard([&] {
    require_document(he_o.common);
    MetricGraph s = parse_graph(he_o.source);
    MetricGraph t = parse_graph(he_o.target);
    SolverResult r = min_distortion_heuristic(s, t, he_o.seed, he_o.iterations);
    RunConfig cfg{"embed heuristic",
                  {{"source", he_o.source},
                   {"target", he_o.target},
                   {"seed", std::to_string(he_o.seed)},
                   {"iterations", std::to_string(he_o.iterations)}},
                  he_o.common.format};
    emit(document(cfg, solver_json(r)), he_o.common.out);
  }));

  struct {
    std::string source, target;
    int subset_size = 3;
    std::int64_t budget = 100'000'000;
    int samples = 32;
    std::uint64_t seed = 0;
    CommonOpts common;
  } lb_o;
  auto* lb_cmd = emb_cmd->add_subcommand("lower-bound", "subset-based distortion lower bound");
  lb_cmd->add_option("--source", lb_o.source, "family:level[:weighted]")->required();
  lb_cmd->add_option("--target", lb_o.target, "family:level[:weighted]")->required();
  lb_cmd->add_option("--subset-size", lb_o.subset_size, "points per subset (2..4)");
  lb_cmd->add_option("--budget", lb_o.budget, "placement budget per subset");
  lb_cmd->add_option("--samples", lb_o.samples, "number of subsets");
  lb_cmd->add_option("--seed", lb_o.seed, "random seed for subset sampling");
  add_common(lb_cmd, lb_o.common);
  lb_cmd->callback(guard([&] {
    require_document(lb_o.common);
    MetricGraph s = parse_graph(lb_o.source);
    MetricGraph t = parse_graph(lb_o.target);
    ExtRat v = distortion_lower_bound(s, t, lb_o.subset_size, lb_o.budget, lb_o.samples, lb_o.seed);
    RunConfig cfg{"embed lower-bound",
                  {{"source", lb_o.source},
                   {"target", lb_o.target},
                   {"subset_size", std::to_string(lb_o.subset_size)},
                   {"budget", std::to_string(lb_o.budget)},
                   {"samples", std::to_string(lb_o.samples)},
                   {"seed", std::to_string(lb_o.seed)}},
                  lb_o.common.format};
    Json j;
    j["lower_bound"] = extrat_json(v);
    emit(document(cfg, j), lb_o.common.out);
  }));

  struct {
    int n = 1;
    bool verify = false;
    CommonOpts common;
  } cm_o;
  auto* cm_cmd = emb_cmd->add_subcommand("construct-m", "isometric map of the ten-edge family");
  cm_cmd->add_option("--n", cm_o.n, "source level (target level is 3n)")->required();
  cm_cmd->add_flag("--verify", cm_o.verify, "evaluate the map over all pairs");
  add_common(cm_cmd, cm_o.common);
  cm_cmd->callback(guard([&] {
    require_document(cm_o.common);
    ConstructedEmbedding ce = construct_m_embedding(cm_o.n);
    RunConfig cfg{"embed construct-m",
                  {{"n", std::to_string(cm_o.n)},
                   {"verify", cm_o.verify ? "true" : "false"}},
                  cm_o.common.format};
    Json j;
    j["source"] = "m:" + std::to_string(cm_o.n);
    j["target"] = "diamond:" + std::to_string(3 * cm_o.n);
    Json a = Json::array();
    for (std::int32_t w : ce.assignment) a.push_back(w);
    j["assignment"] = std::move(a);
    if (cm_o.verify) j["report"] = distortion_json(evaluate(ce.map()));
    emit(document(cfg, j), cm_o.common.out);
  }));

  struct {
    CommonOpts common;
  } cl_o;
  auto* cl_cmd = emb_cmd->add_subcommand("construct-l1", "isometric six-vertex map");
  add_common(cl_cmd, cl_o.common);
  cl_cmd->callback(guard([&] {
    require_document(cl_o.common);
    ConstructedEmbedding ce = construct_l1_to_d2();
    RunConfig cfg{"embed construct-l1", {}, cl_o.common.format};
    Json j;
    j["source"] = "laakso:1";
    j["target"] = "diamond:2";
    Json a = Json::array();
    for (std::int32_t w : ce.assignment) a.push_back(w);
    j["assignment"] = std::move(a);
    j["report"] = distortion_json(evaluate(ce.map()));
    emit(document(cfg, j), cl_o.common.out);
  }));

  struct {
    int n_max = 1;
    std::string targets;
    std::uint64_t seed = 1;
    int iterations = 20;
    int subset_size = 3;
    int samples = 20;
    std::int64_t budget = 100'000'000;
    CommonOpts common;
  } gr_o;
  auto* gr_cmd = emb_cmd->add_subcommand("growth", "upper/lower bound table across levels");
  gr_cmd->add_option("--n-max", gr_o.n_max, "largest source level")->required();
  gr_cmd->add_option("--targets", gr_o.targets, "comma-separated target levels")->required();
  gr_cmd->add_option("--seed", gr_o.seed, "random seed");
  gr_cmd->add_option("--iterations", gr_o.iterations, "heuristic restarts");
  gr_cmd->add_option("--subset-size", gr_o.subset_size, "lower-bound subset size");
  gr_cmd->add_option("--samples", gr_o.samples, "lower-bound subsets");
  gr_cmd->add_option("--budget", gr_o.budget, "lower-bound placement budget");
  add_common(gr_cmd, gr_o.common);
  gr_cmd->callback(guard([&] {
    if (gr_o.common.format != "document" && gr_o.common.format != "csv")
      fail_usage("format must be 'document' or 'csv'");
    std::vector<int> targets;
    for (const std::string& part : split(gr_o.targets, ','))
      targets.push_back(static_cast<int>(parse_int(part, "target level")));
    GrowthOptions opts;
    opts.seed = gr_o.seed;
    opts.iterations = gr_o.iterations;
    opts.subset_size = gr_o.subset_size;
    opts.subset_samples = gr_o.samples;
    opts.subset_budget = gr_o.budget;
    std::vector<GrowthRow> rows = growth_experiment(gr_o.n_max, targets, opts);
    RunConfig cfg{"embed growth",
                  {{"n_max", std::to_string(gr_o.n_max)},
                   {"targets", gr_o.targets},
                   {"seed", std::to_string(gr_o.seed)},
                   {"iterations", std::to_string(gr_o.iterations)},
                   {"subset_size", std::to_string(gr_o.subset_size)},
                   {"samples", std::to_string(gr_o.samples)},
                   {"budget", std::to_string(gr_o.budget)}},
                  gr_o.common.format};
    if (gr_o.common.format == "csv")
      emit(growth_csv(cfg, rows), gr_o.common.out);
    else
      emit(document(cfg, growth_json(rows)), gr_o.common.out);
  }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 64;
  }
  return exit_code;
}
