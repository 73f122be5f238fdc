#include "mfl/serialize.hpp"

#include <sstream>

namespace mfl {

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  Json params = Json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  j["params"] = params;
  j["format"] = c.format;
  return j;
}

Json rat_json(const Rat64& r) {
  Json j;
  j["num"] = r.num;
  j["den"] = r.den;
  return j;
}

Json extrat_json(const ExtRat& r) {
  if (r.infinite) return Json("infinite");
  return rat_json(r.value);
}

Json graph_json(const MetricGraph& g) {
  Json j;
  j["family"] = family_name(g.family);
  j["level"] = g.level;
  j["normalization"] = g.normalization == Normalization::weighted ? "weighted" : "unweighted";
  j["edge_length"] = rat_json(g.edge_length);
  j["n_vertices"] = g.n_vertices;
  j["n_edges"] = g.n_edges;
  Json verts = Json::array();
  for (std::int32_t v = 0; v < g.n_vertices; ++v) {
    Json e;
    e["id"] = v;
    e["label"] = g.label(v);
    verts.push_back(std::move(e));
  }
  j["vertices"] = std::move(verts);
  Json edges = Json::array();
  for (auto [u, v] : g.edges) edges.push_back(Json::array({u, v}));
  j["edges"] = std::move(edges);
  return j;
}

Json oracle_json(const MetricGraph& g, std::int32_t u, std::int32_t v, const OracleResult& r) {
  Json j;
  j["source"] = u;
  j["target"] = v;
  j["source_label"] = g.label(u);
  j["target_label"] = g.label(v);
  j["distance"] = rat_json(r.distance);
  j["hops"] = r.hops;
  if (r.note != nullptr) j["note"] = r.note;
  return j;
}

Json diameter_json(const Rat64& diam, std::int64_t hops) {
  Json j;
  j["diameter"] = rat_json(diam);
  j["hops"] = hops;
  return j;
}

Json ball_json(const MetricGraph& g, std::int32_t center, const Rat64& radius,
               const std::vector<std::int32_t>& members) {
  Json j;
  j["center"] = center;
  j["center_label"] = g.label(center);
  j["radius"] = rat_json(radius);
  j["cardinality"] = static_cast<std::int64_t>(members.size());
  Json m = Json::array();
  for (std::int32_t v : members) m.push_back(v);
  j["vertices"] = std::move(m);
  return j;
}

Json doubling_json(const DoublingReport& r) {
  Json j;
  j["strategy"] = r.strategy == DoublingStrategy::witness_bottom_ball ? "witness_bottom_ball"
                                                                      : "scan_all_balls";
  j["ball_center"] = r.ball_center;
  j["ball_radius"] = rat_json(r.ball_radius);
  j["witness_lower_bound"] = r.witness_lower_bound;
  j["greedy_upper_bound"] = r.greedy_upper_bound;
  j["scanned_balls"] = r.scanned_balls;
  j["complete"] = r.complete;
  j["witness_exact"] = r.witness_exact;
  return j;
}

Json profile_json(const GeometryProfile& p) {
  Json rows = Json::array();
  for (const auto& [radius, count] : p.entries) {
    Json row;
    row["radius"] = rat_json(radius);
    row["max_ball"] = count;
    rows.push_back(std::move(row));
  }
  Json j;
  j["entries"] = std::move(rows);
  return j;
}

std::string profile_csv(const RunConfig& c, const GeometryProfile& p) {
  std::ostringstream out;
  out << "# " << c.command;
  for (const auto& [k, v] : c.params) out << " " << k << "=" << v;
  out << "\nradius,max_ball\n";
  for (const auto& [radius, count] : p.entries) out << radius.str() << "," << count << "\n";
  return out.str();
}

Json subdiamond_json(const Subdiamond& s) {
  Json j;
  j["path"] = s.path_string();
  j["height"] = s.height;
  j["bottom"] = s.bottom;
  j["top"] = s.top;
  j["leftmost"] = s.leftmost;
  j["rightmost"] = s.rightmost;
  return j;
}

Json cycles_json(const std::vector<Cycle>& cs) {
  Json j;
  j["count"] = static_cast<std::int64_t>(cs.size());
  Json arr = Json::array();
  for (const Cycle& c : cs) {
    Json e;
    e["length"] = c.hops();
    Json vs = Json::array();
    for (std::int32_t v : c.vertices) vs.push_back(v);
    e["vertices"] = std::move(vs);
    arr.push_back(std::move(e));
  }
  j["cycles"] = std::move(arr);
  return j;
}

Json classification_json(const std::vector<std::pair<Cycle, Subdiamond>>& rows) {
  Json j;
  j["count"] = static_cast<std::int64_t>(rows.size());
  Json arr = Json::array();
  for (const auto& [c, s] : rows) {
    Json e;
    Json vs = Json::array();
    for (std::int32_t v : c.vertices) vs.push_back(v);
    e["cycle"] = std::move(vs);
    e["subdiamond"] = subdiamond_json(s);
    arr.push_back(std::move(e));
  }
  j["classified"] = std::move(arr);
  return j;
}

Json family_json(const CycleFamily& f) {
  Json j;
  j["n"] = f.n;
  j["s"] = f.s;
  j["t"] = f.t;
  Json tree = Json::object();
  for (const auto& [tau, c] : f.tree) {
    Json vs = Json::array();
    for (std::int32_t v : c.vertices) vs.push_back(v);
    tree[tau] = std::move(vs);
  }
  j["tree"] = std::move(tree);
  return j;
}

Json quotient_json(const QuotientGraph& q) {
  Json j;
  j["graph"] = graph_json(q.graph);
  Json proj = Json::array();
  for (std::int32_t v : q.projection) proj.push_back(v);
  j["projection"] = std::move(proj);
  Json col = Json::array();
  for (const Subdiamond& s : q.collapsed) col.push_back(subdiamond_json(s));
  j["collapsed"] = std::move(col);
  return j;
}

Json distortion_json(const DistortionReport& r) {
  Json j;
  j["expansion"] = extrat_json(r.expansion);
  j["contraction"] = extrat_json(r.contraction);
  j["distortion"] = extrat_json(r.distortion);
  j["witness_expansion_pair"] = Json::array({r.witness_expansion_pair.u, r.witness_expansion_pair.v});
  j["witness_contraction_pair"] =
      Json::array({r.witness_contraction_pair.u, r.witness_contraction_pair.v});
  return j;
}

Json solver_json(const SolverResult& r) {
  Json j;
  j["status"] = solve_status_name(r.status);
  j["value"] = extrat_json(r.value);
  Json a = Json::array();
  for (std::int32_t w : r.assignment) a.push_back(w);
  j["assignment"] = std::move(a);
  j["nodes_explored"] = r.nodes_explored;
  j["improving_leaves"] = r.improving_leaves;
  Json cert;
  cert["exhausted"] = r.certificate.exhausted;
  cert["bound"] = extrat_json(r.certificate.bound);
  j["certificate"] = std::move(cert);
  return j;
}

Json growth_json(const std::vector<GrowthRow>& rows) {
  Json arr = Json::array();
  for (const GrowthRow& r : rows) {
    Json e;
    e["n"] = r.n;
    e["m"] = r.m;
    e["upper"] = extrat_json(r.upper);
    e["lower"] = extrat_json(r.lower);
    arr.push_back(std::move(e));
  }
  Json j;
  j["rows"] = std::move(arr);
  return j;
}

std::string growth_csv(const RunConfig& c, const std::vector<GrowthRow>& rows) {
  std::ostringstream out;
  out << "# " << c.command;
  for (const auto& [k, v] : c.params) out << " " << k << "=" << v;
  out << "\nn,m,upper,lower\n";
  for (const GrowthRow& r : rows) {
    out << r.n << "," << r.m << "," << r.upper.str() << "," << r.lower.str() << "\n";
  }
  return out.str();
}

std::string document(const RunConfig& c, const Json& report) {
  Json j;
  j["config"] = config_json(c);
  j["report"] = report;
  return j.dump(2) + "\n";
}

}  // namespace mfl
