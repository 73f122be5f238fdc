#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mfl/cycles.hpp"
#include "mfl/embed.hpp"
#include "mfl/graph.hpp"
#include "mfl/metric.hpp"

namespace mfl {

using Json = nlohmann::ordered_json;

// Echo of the invocation that produced a report; serialized into every
// document so identical configs reproduce identical bytes.
struct RunConfig {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::string format = "document";
};

Json config_json(const RunConfig& c);
Json rat_json(const Rat64& r);
Json extrat_json(const ExtRat& r);

Json graph_json(const MetricGraph& g);
Json oracle_json(const MetricGraph& g, std::int32_t u, std::int32_t v, const OracleResult& r);
Json diameter_json(const Rat64& diam, std::int64_t hops);
Json ball_json(const MetricGraph& g, std::int32_t center, const Rat64& radius,
               const std::vector<std::int32_t>& members);
Json doubling_json(const DoublingReport& r);
Json profile_json(const GeometryProfile& p);
std::string profile_csv(const RunConfig& c, const GeometryProfile& p);

Json subdiamond_json(const Subdiamond& s);
Json cycles_json(const std::vector<Cycle>& cs);
Json classification_json(const std::vector<std::pair<Cycle, Subdiamond>>& rows);
Json family_json(const CycleFamily& f);
Json quotient_json(const QuotientGraph& q);

Json distortion_json(const DistortionReport& r);
Json solver_json(const SolverResult& r);
Json growth_json(const std::vector<GrowthRow>& rows);
std::string growth_csv(const RunConfig& c, const std::vector<GrowthRow>& rows);

// Full document: config echo plus report, pretty-printed, newline-terminated.
std::string document(const RunConfig& c, const Json& report);

}  // namespace mfl
