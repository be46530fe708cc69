#include "mvrpb/io.hpp"

#include <json.hpp>

namespace mvrpb {

using ordered_json = nlohmann::ordered_json;

std::string serialize_plans(const std::vector<PeriodPlan>& plans) {
  ordered_json j;
  j["schema"] = kPlansSchema;
  ordered_json periods = ordered_json::array();
  for (const auto& p : plans) {
    ordered_json jp;
    jp["proven_optimal"] = p.proven_optimal;
    jp["total_distance"] = p.total_distance;
    ordered_json routes = ordered_json::array();
    for (const auto& r : p.routes) {
      ordered_json jr;
      jr["clients"] = r.clients;
      jr["distance"] = r.distance;
      jr["load"] = r.load;
      routes.push_back(jr);
    }
    jp["routes"] = routes;
    periods.push_back(jp);
  }
  j["periods"] = periods;
  return j.dump(1) + "\n";
}

std::vector<PeriodPlan> parse_plans(std::string_view text) {
  std::vector<PeriodPlan> plans;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("schema").get<std::string>() != kPlansSchema)
      throw Error(Errc::Parse, "unsupported schema " + j.at("schema").get<std::string>());
    for (const auto& jp : j.at("periods")) {
      PeriodPlan p;
      p.proven_optimal = jp.at("proven_optimal").get<bool>();
      p.total_distance = jp.at("total_distance").get<Dist>();
      for (const auto& jr : jp.at("routes")) {
        Route r;
        r.clients = jr.at("clients").get<std::vector<int>>();
        r.distance = jr.at("distance").get<Dist>();
        r.load = jr.at("load").get<std::int64_t>();
        if (r.distance < 0) throw Error(Errc::InvalidPlan, "negative route distance");
        p.routes.push_back(std::move(r));
      }
      plans.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("plans file: ") + e.what());
  }
  return plans;
}

std::string serialize_balance(const BalanceResult& res, int drivers) {
  ordered_json j;
  j["schema"] = kBalanceSchema;
  j["drivers"] = drivers;
  j["lb"] = res.lb;
  j["ub"] = res.ub;
  j["opt"] = res.opt;
  j["status"] = res.status == BalanceStatus::Optimal ? "optimal" : "bracket";
  j["bracket"] = {res.bracket_lo, res.bracket_hi};
  j["iterations"] = res.iterations;
  ordered_json probes = ordered_json::array();
  for (const auto& p : res.probes) {
    ordered_json jp;
    jp["cap"] = p.cap;
    jp["verdict"] = to_string(p.verdict);
    jp["nodes"] = p.nodes;
    probes.push_back(jp);
  }
  j["probes"] = probes;
  j["assignment"] = res.assignment.drivers;
  j["loads"] = res.loads;
  return j.dump(1) + "\n";
}

StoredAssignment parse_balance_assignment(std::string_view text) {
  StoredAssignment out;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("schema").get<std::string>() != kBalanceSchema)
      throw Error(Errc::Parse, "unsupported schema " + j.at("schema").get<std::string>());
    out.drivers = j.at("drivers").get<int>();
    out.assignment.drivers = j.at("assignment").get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("balance file: ") + e.what());
  }
  return out;
}

}  // namespace mvrpb
