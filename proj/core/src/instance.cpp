#include "mvrpb/instance.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "mvrpb/rng.hpp"

namespace mvrpb {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::int64_t parse_int(std::string_view tok, std::string_view field) {
  std::int64_t v = 0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw Error(Errc::NonIntegerField, std::string(field) + ": expected integer, got '" + std::string(tok) + "'");
  return v;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace

CvrpBase parse_cvrp(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string name;
  std::optional<std::int64_t> dimension, capacity;
  struct Node {
    Point p;
    std::optional<std::int64_t> demand;
  };
  std::map<std::int64_t, Node> nodes;
  std::vector<std::int64_t> order;
  bool have_coords = false, have_demands = false;
  std::optional<std::int64_t> depot;

  enum class Section { Header, Coords, Demands, Depot } section = Section::Header;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t == "EOF") break;
    if (t.rfind("NODE_COORD_SECTION", 0) == 0) {
      section = Section::Coords;
      have_coords = true;
      continue;
    }
    if (t.rfind("DEMAND_SECTION", 0) == 0) {
      section = Section::Demands;
      have_demands = true;
      continue;
    }
    if (t.rfind("DEPOT_SECTION", 0) == 0) {
      section = Section::Depot;
      continue;
    }
    const auto colon = t.find(':');
    if (colon != std::string::npos) {
      const std::string key = trim(std::string_view(t).substr(0, colon));
      const std::string value = trim(std::string_view(t).substr(colon + 1));
      section = Section::Header;
      if (key == "NAME") name = value;
      else if (key == "DIMENSION") dimension = parse_int(value, "DIMENSION");
      else if (key == "CAPACITY") capacity = parse_int(value, "CAPACITY");
      else if (key == "EDGE_WEIGHT_TYPE" && value != "EUC_2D")
        throw Error(Errc::Parse, "unsupported EDGE_WEIGHT_TYPE " + value);
      continue;
    }
    const auto tok = tokens(t);
    switch (section) {
      case Section::Header:
        throw Error(Errc::Parse, "unexpected line '" + t + "'");
      case Section::Coords: {
        if (tok.size() != 3) throw Error(Errc::Parse, "bad coordinate line '" + t + "'");
        const auto id = parse_int(tok[0], "node id");
        if (nodes.contains(id)) throw Error(Errc::Parse, "duplicate node " + tok[0]);
        nodes[id].p = {parse_int(tok[1], "x"), parse_int(tok[2], "y")};
        order.push_back(id);
        break;
      }
      case Section::Demands: {
        if (tok.size() != 2) throw Error(Errc::Parse, "bad demand line '" + t + "'");
        const auto id = parse_int(tok[0], "node id");
        nodes[id].demand = parse_int(tok[1], "demand");
        break;
      }
      case Section::Depot:
        for (const auto& s : tok) {
          const auto id = parse_int(s, "depot id");
          if (id != -1 && !depot) depot = id;
        }
        break;
    }
  }

  if (!dimension) throw Error(Errc::MissingSection, "DIMENSION missing");
  if (!capacity) throw Error(Errc::MissingSection, "CAPACITY missing");
  if (!have_coords) throw Error(Errc::MissingSection, "NODE_COORD_SECTION missing");
  if (!have_demands) throw Error(Errc::MissingSection, "DEMAND_SECTION missing");
  if (static_cast<std::int64_t>(order.size()) != *dimension)
    throw Error(Errc::Parse, "DIMENSION " + std::to_string(*dimension) + " but " + std::to_string(order.size()) +
                                 " coordinates");
  for (const auto& [id, node] : nodes)
    if (!node.demand) throw Error(Errc::MissingSection, "no demand for node " + std::to_string(id));
  if (nodes.size() != order.size()) throw Error(Errc::Parse, "demand given for a node without coordinates");
  const std::int64_t depot_id = depot.value_or(order.front());
  if (!nodes.contains(depot_id)) throw Error(Errc::Parse, "depot " + std::to_string(depot_id) + " is not a node");
  if (*nodes[depot_id].demand != 0) throw Error(Errc::DepotDemandNonzero, "depot demand is nonzero");

  CvrpBase base;
  base.name = name;
  base.capacity = *capacity;
  base.coords.push_back(nodes[depot_id].p);
  base.demand.push_back(0);
  for (auto id : order) {
    if (id == depot_id) continue;
    base.coords.push_back(nodes[id].p);
    base.demand.push_back(*nodes[id].demand);
  }
  check_base(base);
  return base;
}

std::string write_cvrp(const CvrpBase& base) {
  std::ostringstream out;
  out << "NAME : " << base.name << "\n";
  out << "TYPE : CVRP\n";
  out << "DIMENSION : " << base.size() << "\n";
  out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
  out << "CAPACITY : " << base.capacity << "\n";
  out << "NODE_COORD_SECTION\n";
  for (int i = 0; i < base.size(); ++i) out << i + 1 << "\t" << base.coords[i].x << "\t" << base.coords[i].y << "\n";
  out << "DEMAND_SECTION\n";
  for (int i = 0; i < base.size(); ++i) out << i + 1 << "\t" << base.demand[i] << "\n";
  out << "DEPOT_SECTION\n\t1\n\t-1\nEOF\n";
  return out.str();
}

CvrpBase synthesize_base(const std::string& name, int clients, std::int64_t capacity, std::int64_t max_demand,
                         std::int64_t grid, std::uint64_t seed) {
  if (clients < 1 || capacity < 1 || max_demand < 1 || max_demand > capacity || grid < 1)
    throw Error(Errc::InvalidArgument, "bad synthetic base parameters");
  Rng rng(stream_seed(seed, 0));
  CvrpBase base;
  base.name = name;
  base.capacity = capacity;
  base.coords.push_back({grid / 2, grid / 2});
  base.demand.push_back(0);
  for (int i = 0; i < clients; ++i) {
    const auto x = uniform_int(rng, 0, grid);
    const auto y = uniform_int(rng, 0, grid);
    base.coords.push_back({x, y});
    base.demand.push_back(uniform_int(rng, 1, max_demand));
  }
  return base;
}

std::int64_t perturbed_demand_min(std::int64_t d) { return (d + 1) / 2; }
std::int64_t perturbed_demand_max(std::int64_t d) { return (3 * d + 1) / 2; }

MvrpbInstance generate_mvrpb(const CvrpBase& base, int periods, int clients_per_period, std::uint64_t seed) {
  check_base(base);
  if (periods < 1) throw Error(Errc::InvalidHorizon, "need at least one period");
  if (clients_per_period < 1) throw Error(Errc::InvalidArgument, "clients per period must be positive");
  if (clients_per_period > base.client_count())
    throw Error(Errc::TooFewClients, "base has " + std::to_string(base.client_count()) + " clients, " +
                                         std::to_string(clients_per_period) + " requested");

  MvrpbInstance inst;
  inst.base = base;
  inst.periods.resize(periods);
  std::vector<int> pool(base.client_count());
  for (int t = 0; t < periods; ++t) {
    Rng rng(stream_seed(seed, static_cast<std::uint64_t>(t)));
    std::iota(pool.begin(), pool.end(), 1);
    // partial Fisher-Yates: pool[0..k) becomes a uniform k-subset
    for (int i = 0; i < clients_per_period; ++i) {
      const auto j = i + static_cast<int>(uniform_below(rng, pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    auto& pd = inst.periods[t];
    pd.clients.assign(pool.begin(), pool.begin() + clients_per_period);
    for (int c : pd.clients) {
      const auto d = base.demand[c];
      auto q = uniform_int(rng, perturbed_demand_min(d), perturbed_demand_max(d));
      if (q > base.capacity) {
        q = base.capacity;
        ++inst.clamped_demands;
      }
      pd.demands.push_back(q);
    }
  }
  return inst;
}

MvrpbInstance truncate_horizon(const MvrpbInstance& inst, int horizon) {
  if (horizon < 1 || horizon > inst.horizon())
    throw Error(Errc::InvalidHorizon,
                "horizon " + std::to_string(horizon) + " outside [1, " + std::to_string(inst.horizon()) + "]");
  MvrpbInstance out = inst;
  out.periods.resize(horizon);
  return out;
}

int derive_driver_count(std::span<const PeriodPlan> plans) {
  if (plans.empty()) throw Error(Errc::InvalidPlan, "no plans");
  int m = 0;
  for (std::size_t t = 0; t < plans.size(); ++t) {
    if (plans[t].routes.empty()) throw Error(Errc::InvalidPlan, "plan of period " + std::to_string(t) + " is empty");
    m = std::max(m, plans[t].route_count());
  }
  return m;
}

using ordered_json = nlohmann::ordered_json;

std::string serialize_instance(const MvrpbInstance& inst) {
  ordered_json j;
  j["schema"] = kInstanceSchema;
  j["name"] = inst.base.name;
  j["capacity"] = inst.base.capacity;
  ordered_json coords = ordered_json::array();
  for (const auto& p : inst.base.coords) coords.push_back({p.x, p.y});
  j["coords"] = coords;
  j["base_demand"] = inst.base.demand;
  j["drivers"] = inst.drivers ? ordered_json(*inst.drivers) : ordered_json(nullptr);
  j["clamped_demands"] = inst.clamped_demands;
  ordered_json periods = ordered_json::array();
  for (const auto& p : inst.periods) {
    ordered_json visits = ordered_json::array();
    for (std::size_t i = 0; i < p.clients.size(); ++i) visits.push_back({p.clients[i], p.demands[i]});
    periods.push_back(visits);
  }
  j["periods"] = periods;
  return j.dump() + "\n";
}

MvrpbInstance parse_instance(std::string_view text) {
  MvrpbInstance inst;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("schema").get<std::string>() != kInstanceSchema)
      throw Error(Errc::Parse, "unsupported schema " + j.at("schema").get<std::string>());
    inst.base.name = j.at("name").get<std::string>();
    inst.base.capacity = j.at("capacity").get<std::int64_t>();
    for (const auto& p : j.at("coords")) inst.base.coords.push_back({p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>()});
    inst.base.demand = j.at("base_demand").get<std::vector<std::int64_t>>();
    if (!j.at("drivers").is_null()) inst.drivers = j.at("drivers").get<int>();
    inst.clamped_demands = j.value("clamped_demands", 0);
    for (const auto& period : j.at("periods")) {
      PeriodDemand pd;
      for (const auto& v : period) {
        pd.clients.push_back(v.at(0).get<int>());
        pd.demands.push_back(v.at(1).get<std::int64_t>());
      }
      inst.periods.push_back(std::move(pd));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("instance file: ") + e.what());
  }
  check_instance(inst);
  return inst;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path);
  out << contents;
  if (!out) throw Error(Errc::Io, "write failed for " + path);
}

}  // namespace mvrpb
