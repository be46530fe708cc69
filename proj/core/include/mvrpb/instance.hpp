#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "mvrpb/model.hpp"

namespace mvrpb {

/// Parses the single-period CVRP benchmark format (NAME, DIMENSION, CAPACITY,
/// NODE_COORD_SECTION, DEMAND_SECTION, DEPOT_SECTION; EUC_2D). The depot is
/// moved to index 0, other nodes keep their file order.
CvrpBase parse_cvrp(std::string_view text);

std::string write_cvrp(const CvrpBase& base);

/// Random Euclidean base: coordinates on a [0, grid] square, client demands
/// uniform in [1, max_demand], depot at the square's centre.
CvrpBase synthesize_base(const std::string& name, int clients, std::int64_t capacity, std::int64_t max_demand,
                         std::int64_t grid, std::uint64_t seed);

/// Demand window {ceil(d/2), ..., ceil(3d/2)} for a base demand d.
std::int64_t perturbed_demand_min(std::int64_t base_demand);
std::int64_t perturbed_demand_max(std::int64_t base_demand);

/// Multi-period instance with independently sampled client subsets and
/// demands per period. Driver count is left unset. Demands above the capacity
/// are clamped and counted in clamped_demands.
MvrpbInstance generate_mvrpb(const CvrpBase& base, int periods, int clients_per_period, std::uint64_t seed);

/// First `horizon` periods of an instance, driver count unchanged.
MvrpbInstance truncate_horizon(const MvrpbInstance& inst, int horizon);

/// Maximum number of routes over the periods.
int derive_driver_count(std::span<const PeriodPlan> plans);

// Versioned JSON text files.
inline constexpr std::string_view kInstanceSchema = "mvrpb-instance/1";

std::string serialize_instance(const MvrpbInstance& inst);
MvrpbInstance parse_instance(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace mvrpb
