#pragma once

#include <json.hpp>

#include "mfsteiner/ballgrow.hpp"
#include "mfsteiner/instance.hpp"
#include "mfsteiner/maximal.hpp"
#include "mfsteiner/steiner.hpp"
#include "mfsteiner/theory.hpp"

// JSON views of the library's result types, used by the CLI and for
// debugging dumps. Vertices are written 0-based, as in the library.
namespace mfsteiner {

nlohmann::json to_json(const Seed& seed);
Seed seed_from_json(const nlohmann::json& j);

/// {"n", "seed", "layout", "weights"}; weights in the documented
/// upper-triangular row-major order.
nlohmann::json to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SteinerResult& result);
nlohmann::json to_json(const MaximalResult& result);
nlohmann::json to_json(const BallGrowthTrace& trace);
nlohmann::json to_json(const BallGrowthOutcome& outcome);
nlohmann::json to_json(const TailCheck& check);
nlohmann::json to_json(const CouplingLawReport& report);
nlohmann::json to_json(const LowerBoundConditions& conditions);

}  // namespace mfsteiner
