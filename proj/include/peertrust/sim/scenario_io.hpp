#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "peertrust/sim/scenario.hpp"

namespace peertrust::sim {

// Scenario documents are JSON objects with the top-level keys `nodes`,
// `schedule`, `horizon_hours`, `seed` and `options`. Node fields that are
// omitted take the library defaults, except `t_min`, `wait_hours` and
// `disclosure_threshold`, which every node must state.
//
// A schedule entry is {"t", "actor", "action", "target"} with action one of
// data_request, trust_query, confidence_query. An optional
// "repeat": {"count": n, "interval_hours": h} expands it into n entries.
// The expanded schedule is stable-sorted by time.

/// Throws ValidationError listing every problem with the document.
Scenario scenario_from_json(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json scenario_to_json(const Scenario& scenario);

}  // namespace peertrust::sim
