#pragma once

// Scenario files and reports as JSON. Parsing is strict: unknown keys and
// wrong types are rejected with the JSON pointer of the offending value.
// Exact integers and rationals are written as decimal strings.

#include <string>
#include <vector>

#include "json.hpp"
#include "tamagawa/engine.hpp"

namespace tamagawa {

Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& s);
std::string scenario_to_text(const Scenario& s);

/// Reads and parses a scenario file; I/O and syntax errors become InputError.
Scenario load_scenario_file(const std::string& path);

nlohmann::json report_to_json(const Scenario& s, const TamagawaReport& r);
std::string report_to_text(const Scenario& s, const TamagawaReport& r);

/// Built-in scenario catalogue, in listing order.
const std::vector<Scenario>& builtin_scenarios();
/// Throws InputError for unknown names.
const Scenario& find_builtin(const std::string& name);

}  // namespace tamagawa
