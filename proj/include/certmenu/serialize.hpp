#pragma once

#include "certmenu/equilibrium.hpp"
#include "certmenu/obedience.hpp"
#include "certmenu/optimizer.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace certmenu {

// Machine-readable output keeps every number as an exact fraction string;
// key order is fixed so identical inputs produce identical bytes.
using Json = nlohmann::ordered_json;

Json to_json(const Experiment& x);
Json to_json(const Menu& m);
Json to_json(const WelfareAccount& account);
Json to_json(const ObedienceReport& report);
Json to_json(const SolveResult& result);

/// Parsed run configuration: market parameters, acceptance set, and flags.
struct RunConfig {
  MarketParams params = MarketParams::from_threshold(Rat(1, 4), Rat(1, 2));
  std::optional<AcceptanceSet> acceptance;  // absent for the naive-receiver set
  bool naive = false;
  int naive_grid_size = 12;
  bool allow_uninformative = false;
  bool single_item = false;
  std::string solver_path = "lp";  // lp | closed-form | support-enum | all
};

/// Reads {"market": {...}, "acceptance": [...] | "naive", "flags": {...}}.
/// Throws std::invalid_argument with a field-level diagnostic on bad input.
RunConfig parse_config(const Json& doc);

/// Inverse of parse_config up to normalization; round trips exactly.
Json to_json(const RunConfig& config);

}  // namespace certmenu
