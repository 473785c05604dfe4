#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "syncsim/cli/config.hpp"
#include "syncsim/experiments.hpp"

namespace syncsim::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Column order shared by `simulate` and `phase-sweep`.
inline const std::vector<std::string> kEstimateColumns = {"N",      "t",        "replicas",   "M_mean",        "M_stderr",
                                                          "V_mean", "V_stderr", "V_analytic", "theorem_value", "z_score"};

Table estimate_table(const std::vector<EstimateRow>& rows);

/// Shortest round-trip decimal text, '.' separator regardless of locale.
std::string format_number(double v);

/// CSV: '#' comment lines carrying the command, seed and resolved config,
/// then the header row and data rows.
void write_csv(std::ostream& os, const std::string& command, const nlohmann::json& config, std::uint64_t seed,
               const Table& table);

/// JSON: {"command", "seed", "config", "rows": [{column: value}, ...]}.
void write_json(std::ostream& os, const std::string& command, const nlohmann::json& config, std::uint64_t seed,
                const Table& table);

/// Dispatches on config.output.format and writes to config.output.path
/// ("-" for `fallback`). The embedded config omits output.path and
/// run.threads, which do not affect the results.
void emit(const RunConfig& config, const std::string& command, const Table& table, std::ostream& fallback);

}  // namespace syncsim::cli
