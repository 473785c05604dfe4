#include "syncsim/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace syncsim::cli {

Table estimate_table(const std::vector<EstimateRow>& rows) {
  Table table{kEstimateColumns, {}};
  for (const auto& r : rows) {
    table.rows.push_back({static_cast<std::int64_t>(r.n), r.t, static_cast<std::int64_t>(r.replicas), r.m_mean,
                          r.m_stderr, r.v_mean, r.v_stderr, r.v_analytic, r.theorem_value, r.z_score});
  }
  return table;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (!std::isfinite(*d)) return format_number(*d);
    return *d;
  }
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  return std::get<std::string>(cell);
}

}  // namespace

void write_csv(std::ostream& os, const std::string& command, const nlohmann::json& config, std::uint64_t seed,
               const Table& table) {
  os << "# syncsim " << command << '\n';
  os << "# seed: " << seed << '\n';
  os << "# config: " << config.dump() << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << cell_text(row[c]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const std::string& command, const nlohmann::json& config, std::uint64_t seed,
                const Table& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = cell_json(row[c]);
    rows.push_back(std::move(obj));
  }
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["seed"] = seed;
  doc["config"] = config;
  doc["columns"] = table.columns;
  doc["rows"] = rows;
  os << doc.dump(2) << '\n';
}

void emit(const RunConfig& config, const std::string& command, const Table& table, std::ostream& fallback) {
  // Destination and thread count cannot change the numbers, so they stay out
  // of the header; reruns that only differ in those compare byte-equal.
  auto resolved = to_json(config);
  resolved["output"].erase("path");
  resolved["run"].erase("threads");
  auto write = [&](std::ostream& os) {
    if (config.output.format == OutputFormat::Csv) {
      write_csv(os, command, resolved, config.run.seed, table);
    } else {
      write_json(os, command, resolved, config.run.seed, table);
    }
  };
  if (config.output.path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(config.output.path, std::ios::binary);
  if (!file) throw std::system_error(errno, std::generic_category(), "cannot open " + config.output.path);
  write(file);
}

}  // namespace syncsim::cli
