#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "syncsim/analytic.hpp"
#include "syncsim/experiments.hpp"
#include "syncsim/model.hpp"

namespace syncsim::cli {

enum class ConfigErrorKind {
  Syntax,
  UnknownKey,
  MissingKey,
  WrongType,
  InvalidSignaturePart,
  SignatureExceedsN,
  NonpositiveRate,
  MalformedDistribution,
  InvalidValue,
};

std::string_view to_string(ConfigErrorKind kind) noexcept;

/// Rejected configuration. `field` is the dotted path of the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(ConfigErrorKind kind, std::string field, const std::string& detail);

  ConfigErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ConfigErrorKind kind_;
  std::string field_;
};

enum class OutputFormat { Csv, Json };

struct OutputOptions {
  OutputFormat format = OutputFormat::Csv;
  std::string path = "-";  ///< "-" is stdout
  int verbosity = 0;
};

struct RunOptions {
  std::vector<double> checkpoints;
  std::vector<std::uint64_t> steps;  ///< embedded-chain grid for `analytic`
  std::size_t replicas = 2000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::optional<PhaseRegime::Kind> regime;
  std::vector<double> c_values;  ///< critical scales, one sweep per value
  std::vector<int> n_list;
  int oracle_configs = 20;
};

struct RunConfig {
  ModelSpec model;
  InitSpec init;
  RunOptions run;
  OutputOptions output;

  /// Regimes requested by run.regime / run.c, expanded one per c value.
  std::vector<PhaseRegime> regimes() const;
};

/// Parses a JSON document with sections model, init, run, output. Every
/// model invariant is checked here; unknown keys are rejected.
RunConfig parse_config(std::string_view text);

/// Fully resolved config, defaults included.
nlohmann::json to_json(const RunConfig& config);

}  // namespace syncsim::cli
