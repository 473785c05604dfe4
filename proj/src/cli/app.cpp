#include "syncsim/cli/app.hpp"

#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "syncsim/cli/commands.hpp"
#include "syncsim/cli/config.hpp"

namespace syncsim::cli {

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicas;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<unsigned> threads;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON config with model/init/run/output sections")->required();
  cmd->add_option("--seed", o.seed, "base seed (overrides run.seed)");
  cmd->add_option("--replicas", o.replicas, "Monte Carlo replicas (overrides run.replicas)")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  cmd->add_option("--out", o.out, "output path, '-' for stdout (overrides output.path)");
  cmd->add_option("--format", o.format, "csv or json (overrides output.format)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", o.threads, "worker threads, 0 = all cores (overrides run.threads)");
}

RunConfig load(const Overrides& o) {
  std::ifstream file(o.config_path);
  if (!file) {
    throw ConfigError(ConfigErrorKind::Syntax, "--config", "cannot read " + o.config_path);
  }
  std::stringstream text;
  text << file.rdbuf();
  auto config = parse_config(text.str());
  if (o.seed) config.run.seed = *o.seed;
  if (o.replicas) config.run.replicas = *o.replicas;
  if (o.out) config.output.path = *o.out;
  if (o.format) config.output.format = *o.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (o.threads) config.run.threads = *o.threads;
  return config;
}

}  // namespace

int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic multi-particle synchronization: simulator and exact moment engine"};
  app.require_subcommand(1);

  Overrides o;
  auto* oracle = app.add_subcommand("oracle-check", "verify the generator identities by exhaustive enumeration");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates of E M and E V at checkpoints");
  auto* analytic = app.add_subcommand("analytic", "exact moment curves and leading-order phase values");
  auto* sweep = app.add_subcommand("phase-sweep", "Monte Carlo sweep over N for one time regime");
  for (auto* cmd : {oracle, simulate, analytic, sweep}) add_common(cmd, o);

  // CLI11 consumes the argument vector from the back.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInvalidInput;
  }

  try {
    const auto config = load(o);
    if (*oracle) return cmd_oracle_check(config, out, err);
    if (*simulate) return cmd_simulate(config, out, err);
    if (*analytic) return cmd_analytic(config, out, err);
    return cmd_phase_sweep(config, out, err);
  } catch (const ConfigError& e) {
    err << "syncsim: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const syncsim::Error& e) {
    err << "syncsim: " << e.what() << '\n';
    switch (e.kind()) {
      case syncsim::ErrorKind::NumericFailure:
        return kCheckFailed;
      default:
        return kInvalidInput;
    }
  } catch (const std::exception& e) {
    err << "syncsim: " << e.what() << '\n';
    return kCheckFailed;
  }
}

}  // namespace syncsim::cli
