#include "syncsim/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

namespace syncsim::cli {

using nlohmann::json;

std::string_view to_string(ConfigErrorKind kind) noexcept {
  switch (kind) {
    case ConfigErrorKind::Syntax: return "syntax error";
    case ConfigErrorKind::UnknownKey: return "unknown key";
    case ConfigErrorKind::MissingKey: return "missing key";
    case ConfigErrorKind::WrongType: return "wrong type";
    case ConfigErrorKind::InvalidSignaturePart: return "invalid signature part";
    case ConfigErrorKind::SignatureExceedsN: return "signature exceeds N";
    case ConfigErrorKind::NonpositiveRate: return "nonpositive rate";
    case ConfigErrorKind::MalformedDistribution: return "malformed distribution";
    case ConfigErrorKind::InvalidValue: return "invalid value";
  }
  return "config error";
}

ConfigError::ConfigError(ConfigErrorKind kind, std::string field, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + " at '" + field + "': " + detail),
      kind_(kind),
      field_(std::move(field)) {}

namespace {

void only_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(ConfigErrorKind::WrongType, where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(ConfigErrorKind::UnknownKey, where.empty() ? key : where + "." + key, "not a recognized key");
    }
  }
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(ConfigErrorKind::WrongType, field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(ConfigErrorKind::InvalidValue, field, "must be finite");
  return d;
}

long long integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(ConfigErrorKind::WrongType, field, "expected an integer");
  return v.get<long long>();
}

double rate(const json& v, const std::string& field) {
  const double d = number(v, field);
  if (!(d > 0.0)) throw ConfigError(ConfigErrorKind::NonpositiveRate, field, "rate must be > 0");
  return d;
}

const json& array(const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(ConfigErrorKind::WrongType, field, "expected an array");
  return v;
}

Signature parse_signature(const json& v, const std::string& field) {
  const auto& arr = array(v, field);
  if (arr.empty()) throw ConfigError(ConfigErrorKind::InvalidSignaturePart, field, "signature needs at least one part");
  std::vector<int> parts;
  for (std::size_t j = 0; j < arr.size(); ++j) {
    const std::string f = field + "[" + std::to_string(j) + "]";
    const long long kj = integer(arr[j], f);
    if (kj < 2) throw ConfigError(ConfigErrorKind::InvalidSignaturePart, f, "part is " + std::to_string(kj) + " < 2");
    if (kj > std::numeric_limits<int>::max() / 64) throw ConfigError(ConfigErrorKind::InvalidValue, f, "part too large");
    parts.push_back(static_cast<int>(kj));
  }
  return Signature(std::move(parts));
}

JumpDistribution parse_distribution(const json& v, const std::string& field) {
  only_keys(v, field, {"atoms", "uniform"});
  if (v.contains("atoms") == v.contains("uniform")) {
    throw ConfigError(ConfigErrorKind::MalformedDistribution, field, "give exactly one of 'atoms' or 'uniform'");
  }
  try {
    if (v.contains("atoms")) {
      const std::string f = field + ".atoms";
      const auto& arr = array(v["atoms"], f);
      std::vector<Atom> atoms;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string fi = f + "[" + std::to_string(i) + "]";
        if (!arr[i].is_array() || arr[i].size() != 2) {
          throw ConfigError(ConfigErrorKind::MalformedDistribution, fi, "atom must be [z, p]");
        }
        atoms.push_back({number(arr[i][0], fi + "[0]"), number(arr[i][1], fi + "[1]")});
      }
      return JumpDistribution::discrete(std::move(atoms));
    }
    const std::string f = field + ".uniform";
    const auto& arr = array(v["uniform"], f);
    if (arr.size() != 2) throw ConfigError(ConfigErrorKind::MalformedDistribution, f, "expected [lo, hi]");
    return JumpDistribution::uniform(number(arr[0], f + "[0]"), number(arr[1], f + "[1]"));
  } catch (const Error& e) {
    throw ConfigError(ConfigErrorKind::MalformedDistribution, field, e.what());
  } catch (const ConfigError& e) {
    if (e.kind() == ConfigErrorKind::MalformedDistribution) throw;
    throw ConfigError(ConfigErrorKind::MalformedDistribution, e.field(), e.what());
  }
}

json distribution_to_json(const JumpDistribution& rho) {
  if (const auto* d = std::get_if<JumpDistribution::Discrete>(&rho.law())) {
    json atoms = json::array();
    for (const auto& a : d->atoms) atoms.push_back({a.z, a.p});
    return {{"atoms", atoms}};
  }
  const auto& u = std::get<JumpDistribution::Uniform>(rho.law());
  return {{"uniform", {u.lo, u.hi}}};
}

RunOptions parse_run(const json& doc) {
  RunOptions run;
  if (!doc.contains("run")) return run;
  const json& v = doc["run"];
  only_keys(v, "run", {"checkpoints", "steps", "replicas", "seed", "threads", "regime", "c", "N_list", "configs"});

  if (v.contains("checkpoints")) {
    const auto& arr = array(v["checkpoints"], "run.checkpoints");
    double prev = 0.0;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string f = "run.checkpoints[" + std::to_string(i) + "]";
      const double t = number(arr[i], f);
      if (t < prev) throw ConfigError(ConfigErrorKind::InvalidValue, f, "times must be nonnegative and nondecreasing");
      run.checkpoints.push_back(prev = t);
    }
  }
  if (v.contains("steps")) {
    const auto& arr = array(v["steps"], "run.steps");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string f = "run.steps[" + std::to_string(i) + "]";
      const long long n = integer(arr[i], f);
      if (n < 0) throw ConfigError(ConfigErrorKind::InvalidValue, f, "step index must be >= 0");
      run.steps.push_back(static_cast<std::uint64_t>(n));
    }
  }
  if (v.contains("replicas")) {
    const long long r = integer(v["replicas"], "run.replicas");
    if (r < 2) throw ConfigError(ConfigErrorKind::InvalidValue, "run.replicas", "need at least 2 replicas");
    run.replicas = static_cast<std::size_t>(r);
  }
  if (v.contains("seed")) {
    if (!v["seed"].is_number_unsigned()) {
      throw ConfigError(ConfigErrorKind::WrongType, "run.seed", "expected a nonnegative integer");
    }
    run.seed = v["seed"].get<std::uint64_t>();
  }
  if (v.contains("threads")) {
    const long long th = integer(v["threads"], "run.threads");
    if (th < 0) throw ConfigError(ConfigErrorKind::InvalidValue, "run.threads", "must be >= 0");
    run.threads = static_cast<unsigned>(th);
  }
  if (v.contains("regime")) {
    if (!v["regime"].is_string()) throw ConfigError(ConfigErrorKind::WrongType, "run.regime", "expected a string");
    const auto name = v["regime"].get<std::string>();
    if (name == "early") {
      run.regime = PhaseRegime::Kind::Early;
    } else if (name == "critical") {
      run.regime = PhaseRegime::Kind::Critical;
    } else if (name == "late") {
      run.regime = PhaseRegime::Kind::Late;
    } else {
      throw ConfigError(ConfigErrorKind::InvalidValue, "run.regime", "expected early, critical or late");
    }
  }
  if (v.contains("c")) {
    if (v["c"].is_array()) {
      for (std::size_t i = 0; i < v["c"].size(); ++i) {
        run.c_values.push_back(rate(v["c"][i], "run.c[" + std::to_string(i) + "]"));
      }
    } else {
      run.c_values.push_back(rate(v["c"], "run.c"));
    }
  }
  if (run.regime == PhaseRegime::Kind::Critical && run.c_values.empty()) {
    throw ConfigError(ConfigErrorKind::MissingKey, "run.c", "critical regime needs a scale c");
  }
  if (v.contains("N_list")) {
    const auto& arr = array(v["N_list"], "run.N_list");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string f = "run.N_list[" + std::to_string(i) + "]";
      const long long n = integer(arr[i], f);
      if (n < 2 || n > 10'000'000) throw ConfigError(ConfigErrorKind::InvalidValue, f, "N must be in 2..1e7");
      run.n_list.push_back(static_cast<int>(n));
    }
  }
  if (v.contains("configs")) {
    const long long c = integer(v["configs"], "run.configs");
    if (c < 1) throw ConfigError(ConfigErrorKind::InvalidValue, "run.configs", "must be >= 1");
    run.oracle_configs = static_cast<int>(c);
  }
  return run;
}

ModelSpec parse_model(const json& doc, const RunOptions& run) {
  if (!doc.contains("model")) throw ConfigError(ConfigErrorKind::MissingKey, "model", "model section is required");
  const json& v = doc["model"];
  only_keys(v, "model", {"N", "alpha", "delta", "signature", "mixture", "rho"});

  long long n = 0;
  if (v.contains("N")) {
    n = integer(v["N"], "model.N");
    if (n < 2 || n > 10'000'000) throw ConfigError(ConfigErrorKind::InvalidValue, "model.N", "N must be in 2..1e7");
  } else if (!run.n_list.empty()) {
    n = run.n_list.front();
  } else {
    throw ConfigError(ConfigErrorKind::MissingKey, "model.N", "N is required unless run.N_list is given");
  }

  if (!v.contains("alpha")) throw ConfigError(ConfigErrorKind::MissingKey, "model.alpha", "free-jump rate is required");
  const double alpha = rate(v["alpha"], "model.alpha");

  std::vector<SyncTerm> terms;
  if (v.contains("mixture")) {
    if (v.contains("signature") || v.contains("delta")) {
      throw ConfigError(ConfigErrorKind::InvalidValue, "model.mixture",
                        "give either mixture or signature/delta, not both");
    }
    const auto& arr = array(v["mixture"], "model.mixture");
    if (arr.empty()) throw ConfigError(ConfigErrorKind::InvalidValue, "model.mixture", "mixture needs a term");
    for (std::size_t r = 0; r < arr.size(); ++r) {
      const std::string f = "model.mixture[" + std::to_string(r) + "]";
      only_keys(arr[r], f, {"signature", "delta"});
      if (!arr[r].contains("signature")) throw ConfigError(ConfigErrorKind::MissingKey, f + ".signature", "required");
      if (!arr[r].contains("delta")) throw ConfigError(ConfigErrorKind::MissingKey, f + ".delta", "required");
      terms.push_back({parse_signature(arr[r]["signature"], f + ".signature"), rate(arr[r]["delta"], f + ".delta")});
    }
  } else {
    if (!v.contains("signature")) throw ConfigError(ConfigErrorKind::MissingKey, "model.signature", "required");
    if (!v.contains("delta")) throw ConfigError(ConfigErrorKind::MissingKey, "model.delta", "required");
    terms.push_back({parse_signature(v["signature"], "model.signature"), rate(v["delta"], "model.delta")});
  }

  if (!v.contains("rho")) throw ConfigError(ConfigErrorKind::MissingKey, "model.rho", "jump law is required");
  auto rho = parse_distribution(v["rho"], "model.rho");

  int max_k = 0;
  for (const auto& term : terms) max_k = std::max(max_k, term.signature.k());
  auto check_n = [&](long long value, const std::string& field) {
    if (max_k > value) {
      throw ConfigError(ConfigErrorKind::SignatureExceedsN, field,
                        "k = " + std::to_string(max_k) + " > N = " + std::to_string(value));
    }
  };
  check_n(n, v.contains("N") ? "model.N" : "run.N_list");
  for (std::size_t i = 0; i < run.n_list.size(); ++i) check_n(run.n_list[i], "run.N_list[" + std::to_string(i) + "]");

  return ModelSpec(static_cast<int>(n), alpha, std::move(terms), std::move(rho));
}

InitSpec parse_init(const json& doc, int n) {
  InitSpec init;
  if (!doc.contains("init")) return init;
  const json& v = doc["init"];
  only_keys(v, "init", {"kind", "value", "rho", "width", "exponent", "coords"});
  if (!v.contains("kind") || !v["kind"].is_string()) {
    throw ConfigError(ConfigErrorKind::MissingKey, "init.kind", "expected point, iid, spread or explicit");
  }
  const auto kind = v["kind"].get<std::string>();
  auto forbid_except = [&](std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : v.items()) {
      if (key != "kind" && std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ConfigError(ConfigErrorKind::UnknownKey, "init." + key, "not used by init kind '" + kind + "'");
      }
    }
  };
  if (kind == "point") {
    forbid_except({"value"});
    init.kind = InitSpec::Point{v.contains("value") ? number(v["value"], "init.value") : 0.0};
  } else if (kind == "iid") {
    forbid_except({"rho"});
    if (!v.contains("rho")) throw ConfigError(ConfigErrorKind::MissingKey, "init.rho", "iid init needs a law");
    init.kind = InitSpec::Iid{parse_distribution(v["rho"], "init.rho")};
  } else if (kind == "spread") {
    forbid_except({"width", "exponent"});
    if (!v.contains("width")) throw ConfigError(ConfigErrorKind::MissingKey, "init.width", "spread init needs a width");
    const double width = number(v["width"], "init.width");
    if (!(width > 0.0)) throw ConfigError(ConfigErrorKind::InvalidValue, "init.width", "width must be > 0");
    init.kind = InitSpec::Spread{width, v.contains("exponent") ? number(v["exponent"], "init.exponent") : 0.0};
  } else if (kind == "explicit") {
    forbid_except({"coords"});
    if (!v.contains("coords")) throw ConfigError(ConfigErrorKind::MissingKey, "init.coords", "required");
    const auto& arr = array(v["coords"], "init.coords");
    std::vector<double> coords;
    for (std::size_t i = 0; i < arr.size(); ++i) coords.push_back(number(arr[i], "init.coords[" + std::to_string(i) + "]"));
    if (coords.size() != static_cast<std::size_t>(n)) {
      throw ConfigError(ConfigErrorKind::InvalidValue, "init.coords",
                        "has " + std::to_string(coords.size()) + " entries, N = " + std::to_string(n));
    }
    init.kind = InitSpec::Explicit{std::move(coords)};
  } else {
    throw ConfigError(ConfigErrorKind::InvalidValue, "init.kind", "expected point, iid, spread or explicit");
  }
  return init;
}

OutputOptions parse_output(const json& doc) {
  OutputOptions out;
  if (!doc.contains("output")) return out;
  const json& v = doc["output"];
  only_keys(v, "output", {"format", "path", "verbosity"});
  if (v.contains("format")) {
    const auto& f = v["format"];
    if (f == "csv") {
      out.format = OutputFormat::Csv;
    } else if (f == "json") {
      out.format = OutputFormat::Json;
    } else {
      throw ConfigError(ConfigErrorKind::InvalidValue, "output.format", "expected csv or json");
    }
  }
  if (v.contains("path")) {
    if (!v["path"].is_string()) throw ConfigError(ConfigErrorKind::WrongType, "output.path", "expected a string");
    out.path = v["path"].get<std::string>();
  }
  if (v.contains("verbosity")) out.verbosity = static_cast<int>(integer(v["verbosity"], "output.verbosity"));
  return out;
}

std::string_view regime_name(PhaseRegime::Kind kind) {
  switch (kind) {
    case PhaseRegime::Kind::Early: return "early";
    case PhaseRegime::Kind::Critical: return "critical";
    case PhaseRegime::Kind::Late: return "late";
  }
  return "";
}

}  // namespace

std::vector<PhaseRegime> RunConfig::regimes() const {
  if (!run.regime) return {};
  if (*run.regime == PhaseRegime::Kind::Critical) {
    std::vector<PhaseRegime> out;
    for (double c : run.c_values) out.push_back(PhaseRegime::critical(c));
    return out;
  }
  return {PhaseRegime{*run.regime, 0.0}};
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(ConfigErrorKind::Syntax, "", e.what());
  }
  only_keys(doc, "", {"model", "init", "run", "output"});
  auto run = parse_run(doc);
  auto model = parse_model(doc, run);
  auto init = parse_init(doc, model.n());
  auto output = parse_output(doc);
  return RunConfig{std::move(model), std::move(init), std::move(run), std::move(output)};
}

json to_json(const RunConfig& config) {
  const auto& m = config.model;
  json mixture = json::array();
  for (const auto& term : m.sync_terms()) {
    mixture.push_back({{"signature", std::vector<int>(term.signature.parts().begin(), term.signature.parts().end())},
                       {"delta", term.delta}});
  }
  json model = {{"N", m.n()}, {"alpha", m.alpha()}, {"mixture", mixture}, {"rho", distribution_to_json(m.jump())}};

  json init = std::visit(
      [](const auto& kind) -> json {
        using K = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<K, InitSpec::Point>) {
          return {{"kind", "point"}, {"value", kind.value}};
        } else if constexpr (std::is_same_v<K, InitSpec::Iid>) {
          return {{"kind", "iid"}, {"rho", distribution_to_json(kind.rho)}};
        } else if constexpr (std::is_same_v<K, InitSpec::Spread>) {
          return {{"kind", "spread"}, {"width", kind.width}, {"exponent", kind.exponent}};
        } else {
          return {{"kind", "explicit"}, {"coords", kind.coords}};
        }
      },
      config.init.kind);

  const auto& r = config.run;
  json run = {{"checkpoints", r.checkpoints}, {"steps", r.steps},   {"replicas", r.replicas},
              {"seed", r.seed},               {"threads", r.threads}, {"configs", r.oracle_configs}};
  if (r.regime) run["regime"] = regime_name(*r.regime);
  if (!r.c_values.empty()) run["c"] = r.c_values;
  if (!r.n_list.empty()) run["N_list"] = r.n_list;

  json output = {{"format", config.output.format == OutputFormat::Csv ? "csv" : "json"},
                 {"path", config.output.path},
                 {"verbosity", config.output.verbosity}};
  return {{"model", model}, {"init", init}, {"run", run}, {"output", output}};
}

}  // namespace syncsim::cli
