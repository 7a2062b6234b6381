#include "qpass/experiments.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qpass {

namespace {

// Substream tags so every consumer of randomness inside one experiment is
// independent of the others (and of the protocol's own streams 1..4).
constexpr std::uint64_t STREAM_PASSWORD = 100;
constexpr std::uint64_t STREAM_SEARCH = 200;
constexpr std::uint64_t STREAM_EVAL = 201;
constexpr std::uint64_t STREAM_REPLAY = 202;
constexpr std::uint64_t STREAM_DICTIONARY = 203;
constexpr std::uint64_t STREAM_BOUND = 204;
constexpr std::uint64_t STREAM_SWEEP_BASE = 300;

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument(message);
}

std::uint64_t as_u64(const ordered_json& value, const std::string& key) {
  if (!value.is_number_unsigned())
    fail("config: '" + key + "' must be a non-negative integer");
  return value.get<std::uint64_t>();
}

double as_double(const ordered_json& value, const std::string& key) {
  if (!value.is_number()) fail("config: '" + key + "' must be a number");
  return value.get<double>();
}

std::string as_string(const ordered_json& value, const std::string& key) {
  if (!value.is_string()) fail("config: '" + key + "' must be a string");
  return value.get<std::string>();
}

void reject_unknown_keys(const ordered_json& doc,
                         std::initializer_list<const char*> allowed,
                         const std::string& scope) {
  for (const auto& [key, unused] : doc.items()) {
    bool known = false;
    for (const char* name : allowed)
      if (key == name) {
        known = true;
        break;
      }
    if (!known) fail("config: unknown key '" + scope + key + "'");
  }
}

unsigned as_unsigned(const ordered_json& value, const std::string& key) {
  const std::uint64_t v = as_u64(value, key);
  if (v > std::numeric_limits<unsigned>::max())
    fail("config: '" + key + "' out of range");
  return static_cast<unsigned>(v);
}

void apply_encoding_config(const ordered_json& doc, EncodingParams& enc) {
  if (!doc.is_object()) fail("config: 'encoding' must be an object");
  reject_unknown_keys(
      doc, {"password_bits", "hash_bits", "dim_log2", "hash_algo"},
      "encoding.");
  if (auto it = doc.find("password_bits"); it != doc.end())
    enc.password_bits = as_unsigned(*it, "encoding.password_bits");
  if (auto it = doc.find("hash_bits"); it != doc.end())
    enc.hash_bits = as_unsigned(*it, "encoding.hash_bits");
  if (auto it = doc.find("dim_log2"); it != doc.end())
    enc.dim_log2 = as_unsigned(*it, "encoding.dim_log2");
  if (auto it = doc.find("hash_algo"); it != doc.end()) {
    const std::string text = as_string(*it, "encoding.hash_algo");
    if (text.find('/') != std::string::npos) {
      // Full spec string: its truncation must agree with hash_bits.
      enc.hash = HashSpec::parse(text);
      if (enc.hash.output_bits != enc.hash_bits)
        fail("config: encoding.hash_algo truncation disagrees with hash_bits");
    } else if (text == "sha256") {
      enc.hash = HashSpec::make_sha256(enc.hash_bits);
    } else if (text == "ideal" || text.starts_with("ideal:")) {
      std::uint64_t key = 0;
      if (text.starts_with("ideal:")) key = std::stoull(text.substr(6));
      enc.hash = HashSpec::make_ideal(enc.hash_bits, key);
    } else {
      fail("config: unknown encoding.hash_algo '" + text + "'");
    }
  } else {
    // hash_bits alone keeps the algorithm but must retune the truncation.
    enc.hash.output_bits = enc.hash_bits;
  }
}

void apply_attack_config(const ordered_json& doc, AttackConfig& attack) {
  if (!doc.is_object()) fail("config: 'attack' must be an object");
  reject_unknown_keys(doc,
                      {"kind", "index_model", "captures", "dictionary_size",
                       "candidates", "fidelity_samples"},
                      "attack.");
  if (auto it = doc.find("kind"); it != doc.end())
    attack.kind = attack_kind_from_string(as_string(*it, "attack.kind"));
  if (auto it = doc.find("index_model"); it != doc.end())
    attack.index_model =
        index_model_from_string(as_string(*it, "attack.index_model"));
  if (auto it = doc.find("captures"); it != doc.end())
    attack.captures = as_u64(*it, "attack.captures");
  if (auto it = doc.find("dictionary_size"); it != doc.end())
    attack.dictionary_size = as_u64(*it, "attack.dictionary_size");
  if (auto it = doc.find("candidates"); it != doc.end())
    attack.candidates = as_u64(*it, "attack.candidates");
  if (auto it = doc.find("fidelity_samples"); it != doc.end())
    attack.fidelity_samples = as_u64(*it, "attack.fidelity_samples");
}

void apply_bound_config(const ordered_json& doc, BoundConfig& bound) {
  if (!doc.is_object()) fail("config: 'bound' must be an object");
  reject_unknown_keys(doc, {"captures", "mode", "samples"}, "bound.");
  if (auto it = doc.find("captures"); it != doc.end())
    bound.captures = as_u64(*it, "bound.captures");
  if (auto it = doc.find("mode"); it != doc.end())
    bound.mode = r_build_mode_from_string(as_string(*it, "bound.mode"));
  if (auto it = doc.find("samples"); it != doc.end())
    bound.samples = as_u64(*it, "bound.samples");
}

void apply_sweep_config(const ordered_json& doc, SweepConfig& sweep) {
  if (!doc.is_object()) fail("config: 'sweep' must be an object");
  reject_unknown_keys(doc, {"axis", "values"}, "sweep.");
  if (auto it = doc.find("axis"); it != doc.end())
    sweep.axis = as_string(*it, "sweep.axis");
  if (auto it = doc.find("values"); it != doc.end()) {
    if (!it->is_array()) fail("config: 'sweep.values' must be an array");
    sweep.values.clear();
    for (const auto& v : *it) sweep.values.push_back(as_u64(v, "sweep.values"));
  }
}

BitString resolve_password(const std::string& text, unsigned bits,
                           const char* who) {
  BitString p = BitString::from_string(text);
  if (p.size() != bits)
    fail(std::string("config: ") + who + " password has " +
         std::to_string(p.size()) + " bits, encoding expects " +
         std::to_string(bits));
  return p;
}

ordered_json attack_config_json(const AttackConfig& attack) {
  return ordered_json{{"kind", to_string(attack.kind)},
                      {"index_model", to_string(attack.index_model)},
                      {"captures", attack.captures},
                      {"dictionary_size", attack.dictionary_size},
                      {"candidates", attack.candidates},
                      {"fidelity_samples", attack.fidelity_samples}};
}

ordered_json document_skeleton(const ExperimentConfig& config) {
  return ordered_json{{"schema_version", SCHEMA_VERSION},
                      {"experiment", to_string(config.kind)},
                      {"generated_at", iso8601_utc_now()}};
}

struct AttackRun {
  AttackReport report;
  ordered_json extras;  // strategy-specific additions (e.g. search stats)
};

AttackRun evaluate_attack(const ExperimentConfig& config) {
  const ProtocolParams& params = config.protocol;
  params.validate();
  if (config.trials == 0) fail("attack_eval: trials must be >= 1");
  AttackRun run;
  switch (config.attack.kind) {
    case AttackKind::fixed_state: {
      const FixedStateSearchResult search = best_fixed_state_search(
          params.encoding, config.attack.candidates,
          substream(params.seed, STREAM_SEARCH),
          config.attack.fidelity_samples);
      run.report = fixed_state_attack_eval(
          params, search.best_state, config.trials,
          substream(params.seed, STREAM_EVAL));
      run.extras["search"] =
          ordered_json{{"candidates", config.attack.candidates},
                       {"mean_fidelity", search.mean_fidelity},
                       {"sem", search.sem},
                       {"fidelity_samples", config.attack.fidelity_samples}};
      break;
    }
    case AttackKind::naive_replay:
      run.report = naive_replay_success(params.encoding, config.trials,
                                        config.attack.index_model,
                                        substream(params.seed, STREAM_REPLAY));
      break;
    case AttackKind::dictionary: {
      if (config.attack.captures > std::numeric_limits<unsigned>::max())
        fail("attack_eval: captures out of range");
      run.report = dictionary_attack_sim(
          params.encoding, config.attack.dictionary_size,
          static_cast<unsigned>(config.attack.captures), config.trials,
          substream(params.seed, STREAM_DICTIONARY),
          config.attack.index_model);
      break;
    }
  }
  return run;
}

// One report, flattened to the fixed column set shared by attack_eval and
// sweep output. axis/value are null for a standalone evaluation.
ordered_json report_row(const ExperimentConfig& config,
                        const ordered_json& axis, const ordered_json& value,
                        const AttackReport& report) {
  const EncodingParams& enc = config.protocol.encoding;
  return ordered_json{{"schema_version", SCHEMA_VERSION},
                      {"experiment", to_string(config.kind)},
                      {"axis", axis},
                      {"value", value},
                      {"m", enc.password_bits},
                      {"n", enc.hash_bits},
                      {"d", enc.dim_log2},
                      {"D", enc.dim()},
                      {"s", config.protocol.rounds},
                      {"strategy", to_string(report.kind)},
                      {"trials", report.trials},
                      {"empirical", report.empirical},
                      {"ci_low", report.ci_low},
                      {"ci_high", report.ci_high},
                      {"analytic", report.analytic},
                      {"per_round_bound", report.per_round_bound},
                      {"bound_respected", report.bound_respected}};
}

std::string csv_cell(const ordered_json& value) {
  std::string text;
  if (value.is_null())
    text = "";
  else if (value.is_string())
    text = value.get<std::string>();
  else if (value.is_boolean())
    text = value.get<bool>() ? "true" : "false";
  else if (value.is_number_float())
    text = format_double(value.get<double>());
  else
    text = value.dump();
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

// Rows must share one shape; the header comes from the first row's keys.
std::string render_csv(const std::vector<ordered_json>& rows,
                       const std::string& generated_at) {
  std::ostringstream out;
  out << "# generated_at=" << generated_at << "\n";
  if (rows.empty()) return out.str();
  bool first = true;
  for (const auto& [key, unused] : rows.front().items()) {
    if (!first) out << ',';
    out << key;
    first = false;
  }
  out << '\n';
  for (const ordered_json& row : rows) {
    first = true;
    for (const auto& [unused, cell] : row.items()) {
      if (!first) out << ',';
      out << csv_cell(cell);
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

ExperimentResult run_protocol_experiment(const ExperimentConfig& config) {
  if (config.format != OutputFormat::json)
    fail("protocol_run emits JSON only");
  const ProtocolParams& params = config.protocol;
  params.validate();

  BitString alice;
  if (config.alice_password.empty()) {
    RngStream rng(substream(params.seed, STREAM_PASSWORD));
    alice = BitString::random(params.encoding.password_bits, rng);
  } else {
    alice = resolve_password(config.alice_password,
                             params.encoding.password_bits, "alice");
  }
  const BitString bob =
      config.bob_password.empty()
          ? alice
          : resolve_password(config.bob_password,
                             params.encoding.password_bits, "bob");

  const Transcript transcript = run_protocol(alice, bob, params);

  ExperimentResult result;
  result.document = document_skeleton(config);
  result.document["params"] = to_json(params);
  result.document["alice_password"] = alice.to_string();
  result.document["bob_password"] = bob.to_string();
  result.document["warnings"] = params.warnings();
  ordered_json transcript_json = to_json(transcript);
  for (auto& [key, value] : transcript_json.items())
    result.document[key] = std::move(value);
  result.exit_code = transcript.accepted() ? 0 : 2;
  result.rendered = result.document.dump(2) + "\n";
  return result;
}

ExperimentResult run_attack_experiment(const ExperimentConfig& config) {
  const AttackRun run = evaluate_attack(config);

  ExperimentResult result;
  result.document = document_skeleton(config);
  result.document["params"] = to_json(config.protocol);
  result.document["attack"] = attack_config_json(config.attack);
  for (const auto& [key, value] : run.extras.items())
    result.document[key] = value;
  result.document["report"] = to_json(run.report);

  if (config.format == OutputFormat::csv) {
    const ordered_json row = report_row(config, nullptr, nullptr, run.report);
    result.rendered = render_csv(
        {row}, result.document["generated_at"].get<std::string>());
  } else {
    result.rendered = result.document.dump(2) + "\n";
  }
  return result;
}

ExperimentResult run_bound_experiment(const ExperimentConfig& config) {
  if (config.format != OutputFormat::json)
    fail("bound_verify emits JSON only");
  const EncodingParams& enc = config.protocol.encoding;
  enc.validate();
  if (config.bound.captures == 0 ||
      config.bound.captures > std::numeric_limits<unsigned>::max())
    fail("bound_verify: captures must be >= 1");

  const ROperator r_op = build_R(
      enc, static_cast<unsigned>(config.bound.captures), config.bound.mode,
      config.bound.samples, substream(config.protocol.seed, STREAM_BOUND));
  const double bound = replay_bound(r_op, enc);
  const double r_max =
      std::ldexp(bound, -static_cast<int>(enc.dim_log2 * r_op.captures));
  const double one_over_d = 1.0 / static_cast<double>(enc.dim());

  ExperimentResult result;
  result.document = document_skeleton(config);
  result.document["encoding"] = to_json(enc);
  result.document["bound"] =
      ordered_json{{"captures", r_op.captures},
                   {"mode", to_string(r_op.mode)},
                   {"samples", config.bound.samples},
                   {"terms", r_op.terms},
                   {"dim", r_op.matrix.rows()},
                   {"r_max", r_max},
                   {"bound", bound},
                   {"one_over_d", one_over_d},
                   {"deviation", bound - one_over_d}};
  result.rendered = result.document.dump(2) + "\n";
  return result;
}

void apply_sweep_value(ExperimentConfig& config, const std::string& axis,
                       std::uint64_t value) {
  if (axis == "D") {
    if (value < 2 || (value & (value - 1)) != 0)
      fail("sweep: D values must be powers of two >= 2");
    unsigned log2 = 0;
    while ((std::uint64_t{1} << log2) < value) ++log2;
    config.protocol.encoding.dim_log2 = log2;
  } else if (axis == "s") {
    if (value == 0 || value > std::numeric_limits<unsigned>::max())
      fail("sweep: s values must be >= 1");
    config.protocol.rounds = static_cast<unsigned>(value);
  } else if (axis == "c") {
    config.attack.captures = value;
    config.bound.captures = value;
  } else if (axis == "B") {
    config.attack.dictionary_size = value;
  } else if (axis == "n") {
    if (value == 0 || value > MAX_HASH_BITS)
      fail("sweep: n values must be in [1, 62]");
    config.protocol.encoding.hash_bits = static_cast<unsigned>(value);
    config.protocol.encoding.hash.output_bits = static_cast<unsigned>(value);
  } else {
    fail("sweep: unknown axis '" + axis + "' (expected D, s, c, B, or n)");
  }
}

ExperimentResult run_sweep_experiment(const ExperimentConfig& config) {
  if (config.sweep.values.empty()) fail("sweep: values must be non-empty");

  std::vector<ordered_json> rows;
  rows.reserve(config.sweep.values.size());
  for (std::size_t i = 0; i < config.sweep.values.size(); ++i) {
    ExperimentConfig point = config;
    apply_sweep_value(point, config.sweep.axis, config.sweep.values[i]);
    // Fresh substream per row: rows are independent, and inserting or
    // reordering values changes only the rows it touches.
    point.protocol.seed =
        substream(config.protocol.seed, STREAM_SWEEP_BASE + i);
    const AttackRun run = evaluate_attack(point);
    rows.push_back(report_row(point, config.sweep.axis,
                              config.sweep.values[i], run.report));
  }

  ExperimentResult result;
  result.document = document_skeleton(config);
  result.document["axis"] = config.sweep.axis;
  result.document["values"] = config.sweep.values;
  result.document["params"] = to_json(config.protocol);
  result.document["attack"] = attack_config_json(config.attack);
  result.document["rows"] = rows;
  if (config.format == OutputFormat::csv)
    result.rendered = render_csv(
        rows, result.document["generated_at"].get<std::string>());
  else
    result.rendered = result.document.dump(2) + "\n";
  return result;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::protocol_run:
      return "protocol_run";
    case ExperimentKind::attack_eval:
      return "attack_eval";
    case ExperimentKind::bound_verify:
      return "bound_verify";
    case ExperimentKind::sweep:
      return "sweep";
  }
  throw std::invalid_argument("unknown experiment kind");
}

ExperimentKind experiment_kind_from_string(const std::string& text) {
  if (text == "protocol_run") return ExperimentKind::protocol_run;
  if (text == "attack_eval") return ExperimentKind::attack_eval;
  if (text == "bound_verify") return ExperimentKind::bound_verify;
  if (text == "sweep") return ExperimentKind::sweep;
  throw std::invalid_argument("unknown experiment kind: " + text);
}

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::json:
      return "json";
    case OutputFormat::csv:
      return "csv";
  }
  throw std::invalid_argument("unknown output format");
}

OutputFormat output_format_from_string(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  throw std::invalid_argument("unknown output format: " + text);
}

ExperimentConfig default_experiment_config() {
  ExperimentConfig config;
  config.protocol.encoding.password_bits = 32;
  config.protocol.encoding.hash_bits = 32;
  config.protocol.encoding.dim_log2 = 2;
  config.protocol.encoding.hash = HashSpec::make_sha256(32);
  config.protocol.rounds = 4;
  config.protocol.seed = RngSeed{1, 0};
  return config;
}

ExperimentConfig config_from_json(const ordered_json& doc) {
  return config_from_json(doc, default_experiment_config());
}

ExperimentConfig config_from_json(const ordered_json& doc,
                                  ExperimentConfig base) {
  if (!doc.is_object()) fail("config: document must be a JSON object");
  reject_unknown_keys(
      doc,
      {"experiment", "encoding", "rounds", "capture_cap", "randomness_mode",
       "budget_ratio", "seed", "stream", "alice_password", "bob_password",
       "trials", "attack", "bound", "sweep", "format", "output"},
      "");

  ExperimentConfig config = std::move(base);
  if (auto it = doc.find("experiment"); it != doc.end())
    config.kind =
        experiment_kind_from_string(as_string(*it, "experiment"));
  if (auto it = doc.find("encoding"); it != doc.end())
    apply_encoding_config(*it, config.protocol.encoding);
  if (auto it = doc.find("rounds"); it != doc.end())
    config.protocol.rounds = as_unsigned(*it, "rounds");
  if (auto it = doc.find("capture_cap"); it != doc.end()) {
    if (it->is_null())
      config.protocol.capture_cap.reset();
    else
      config.protocol.capture_cap = as_u64(*it, "capture_cap");
  }
  if (auto it = doc.find("randomness_mode"); it != doc.end())
    config.protocol.randomness_mode =
        randomness_mode_from_string(as_string(*it, "randomness_mode"));
  if (auto it = doc.find("budget_ratio"); it != doc.end())
    config.protocol.budget_ratio = as_double(*it, "budget_ratio");
  if (auto it = doc.find("seed"); it != doc.end())
    config.protocol.seed.seed = as_u64(*it, "seed");
  if (auto it = doc.find("stream"); it != doc.end())
    config.protocol.seed.stream = as_u64(*it, "stream");
  if (auto it = doc.find("alice_password"); it != doc.end())
    config.alice_password = as_string(*it, "alice_password");
  if (auto it = doc.find("bob_password"); it != doc.end())
    config.bob_password = as_string(*it, "bob_password");
  if (auto it = doc.find("trials"); it != doc.end())
    config.trials = as_u64(*it, "trials");
  if (auto it = doc.find("attack"); it != doc.end())
    apply_attack_config(*it, config.attack);
  if (auto it = doc.find("bound"); it != doc.end())
    apply_bound_config(*it, config.bound);
  if (auto it = doc.find("sweep"); it != doc.end())
    apply_sweep_config(*it, config.sweep);
  if (auto it = doc.find("format"); it != doc.end())
    config.format = output_format_from_string(as_string(*it, "format"));
  if (auto it = doc.find("output"); it != doc.end())
    config.output_path = as_string(*it, "output");
  return config;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::protocol_run:
      return run_protocol_experiment(config);
    case ExperimentKind::attack_eval:
      return run_attack_experiment(config);
    case ExperimentKind::bound_verify:
      return run_bound_experiment(config);
    case ExperimentKind::sweep:
      return run_sweep_experiment(config);
  }
  throw std::invalid_argument("unknown experiment kind");
}

}  // namespace qpass
