#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpass/adversary.hpp"
#include "qpass/protocol.hpp"
#include "qpass/serialize.hpp"

namespace qpass {

// What a harness invocation computes.
enum class ExperimentKind { protocol_run, attack_eval, bound_verify, sweep };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& text);

enum class OutputFormat { json, csv };

std::string to_string(OutputFormat format);
OutputFormat output_format_from_string(const std::string& text);

// Settings consumed only by attack_eval (and sweep rows that wrap it).
struct AttackConfig {
  AttackKind kind = AttackKind::fixed_state;
  IndexModel index_model = IndexModel::ideal_uniform;
  std::uint64_t captures = 4;       // dictionary: states Eve intercepts
  std::uint64_t dictionary_size = 16;
  std::uint64_t candidates = 16;    // fixed_state: search pool size
  // Fidelity samples per candidate; 0 = exhaustive index enumeration
  // (only feasible for small n — the default hash width is far past the
  // enumeration cap, so default to Monte Carlo scoring).
  std::uint64_t fidelity_samples = 4096;
};

// Settings consumed only by bound_verify.
struct BoundConfig {
  std::uint64_t captures = 1;
  RBuildMode mode = RBuildMode::ideal_hash;
  std::uint64_t samples = 1000000;
};

// Settings consumed only by sweep: vary one axis, rerun the nested
// experiment per value.  Axes: D, s, c, B, n.
struct SweepConfig {
  std::string axis = "s";
  std::vector<std::uint64_t> values;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::protocol_run;
  ProtocolParams protocol;
  std::string alice_password;  // "01" string; empty = random
  std::string bob_password;    // "01" string; empty = same as Alice
  std::uint64_t trials = 10000;
  AttackConfig attack;
  BoundConfig bound;
  SweepConfig sweep;
  OutputFormat format = OutputFormat::json;
  std::string output_path;  // empty = stdout (handled by the CLI)
};

// Baseline the CLI starts from before config files and flags are applied:
// m=32, n=32, D=4, s=4.  At these sizes the default capture budget
// floor(n/(4d)) equals the round count, so honest runs fit the budget.
ExperimentConfig default_experiment_config();

// Strict parse: unknown keys are rejected so config typos surface
// immediately instead of silently running the default.
ExperimentConfig config_from_json(const ordered_json& doc);
ExperimentConfig config_from_json(const ordered_json& doc,
                                  ExperimentConfig base);

struct ExperimentResult {
  int exit_code = 0;          // 0 ok/accepted, 2 aborted
  ordered_json document;      // full structured result
  std::string rendered;       // what the CLI prints / writes
};

// Pure driver: no file or console I/O, deterministic given the config
// (modulo the generated_at timestamp).  Throws std::invalid_argument on
// bad parameters and std::length_error on resource-cap violations; the
// CLI maps those to exit codes 3 and 4.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace qpass
