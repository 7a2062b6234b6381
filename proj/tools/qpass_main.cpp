// Command-line front end: subcommands run/attack/bounds/sweep, a JSON
// config file, and flag overrides. Precedence: built-in defaults, then the
// config file, then flags. Exit codes: 0 accept/success, 2 protocol abort,
// 3 parameter error, 4 resource cap.

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpass/experiments.hpp"

namespace {

using qpass::ExperimentConfig;
using qpass::ExperimentKind;
using qpass::ordered_json;

// Bound variables for every flag a subcommand may carry; option pointers
// let us apply only the flags that were actually given.
struct Opts {
  CLI::App* cmd = nullptr;

  std::string config_path;
  std::string output;
  std::string format;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  std::uint64_t stream = 0;
  CLI::Option* stream_opt = nullptr;
  std::uint64_t trials = 0;
  CLI::Option* trials_opt = nullptr;

  unsigned password_bits = 0;
  CLI::Option* password_bits_opt = nullptr;
  unsigned hash_bits = 0;
  CLI::Option* hash_bits_opt = nullptr;
  unsigned dim_log2 = 0;
  CLI::Option* dim_log2_opt = nullptr;
  std::string hash_algo;
  unsigned rounds = 0;
  CLI::Option* rounds_opt = nullptr;
  std::uint64_t capture_cap = 0;
  CLI::Option* capture_cap_opt = nullptr;
  std::string randomness_mode;
  double budget_ratio = 0.0;
  CLI::Option* budget_ratio_opt = nullptr;

  std::string alice_password;
  CLI::Option* alice_opt = nullptr;
  std::string bob_password;
  CLI::Option* bob_opt = nullptr;

  std::string attack_kind;
  std::string index_model;
  std::uint64_t captures = 0;
  CLI::Option* captures_opt = nullptr;
  std::uint64_t dictionary_size = 0;
  CLI::Option* dictionary_size_opt = nullptr;
  std::uint64_t candidates = 0;
  CLI::Option* candidates_opt = nullptr;
  std::uint64_t fidelity_samples = 0;
  CLI::Option* fidelity_samples_opt = nullptr;

  std::string bound_mode;
  std::uint64_t bound_samples = 0;
  CLI::Option* bound_samples_opt = nullptr;

  std::string axis;
  std::vector<std::uint64_t> values;
  CLI::Option* values_opt = nullptr;
};

void add_common(CLI::App* cmd, Opts& o) {
  o.cmd = cmd;
  cmd->add_option("--config", o.config_path,
                  "JSON config file (flags override its fields)");
  cmd->add_option("--output", o.output, "write the report here, not stdout");
  o.seed_opt = cmd->add_option("--seed", o.seed, "master RNG seed");
  o.stream_opt = cmd->add_option("--stream", o.stream, "RNG stream id");
  o.password_bits_opt =
      cmd->add_option("--password-bits", o.password_bits, "m");
  o.hash_bits_opt = cmd->add_option("--hash-bits", o.hash_bits, "n");
  o.dim_log2_opt =
      cmd->add_option("--dim-log2", o.dim_log2, "d, state dimension D = 2^d");
  cmd->add_option("--hash-algo", o.hash_algo, "sha256 | ideal[:key]");
  o.rounds_opt = cmd->add_option("--rounds", o.rounds, "test rounds s");
  o.capture_cap_opt = cmd->add_option(
      "--capture-cap", o.capture_cap,
      "states emitted per password before rotation (default floor(n/4d))");
  cmd->add_option("--randomness-mode", o.randomness_mode,
                  "interleave | xor | oracle");
  o.budget_ratio_opt =
      cmd->add_option("--budget-ratio", o.budget_ratio,
                      "warn when s*d exceeds n divided by this ratio");
}

void add_attack(CLI::App* cmd, Opts& o) {
  o.trials_opt = cmd->add_option("--trials", o.trials, "simulated sessions");
  cmd->add_option("--kind", o.attack_kind,
                  "fixed_state | naive_replay | dictionary");
  cmd->add_option("--index-model", o.index_model, "ideal | real");
  o.captures_opt =
      cmd->add_option("--captures", o.captures, "states Eve intercepts");
  o.dictionary_size_opt =
      cmd->add_option("--dictionary-size", o.dictionary_size,
                      "candidate passwords B");
  o.candidates_opt = cmd->add_option("--candidates", o.candidates,
                                     "fixed-state search pool size");
  o.fidelity_samples_opt =
      cmd->add_option("--fidelity-samples", o.fidelity_samples,
                      "0 = exhaustive fidelity scoring");
  cmd->add_option("--format", o.format, "json | csv");
}

int apply_and_run(const Opts& o, ExperimentKind kind) {
  ExperimentConfig config = qpass::default_experiment_config();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw std::invalid_argument("cannot open " + o.config_path);
    config = qpass::config_from_json(ordered_json::parse(in),
                                     std::move(config));
  }
  config.kind = kind;  // subcommand outranks the config file

  if (o.seed_opt && o.seed_opt->count()) config.protocol.seed.seed = o.seed;
  if (o.stream_opt && o.stream_opt->count())
    config.protocol.seed.stream = o.stream;
  if (o.trials_opt && o.trials_opt->count()) config.trials = o.trials;
  if (o.password_bits_opt && o.password_bits_opt->count())
    config.protocol.encoding.password_bits = o.password_bits;
  if (o.hash_bits_opt && o.hash_bits_opt->count()) {
    config.protocol.encoding.hash_bits = o.hash_bits;
    config.protocol.encoding.hash.output_bits = o.hash_bits;
  }
  if (o.dim_log2_opt && o.dim_log2_opt->count())
    config.protocol.encoding.dim_log2 = o.dim_log2;
  if (!o.hash_algo.empty()) {
    ordered_json patch{{"encoding", {{"hash_algo", o.hash_algo}}}};
    config = qpass::config_from_json(patch, std::move(config));
  }
  if (o.rounds_opt && o.rounds_opt->count()) config.protocol.rounds = o.rounds;
  if (o.capture_cap_opt && o.capture_cap_opt->count())
    config.protocol.capture_cap = o.capture_cap;
  if (!o.randomness_mode.empty())
    config.protocol.randomness_mode =
        qpass::randomness_mode_from_string(o.randomness_mode);
  if (o.budget_ratio_opt && o.budget_ratio_opt->count())
    config.protocol.budget_ratio = o.budget_ratio;

  if (o.alice_opt && o.alice_opt->count())
    config.alice_password = o.alice_password;
  if (o.bob_opt && o.bob_opt->count()) config.bob_password = o.bob_password;

  if (!o.attack_kind.empty())
    config.attack.kind = qpass::attack_kind_from_string(o.attack_kind);
  if (!o.index_model.empty())
    config.attack.index_model = qpass::index_model_from_string(o.index_model);
  if (o.captures_opt && o.captures_opt->count()) {
    config.attack.captures = o.captures;
    config.bound.captures = o.captures;
  }
  if (o.dictionary_size_opt && o.dictionary_size_opt->count())
    config.attack.dictionary_size = o.dictionary_size;
  if (o.candidates_opt && o.candidates_opt->count())
    config.attack.candidates = o.candidates;
  if (o.fidelity_samples_opt && o.fidelity_samples_opt->count())
    config.attack.fidelity_samples = o.fidelity_samples;

  if (!o.bound_mode.empty())
    config.bound.mode = qpass::r_build_mode_from_string(o.bound_mode);
  if (o.bound_samples_opt && o.bound_samples_opt->count())
    config.bound.samples = o.bound_samples;

  if (!o.axis.empty()) config.sweep.axis = o.axis;
  if (o.values_opt && o.values_opt->count()) config.sweep.values = o.values;

  if (!o.format.empty())
    config.format = qpass::output_format_from_string(o.format);
  if (!o.output.empty()) config.output_path = o.output;

  const qpass::ExperimentResult result = qpass::run_experiment(config);
  if (config.output_path.empty()) {
    std::cout << result.rendered;
  } else {
    std::ofstream out(config.output_path);
    if (!out)
      throw std::invalid_argument("cannot write " + config.output_path);
    out << result.rendered;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulator for a quantum password-verification protocol: honest runs, "
      "adversary evaluations, replay-fidelity bounds, parameter sweeps."};
  app.require_subcommand(1);

  Opts run_opts;
  CLI::App* run_cmd =
      app.add_subcommand("run", "one honest (or mismatched) protocol session");
  add_common(run_cmd, run_opts);
  run_opts.alice_opt = run_cmd->add_option(
      "--alice-password", run_opts.alice_password,
      "bit string of length m (default: drawn from the seed)");
  run_opts.bob_opt = run_cmd->add_option(
      "--bob-password", run_opts.bob_password,
      "bit string of length m (default: same as Alice's)");

  Opts attack_opts;
  CLI::App* attack_cmd =
      app.add_subcommand("attack", "evaluate an adversary strategy");
  add_common(attack_cmd, attack_opts);
  add_attack(attack_cmd, attack_opts);

  Opts bounds_opts;
  CLI::App* bounds_cmd = app.add_subcommand(
      "bounds", "build the replay operator and verify its fidelity cap");
  add_common(bounds_cmd, bounds_opts);
  bounds_opts.captures_opt = bounds_cmd->add_option(
      "--captures", bounds_opts.captures, "captured states c");
  bounds_cmd->add_option("--mode", bounds_opts.bound_mode,
                         "exhaustive | sampled | ideal_hash");
  bounds_opts.bound_samples_opt = bounds_cmd->add_option(
      "--samples", bounds_opts.bound_samples, "tuples for sampled mode");

  Opts sweep_opts;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "rerun an attack evaluation along one parameter axis");
  add_common(sweep_cmd, sweep_opts);
  add_attack(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--axis", sweep_opts.axis, "D | s | c | B | n");
  sweep_opts.values_opt =
      sweep_cmd->add_option("--values", sweep_opts.values, "axis values")
          ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;  // help exits clean, bad usage is code 3
  }

  try {
    if (run_cmd->parsed())
      return apply_and_run(run_opts, ExperimentKind::protocol_run);
    if (attack_cmd->parsed())
      return apply_and_run(attack_opts, ExperimentKind::attack_eval);
    if (bounds_cmd->parsed())
      return apply_and_run(bounds_opts, ExperimentKind::bound_verify);
    return apply_and_run(sweep_opts, ExperimentKind::sweep);
  } catch (const qpass::CaptureCapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 4;
  } catch (const std::length_error& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
