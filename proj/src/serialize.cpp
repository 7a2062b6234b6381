#include "qpass/serialize.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <ctime>

namespace qpass {

ordered_json to_json(const EncodingParams& params) {
  return ordered_json{{"password_bits", params.password_bits},
                      {"hash_bits", params.hash_bits},
                      {"dim_log2", params.dim_log2},
                      {"dim", params.dim()},
                      {"hash", params.hash.to_string()}};
}

ordered_json to_json(const ProtocolParams& params) {
  ordered_json j{{"encoding", to_json(params.encoding)},
                 {"rounds", params.rounds},
                 {"capture_cap", params.effective_capture_cap()},
                 {"randomness_mode", to_string(params.randomness_mode)},
                 {"seed", params.seed.seed},
                 {"stream", params.seed.stream},
                 {"budget_ratio", params.budget_ratio}};
  return j;
}

ordered_json to_json(const Transcript& transcript) {
  ordered_json rounds = ordered_json::array();
  for (const RoundRecord& record : transcript.rounds)
    rounds.push_back({{"i", record.index},
                      {"r_hex", record.challenge.to_hex()},
                      {"passed", record.outcome.passed},
                      {"p_pass", record.outcome.pass_probability}});
  ordered_json j{{"rounds", std::move(rounds)},
                 {"verdict", to_string(transcript.verdict)}};
  if (transcript.abort_round) j["abort_round"] = *transcript.abort_round;
  return j;
}

ordered_json to_json(const AttackReport& report) {
  return ordered_json{{"strategy", to_string(report.kind)},
                      {"trials", report.trials},
                      {"empirical", report.empirical},
                      {"ci_low", report.ci_low},
                      {"ci_high", report.ci_high},
                      {"analytic", report.analytic},
                      {"per_round_bound", report.per_round_bound},
                      {"rounds", report.rounds},
                      {"round_passes", report.round_passes},
                      {"bound_respected", report.bound_respected},
                      {"warnings", report.warnings}};
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{})
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), end);
}

std::string iso8601_utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return std::string(buf.data());
}

}  // namespace qpass
