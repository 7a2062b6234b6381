#pragma once

#include <json.hpp>

#include <string>

#include "qpass/adversary.hpp"
#include "qpass/protocol.hpp"

namespace qpass {

using ordered_json = nlohmann::ordered_json;

// Report schema version stamped into every JSON/CSV document.
inline constexpr int SCHEMA_VERSION = 1;

ordered_json to_json(const EncodingParams& params);
ordered_json to_json(const ProtocolParams& params);
ordered_json to_json(const Transcript& transcript);
ordered_json to_json(const AttackReport& report);

// Shortest round-trip decimal form, stable across runs.
std::string format_double(double value);

// Current UTC time, e.g. "2026-08-19T12:34:56Z". Reports carry it in a
// generated_at field that determinism comparisons exclude.
std::string iso8601_utc_now();

}  // namespace qpass
