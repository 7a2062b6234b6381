#pragma once

#include <string>
#include <vector>

#include "qpass/protocol.hpp"
#include "qpass/stats.hpp"

namespace qpass {

// How hash indices are modeled in an attack average: drawn uniformly from
// [0, N) (the ideal-hash analysis) or derived through the configured hash.
enum class IndexModel { ideal_uniform, real_hash };

std::string to_string(IndexModel model);
IndexModel index_model_from_string(const std::string& text);

enum class AttackKind { fixed_state, naive_replay, dictionary };

std::string to_string(AttackKind kind);
AttackKind attack_kind_from_string(const std::string& text);

// Outcome of an attack evaluation. `empirical` is the strategy's success
// rate over `trials` with a 95% binomial CI; `analytic` is the closed-form
// prediction or baseline it is compared against. Individual comparisons are
// tallied in rounds/round_passes, and bound_respected states that the
// per-round pass rate stayed within 3 standard errors of the universal
// (1 + 1/D)/2 cap (for fixed_state, additionally that the session rate
// stayed within 3 standard errors of the fooling probability).
struct AttackReport {
  AttackKind kind = AttackKind::fixed_state;
  std::uint64_t trials = 0;
  double empirical = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double analytic = 0.0;
  double per_round_bound = 0.0;
  std::uint64_t rounds = 0;
  std::uint64_t round_passes = 0;
  bool bound_respected = true;
  std::vector<std::string> warnings;
};

struct MeanFidelity {
  double mean = 0.0;
  double sem = 0.0;  // 0 when the value is an exact enumeration
  std::uint64_t samples = 0;
};

// Average fidelity of a fixed trial state against the password states.
// samples == 0 enumerates all N indices exactly (the ideal-hash model);
// samples > 0 Monte Carlo averages over random (p, r) through params.hash.
MeanFidelity random_state_attack_fidelity(const DensityMatrix& trial,
                                          const EncodingParams& params,
                                          std::uint64_t samples,
                                          RngSeed seed = {});

struct FixedStateSearchResult {
  DensityMatrix best_state;  // projector of the best pure candidate
  double mean_fidelity = 0.0;
  double sem = 0.0;
};

// Scores `candidates` Haar-random pure states by their average fidelity and
// returns the best. samples as in random_state_attack_fidelity.
FixedStateSearchResult best_fixed_state_search(const EncodingParams& params,
                                               std::uint64_t candidates,
                                               RngSeed seed,
                                               std::uint64_t samples = 0);

// Full-protocol sessions in which Eve substitutes the same state every
// round. analytic = the exact fooling probability ((1 + 1/D)/2)^s.
AttackReport fixed_state_attack_eval(const ProtocolParams& params,
                                     const DensityMatrix& eve_state,
                                     std::uint64_t trials, RngSeed seed);

// Exact pass rate (1 + avg |<Phi_j1|Phi_j2>|^2) / 2 of a replayed state
// against a fresh challenge, averaged over all index pairs by enumeration.
double naive_replay_exact_pass_rate(const EncodingParams& params);

// Eve captures the state for one challenge and replays it unchanged
// against an independent fresh challenge.
AttackReport naive_replay_success(const EncodingParams& params,
                                  std::uint64_t trials, IndexModel model,
                                  RngSeed seed);

enum class RBuildMode { exhaustive, sampled, ideal_hash };

std::string to_string(RBuildMode mode);
RBuildMode r_build_mode_from_string(const std::string& text);

// The replay-bound operator: the average, over passwords and challenge
// tuples, of the (c+1)-fold tensor product of the c captured states'
// projectors with the target state's projector.
struct ROperator {
  unsigned captures = 1;  // c
  DensityMatrix matrix;   // dimension D^(c+1)
  RBuildMode mode = RBuildMode::ideal_hash;
  std::uint64_t terms = 0;  // tuples averaged
};

// exhaustive: every (p, r_1..r_{c+1}) tuple for the real hash (small m
// only: m*(c+2) <= 24 tuples cap). sampled: `samples` random tuples.
// ideal_hash: every index tuple (j_1..j_{c+1}) directly. All modes need
// D^(c+1) <= MAX_TENSOR_DIM and (c+1)*n <= 22; violations throw
// std::length_error (a resource refusal, not a parameter typo).
ROperator build_R(const EncodingParams& params, unsigned captures,
                  RBuildMode mode, std::uint64_t samples = 0,
                  RngSeed seed = {});

// Fidelity cap D^c * R_max on any physical replay transformation of c
// captured states; equals 1/D exactly under the ideal hash.
double replay_bound(const ROperator& r_op, const EncodingParams& params);

// Eve holds c captured states for known challenges and a dictionary of B
// candidate passwords; she spends each capture on one comparison against a
// candidate's locally prepared state (cycling candidates), then guesses the
// candidate with the best record: any failed comparison eliminates, most
// passes wins, ties break uniformly. analytic = the 1/B guessing baseline.
AttackReport dictionary_attack_sim(const EncodingParams& params,
                                   std::uint64_t dictionary_size,
                                   unsigned captures, std::uint64_t trials,
                                   RngSeed seed,
                                   IndexModel model = IndexModel::real_hash);

}  // namespace qpass
