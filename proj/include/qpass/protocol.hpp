#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "qpass/encoding.hpp"
#include "qpass/swaptest.hpp"

namespace qpass {

// How the per-round challenge r_i is produced. interleave alternates one
// coin-flip bit from each party; xor_strings XORs two independently drawn
// strings; oracle draws from a single trusted stream derived from both
// parties' seeds (stand-in for an external shared-randomness protocol).
enum class RandomnessMode { interleave, xor_strings, oracle };

std::string to_string(RandomnessMode mode);
RandomnessMode randomness_mode_from_string(const std::string& text);

struct ProtocolParams {
  EncodingParams encoding;
  unsigned rounds = 4;  // s
  // Lifetime cap on states the prover may emit for one password before
  // rotation is required. Unset means the default floor(n / (4 d)).
  std::optional<std::uint64_t> capture_cap;
  RandomnessMode randomness_mode = RandomnessMode::interleave;
  RngSeed seed;
  // "Much less than" budget: warn when d * s exceeds n / budget_ratio
  // (likewise for the capture cap).
  double budget_ratio = 4.0;

  std::uint64_t effective_capture_cap() const;
  void validate() const;                      // throws std::invalid_argument
  std::vector<std::string> warnings() const;  // soft budget violations
};

// Raised by the prover when the emission cap is exhausted: the password has
// to be rotated before any further authentication.
struct CaptureCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the prover when asked to answer a challenge it has already
// answered once (a state for that r has been emitted before).
struct ChallengeReused : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One-shot carrier for a transmitted state. Move-only and consumed by
// exactly one comparison, which rules out state cloning at the type level.
class ChannelState {
 public:
  static ChannelState pure(StateVector v);
  static ChannelState mixed(DensityMatrix rho);

  ChannelState(ChannelState&&) = default;
  ChannelState& operator=(ChannelState&&) = default;
  ChannelState(const ChannelState&) = delete;
  ChannelState& operator=(const ChannelState&) = delete;

  bool is_pure() const { return std::holds_alternative<StateVector>(state_); }
  Eigen::Index dim() const;
  bool consumed() const { return consumed_; }

  // Pass probability of a comparison against a pure reference state.
  // Usable exactly once; throws std::logic_error afterwards.
  double consume_pass_probability(const StateVector& reference);

 private:
  explicit ChannelState(std::variant<StateVector, DensityMatrix> s)
      : state_(std::move(s)) {}

  std::variant<StateVector, DensityMatrix> state_;
  bool consumed_ = false;
};

// Destructive comparison of a received state against a local pure state.
SwapOutcome run_swap_test(ChannelState received, const StateVector& reference,
                          RngStream& rng);

// Record of challenges already spent for one password identity.
class UsedStringLedger {
 public:
  bool contains(const BitString& r) const { return used_.contains(r); }
  // False (and no insertion) if r was already present.
  bool insert(const BitString& r) { return used_.insert(r).second; }
  std::size_t size() const { return used_.size(); }

 private:
  std::unordered_set<BitString, BitString::Hash> used_;
};

// Alice's side: prepares one password state per fresh challenge, refusing
// reused challenges and emissions past the lifetime cap.
class Prover {
 public:
  Prover(BitString password, const ProtocolParams& params);

  // Throws ChallengeReused or CaptureCapExceeded; otherwise emits the state
  // and counts it against the cap.
  ChannelState respond(const BitString& r);

  std::uint64_t emitted() const { return emitted_; }

 private:
  BitString password_;
  ProtocolParams params_;
  UsedStringLedger answered_;
  std::uint64_t emitted_ = 0;
};

// Bob's side: regenerates the expected state and compares destructively.
class Verifier {
 public:
  enum class Decision { tested, challenge_reused };
  struct Result {
    Decision decision = Decision::tested;
    SwapOutcome outcome;  // meaningful only when decision == tested
  };

  Verifier(BitString password, const ProtocolParams& params);

  // A reused r is rejected administratively before any test is run,
  // distinct from a failed comparison.
  Result check(ChannelState received, const BitString& r, RngStream& rng);

  const UsedStringLedger& ledger() const { return ledger_; }

 private:
  BitString password_;
  ProtocolParams params_;
  UsedStringLedger ledger_;
};

// Bit sources let tests drive the constructions below with known bits; the
// seed-based overload wraps coin_flip_bit streams.
using BitSource = std::function<int()>;

// Jointly generated challenge of the given length. In interleave mode bit 0
// comes from Alice, bit 1 from Bob, alternating; in xor mode both sides
// contribute a full string; in oracle mode only the first source is read
// (callers pass the shared oracle stream there).
BitString joint_random_string(const BitSource& alice, const BitSource& bob,
                              RandomnessMode mode, std::size_t length);
BitString joint_random_string(RngSeed alice, RngSeed bob, RandomnessMode mode,
                              std::size_t length);

struct RoundRecord {
  unsigned index = 0;  // 1-based
  BitString challenge;
  SwapOutcome outcome;
};

enum class Verdict { accepted, aborted };

std::string to_string(Verdict verdict);

struct Transcript {
  std::vector<RoundRecord> rounds;
  Verdict verdict = Verdict::aborted;
  std::optional<unsigned> abort_round;

  bool accepted() const { return verdict == Verdict::accepted; }
};

// Interception hook: whatever Eve does to the state in flight. The honest
// channel delivers the input unchanged.
using ChannelTap =
    std::function<ChannelState(ChannelState honest, const BitString& r,
                               unsigned round_index)>;

// One full authentication session: s rounds of challenge, state, comparison;
// abort on the first failed comparison, accept after exactly s passes.
// Challenges already present in the verifier's ledger are redrawn rather
// than spent. Throws CaptureCapExceeded when the prover's cap is hit.
Transcript run_protocol(const BitString& alice_password,
                        const BitString& bob_password,
                        const ProtocolParams& params,
                        const ChannelTap& tap = {});

struct MutualResult {
  Transcript forward;  // Alice proving to Bob
  Transcript reverse;  // Bob proving to Alice
  Verdict verdict = Verdict::aborted;
  std::optional<unsigned> abort_stage;
  std::uint64_t states_emitted = 0;
};

// Both directions, one stage (one round each way) at a time, so neither
// party runs ahead of the other: an abort at stage k means at most 2k
// states ever left either lab.
MutualResult run_mutual_protocol(const BitString& alice_password,
                                 const BitString& bob_password,
                                 const ProtocolParams& params);

struct FoolingProbability {
  double exact = 0.0;        // ((1 + 1/D) / 2)^s
  double approximate = 0.0;  // 2^-s (1 + s/D), first-order in 1/D
};

// Best possible all-rounds pass probability for an adversary who knows
// nothing about the password (optimal fixed-state strategy).
FoolingProbability fooling_probability(Eigen::Index dim, unsigned rounds);

}  // namespace qpass
