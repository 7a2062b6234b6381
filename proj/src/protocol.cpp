#include "qpass/protocol.hpp"

#include <cmath>
#include <cstdio>

namespace qpass {
namespace {

// Child-stream tags for the per-session randomness roles.
constexpr std::uint64_t STREAM_ALICE_COIN = 1;
constexpr std::uint64_t STREAM_BOB_COIN = 2;
constexpr std::uint64_t STREAM_TEST = 3;
constexpr std::uint64_t STREAM_ORACLE = 4;

// Redraws allowed when a generated challenge is already spent before the
// session gives up (the challenge space is effectively exhausted).
constexpr int MAX_CHALLENGE_REDRAWS = 64;

}  // namespace

std::string to_string(RandomnessMode mode) {
  switch (mode) {
    case RandomnessMode::interleave: return "interleave";
    case RandomnessMode::xor_strings: return "xor";
    case RandomnessMode::oracle: return "oracle";
  }
  throw std::logic_error("to_string: unknown RandomnessMode");
}

RandomnessMode randomness_mode_from_string(const std::string& text) {
  if (text == "interleave") return RandomnessMode::interleave;
  if (text == "xor") return RandomnessMode::xor_strings;
  if (text == "oracle") return RandomnessMode::oracle;
  throw std::invalid_argument("unknown randomness mode '" + text + "'");
}

std::string to_string(Verdict verdict) {
  return verdict == Verdict::accepted ? "accepted" : "aborted";
}

std::uint64_t ProtocolParams::effective_capture_cap() const {
  if (capture_cap) return *capture_cap;
  return encoding.hash_bits / (4 * encoding.dim_log2);
}

void ProtocolParams::validate() const {
  encoding.validate();
  if (rounds < 1)
    throw std::invalid_argument("ProtocolParams: rounds must be >= 1");
  if (!(budget_ratio > 0.0))
    throw std::invalid_argument("ProtocolParams: budget_ratio must be > 0");
}

namespace {
std::string ratio_text(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", ratio);
  return buf;
}
}  // namespace

std::vector<std::string> ProtocolParams::warnings() const {
  std::vector<std::string> out = encoding.warnings();
  const double budget =
      static_cast<double>(encoding.hash_bits) / budget_ratio;
  const double session_dims =
      static_cast<double>(rounds) * encoding.dim_log2;
  if (session_dims > budget)
    out.push_back("rounds*d = " + std::to_string(rounds * encoding.dim_log2) +
                  " exceeds the n/" + ratio_text(budget_ratio) +
                  " budget; captured states could leak hash bits");
  const double cap_dims =
      static_cast<double>(effective_capture_cap()) * encoding.dim_log2;
  if (cap_dims > budget)
    out.push_back("capture_cap*d exceeds the n/" + ratio_text(budget_ratio) +
                  " budget");
  return out;
}

ChannelState ChannelState::pure(StateVector v) {
  if (!is_normalized(v))
    throw std::invalid_argument("ChannelState: state is not normalized");
  return ChannelState(std::variant<StateVector, DensityMatrix>(std::move(v)));
}

ChannelState ChannelState::mixed(DensityMatrix rho) {
  if (!is_density_matrix(rho))
    throw std::invalid_argument("ChannelState: not a density matrix");
  return ChannelState(
      std::variant<StateVector, DensityMatrix>(std::move(rho)));
}

Eigen::Index ChannelState::dim() const {
  return std::holds_alternative<StateVector>(state_)
             ? std::get<StateVector>(state_).size()
             : std::get<DensityMatrix>(state_).rows();
}

double ChannelState::consume_pass_probability(const StateVector& reference) {
  if (consumed_)
    throw std::logic_error("ChannelState: state was already consumed");
  consumed_ = true;
  if (std::holds_alternative<StateVector>(state_))
    return pass_probability(std::get<StateVector>(state_), reference);
  return pass_probability(std::get<DensityMatrix>(state_), reference);
}

SwapOutcome run_swap_test(ChannelState received, const StateVector& reference,
                          RngStream& rng) {
  return sample_swap_outcome(received.consume_pass_probability(reference),
                             rng);
}

Prover::Prover(BitString password, const ProtocolParams& params)
    : password_(std::move(password)), params_(params) {
  params_.validate();
  if (password_.size() != params_.encoding.password_bits)
    throw std::invalid_argument("Prover: password length mismatch");
}

ChannelState Prover::respond(const BitString& r) {
  if (r.size() != params_.encoding.password_bits)
    throw std::invalid_argument("Prover: challenge length mismatch");
  if (answered_.contains(r))
    throw ChallengeReused("Prover: challenge was already answered");
  if (emitted_ >= params_.effective_capture_cap())
    throw CaptureCapExceeded(
        "Prover: emission cap reached; password rotation required");
  answered_.insert(r);
  ++emitted_;
  return ChannelState::pure(password_state(password_, r, params_.encoding));
}

Verifier::Verifier(BitString password, const ProtocolParams& params)
    : password_(std::move(password)), params_(params) {
  params_.validate();
  if (password_.size() != params_.encoding.password_bits)
    throw std::invalid_argument("Verifier: password length mismatch");
}

Verifier::Result Verifier::check(ChannelState received, const BitString& r,
                                 RngStream& rng) {
  if (r.size() != params_.encoding.password_bits)
    throw std::invalid_argument("Verifier: challenge length mismatch");
  if (!ledger_.insert(r)) return {Decision::challenge_reused, {}};
  const StateVector local = password_state(password_, r, params_.encoding);
  return {Decision::tested,
          run_swap_test(std::move(received), local, rng)};
}

BitString joint_random_string(const BitSource& alice, const BitSource& bob,
                              RandomnessMode mode, std::size_t length) {
  if (length < 1)
    throw std::invalid_argument("joint_random_string: length must be >= 1");
  BitString out(length);
  switch (mode) {
    case RandomnessMode::interleave:
      for (std::size_t i = 0; i < length; ++i)
        out.set_bit(i, (i % 2 == 0 ? alice : bob)());
      break;
    case RandomnessMode::xor_strings:
      for (std::size_t i = 0; i < length; ++i)
        out.set_bit(i, alice() ^ bob());
      break;
    case RandomnessMode::oracle:
      for (std::size_t i = 0; i < length; ++i) out.set_bit(i, alice());
      break;
  }
  return out;
}

BitString joint_random_string(RngSeed alice, RngSeed bob, RandomnessMode mode,
                              std::size_t length) {
  // In oracle mode the trusted stream is a deterministic blend of both
  // parties' stream ids, so neither side controls it alone.
  if (mode == RandomnessMode::oracle) {
    RngStream shared(
        substream({alice.seed, alice.stream ^ bob.stream}, STREAM_ORACLE));
    return joint_random_string([&shared] { return coin_flip_bit(shared); },
                               BitSource{}, mode, length);
  }
  RngStream a(alice), b(bob);
  return joint_random_string([&a] { return coin_flip_bit(a); },
                             [&b] { return coin_flip_bit(b); }, mode, length);
}

namespace {

// Draw a challenge not yet in any of the given ledgers, redrawing with a
// bumped counter on collision.
BitString fresh_challenge(const ProtocolParams& params, RngSeed alice_base,
                          RngSeed bob_base, std::uint64_t& counter,
                          const std::vector<const UsedStringLedger*>& ledgers) {
  for (int attempt = 0; attempt < MAX_CHALLENGE_REDRAWS; ++attempt) {
    const std::uint64_t tick = counter++;
    BitString r = joint_random_string(
        substream(alice_base, tick), substream(bob_base, tick),
        params.randomness_mode, params.encoding.password_bits);
    bool spent = false;
    for (const UsedStringLedger* ledger : ledgers)
      spent = spent || ledger->contains(r);
    if (!spent) return r;
  }
  throw std::invalid_argument(
      "run_protocol: challenge space exhausted; raise the challenge length");
}

}  // namespace

Transcript run_protocol(const BitString& alice_password,
                        const BitString& bob_password,
                        const ProtocolParams& params, const ChannelTap& tap) {
  params.validate();
  Prover alice(alice_password, params);
  Verifier bob(bob_password, params);
  const RngSeed alice_base = substream(params.seed, STREAM_ALICE_COIN);
  const RngSeed bob_base = substream(params.seed, STREAM_BOB_COIN);
  RngStream test_rng(substream(params.seed, STREAM_TEST));
  std::uint64_t counter = 0;

  Transcript transcript;
  for (unsigned i = 1; i <= params.rounds; ++i) {
    const BitString r = fresh_challenge(params, alice_base, bob_base, counter,
                                        {&bob.ledger()});
    ChannelState sent = alice.respond(r);
    if (tap) sent = tap(std::move(sent), r, i);
    const Verifier::Result result = bob.check(std::move(sent), r, test_rng);
    if (result.decision != Verifier::Decision::tested)
      throw std::logic_error("run_protocol: fresh challenge was rejected");
    transcript.rounds.push_back({i, r, result.outcome});
    if (!result.outcome.passed) {
      transcript.verdict = Verdict::aborted;
      transcript.abort_round = i;
      return transcript;
    }
  }
  transcript.verdict = Verdict::accepted;
  return transcript;
}

MutualResult run_mutual_protocol(const BitString& alice_password,
                                 const BitString& bob_password,
                                 const ProtocolParams& params) {
  params.validate();
  Prover alice_prover(alice_password, params);
  Verifier bob_verifier(bob_password, params);
  Prover bob_prover(bob_password, params);
  Verifier alice_verifier(alice_password, params);
  const RngSeed alice_base = substream(params.seed, STREAM_ALICE_COIN);
  const RngSeed bob_base = substream(params.seed, STREAM_BOB_COIN);
  RngStream test_rng(substream(params.seed, STREAM_TEST));
  std::uint64_t counter = 0;
  // One challenge pool for the whole session: a string spent in either
  // direction is never reused, so a state captured from one party cannot be
  // played back to it as the other party's proof.
  const std::vector<const UsedStringLedger*> ledgers = {
      &bob_verifier.ledger(), &alice_verifier.ledger()};

  MutualResult result;
  auto run_round = [&](Prover& prover, Verifier& verifier,
                       Transcript& transcript, unsigned stage) {
    const BitString r =
        fresh_challenge(params, alice_base, bob_base, counter, ledgers);
    ChannelState sent = prover.respond(r);
    const Verifier::Result check =
        verifier.check(std::move(sent), r, test_rng);
    transcript.rounds.push_back({stage, r, check.outcome});
    return check.outcome.passed;
  };

  for (unsigned stage = 1; stage <= params.rounds; ++stage) {
    const bool forward_ok =
        run_round(alice_prover, bob_verifier, result.forward, stage);
    if (!forward_ok) {
      result.forward.verdict = Verdict::aborted;
      result.forward.abort_round = stage;
      result.abort_stage = stage;
      break;
    }
    const bool reverse_ok =
        run_round(bob_prover, alice_verifier, result.reverse, stage);
    if (!reverse_ok) {
      result.reverse.verdict = Verdict::aborted;
      result.reverse.abort_round = stage;
      result.abort_stage = stage;
      break;
    }
  }
  result.states_emitted = alice_prover.emitted() + bob_prover.emitted();
  if (!result.abort_stage) {
    result.forward.verdict = Verdict::accepted;
    result.reverse.verdict = Verdict::accepted;
    result.verdict = Verdict::accepted;
  }
  return result;
}

FoolingProbability fooling_probability(Eigen::Index dim, unsigned rounds) {
  if (dim < 2) throw std::invalid_argument("fooling_probability: D < 2");
  if (rounds < 1) throw std::invalid_argument("fooling_probability: s < 1");
  const double d = static_cast<double>(dim);
  const double s = static_cast<double>(rounds);
  FoolingProbability f;
  f.exact = std::pow((1.0 + 1.0 / d) / 2.0, s);
  f.approximate = std::ldexp(1.0 + s / d, -static_cast<int>(rounds));
  return f;
}

}  // namespace qpass
