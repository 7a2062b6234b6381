#include "qpass/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace qpass {
namespace {

// Enumeration ceilings: full index scans stop at 2^24 values, R-operator
// count tables at 2^22 tuple keys, exhaustive hash-tuple scans at 2^24.
constexpr std::uint64_t MAX_ENUM_INDICES = std::uint64_t{1} << 24;
constexpr unsigned MAX_TUPLE_BITS = 22;
constexpr unsigned MAX_EXHAUSTIVE_BITS = 24;

double per_round_cap(Eigen::Index dim) {
  return 0.5 * (1.0 + 1.0 / static_cast<double>(dim));
}

// <v| rho |v> for Hermitian rho; equals trace_product(rho, outer(v)).
double pure_fidelity(const DensityMatrix& rho, const StateVector& v) {
  return (v.adjoint() * rho * v)(0, 0).real();
}

AttackReport make_report(AttackKind kind, const BinomialEstimate& sessions,
                         const BinomialEstimate& rounds, double analytic,
                         Eigen::Index dim, std::vector<std::string> warnings) {
  AttackReport rep;
  rep.kind = kind;
  rep.trials = sessions.trials;
  rep.empirical = sessions.rate();
  rep.ci_low = sessions.ci_low();
  rep.ci_high = sessions.ci_high();
  rep.analytic = analytic;
  rep.per_round_bound = per_round_cap(dim);
  rep.rounds = rounds.trials;
  rep.round_passes = rounds.successes;
  bool ok = true;
  if (rounds.trials > 0)
    ok = rounds.rate() <= rep.per_round_bound + 3.0 * rounds.std_error();
  if (kind == AttackKind::fixed_state)
    ok = ok && sessions.rate() <= analytic + 3.0 * sessions.std_error();
  rep.bound_respected = ok;
  rep.warnings = std::move(warnings);
  return rep;
}

}  // namespace

std::string to_string(IndexModel model) {
  return model == IndexModel::ideal_uniform ? "ideal" : "real";
}

IndexModel index_model_from_string(const std::string& text) {
  if (text == "ideal") return IndexModel::ideal_uniform;
  if (text == "real") return IndexModel::real_hash;
  throw std::invalid_argument("unknown index model '" + text + "'");
}

std::string to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::fixed_state: return "fixed_state";
    case AttackKind::naive_replay: return "naive_replay";
    case AttackKind::dictionary: return "dictionary";
  }
  throw std::logic_error("to_string: unknown AttackKind");
}

AttackKind attack_kind_from_string(const std::string& text) {
  if (text == "fixed_state") return AttackKind::fixed_state;
  if (text == "naive_replay") return AttackKind::naive_replay;
  if (text == "dictionary") return AttackKind::dictionary;
  throw std::invalid_argument("unknown attack kind '" + text + "'");
}

std::string to_string(RBuildMode mode) {
  switch (mode) {
    case RBuildMode::exhaustive: return "exhaustive";
    case RBuildMode::sampled: return "sampled";
    case RBuildMode::ideal_hash: return "ideal_hash";
  }
  throw std::logic_error("to_string: unknown RBuildMode");
}

RBuildMode r_build_mode_from_string(const std::string& text) {
  if (text == "exhaustive") return RBuildMode::exhaustive;
  if (text == "sampled") return RBuildMode::sampled;
  if (text == "ideal_hash") return RBuildMode::ideal_hash;
  throw std::invalid_argument("unknown R build mode '" + text + "'");
}

MeanFidelity random_state_attack_fidelity(const DensityMatrix& trial,
                                          const EncodingParams& params,
                                          std::uint64_t samples,
                                          RngSeed seed) {
  params.validate();
  if (!is_density_matrix(trial))
    throw std::invalid_argument(
        "random_state_attack_fidelity: trial is not a density matrix");
  if (trial.rows() != params.dim())
    throw std::invalid_argument(
        "random_state_attack_fidelity: trial dimension mismatch");

  const std::uint64_t count = params.index_count();
  if (samples == 0) {
    if (count > MAX_ENUM_INDICES)
      throw std::length_error(
          "random_state_attack_fidelity: index space too large to "
          "enumerate; pass samples > 0");
    double sum = 0.0;
    for (std::uint64_t j = 0; j < count; ++j)
      sum += pure_fidelity(trial, symmetric_state(j, count, params.dim()));
    return {sum / static_cast<double>(count), 0.0, count};
  }

  RngStream rng(seed);
  RunningMean acc;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const BitString p = BitString::random(params.password_bits, rng);
    const BitString r = BitString::random(params.password_bits, rng);
    const std::uint64_t j = hash_index(p, r, params.hash);
    acc.add(pure_fidelity(trial, symmetric_state(j, count, params.dim())));
  }
  return {acc.mean(), samples >= 2 ? acc.sem() : 0.0, samples};
}

FixedStateSearchResult best_fixed_state_search(const EncodingParams& params,
                                               std::uint64_t candidates,
                                               RngSeed seed,
                                               std::uint64_t samples) {
  params.validate();
  if (candidates < 1)
    throw std::invalid_argument("best_fixed_state_search: need a candidate");
  RngStream candidate_rng(substream(seed, 0));
  FixedStateSearchResult best;
  for (std::uint64_t k = 0; k < candidates; ++k) {
    const StateVector v = random_pure_state(params.dim(), candidate_rng);
    const DensityMatrix projector = outer(v);
    const MeanFidelity f = random_state_attack_fidelity(
        projector, params, samples, substream(seed, k + 1));
    if (best.best_state.size() == 0 || f.mean > best.mean_fidelity) {
      best.best_state = projector;
      best.mean_fidelity = f.mean;
      best.sem = f.sem;
    }
  }
  return best;
}

AttackReport fixed_state_attack_eval(const ProtocolParams& params,
                                     const DensityMatrix& eve_state,
                                     std::uint64_t trials, RngSeed seed) {
  params.validate();
  if (trials < 1)
    throw std::invalid_argument("fixed_state_attack_eval: trials < 1");
  if (!is_density_matrix(eve_state) ||
      eve_state.rows() != params.encoding.dim())
    throw std::invalid_argument(
        "fixed_state_attack_eval: invalid adversary state");

  // A (numerically) pure adversary state is carried as its eigenvector so
  // per-round channel objects skip the density-matrix re-validation.
  Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(eve_state);
  const bool pure = solver.eigenvalues().maxCoeff() > 1.0 - EIG_TOL;
  StateVector pure_vector;
  if (pure) {
    Eigen::Index top = 0;
    solver.eigenvalues().maxCoeff(&top);
    pure_vector = solver.eigenvectors().col(top).normalized();
  }

  const unsigned m = params.encoding.password_bits;
  BinomialEstimate sessions, rounds;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const RngSeed session_seed = substream(seed, t);
    RngStream local_rng(substream(session_seed, 0));
    const BitString password = BitString::random(m, local_rng);
    ProtocolParams run = params;
    run.seed = session_seed;

    // Eve plays the prover role herself, so only Bob's side runs.
    Verifier bob(password, run);
    const RngSeed alice_base = substream(run.seed, 1);
    const RngSeed bob_base = substream(run.seed, 2);
    RngStream test_rng(substream(run.seed, 3));
    std::uint64_t counter = 0;
    bool all_passed = true;
    for (unsigned i = 1; i <= run.rounds; ++i) {
      BitString r;
      int redraws = 0;
      do {
        const std::uint64_t tick = counter++;
        r = joint_random_string(substream(alice_base, tick),
                                substream(bob_base, tick),
                                run.randomness_mode, m);
      } while (bob.ledger().contains(r) && ++redraws < 64);
      if (bob.ledger().contains(r))
        throw std::invalid_argument(
            "fixed_state_attack_eval: challenge space exhausted");
      ChannelState sent = pure ? ChannelState::pure(pure_vector)
                               : ChannelState::mixed(eve_state);
      const Verifier::Result result = bob.check(std::move(sent), r, test_rng);
      rounds.add(result.outcome.passed);
      if (!result.outcome.passed) {
        all_passed = false;
        break;
      }
    }
    sessions.add(all_passed);
  }

  const double analytic =
      fooling_probability(params.encoding.dim(), params.rounds).exact;
  return make_report(AttackKind::fixed_state, sessions, rounds, analytic,
                     params.encoding.dim(), params.warnings());
}

double naive_replay_exact_pass_rate(const EncodingParams& params) {
  params.validate();
  const std::uint64_t count = params.index_count();
  const Eigen::Index dim = params.dim();
  double mean;
  if (count <= (std::uint64_t{1} << 12)) {  // N^2 pairs stay enumerable
    std::vector<StateVector> states;
    states.reserve(count);
    for (std::uint64_t j = 0; j < count; ++j)
      states.push_back(symmetric_state(j, count, dim));
    double sum = 0.0;
    for (std::uint64_t j1 = 0; j1 < count; ++j1)
      for (std::uint64_t j2 = 0; j2 < count; ++j2)
        sum += std::norm(overlap(states[j1], states[j2]));
    mean = sum / (static_cast<double>(count) * static_cast<double>(count));
  } else if (count <= MAX_ENUM_INDICES) {
    // |<Phi_j1|Phi_j2>| depends only on (j2 - j1) mod N; every difference
    // class holds exactly N of the N^2 pairs.
    const StateVector base = symmetric_state(0, count, dim);
    double sum = 0.0;
    for (std::uint64_t delta = 0; delta < count; ++delta)
      sum += std::norm(overlap(base, symmetric_state(delta, count, dim)));
    mean = sum / static_cast<double>(count);
  } else {
    // The same geometric sum collapses exactly: the average is 1/D for any
    // N >= D, so nothing is lost when N is too large to enumerate.
    mean = 1.0 / static_cast<double>(dim);
  }
  return 0.5 * (1.0 + mean);
}

AttackReport naive_replay_success(const EncodingParams& params,
                                  std::uint64_t trials, IndexModel model,
                                  RngSeed seed) {
  params.validate();
  if (trials < 1)
    throw std::invalid_argument("naive_replay_success: trials < 1");
  const std::uint64_t count = params.index_count();
  const Eigen::Index dim = params.dim();
  BinomialEstimate tally;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RngStream rng(substream(seed, t));
    std::uint64_t j1, j2;
    if (model == IndexModel::ideal_uniform) {
      j1 = rng.uniform_below(count);
      j2 = rng.uniform_below(count);
    } else {
      const BitString p = BitString::random(params.password_bits, rng);
      const BitString r1 = BitString::random(params.password_bits, rng);
      BitString r2 = BitString::random(params.password_bits, rng);
      while (r2 == r1) r2 = BitString::random(params.password_bits, rng);
      j1 = hash_index(p, r1, params.hash);
      j2 = hash_index(p, r2, params.hash);
    }
    const double p_pass = pass_probability(symmetric_state(j1, count, dim),
                                           symmetric_state(j2, count, dim));
    tally.add(sample_swap_outcome(p_pass, rng).passed);
  }
  return make_report(AttackKind::naive_replay, tally, tally,
                     naive_replay_exact_pass_rate(params), dim, {});
}

ROperator build_R(const EncodingParams& params, unsigned captures,
                  RBuildMode mode, std::uint64_t samples, RngSeed seed) {
  params.validate();
  if (captures < 1) throw std::invalid_argument("build_R: captures < 1");
  const unsigned d = params.dim_log2;
  const unsigned n = params.hash_bits;
  const std::uint64_t count = params.index_count();
  const unsigned out_log2 = d * (captures + 1);
  if (out_log2 >= 63 ||
      (Eigen::Index{1} << out_log2) > MAX_TENSOR_DIM)
    throw std::length_error("build_R: operator dimension exceeds cap");
  const Eigen::Index dim_out = Eigen::Index{1} << out_log2;
  const unsigned tuple_bits = n * (captures + 1);
  if (tuple_bits > MAX_TUPLE_BITS)
    throw std::length_error(
        "build_R: index tuple space too wide; lower n or captures");
  const std::uint64_t tuple_count = std::uint64_t{1} << tuple_bits;

  // Pass 1: integer occurrence counts per index tuple. Regrouping the sum
  // this way keeps the reduction order fixed and the averaging exact.
  std::vector<std::uint64_t> counts(tuple_count, 0);
  std::uint64_t terms = 0;
  switch (mode) {
    case RBuildMode::ideal_hash: {
      std::fill(counts.begin(), counts.end(), 1);
      terms = tuple_count;
      break;
    }
    case RBuildMode::exhaustive: {
      const unsigned m = params.password_bits;
      if (static_cast<std::uint64_t>(m) * (captures + 2) >
          MAX_EXHAUSTIVE_BITS)
        throw std::length_error(
            "build_R: exhaustive tuple count exceeds 2^24; use sampled mode");
      const std::uint64_t space = std::uint64_t{1} << m;
      std::vector<std::uint32_t> index_row(space);
      for (std::uint64_t p = 0; p < space; ++p) {
        const BitString password = BitString::from_uint(p, m);
        for (std::uint64_t r = 0; r < space; ++r)
          index_row[r] = static_cast<std::uint32_t>(hash_index(
              password, BitString::from_uint(r, m), params.hash));
        std::vector<std::uint64_t> digit(captures + 1, 0);
        for (;;) {
          std::uint64_t key = 0;
          for (unsigned i = 0; i <= captures; ++i)
            key = (key << n) | index_row[digit[i]];
          ++counts[key];
          ++terms;
          int pos = static_cast<int>(captures);
          while (pos >= 0 && ++digit[pos] == space) digit[pos--] = 0;
          if (pos < 0) break;
        }
      }
      break;
    }
    case RBuildMode::sampled: {
      if (samples < 1)
        throw std::invalid_argument("build_R: sampled mode needs samples");
      RngStream rng(seed);
      for (std::uint64_t i = 0; i < samples; ++i) {
        const BitString p = BitString::random(params.password_bits, rng);
        std::uint64_t key = 0;
        for (unsigned k = 0; k <= captures; ++k) {
          const BitString r = BitString::random(params.password_bits, rng);
          key = (key << n) | hash_index(p, r, params.hash);
        }
        ++counts[key];
      }
      terms = samples;
      break;
    }
  }

  // Pass 2: accumulate the counted projectors.
  std::vector<StateVector> states;
  states.reserve(count);
  for (std::uint64_t j = 0; j < count; ++j)
    states.push_back(symmetric_state(j, count, params.dim()));
  DensityMatrix matrix = DensityMatrix::Zero(dim_out, dim_out);
  const std::uint64_t index_mask = count - 1;
  for (std::uint64_t key = 0; key < tuple_count; ++key) {
    if (counts[key] == 0) continue;
    StateVector tup = states[(key >> (n * captures)) & index_mask];
    for (unsigned i = 1; i <= captures; ++i) {
      const std::uint64_t j = (key >> (n * (captures - i))) & index_mask;
      tup = Eigen::kroneckerProduct(tup, states[j]).eval();
    }
    matrix += static_cast<double>(counts[key]) * (tup * tup.adjoint());
  }
  matrix /= static_cast<double>(terms);
  matrix = ((matrix + matrix.adjoint()) / 2.0).eval();
  return {captures, std::move(matrix), mode, terms};
}

double replay_bound(const ROperator& r_op, const EncodingParams& params) {
  params.validate();
  const unsigned out_log2 = params.dim_log2 * (r_op.captures + 1);
  if (out_log2 >= 63 || r_op.matrix.rows() != (Eigen::Index{1} << out_log2))
    throw std::invalid_argument(
        "replay_bound: operator dimension does not match params");
  // D^c is a power of two, so the scaling is exact.
  return std::ldexp(max_eigenvalue(r_op.matrix),
                    static_cast<int>(params.dim_log2 * r_op.captures));
}

AttackReport dictionary_attack_sim(const EncodingParams& params,
                                   std::uint64_t dictionary_size,
                                   unsigned captures, std::uint64_t trials,
                                   RngSeed seed, IndexModel model) {
  params.validate();
  if (dictionary_size < 1)
    throw std::invalid_argument("dictionary_attack_sim: empty dictionary");
  if (trials < 1)
    throw std::invalid_argument("dictionary_attack_sim: trials < 1");
  if (params.password_bits < 62 &&
      dictionary_size > (std::uint64_t{1} << params.password_bits))
    throw std::invalid_argument(
        "dictionary_attack_sim: dictionary larger than the password space");

  std::vector<std::string> warnings;
  const double budget = static_cast<double>(params.hash_bits) / 4.0;
  if (static_cast<double>(captures) * params.dim_log2 > budget)
    warnings.push_back(
        "captures*d exceeds the n/4 budget; outside the bound's validity "
        "region");

  const std::uint64_t count = params.index_count();
  const Eigen::Index dim = params.dim();
  BinomialEstimate sessions, rounds;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RngStream rng(substream(seed, t));

    std::vector<BitString> dictionary;
    dictionary.reserve(dictionary_size);
    std::unordered_set<BitString, BitString::Hash> seen;
    while (dictionary.size() < dictionary_size) {
      BitString candidate = BitString::random(params.password_bits, rng);
      if (seen.insert(candidate).second)
        dictionary.push_back(std::move(candidate));
    }
    const std::uint64_t true_index = rng.uniform_below(dictionary_size);

    std::vector<std::uint32_t> passes(dictionary_size, 0);
    std::vector<char> eliminated(dictionary_size, 0);
    for (unsigned i = 0; i < captures; ++i) {
      const std::uint64_t k = i % dictionary_size;
      const BitString r = BitString::random(params.password_bits, rng);
      std::uint64_t j_true, j_candidate;
      if (model == IndexModel::real_hash) {
        j_true = hash_index(dictionary[true_index], r, params.hash);
        j_candidate = hash_index(dictionary[k], r, params.hash);
      } else {
        j_true = rng.uniform_below(count);
        j_candidate =
            k == true_index ? j_true : rng.uniform_below(count);
      }
      const double p_pass =
          pass_probability(symmetric_state(j_true, count, dim),
                           symmetric_state(j_candidate, count, dim));
      const SwapOutcome outcome = sample_swap_outcome(p_pass, rng);
      rounds.add(outcome.passed);
      if (outcome.passed)
        ++passes[k];
      else
        eliminated[k] = 1;
    }

    // A failed comparison is proof the candidate differs; among the rest
    // the most passes wins, ties broken uniformly. The true password can
    // never be eliminated, so the pool is never empty.
    std::uint32_t best = 0;
    bool found = false;
    for (std::uint64_t k = 0; k < dictionary_size; ++k)
      if (!eliminated[k] && (!found || passes[k] > best)) {
        best = passes[k];
        found = true;
      }
    std::vector<std::uint64_t> tied;
    for (std::uint64_t k = 0; k < dictionary_size; ++k)
      if (!eliminated[k] && passes[k] == best) tied.push_back(k);
    const std::uint64_t guess = tied[rng.uniform_below(tied.size())];
    sessions.add(guess == true_index);
  }

  return make_report(AttackKind::dictionary, sessions, rounds,
                     1.0 / static_cast<double>(dictionary_size), dim,
                     std::move(warnings));
}

}  // namespace qpass
