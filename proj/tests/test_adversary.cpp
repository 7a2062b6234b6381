#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "qpass/adversary.hpp"
#include "qpass/encoding.hpp"
#include "qpass/linalg.hpp"
#include "qpass/protocol.hpp"

using namespace qpass;

namespace {

EncodingParams encoding(unsigned m, unsigned n, unsigned d) {
  EncodingParams params;
  params.password_bits = m;
  params.hash_bits = n;
  params.dim_log2 = d;
  params.hash = HashSpec::make_sha256(n);
  return params;
}

StateVector basis_state(Eigen::Index dim, Eigen::Index k) {
  StateVector v = StateVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("every pure state averages to fidelity 1/D under enumeration") {
  // The index average of the target projectors is I/D, so the mean
  // fidelity of any fixed pure state is exactly 1/D.
  for (unsigned d : {2u, 3u}) {
    const EncodingParams params = encoding(16, 10, d);
    const double inv_d = 1.0 / static_cast<double>(params.dim());
    RngStream rng(RngSeed{71, d});
    for (int k = 0; k < 3; ++k) {
      const DensityMatrix trial =
          k == 0
              ? outer(symmetric_state(0, params.index_count(), params.dim()))
              : (k == 1 ? outer(basis_state(params.dim(), 0))
                        : outer(random_pure_state(params.dim(), rng)));
      const MeanFidelity f = random_state_attack_fidelity(trial, params, 0);
      CHECK(std::abs(f.mean - inv_d) < 1e-12);
      CHECK(f.sem == 0.0);
      CHECK(f.samples == params.index_count());
    }
  }
}

TEST_CASE("sampled fidelity through the real hash agrees with 1/D") {
  const EncodingParams params = encoding(16, 8, 3);
  // A generic pure state: its fidelity varies with the target index, so
  // the Monte Carlo spread is nonzero. (A basis state would have constant
  // fidelity 1/D against every symmetric state.)
  RngStream state_rng(RngSeed{72, 9});
  const DensityMatrix trial = outer(random_pure_state(8, state_rng));
  const MeanFidelity f =
      random_state_attack_fidelity(trial, params, 20000, RngSeed{72, 0});
  CHECK(f.samples == 20000);
  CHECK(f.sem > 0.0);
  CHECK(std::abs(f.mean - 0.125) < 3.5 * f.sem);
}

TEST_CASE("fixed-state search returns a physical best candidate") {
  const EncodingParams params = encoding(16, 10, 2);
  const FixedStateSearchResult best =
      best_fixed_state_search(params, 8, RngSeed{73, 0});
  CHECK(is_density_matrix(best.best_state));
  CHECK(best.mean_fidelity == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("fixed-state sessions match the exact fooling probability") {
  ProtocolParams params;
  params.encoding = encoding(16, 12, 2);
  params.rounds = 2;
  params.capture_cap = 2;
  const DensityMatrix eve =
      outer(symmetric_state(5, params.encoding.index_count(),
                            params.encoding.dim()));
  const AttackReport report =
      fixed_state_attack_eval(params, eve, 20000, RngSeed{74, 0});
  CHECK(report.kind == AttackKind::fixed_state);
  CHECK(report.trials == 20000);
  const double expected = fooling_probability(4, 2).exact;  // 0.625^2
  CHECK(report.analytic == doctest::Approx(expected).epsilon(1e-15));
  const double sigma = std::sqrt(expected * (1 - expected) / 20000.0);
  CHECK(std::abs(report.empirical - expected) < 3.2 * sigma);
  CHECK(report.per_round_bound == doctest::Approx(0.625));
  CHECK(report.bound_respected);
  CHECK(report.ci_low < report.empirical);
  CHECK(report.empirical < report.ci_high);
  // Every session runs round 1; only first-round passes reach round 2.
  CHECK(report.rounds >= report.trials);
  CHECK(report.round_passes <= report.rounds);
}

TEST_CASE("a mixed strategy never beats its best pure component") {
  ProtocolParams params;
  params.encoding = encoding(16, 12, 2);
  params.rounds = 2;
  params.capture_cap = 2;
  const StateVector v1 =
      symmetric_state(0, params.encoding.index_count(),
                      params.encoding.dim());
  // Orthonormal partner built from a basis state by Gram-Schmidt.
  StateVector v2 = basis_state(4, 1);
  v2 -= overlap(v1, v2) * v1;
  v2.normalize();
  const DensityMatrix mix =
      0.6 * (v1 * v1.adjoint()) + 0.4 * (v2 * v2.adjoint());

  const double mixed =
      fixed_state_attack_eval(params, mix, 20000, RngSeed{75, 0}).empirical;
  const double pure1 =
      fixed_state_attack_eval(params, outer(v1), 20000, RngSeed{75, 1})
          .empirical;
  const double pure2 =
      fixed_state_attack_eval(params, outer(v2), 20000, RngSeed{75, 2})
          .empirical;
  const double sigma = std::sqrt(0.4 * 0.6 / 20000.0);
  CHECK(mixed <= std::max(pure1, pure2) + 3.0 * std::sqrt(2.0) * sigma);
}

TEST_CASE("replay oracle equals (1 + 1/D)/2 by enumeration") {
  CHECK(std::abs(naive_replay_exact_pass_rate(encoding(16, 8, 3)) - 0.5625) <
        1e-12);
  CHECK(std::abs(naive_replay_exact_pass_rate(encoding(16, 4, 2)) - 0.625) <
        1e-12);
  // Enumeration is infeasible past the cap; the closed form takes over and
  // must agree (it is exact for every N).
  CHECK(std::abs(naive_replay_exact_pass_rate(encoding(40, 34, 3)) - 0.5625) <
        1e-12);
}

TEST_CASE("replayed states pass at the oracle rate in both index models") {
  const EncodingParams params = encoding(16, 8, 3);
  const double exact = naive_replay_exact_pass_rate(params);
  for (const IndexModel model :
       {IndexModel::ideal_uniform, IndexModel::real_hash}) {
    const AttackReport report =
        naive_replay_success(params, 20000, model, RngSeed{76, 0});
    CHECK(report.kind == AttackKind::naive_replay);
    CHECK(report.analytic == doctest::Approx(exact).epsilon(1e-12));
    const double sigma = std::sqrt(exact * (1 - exact) / 20000.0);
    CHECK(std::abs(report.empirical - exact) < 3.2 * sigma);
    CHECK(report.bound_respected);
  }
}

TEST_CASE("ideal-hash replay operator is exactly maximally mixed") {
  const EncodingParams params = encoding(8, 4, 1);
  const ROperator r = build_R(params, 2, RBuildMode::ideal_hash);
  REQUIRE(r.matrix.rows() == 8);  // D^(c+1) = 2^3
  CHECK(r.terms == 4096);         // 2^(n (c+1))
  const DensityMatrix target = DensityMatrix::Identity(8, 8) / 8.0;
  CHECK((r.matrix - target).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(replay_bound(r, params) - 0.5) < 1e-9);
}

TEST_CASE("real-hash exhaustive replay operator reproduces its frozen value") {
  const EncodingParams params = encoding(6, 4, 1);
  const ROperator r = build_R(params, 1, RBuildMode::exhaustive);
  // 2^m passwords times 2^m per challenge, c + 1 = 2 challenges: 2^18.
  CHECK(r.terms == (std::uint64_t{1} << 18));
  const double r_max = max_eigenvalue(r.matrix);
  CHECK(r_max == doctest::Approx(0.2586765995096149).epsilon(1e-9));
  CHECK(replay_bound(r, params) == doctest::Approx(2 * r_max));
  // The ideal-hash value is 1/D^2 = 0.25; the real hash lands close.
  CHECK(r_max >= 0.25);
  CHECK(r_max <= 0.30);
}

TEST_CASE("sampled replay operator approaches the exhaustive one") {
  const EncodingParams params = encoding(6, 4, 1);
  const ROperator exhaustive = build_R(params, 1, RBuildMode::exhaustive);
  const ROperator sampled =
      build_R(params, 1, RBuildMode::sampled, 20000, RngSeed{77, 0});
  CHECK(sampled.terms == 20000);
  CHECK(std::abs(max_eigenvalue(sampled.matrix) -
                 max_eigenvalue(exhaustive.matrix)) < 0.02);
}

TEST_CASE("replay operator construction refuses oversize requests") {
  // Output dimension D^(c+1) beyond the dense cap.
  CHECK_THROWS_AS(build_R(encoding(16, 8, 3), 4, RBuildMode::ideal_hash),
                  std::length_error);
  // Index tuple space 2^(n(c+1)) beyond the enumeration cap.
  CHECK_THROWS_AS(build_R(encoding(16, 12, 1), 11, RBuildMode::ideal_hash),
                  std::length_error);
  // Exhaustive mode additionally caps m(c+2).
  CHECK_THROWS_AS(build_R(encoding(16, 4, 1), 4, RBuildMode::exhaustive),
                  std::length_error);
  CHECK_THROWS_AS(build_R(encoding(8, 4, 1), 0, RBuildMode::ideal_hash),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      build_R(encoding(8, 4, 1), 1, RBuildMode::sampled, 0, RngSeed{1, 0}),
      std::invalid_argument);
}

TEST_CASE("replay bound validates operator/params consistency") {
  const EncodingParams params = encoding(8, 4, 1);
  const ROperator r = build_R(params, 1, RBuildMode::ideal_hash);
  CHECK_THROWS_AS(replay_bound(r, encoding(8, 4, 2)), std::invalid_argument);
}

TEST_CASE("dictionary attack: certain with one candidate, 1/B blind") {
  const EncodingParams params = encoding(16, 16, 2);
  const AttackReport certain =
      dictionary_attack_sim(params, 1, 2, 500, RngSeed{78, 0});
  CHECK(certain.kind == AttackKind::dictionary);
  CHECK(certain.empirical == 1.0);
  CHECK(certain.analytic == 1.0);

  // Zero captures degenerate to uniform guessing among B candidates.
  const AttackReport blind =
      dictionary_attack_sim(params, 16, 0, 20000, RngSeed{78, 1});
  CHECK(blind.analytic == doctest::Approx(1.0 / 16));
  const double sigma = std::sqrt(blind.analytic * (1 - blind.analytic) /
                                 static_cast<double>(blind.trials));
  CHECK(std::abs(blind.empirical - blind.analytic) < 3.2 * sigma);
}

TEST_CASE("dictionary attack with captures beats blind guessing") {
  const EncodingParams params = encoding(16, 16, 2);
  const AttackReport informed =
      dictionary_attack_sim(params, 8, 8, 20000, RngSeed{78, 2});
  // Expected success with 8 captures over B=8 is ~0.20 >> 1/8; require a
  // comfortable margin above the blind baseline.
  CHECK(informed.empirical > 0.125 + 5.0 * std::sqrt(0.125 * 0.875 / 20000.0));
}

TEST_CASE("dictionary attack warns outside the leakage budget") {
  const EncodingParams params = encoding(16, 8, 2);  // c d = 16 > n/4 = 2
  const AttackReport report =
      dictionary_attack_sim(params, 4, 8, 200, RngSeed{78, 3});
  CHECK(!report.warnings.empty());
}

TEST_CASE("dictionary attack rejects impossible setups") {
  const EncodingParams params = encoding(4, 10, 2);
  CHECK_THROWS_AS(dictionary_attack_sim(params, 0, 1, 10, RngSeed{1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(dictionary_attack_sim(params, 32, 1, 10, RngSeed{1, 0}),
                  std::invalid_argument);  // B > 2^m
  CHECK_THROWS_AS(dictionary_attack_sim(params, 2, 1, 0, RngSeed{1, 0}),
                  std::invalid_argument);
}

TEST_CASE("ideal-model dictionary attack also honors the 1/B baseline") {
  const EncodingParams params = encoding(16, 16, 2);
  const AttackReport blind = dictionary_attack_sim(
      params, 16, 0, 20000, RngSeed{79, 0}, IndexModel::ideal_uniform);
  const double sigma =
      std::sqrt(blind.analytic * (1 - blind.analytic) / 20000.0);
  CHECK(std::abs(blind.empirical - 1.0 / 16) < 3.2 * sigma);
}

TEST_CASE("attack enum conversions round-trip") {
  for (const AttackKind kind :
       {AttackKind::fixed_state, AttackKind::naive_replay,
        AttackKind::dictionary})
    CHECK(attack_kind_from_string(to_string(kind)) == kind);
  for (const IndexModel model :
       {IndexModel::ideal_uniform, IndexModel::real_hash})
    CHECK(index_model_from_string(to_string(model)) == model);
  for (const RBuildMode mode :
       {RBuildMode::exhaustive, RBuildMode::sampled, RBuildMode::ideal_hash})
    CHECK(r_build_mode_from_string(to_string(mode)) == mode);
  CHECK_THROWS_AS(attack_kind_from_string("quantum"), std::invalid_argument);
}
