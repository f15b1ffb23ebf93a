#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "spinmem/epsilon_machine.hpp"

using namespace spinmem;

namespace {

coupling_spec make_spec(int range, double temperature = 1.0, double j0 = 1.0,
                        double delta = 2.0, double field = 0.0) {
  coupling_spec spec;
  spec.range = range;
  spec.j0 = j0;
  spec.delta = delta;
  spec.field = field;
  spec.temperature = temperature;
  return spec;
}

epsilon_machine machine_at(const coupling_spec& spec) {
  return build_epsilon_machine(shift_transfer_matrix(spec));
}

}  // namespace

TEST_SUITE("classical") {

TEST_CASE("two-state machine matches the logistic closed form") {
  // p(stay) = exp(beta J) / (exp(beta J) + exp(-beta J)).
  for (const double temperature : {0.5, 1.0, 2.0, 10.0}) {
    const epsilon_machine machine = machine_at(make_spec(1, temperature));
    const double p = 1.0 / (1.0 + std::exp(-2.0 / temperature));
    CHECK(machine.prob(1, 1) == doctest::Approx(p).epsilon(1e-12));
    CHECK(machine.prob(0, 0) == doctest::Approx(p).epsilon(1e-12));
    CHECK(machine.prob(0, 1) == doctest::Approx(1.0 - p).epsilon(1e-12));
    CHECK(machine.pi[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(machine.pi[1] == doctest::Approx(0.5).epsilon(1e-12));
    // One bit of memory at every temperature.
    CHECK(statistical_complexity(machine.pi) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("range-2 machine matches frozen closed-form values") {
  // All frozen numbers come from an independent high-precision solution of
  // the flip-symmetric 2x2 subproblem of the 4x4 weight matrix.
  const epsilon_machine cold = machine_at(make_spec(2, 1.0));
  CHECK(cold.pi[0] == doctest::Approx(0.472157074545232).epsilon(1e-11));
  CHECK(cold.pi[1] == doctest::Approx(0.027842925454768).epsilon(1e-9));
  CHECK(cold.pi[2] == doctest::Approx(0.027842925454768).epsilon(1e-9));
  CHECK(cold.pi[3] == doctest::Approx(0.472157074545232).epsilon(1e-11));
  CHECK(statistical_complexity(cold.pi) ==
        doctest::Approx(1.31007577334090).epsilon(1e-11));
  CHECK(cold.prob(3, 1) == doctest::Approx(0.948600846490950).epsilon(1e-12));
  CHECK(cold.prob(2, 1) == doctest::Approx(0.871620835761657).epsilon(1e-12));

  const epsilon_machine warm = machine_at(make_spec(2, 2.0));
  CHECK(statistical_complexity(warm.pi) ==
        doctest::Approx(1.76371282725813).epsilon(1e-11));
  CHECK(warm.prob(3, 1) == doctest::Approx(0.798535834560456).epsilon(1e-12));
  CHECK(warm.prob(2, 1) == doctest::Approx(0.706235083426528).epsilon(1e-12));
  CHECK(warm.pi[0] == doctest::Approx(0.389024825298016).epsilon(1e-11));
  CHECK(warm.pi[1] == doctest::Approx(0.110975174701984).epsilon(1e-11));
}

TEST_CASE("construction invariants hold across the parameter range") {
  for (const int range : {1, 2, 3, 4}) {
    for (const double temperature : {0.5, 1.0, 5.0, 50.0}) {
      const epsilon_machine machine = machine_at(make_spec(range, temperature));
      CHECK(machine.n_states == (1 << range));
      CHECK(machine.stoch_residual <= 1e-10);
      CHECK(machine.pi_cross_residual <= 1e-9);
      CHECK_FALSE(machine.degenerate);
      CHECK(machine.pi.minCoeff() > 0.0);
      CHECK(machine.pi.sum() == doctest::Approx(1.0).epsilon(1e-12));
      for (int s = 0; s < machine.n_states; ++s)
        CHECK(machine.prob(static_cast<unsigned>(s), 0) +
                  machine.prob(static_cast<unsigned>(s), 1) ==
              doctest::Approx(1.0).epsilon(1e-12));
      // The labeled matrices sum to the stochastic matrix with unit row sums.
      const Eigen::MatrixXd stochastic = machine.stochastic_matrix();
      for (int s = 0; s < machine.n_states; ++s)
        CHECK(stochastic.row(s).sum() == doctest::Approx(1.0).epsilon(1e-12));
      // pi is stationary: pi^T S = pi^T.
      const Eigen::VectorXd advanced = stochastic.transpose() * machine.pi;
      CHECK((advanced - machine.pi).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("stationary distribution is flip symmetric at zero field") {
  const epsilon_machine machine = machine_at(make_spec(3, 1.3));
  for (int s = 0; s < machine.n_states; ++s) {
    const int f = static_cast<int>(flip_all(static_cast<unsigned>(s), 3));
    CHECK(machine.pi[s] == doctest::Approx(machine.pi[f]).epsilon(1e-12));
  }
  // A field tilts it.
  const epsilon_machine tilted = machine_at(make_spec(1, 1.0, 1.0, 2.0, 0.4));
  CHECK(tilted.pi[1] > tilted.pi[0]);
  CHECK(statistical_complexity(tilted.pi) < 1.0);
}

TEST_CASE("decoupled chain is flagged degenerate with uniform memory") {
  const epsilon_machine machine = machine_at(make_spec(3, 1.0, 0.0));
  CHECK(machine.degenerate);
  for (int s = 0; s < machine.n_states; ++s) {
    CHECK(machine.prob(static_cast<unsigned>(s), 0) ==
          doctest::Approx(0.5).epsilon(1e-13));
    CHECK(machine.pi[s] == doctest::Approx(0.125).epsilon(1e-12));
  }
  // The constructed state space still has 3 bits of entropy; the degeneracy
  // flag is what marks it as reducible.
  CHECK(statistical_complexity(machine.pi) ==
        doctest::Approx(3.0).epsilon(1e-11));
}

TEST_CASE("machine conditionals converge to oracle conditionals") {
  const coupling_spec spec = make_spec(2, 2.0);
  const epsilon_machine machine = machine_at(spec);
  double previous = 1.0;
  for (const int length : {8, 12, 16}) {
    const finite_chain_distribution dist =
        boltzmann_enumerate(spec, length, boundary_kind::ring);
    const markov_check check =
        verify_markov_order(machine, conditional_at_center(dist, 3), 1.0);
    CHECK(check.max_deviation < previous);
    previous = check.max_deviation;
  }
  CHECK(previous < 2e-3);  // measured 1.26e-3 at L = 16

  // Histories of the machine's own length work too (m = range).
  const finite_chain_distribution dist =
      boltzmann_enumerate(spec, 16, boundary_kind::ring);
  const markov_check same_length =
      verify_markov_order(machine, conditional_at_center(dist, 2), 1.0);
  CHECK(same_length.max_deviation < 2e-3);

  // Deeper histories add no information: m = 4 deviates no more than m = 3
  // beyond finite-size error.
  const markov_check deeper =
      verify_markov_order(machine, conditional_at_center(dist, 4), 1.0);
  CHECK(deeper.max_deviation < 2e-3);

  // The ok flag reflects the supplied tolerance.
  CHECK_FALSE(
      verify_markov_order(machine, conditional_at_center(dist, 3), 1e-6).ok);
  CHECK(verify_markov_order(machine, conditional_at_center(dist, 3), 0.1).ok);

  // Histories shorter than the range cannot address a state.
  CHECK_THROWS_AS(
      verify_markov_order(machine, conditional_at_center(dist, 1), 1.0),
      std::domain_error);
}

TEST_CASE("cryptic order equals the interaction range") {
  for (const int range : {1, 2, 3, 4})
    CHECK(verify_cryptic_order(machine_at(make_spec(range, 1.5))) == range);
}

TEST_CASE("construction rejects unusable inputs") {
  // The block-kind matrix does not describe single-spin emissions.
  CHECK_THROWS_AS(build_epsilon_machine(block_transfer_matrix(make_spec(2))),
                  std::invalid_argument);

  // A corrupted eigenvector breaks row stochasticity and must be caught.
  transfer_matrix forged = shift_transfer_matrix(make_spec(1));
  forged.right[0] *= 1.3;
  CHECK_THROWS_AS(build_epsilon_machine(forged), numerical_error);
}

TEST_CASE("entropy helper validates its input") {
  Eigen::VectorXd ok(2);
  ok << 0.5, 0.5;
  CHECK(statistical_complexity(ok) == doctest::Approx(1.0).epsilon(1e-15));
  Eigen::VectorXd point(2);
  point << 1.0, 0.0;
  CHECK(statistical_complexity(point) == 0.0);

  Eigen::VectorXd short_sum(2);
  short_sum << 0.5, 0.4;
  CHECK_THROWS_AS(statistical_complexity(short_sum), std::domain_error);
  Eigen::VectorXd negative(2);
  negative << 1.1, -0.1;
  CHECK_THROWS_AS(statistical_complexity(negative), std::domain_error);
}

}  // TEST_SUITE
