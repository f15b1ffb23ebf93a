#pragma once

#include <Eigen/Dense>

#include "spinmem/oracle.hpp"
#include "spinmem/transfer.hpp"

namespace spinmem {

// Minimal predictive machine of the chain viewed as a stationary process:
// states are the 2^N blocks of the last N spins, the next spin is emitted
// with the Doob-transformed transfer weights, and the state update is the
// deterministic shift. Unifilar by construction: state and symbol fix the
// successor.
struct epsilon_machine {
  int range = 1;
  int n_states = 2;
  Eigen::MatrixX2d probs;  // probs(state, symbol) = P(symbol | state), rows sum to 1
  Eigen::VectorXd pi;      // stationary distribution over states
  double stoch_residual = 0.0;      // worst |row sum - 1| before any use
  double pi_cross_residual = 0.0;   // max |pi - right*left| from the transfer matrix
  bool degenerate = false;          // every state has the same conditionals (iid)

  double prob(unsigned state, int symbol) const {
    return probs(static_cast<int>(state), symbol);
  }
  unsigned successor(unsigned state, int symbol) const {
    return shift_successor(state, symbol, range);
  }
  Eigen::MatrixXd labeled_matrix(int symbol) const;  // dense T^(symbol)
  Eigen::MatrixXd stochastic_matrix() const;         // T^(0) + T^(1)
};

// Builds the machine from a shift-kind transfer matrix:
//   P(symbol | state) = weights(state, next) * right[next] / (lambda * right[state]).
// Row sums are 1 up to eigensolver error; deviation beyond 1e-8 is an error.
// The stationary distribution is computed from the stochastic matrix and
// cross-checked against the transfer matrix product right*left at 1e-9.
epsilon_machine build_epsilon_machine(const transfer_matrix& tm);

// Left fixed point of the stochastic matrix, recomputed from the machine
// alone (dense eigensolve for <= 256 states, power iteration above).
Eigen::VectorXd stationary_distribution(const epsilon_machine& machine);

// Shannon entropy of a probability vector, in bits. Zero entries contribute
// zero; the vector must be nonnegative and sum to 1 within 1e-8.
double statistical_complexity(const Eigen::VectorXd& pi);

struct markov_check {
  bool ok = false;
  double max_deviation = 0.0;
};

// Compares oracle conditionals for length-m histories (m >= range) against
// the machine's conditional for the state formed by the last `range` spins
// of each history. Small deviations certify both the construction and that
// longer histories carry no extra information (Markov order = range).
markov_check verify_markov_order(const epsilon_machine& machine,
                                 const conditional_table& conditionals,
                                 double tolerance);

// Smallest K such that after emitting any K symbols the state is independent
// of the start state; equals `range` for the shift construction. Checked
// structurally through the successor map; throws numerical_error if no K up
// to 2 * range works.
int verify_cryptic_order(const epsilon_machine& machine);

}  // namespace spinmem
