#pragma once

#include <Eigen/Dense>

#include "spinmem/epsilon_machine.hpp"

namespace spinmem {

// Probabilities of every length-N output word from every start state,
// P(word | state) as the product of conditionals along the unifilar path.
// Word bit j holds the j-th emitted symbol, so after emitting `word` the
// machine occupies state `word` regardless of where it started; rows sum to
// 1 and every entry is positive at finite temperature.
struct word_distribution_table {
  int range = 1;
  Eigen::MatrixXd probs;  // probs(state, word), 2^N x 2^N
};

word_distribution_table word_distributions(const epsilon_machine& machine);

// Overlap matrix of the pure signal states that a quantum simulator assigns
// to each predictive state, weighted by the stationary distribution:
//   G(i,j) = sqrt(pi_i pi_j) * sum_w sqrt(P(w|i) P(w|j)).
// G is symmetric positive semidefinite with unit trace and shares its
// nonzero spectrum with the full signal-state density matrix.
struct gram_matrix {
  Eigen::MatrixXd entries;
  double psd_residual = 0.0;  // max(0, -smallest eigenvalue), measured at build
};

gram_matrix signal_state_gram(const Eigen::VectorXd& pi,
                              const word_distribution_table& words);

// Eigenvalues of the Gram matrix, descending.
Eigen::VectorXd gram_spectrum(const gram_matrix& gram);

// Von Neumann entropy (bits) of the signal-state ensemble: -sum lambda log2
// lambda over the Gram eigenvalues. Eigenvalues in [-1e-12, 0) are treated
// as exact zeros; anything more negative is an error.
double quantum_memory(const gram_matrix& gram);

// The same ensemble built explicitly in the 4^N-dimensional word (x) state
// product basis (basis index = word * 2^N + end state), as an independent
// route to the spectrum. Dimension grows as 4^N; range is capped at 5.
Eigen::MatrixXd density_matrix_full(const epsilon_machine& machine,
                                    const Eigen::VectorXd& pi);

// Leading high-temperature behavior of the quantum memory for range 1,
// log2(T) / (2 T^2). Valid as T -> infinity; at moderate T the true value
// sits above this by a factor 1 + (1 + 1/(2 ln 2))/log2(T) + O(T^-2), and at
// T -> 1 the expression degenerates to 0.
double high_temp_asymptote(double temperature);

}  // namespace spinmem
