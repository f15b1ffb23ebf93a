#pragma once

#include <Eigen/Dense>

#include "spinmem/model.hpp"

namespace spinmem {

enum class transfer_kind { shift, block };

// Successor of a predictive state when `symbol` (0 or 1) is emitted: the
// oldest spin (bit 0) drops out and the new spin enters at bit range-1.
inline unsigned shift_successor(unsigned state, int symbol, int range) {
  return (state >> 1) | (static_cast<unsigned>(symbol) << (range - 1));
}

// One-sided transfer matrix over spin blocks, stored in max-exponent
// normalized form: `weights` is the Boltzmann weight matrix divided by its
// largest entry, so its maximum entry is exactly 1.0 and the true matrix is
// weights * exp(log_scale). Normalizing in log space before exponentiation
// keeps every entry representable at any temperature, and because conditional
// probabilities depend only on weight ratios the normalization leaves them
// bit-for-bit unchanged; rescaled() exploits this by touching log_scale only.
//
// lambda/right/left are the dominant eigenvalue and eigenvectors of the
// normalized matrix:
//   weights * right = lambda * right,   left^T * weights = lambda * left^T,
// with right entrywise positive and summing to 1, left entrywise positive
// and left.dot(right) == 1. The dominant eigenvalue of a matrix with this
// support is real, positive and simple; construction verifies that, plus a
// relative residual of at most 1e-13 on both eigenpairs.
struct transfer_matrix {
  transfer_kind kind = transfer_kind::shift;
  int range = 1;
  Eigen::MatrixXd weights;
  double log_scale = 0.0;
  double lambda = 0.0;
  Eigen::VectorXd right;
  Eigen::VectorXd left;
  double spectral_ratio = 0.0;   // |second eigenvalue| / lambda; NaN if not computed
  double perron_residual = 0.0;  // worst relative residual of the two eigenpairs

  double raw_weight(int i, int j) const {
    return weights(i, j) * std::exp(log_scale);
  }
  double raw_lambda() const { return lambda * std::exp(log_scale); }

  // Same chain multiplied by a positive constant: normalized weights, Perron
  // data and all downstream conditional probabilities are bit-identical; only
  // the stored scale moves.
  transfer_matrix rescaled(double factor) const;
};

// Sparse one-spin-extension matrix: entry (state, successor) carries
// exp(-beta * added_spin_energy) for the two legal successors of each state,
// zero elsewhere. This is the construction the predictive-state machine is
// built from.
transfer_matrix shift_transfer_matrix(const coupling_spec& spec);

// Block-pair matrix: entry (left, right) carries
// exp(-beta * (X(left)/2 + Y(left,right) + X(right)/2)).
// At range 1 (and B = 0) it coincides entry-for-entry with the shift form;
// for longer ranges its rows mix non-overlapping block pairs and it is kept
// for equivalence checks and spectral use only, not for machine construction.
transfer_matrix block_transfer_matrix(const coupling_spec& spec);

// Shared entry point: max-exponent normalization of `log_weights` (entries
// may be -inf for structural zeros) followed by the dominant-eigenpair solve.
// Throws numerical_error if the dominant eigenvalue is not real, simple and
// positive with strictly positive eigenvectors, or if residuals exceed 1e-13.
transfer_matrix transfer_from_log_weights(const Eigen::MatrixXd& log_weights,
                                          transfer_kind kind, int range);

}  // namespace spinmem
