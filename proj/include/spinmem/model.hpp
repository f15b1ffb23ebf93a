#pragma once

#include <stdexcept>
#include <vector>

namespace spinmem {

// Raised when a computation cannot meet its numerical contract (eigensolver
// residual, cross-check disagreement, non-finite intermediate).
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameters of a ferromagnetic 1D spin chain with power-law couplings
// truncated at interaction range N:
//
//   H = - sum_i sum_{k=1}^{N} J(k) s_i s_{i+k} - B sum_i s_i,  J(k) = J0 / k^delta
//
// Spins take values +-1 and temperature is in energy units (k_B = 1).
// delta must exceed 1: at delta <= 1 the per-spin coupling sum grows without
// bound as the range increases and the energy is not extensive.
struct coupling_spec {
  int range = 1;            // N, longest interaction distance; >= 1
  double j0 = 1.0;          // J0 >= 0 (J0 = 0 collapses to an i.i.d. process)
  double delta = 2.0;       // power-law exponent; > 1
  double field = 0.0;       // B, uniform longitudinal field
  double temperature = 1.0; // T > 0, finite

  double beta() const { return 1.0 / temperature; }
};

// Throws std::invalid_argument if the spec violates any constraint above.
void validate(const coupling_spec& spec);

// J(k) = J0 / k^delta. Throws std::domain_error unless 1 <= distance <= range.
double coupling(const coupling_spec& spec, int distance);

// Number of distinct spin blocks of length `range`: 2^range.
int block_states(int range);

// Blocks of N spins are encoded as N-bit integers, bit p = (s_{p+1} + 1)/2.
// Position 0 is the leftmost spin of the block; when a block is used as a
// predictive state, position N-1 holds the most recently generated spin.
int spin_at(unsigned block, int position);
unsigned encode_spins(const std::vector<int>& spins);
std::vector<int> decode_spins(unsigned block, int range);
unsigned flip_all(unsigned block, int range);

// Energy of one isolated block: field term plus every pair interaction that
// fits inside the block,
//   X = -B sum_p s_p - sum_{d=1}^{N-1} sum_{p} J(d) s_p s_{p+d}.
double block_internal_energy(const coupling_spec& spec, unsigned block);

// Energy of every interaction crossing the boundary between two adjacent
// blocks (left block immediately followed by right block on the chain):
//   Y = - sum_{d=1}^{N} J(d) * (sum of s^L_a s^R_b over pairs at distance d).
double block_interaction_energy(const coupling_spec& spec, unsigned left,
                                unsigned right);

// Energy added when `new_spin` is appended to a chain whose last N spins form
// `state`: dE = -new_spin * (B + sum_{k=1}^{N} J(k) s_{state, N-k}).
double added_spin_energy(const coupling_spec& spec, unsigned state,
                         int new_spin);

// Reference energy of an open run of spins: all pairs at distance <= range
// plus the field term. Blocks satisfy X(L) + Y(L,R) + X(R) ==
// segment_energy(L ++ R) exactly.
double segment_energy(const coupling_spec& spec, const std::vector<int>& spins);

}  // namespace spinmem
