#pragma once

#include <array>
#include <vector>

#include "spinmem/model.hpp"

namespace spinmem {

enum class boundary_kind { ring, open };

// Exact Boltzmann distribution of a finite chain, built by full enumeration.
// Configurations are L-bit integers, bit p = (spin at site p + 1)/2.
struct finite_chain_distribution {
  coupling_spec spec;
  int length = 0;
  boundary_kind boundary = boundary_kind::ring;
  std::vector<double> probs;  // size 2^length, sums to 1
};

// Energy of one configuration under the truncated power-law Hamiltonian.
// The ring evaluates the literal double sum over sites and distances, so a
// bond can be visited twice when the ring is short (at L = 2 the single bond
// appears as two directed terms).
double chain_energy(const coupling_spec& spec, unsigned config, int length,
                    boundary_kind boundary);

// Enumerates all 2^length configurations. length is capped at 20; larger
// chains are outside this oracle's capability on purpose (no sampling
// fallback - every reported digit is exact).
finite_chain_distribution boltzmann_enumerate(const coupling_spec& spec,
                                              int length,
                                              boundary_kind boundary);

// Conditional distribution of one target spin given the m spins immediately
// before it. rows[h] = {P(down | h), P(up | h)}; history bit j is the j-th
// oldest history spin, so the newest sits in the top bit and the last N
// history spins are h >> (m - N).
struct conditional_table {
  int history_length = 0;
  std::vector<std::array<double, 2>> rows;  // size 2^history_length
};

// On a ring any window is equivalent; on an open chain the window is
// centered and must clear the boundaries by at least `range` sites
// (std::domain_error otherwise). history_length = 0 returns the bare
// marginal of the target spin.
conditional_table conditional_at_center(const finite_chain_distribution& dist,
                                        int history_length);

// Marginal distribution of `block_length` consecutive spins (centered window
// on an open chain, leftmost on a ring), indexed like predictive states:
// bit j = j-th spin of the block.
std::vector<double> block_marginals(const finite_chain_distribution& dist,
                                    int block_length);

}  // namespace spinmem
