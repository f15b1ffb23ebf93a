#include "spinmem/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace spinmem {
namespace {

constexpr int kMaxLength = 20;

std::uint32_t low_mask(int bits) {
  return bits >= 32 ? ~0u : (1u << bits) - 1u;
}

// Alignment count sum_i s_i s_{i+k} via xor + popcount; each term is +1 for
// equal bits and -1 for unequal, so the sum is (#terms) - 2 * (#unequal).
int ring_alignment(std::uint32_t c, int length, int k) {
  const int r = k % length;
  const std::uint32_t mask = low_mask(length);
  const std::uint32_t rot =
      r == 0 ? c : ((c >> r) | (c << (length - r))) & mask;
  return length - 2 * std::popcount((c ^ rot) & mask);
}

int open_alignment(std::uint32_t c, int length, int k) {
  if (k >= length) return 0;
  const std::uint32_t mask = low_mask(length - k);
  return (length - k) - 2 * std::popcount((c ^ (c >> k)) & mask);
}

int window_start(const finite_chain_distribution& dist, int window) {
  if (window > dist.length)
    throw std::domain_error("window longer than the chain");
  if (dist.boundary == boundary_kind::ring) return 0;
  const int margin = dist.spec.range;
  const int room = dist.length - window - 2 * margin;
  if (room < 0)
    throw std::domain_error(
        "open chain of length " + std::to_string(dist.length) +
        " cannot hold a window of " + std::to_string(window) +
        " spins at least " + std::to_string(margin) + " sites from each end");
  return margin + room / 2;
}

}  // namespace

double chain_energy(const coupling_spec& spec, unsigned config, int length,
                    boundary_kind boundary) {
  double e = 0.0;
  for (int k = 1; k <= spec.range; ++k) {
    const int align = boundary == boundary_kind::ring
                          ? ring_alignment(config, length, k)
                          : open_alignment(config, length, k);
    e -= coupling(spec, k) * align;
  }
  e -= spec.field * (2 * std::popcount(config & low_mask(length)) - length);
  return e;
}

finite_chain_distribution boltzmann_enumerate(const coupling_spec& spec,
                                              int length,
                                              boundary_kind boundary) {
  validate(spec);
  if (length < 1 || length > kMaxLength)
    throw std::domain_error("enumeration supports chain lengths 1.." +
                            std::to_string(kMaxLength) + " only");

  const std::size_t count = std::size_t{1} << length;
  std::vector<double> energy(count);
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < count; ++c) {
    energy[c] = chain_energy(spec, static_cast<unsigned>(c), length, boundary);
    lowest = std::min(lowest, energy[c]);
  }

  finite_chain_distribution dist;
  dist.spec = spec;
  dist.length = length;
  dist.boundary = boundary;
  dist.probs.resize(count);
  const double beta = spec.beta();
  double total = 0.0;
  for (std::size_t c = 0; c < count; ++c) {
    // Shift by the ground-state energy before exponentiating so the largest
    // weight is exactly 1; the shift cancels in the normalization.
    dist.probs[c] = std::exp(-beta * (energy[c] - lowest));
    total += dist.probs[c];
  }
  for (double& p : dist.probs) p /= total;
  return dist;
}

conditional_table conditional_at_center(const finite_chain_distribution& dist,
                                        int history_length) {
  if (history_length < 0)
    throw std::domain_error("history length must be >= 0");
  const int start = window_start(dist, history_length + 1);
  const int target = start + history_length;

  conditional_table table;
  table.history_length = history_length;
  table.rows.assign(std::size_t{1} << history_length, {0.0, 0.0});
  std::vector<std::array<double, 2>> joint(table.rows.size(), {0.0, 0.0});
  const std::uint32_t hmask = low_mask(history_length);
  for (std::size_t c = 0; c < dist.probs.size(); ++c) {
    const std::uint32_t h = (static_cast<std::uint32_t>(c) >> start) & hmask;
    const int x = (c >> target) & 1u;
    joint[h][static_cast<std::size_t>(x)] += dist.probs[c];
  }
  for (std::size_t h = 0; h < joint.size(); ++h) {
    const double total = joint[h][0] + joint[h][1];
    if (!(total > 0.0))
      throw numerical_error("history has zero probability in the oracle");
    table.rows[h] = {joint[h][0] / total, joint[h][1] / total};
  }
  return table;
}

std::vector<double> block_marginals(const finite_chain_distribution& dist,
                                    int block_length) {
  if (block_length < 1)
    throw std::domain_error("block length must be >= 1");
  const int start = window_start(dist, block_length);
  std::vector<double> marginal(std::size_t{1} << block_length, 0.0);
  const std::uint32_t bmask = low_mask(block_length);
  for (std::size_t c = 0; c < dist.probs.size(); ++c)
    marginal[(static_cast<std::uint32_t>(c) >> start) & bmask] += dist.probs[c];
  return marginal;
}

}  // namespace spinmem
