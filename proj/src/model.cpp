#include "spinmem/model.hpp"

#include <cmath>
#include <string>

namespace spinmem {

void validate(const coupling_spec& spec) {
  if (spec.range < 1)
    throw std::invalid_argument("interaction range must be at least 1");
  if (spec.range > 20)
    throw std::invalid_argument("interaction range above 20 is not supported");
  if (!std::isfinite(spec.j0) || spec.j0 < 0.0)
    throw std::invalid_argument("coupling strength J0 must be finite and >= 0");
  if (!std::isfinite(spec.delta) || spec.delta <= 1.0)
    throw std::invalid_argument(
        "power-law exponent delta must exceed 1; at delta <= 1 the coupling "
        "sum is nonextensive and the chain has no thermodynamic limit");
  if (!std::isfinite(spec.field))
    throw std::invalid_argument("field B must be finite");
  if (!std::isfinite(spec.temperature) || spec.temperature <= 0.0)
    throw std::invalid_argument("temperature must be finite and > 0");
}

double coupling(const coupling_spec& spec, int distance) {
  if (distance < 1 || distance > spec.range)
    throw std::domain_error("coupling distance " + std::to_string(distance) +
                            " outside [1, " + std::to_string(spec.range) + "]");
  return spec.j0 / std::pow(static_cast<double>(distance), spec.delta);
}

int block_states(int range) {
  if (range < 1 || range > 20) throw std::domain_error("block length outside [1, 20]");
  return 1 << range;
}

int spin_at(unsigned block, int position) {
  return (block >> position) & 1u ? +1 : -1;
}

unsigned encode_spins(const std::vector<int>& spins) {
  unsigned block = 0;
  for (std::size_t p = 0; p < spins.size(); ++p) {
    if (spins[p] != 1 && spins[p] != -1)
      throw std::domain_error("spins must be +1 or -1");
    if (spins[p] == 1) block |= 1u << p;
  }
  return block;
}

std::vector<int> decode_spins(unsigned block, int range) {
  std::vector<int> spins(static_cast<std::size_t>(range));
  for (int p = 0; p < range; ++p) spins[static_cast<std::size_t>(p)] = spin_at(block, p);
  return spins;
}

unsigned flip_all(unsigned block, int range) {
  return ~block & ((1u << range) - 1u);
}

double block_internal_energy(const coupling_spec& spec, unsigned block) {
  const int n = spec.range;
  double e = 0.0;
  for (int p = 0; p < n; ++p) e -= spec.field * spin_at(block, p);
  for (int d = 1; d < n; ++d) {
    const double j = coupling(spec, d);
    for (int p = 0; p + d < n; ++p)
      e -= j * spin_at(block, p) * spin_at(block, p + d);
  }
  return e;
}

double block_interaction_energy(const coupling_spec& spec, unsigned left,
                                unsigned right) {
  const int n = spec.range;
  double e = 0.0;
  // Pair (left position n-k, right position d-k) sits at distance d; for each
  // d the k sum enumerates exactly the d crossing pairs within range.
  for (int d = 1; d <= n; ++d) {
    const double j = coupling(spec, d);
    for (int k = 1; k <= d; ++k)
      e -= j * spin_at(left, n - k) * spin_at(right, d - k);
  }
  return e;
}

double added_spin_energy(const coupling_spec& spec, unsigned state,
                         int new_spin) {
  if (new_spin != 1 && new_spin != -1)
    throw std::domain_error("spins must be +1 or -1");
  double h = spec.field;
  for (int k = 1; k <= spec.range; ++k)
    h += coupling(spec, k) * spin_at(state, spec.range - k);
  return -new_spin * h;
}

double segment_energy(const coupling_spec& spec, const std::vector<int>& spins) {
  const int len = static_cast<int>(spins.size());
  double e = 0.0;
  for (int p = 0; p < len; ++p) {
    if (spins[static_cast<std::size_t>(p)] != 1 && spins[static_cast<std::size_t>(p)] != -1)
      throw std::domain_error("spins must be +1 or -1");
    e -= spec.field * spins[static_cast<std::size_t>(p)];
  }
  for (int d = 1; d <= spec.range; ++d) {
    if (d >= len) break;
    const double j = coupling(spec, d);
    for (int p = 0; p + d < len; ++p)
      e -= j * spins[static_cast<std::size_t>(p)] * spins[static_cast<std::size_t>(p + d)];
  }
  return e;
}

}  // namespace spinmem
