#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "spinmem/model.hpp"

namespace spinmem {

// One evaluated parameter point. advantage is NaN when the point is
// degenerate (zero quantum memory has no finite ratio); the residual fields
// carry the construction diagnostics of the underlying matrices.
struct sweep_record {
  int range = 1;
  double delta = 2.0;
  double field = 0.0;
  double temperature = 1.0;
  double c_mu = 0.0;       // classical memory: Shannon entropy of pi, bits
  double c_q = 0.0;        // quantum memory: von Neumann entropy, bits
  double advantage = 0.0;  // c_mu / c_q
  double stoch_residual = 0.0;
  double psd_residual = 0.0;
  bool degenerate = false;
};

struct sweep_grid {
  std::vector<int> ranges;
  std::vector<double> deltas;
  std::vector<double> fields;
  std::vector<double> temperatures;
  double j0 = 1.0;
};

// The default study grid: integer temperatures 1..50 plus a sparse high tail
// for fits, ranges 1..6, delta 2, zero field.
sweep_grid default_grid();
std::vector<double> default_temperature_grid();
std::vector<double> fit_temperature_grid();  // {50, 60, 80, 100, 150, 200, 300}

// Full pipeline for one parameter point.
sweep_record evaluate_point(const coupling_spec& spec);

// Evaluates the grid product in lexicographic (range, delta, field,
// temperature) order, ascending in each. Points are independent and run on
// `threads` workers (<= 0 resolves to SPINMEM_THREADS or the hardware count);
// results are written by index, so the output order and every value are
// independent of the thread count. A point that throws is reported with NaN
// memories instead of aborting the sweep.
std::vector<sweep_record> sweep(const sweep_grid& grid, int threads = 0);

int resolve_threads(int requested);

// (N - c_mu) / (N - 1): distance of the classical memory from its ceiling,
// normalized so curves for different ranges can share one axis. range 1 has
// no such distance (c_mu is pinned at 1) and is a domain error.
double collapse_transform(int range, double c_mu);

struct fit_result {
  double exponent = 0.0;
  double intercept = 0.0;  // log2(prefactor)
  double r_squared = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  int n_points = 0;
};

// Least squares on (log2 x, log2 y) over lo <= x <= hi; points with y <= 0
// are skipped. Requires at least 5 usable points.
fit_result fit_power_law(const std::vector<std::pair<double, double>>& points,
                         double lo, double hi);

// Pooled fit of the collapse transform against temperature (records must all
// have range >= 2).
fit_result collapse_fit(const std::vector<sweep_record>& records, double lo,
                        double hi);

// Pooled fit of the quantum memory against temperature.
fit_result quantum_decay_fit(const std::vector<sweep_record>& records,
                             double lo, double hi);

// c_mu / c_q; empty when c_q is zero or not finite (degenerate input).
std::optional<double> quantum_advantage(double c_mu, double c_q);

}  // namespace spinmem
