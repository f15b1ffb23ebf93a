#include "spinmem/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "spinmem/epsilon_machine.hpp"
#include "spinmem/qmachine.hpp"

namespace spinmem {

sweep_grid default_grid() {
  sweep_grid grid;
  grid.ranges = {1, 2, 3, 4, 5, 6};
  grid.deltas = {2.0};
  grid.fields = {0.0};
  grid.temperatures = default_temperature_grid();
  return grid;
}

std::vector<double> default_temperature_grid() {
  std::vector<double> ts;
  for (int t = 1; t <= 50; ++t) ts.push_back(t);
  for (double t : {60.0, 80.0, 100.0, 150.0, 200.0, 300.0}) ts.push_back(t);
  return ts;
}

std::vector<double> fit_temperature_grid() {
  return {50.0, 60.0, 80.0, 100.0, 150.0, 200.0, 300.0};
}

sweep_record evaluate_point(const coupling_spec& spec) {
  validate(spec);
  sweep_record rec;
  rec.range = spec.range;
  rec.delta = spec.delta;
  rec.field = spec.field;
  rec.temperature = spec.temperature;

  const transfer_matrix tm = shift_transfer_matrix(spec);
  const epsilon_machine machine = build_epsilon_machine(tm);
  rec.stoch_residual = machine.stoch_residual;
  rec.degenerate = machine.degenerate;
  rec.c_mu = statistical_complexity(machine.pi);

  const word_distribution_table words = word_distributions(machine);
  const gram_matrix gram = signal_state_gram(machine.pi, words);
  rec.psd_residual = gram.psd_residual;
  rec.c_q = quantum_memory(gram);

  // A degenerate machine has a single distinct signal state; its true
  // quantum memory is exactly zero and any computed c_q is eigensolver
  // noise, so no finite advantage exists.
  const auto ratio = machine.degenerate
                         ? std::optional<double>()
                         : quantum_advantage(rec.c_mu, rec.c_q);
  rec.advantage =
      ratio ? *ratio : std::numeric_limits<double>::quiet_NaN();
  if (!ratio) rec.degenerate = true;
  return rec;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPINMEM_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<sweep_record> sweep(const sweep_grid& grid, int threads) {
  sweep_grid sorted = grid;
  std::sort(sorted.ranges.begin(), sorted.ranges.end());
  std::sort(sorted.deltas.begin(), sorted.deltas.end());
  std::sort(sorted.fields.begin(), sorted.fields.end());
  std::sort(sorted.temperatures.begin(), sorted.temperatures.end());

  std::vector<coupling_spec> specs;
  for (int n : sorted.ranges)
    for (double d : sorted.deltas)
      for (double b : sorted.fields)
        for (double t : sorted.temperatures)
          specs.push_back({n, sorted.j0, d, b, t});
  for (const coupling_spec& spec : specs) validate(spec);

  std::vector<sweep_record> records(specs.size());
  const int workers =
      std::max(1, std::min<int>(resolve_threads(threads),
                                static_cast<int>(specs.size())));
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= specs.size()) return;
      try {
        records[i] = evaluate_point(specs[i]);
      } catch (const std::exception&) {
        sweep_record& rec = records[i];
        rec.range = specs[i].range;
        rec.delta = specs[i].delta;
        rec.field = specs[i].field;
        rec.temperature = specs[i].temperature;
        rec.c_mu = rec.c_q = rec.advantage = rec.stoch_residual =
            rec.psd_residual = std::numeric_limits<double>::quiet_NaN();
        rec.degenerate = false;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return records;
}

double collapse_transform(int range, double c_mu) {
  if (range < 2)
    throw std::domain_error(
        "collapse transform needs range >= 2; at range 1 the classical "
        "memory is pinned at 1 bit and the transform is 0/0");
  return (range - c_mu) / (range - 1);
}

fit_result fit_power_law(const std::vector<std::pair<double, double>>& points,
                         double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo))
    throw std::domain_error("fit window must satisfy 0 < lo < hi");
  std::vector<std::pair<double, double>> logs;
  for (const auto& [x, y] : points)
    if (x >= lo && x <= hi && y > 0.0)
      logs.emplace_back(std::log2(x), std::log2(y));
  if (logs.size() < 5)
    throw std::domain_error("power-law fit needs at least 5 usable points, got " +
                            std::to_string(logs.size()));
  double min_lx = logs.front().first;
  double max_lx = logs.front().first;
  for (const auto& [x, y] : logs) {
    min_lx = std::min(min_lx, x);
    max_lx = std::max(max_lx, x);
  }
  if (!(max_lx > min_lx))
    throw std::domain_error("fit needs at least two distinct abscissas");

  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(logs.size());
  my /= static_cast<double>(logs.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (!(sxx > 0.0))
    throw std::domain_error("fit window contains a single abscissa");

  fit_result fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  const double ss_res = syy - sxy * sxy / sxx;
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.window_lo = lo;
  fit.window_hi = hi;
  fit.n_points = static_cast<int>(logs.size());
  return fit;
}

fit_result collapse_fit(const std::vector<sweep_record>& records, double lo,
                        double hi) {
  std::vector<std::pair<double, double>> points;
  points.reserve(records.size());
  for (const sweep_record& rec : records) {
    points.emplace_back(rec.temperature,
                        collapse_transform(rec.range, rec.c_mu));
  }
  return fit_power_law(points, lo, hi);
}

fit_result quantum_decay_fit(const std::vector<sweep_record>& records,
                             double lo, double hi) {
  std::vector<std::pair<double, double>> points;
  points.reserve(records.size());
  for (const sweep_record& rec : records)
    points.emplace_back(rec.temperature, rec.c_q);
  return fit_power_law(points, lo, hi);
}

std::optional<double> quantum_advantage(double c_mu, double c_q) {
  if (!(c_q > 0.0) || !std::isfinite(c_q) || !std::isfinite(c_mu))
    return std::nullopt;
  return c_mu / c_q;
}

}  // namespace spinmem
