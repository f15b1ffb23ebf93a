#include "spinmem/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spinmem/analysis.hpp"
#include "spinmem/epsilon_machine.hpp"
#include "spinmem/io.hpp"
#include "spinmem/model.hpp"
#include "spinmem/oracle.hpp"
#include "spinmem/qmachine.hpp"
#include "spinmem/transfer.hpp"

namespace spinmem {
namespace {

int parse_int_token(const std::string& token) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(token, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + token + "'");
  }
  if (pos != token.size())
    throw std::invalid_argument("not an integer: '" + token + "'");
  return value;
}

double parse_double_token(const std::string& token) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + token + "'");
  }
  if (pos != token.size())
    throw std::invalid_argument("not a number: '" + token + "'");
  return value;
}

template <typename Emit>
void for_each_token(const std::string& text, Emit&& emit) {
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string token =
        comma == std::string::npos ? text.substr(start)
                                   : text.substr(start, comma - start);
    if (token.empty())
      throw std::invalid_argument("empty entry in list: '" + text + "'");
    emit(token);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
}

// Expands one token that may be a plain value or an inclusive integer range
// "a..b" into the output vector.
template <typename T, typename ParseOne>
void expand_token(const std::string& token, ParseOne&& parse_one,
                  std::vector<T>& out) {
  const std::size_t dots = token.find("..");
  if (dots == std::string::npos) {
    out.push_back(parse_one(token));
    return;
  }
  const int lo = parse_int_token(token.substr(0, dots));
  const int hi = parse_int_token(token.substr(dots + 2));
  if (hi < lo)
    throw std::invalid_argument("descending range: '" + token + "'");
  for (int v = lo; v <= hi; ++v) out.push_back(static_cast<T>(v));
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw std::invalid_argument("failed writing output file: " + path);
}

struct grid_options {
  std::string ranges = "1..6";
  std::string deltas = "2";
  std::string fields = "0";
  std::string temperatures;  // empty = module default grid
  double j0 = 1.0;
  int threads = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--N", ranges, "Interaction ranges (comma list or a..b)");
    cmd->add_option("--T", temperatures,
                    "Temperatures (comma list or a..b; default grid if unset)");
    cmd->add_option("--delta", deltas, "Coupling decay exponents (must be > 1)");
    cmd->add_option("--B", fields, "External field values");
    cmd->add_option("--J0", j0, "Coupling amplitude");
    cmd->add_option("--threads", threads,
                    "Worker threads (0 = SPINMEM_THREADS or hardware count)");
  }

  sweep_grid to_grid(const std::vector<double>& default_temperatures) const {
    sweep_grid grid;
    grid.ranges = parse_int_list(ranges);
    grid.deltas = parse_value_list(deltas);
    grid.fields = parse_value_list(fields);
    grid.temperatures = temperatures.empty() ? default_temperatures
                                             : parse_value_list(temperatures);
    grid.j0 = j0;
    return grid;
  }
};

struct point_options {
  int range = 2;
  double temperature = 1.0;
  double delta = 2.0;
  double field = 0.0;
  double j0 = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--N", range, "Interaction range");
    cmd->add_option("--T", temperature, "Temperature");
    cmd->add_option("--delta", delta, "Coupling decay exponent (must be > 1)");
    cmd->add_option("--B", field, "External field");
    cmd->add_option("--J0", j0, "Coupling amplitude");
  }

  coupling_spec to_spec() const {
    coupling_spec spec;
    spec.range = range;
    spec.j0 = j0;
    spec.delta = delta;
    spec.field = field;
    spec.temperature = temperature;
    validate(spec);
    return spec;
  }
};

int run_sweep(const grid_options& opts, const std::string& format,
              const std::string& output) {
  const std::vector<sweep_record> records =
      sweep(opts.to_grid(default_temperature_grid()), opts.threads);
  if (format == "csv") {
    write_output(output, records_to_csv(records));
  } else {
    write_output(output, records_to_json(records).dump(2) + "\n");
  }
  return 0;
}

int run_fit(const grid_options& opts, const std::string& quantity,
            const std::vector<double>& window, const std::string& output) {
  grid_options effective = opts;
  if (effective.ranges.empty())
    effective.ranges = quantity == "collapse" ? "2..6" : "1";
  const std::vector<sweep_record> records =
      sweep(effective.to_grid(fit_temperature_grid()), effective.threads);
  const fit_result fit = quantity == "collapse"
                             ? collapse_fit(records, window[0], window[1])
                             : quantum_decay_fit(records, window[0], window[1]);
  nlohmann::json report = fit_to_json(fit);
  report["quantity"] = quantity;
  write_output(output, report.dump(2) + "\n");
  return 0;
}

int run_validate(const point_options& opts, int length,
                 const std::string& boundary_name, int history_length,
                 double tolerance, const std::string& output) {
  const coupling_spec spec = opts.to_spec();
  const boundary_kind boundary =
      boundary_name == "ring" ? boundary_kind::ring : boundary_kind::open;
  const int m = history_length > 0 ? history_length : spec.range + 1;

  const epsilon_machine machine =
      build_epsilon_machine(shift_transfer_matrix(spec));
  const finite_chain_distribution dist =
      boltzmann_enumerate(spec, length, boundary);
  const markov_check check =
      verify_markov_order(machine, conditional_at_center(dist, m), tolerance);

  const std::vector<double> marginals = block_marginals(dist, spec.range);
  double stationary_deviation = 0.0;
  for (int s = 0; s < machine.n_states; ++s)
    stationary_deviation = std::max(
        stationary_deviation,
        std::abs(marginals[static_cast<std::size_t>(s)] - machine.pi[s]));

  const bool ok = check.ok && stationary_deviation <= tolerance;
  nlohmann::json report = {
      {"N", spec.range},
      {"delta", snap_g12(spec.delta)},
      {"B", snap_g12(spec.field)},
      {"T", snap_g12(spec.temperature)},
      {"J0", snap_g12(spec.j0)},
      {"L", length},
      {"boundary", boundary_name},
      {"m", m},
      {"tolerance", snap_g12(tolerance)},
      {"conditional_deviation", snap_g12(check.max_deviation)},
      {"stationary_deviation", snap_g12(stationary_deviation)},
      {"markov", {{"ok", check.ok}, {"max_deviation", snap_g12(check.max_deviation)}}},
      {"cryptic_order", verify_cryptic_order(machine)},
      {"ok", ok}};
  write_output(output, report.dump(2) + "\n");
  if (!ok) {
    std::fprintf(stderr,
                 "validation failed: deviation %.3g exceeds tolerance %.3g\n",
                 std::max(check.max_deviation, stationary_deviation),
                 tolerance);
    return 2;
  }
  return 0;
}

int run_dump_machine(const point_options& opts, const std::string& output) {
  const epsilon_machine machine =
      build_epsilon_machine(shift_transfer_matrix(opts.to_spec()));
  nlohmann::json report = machine_to_json(machine);
  report["c_mu"] = snap_g12(statistical_complexity(machine.pi));
  write_output(output, report.dump(2) + "\n");
  return 0;
}

int run_dump_qmachine(const point_options& opts, const std::string& output) {
  const epsilon_machine machine =
      build_epsilon_machine(shift_transfer_matrix(opts.to_spec()));
  const gram_matrix gram =
      signal_state_gram(machine.pi, word_distributions(machine));
  write_output(output, qmachine_to_json(gram, machine.range).dump(2) + "\n");
  return 0;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for_each_token(text, [&out](const std::string& token) {
    expand_token<int>(token, parse_int_token, out);
  });
  return out;
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  for_each_token(text, [&out](const std::string& token) {
    expand_token<double>(token, parse_double_token, out);
  });
  return out;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "Classical and quantum memory of the truncated power-law spin chain"};
  app.require_subcommand(1);

  // --- sweep ---------------------------------------------------------------
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Evaluate classical and quantum memory over a parameter grid");
  grid_options sweep_opts;
  sweep_opts.attach(sweep_cmd);
  std::string sweep_format = "csv";
  std::string sweep_output = "-";
  sweep_cmd->add_option("--format", sweep_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--output", sweep_output,
                        "Output path ('-' for stdout)");

  // --- fit -----------------------------------------------------------------
  CLI::App* fit_cmd = app.add_subcommand(
      "fit", "Least-squares power-law exponent over a temperature window");
  grid_options fit_opts;
  fit_opts.ranges.clear();  // default depends on --quantity
  fit_opts.attach(fit_cmd);
  std::string fit_quantity;
  fit_cmd
      ->add_option("--quantity", fit_quantity,
                   "collapse: (N - c_mu)/(N - 1); cq: quantum memory")
      ->required()
      ->check(CLI::IsMember({"collapse", "cq"}));
  std::vector<double> fit_window = {50.0, 300.0};
  fit_cmd->add_option("--window", fit_window, "Fit window (T_min T_max)")
      ->expected(2);
  std::string fit_output = "-";
  fit_cmd->add_option("--output", fit_output, "Output path ('-' for stdout)");

  // --- validate ------------------------------------------------------------
  CLI::App* validate_cmd = app.add_subcommand(
      "validate",
      "Compare the machine against exact finite-chain enumeration");
  point_options validate_opts;
  validate_opts.temperature = 2.0;
  validate_opts.attach(validate_cmd);
  int validate_length = 16;
  std::string validate_boundary = "ring";
  int validate_history = 0;
  double validate_tolerance = 1e-3;
  std::string validate_output = "-";
  validate_cmd->add_option("--L", validate_length,
                           "Finite chain length (2..20)");
  validate_cmd->add_option("--boundary", validate_boundary, "Chain topology")
      ->check(CLI::IsMember({"ring", "open"}));
  validate_cmd->add_option("--m", validate_history,
                           "History length for conditionals (default N+1)");
  validate_cmd->add_option("--tol", validate_tolerance,
                           "Maximum allowed deviation");
  validate_cmd->add_option("--output", validate_output,
                           "Output path ('-' for stdout)");

  // --- dump-machine / dump-qmachine -----------------------------------------
  CLI::App* dump_machine_cmd = app.add_subcommand(
      "dump-machine", "Emit the predictive machine as JSON");
  point_options dump_machine_opts;
  dump_machine_opts.attach(dump_machine_cmd);
  std::string dump_machine_output = "-";
  dump_machine_cmd->add_option("--output", dump_machine_output,
                               "Output path ('-' for stdout)");

  CLI::App* dump_qmachine_cmd = app.add_subcommand(
      "dump-qmachine", "Emit the signal-state Gram matrix and spectrum as JSON");
  point_options dump_qmachine_opts;
  dump_qmachine_opts.attach(dump_qmachine_cmd);
  std::string dump_qmachine_output = "-";
  dump_qmachine_cmd->add_option("--output", dump_qmachine_output,
                                "Output path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(sweep_cmd))
      return run_sweep(sweep_opts, sweep_format, sweep_output);
    if (app.got_subcommand(fit_cmd))
      return run_fit(fit_opts, fit_quantity, fit_window, fit_output);
    if (app.got_subcommand(validate_cmd))
      return run_validate(validate_opts, validate_length, validate_boundary,
                          validate_history, validate_tolerance,
                          validate_output);
    if (app.got_subcommand(dump_machine_cmd))
      return run_dump_machine(dump_machine_opts, dump_machine_output);
    if (app.got_subcommand(dump_qmachine_cmd))
      return run_dump_qmachine(dump_qmachine_opts, dump_qmachine_output);
  } catch (const numerical_error& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;  // unreachable: require_subcommand(1) guarantees a dispatch
}

}  // namespace spinmem
