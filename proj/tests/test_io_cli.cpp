#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "spinmem/cli.hpp"
#include "spinmem/io.hpp"

using namespace spinmem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

sweep_record sample_record() {
  sweep_record rec;
  rec.range = 2;
  rec.delta = 2.0;
  rec.field = 0.0;
  rec.temperature = 10.0;
  rec.c_mu = 1.5;
  rec.c_q = 0.25;
  rec.advantage = 6.0;
  rec.stoch_residual = 0.0;
  rec.psd_residual = 0.0;
  rec.degenerate = false;
  return rec;
}

int call_cli(const std::vector<const char*>& args) {
  std::vector<const char*> argv = {"spinmem"};
  argv.insert(argv.end(), args.begin(), args.end());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct temp_file {
  std::string path;
  explicit temp_file(std::string name) : path(std::move(name)) {}
  ~temp_file() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("twelve-digit formatting is stable and round-trips") {
  CHECK(format_g12(0.5) == "0.5");
  CHECK(format_g12(1.0) == "1");
  CHECK(format_g12(300.0) == "300");
  CHECK(format_g12(1.0 / 3.0) == "0.333333333333");
  CHECK(format_g12(1e-13) == "1e-13");
  CHECK(format_g12(-2.5e6) == "-2500000");
  CHECK(format_g12(kNaN) == "nan");

  // Snapping is idempotent: once rounded to 12 significant digits, a value
  // re-renders to the same string.
  for (const double x : {1.0 / 3.0, 2.0 / 7.0, 1.23456789012345e-7, 0.1}) {
    const double snapped = snap_g12(x);
    CHECK(snap_g12(snapped) == snapped);
    CHECK(format_g12(snapped) == format_g12(x));
  }
}

TEST_CASE("csv output matches the pinned schema byte for byte") {
  const std::string header =
      "N,delta,B,T,c_mu,c_q,advantage,stoch_residual,psd_residual,"
      "degenerate\n";
  CHECK(records_to_csv({}) == header);

  CHECK(records_to_csv({sample_record()}) ==
        header + "2,2,0,10,1.5,0.25,6,0,0,0\n");

  sweep_record degenerate = sample_record();
  degenerate.advantage = kNaN;
  degenerate.degenerate = true;
  CHECK(records_to_csv({degenerate}) ==
        header + "2,2,0,10,1.5,0.25,nan,0,0,1\n");
}

TEST_CASE("json records round-trip at full serialized precision") {
  sweep_record first = sample_record();
  first.c_mu = 1.0 / 3.0;  // not representable in 12 digits
  sweep_record second = sample_record();
  second.range = 3;
  second.advantage = kNaN;
  second.degenerate = true;

  const nlohmann::json j = records_to_json({first, second});
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["N"] == 2);
  CHECK(j[1]["advantage"].is_null());
  CHECK(j[1]["degenerate"] == true);

  const std::vector<sweep_record> back = records_from_json(j);
  REQUIRE(back.size() == 2);
  CHECK(back[0].c_mu == snap_g12(first.c_mu));
  CHECK(back[0].c_q == first.c_q);
  CHECK(std::isnan(back[1].advantage));
  CHECK(back[1].degenerate);

  // A second round trip is the identity: snapping already happened.
  const std::vector<sweep_record> again =
      records_from_json(records_to_json(back));
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(again[i].c_mu == back[i].c_mu);
    CHECK(again[i].temperature == back[i].temperature);
  }
}

TEST_CASE("fit and machine serializations expose the documented fields") {
  fit_result fit;
  fit.exponent = -2.0;
  fit.intercept = 1.5;
  fit.r_squared = 0.9995;
  fit.window_lo = 50.0;
  fit.window_hi = 300.0;
  fit.n_points = 35;
  const nlohmann::json jf = fit_to_json(fit);
  CHECK(jf["exponent"] == -2.0);
  CHECK(jf["intercept"] == 1.5);
  CHECK(jf["r_squared"] == 0.9995);
  CHECK(jf["window"][0] == 50.0);
  CHECK(jf["window"][1] == 300.0);
  CHECK(jf["n_points"] == 35);

  coupling_spec spec;
  spec.range = 1;
  const epsilon_machine machine =
      build_epsilon_machine(shift_transfer_matrix(spec));
  const nlohmann::json jm = machine_to_json(machine);
  CHECK(jm["range"] == 1);
  CHECK(jm["n_states"] == 2);
  REQUIRE(jm["transitions"].size() == 4);
  CHECK(jm["transitions"][0]["from"] == 0);
  CHECK(jm["transitions"][0]["symbol"] == 0);
  CHECK(jm["transitions"][0]["to"] == 0);
  CHECK(jm["transitions"][0]["probability"] ==
        snap_g12(machine.prob(0, 0)));
  CHECK(jm["stationary"].size() == 2);
  CHECK(jm["degenerate"] == false);

  const gram_matrix gram =
      signal_state_gram(machine.pi, word_distributions(machine));
  const nlohmann::json jq = qmachine_to_json(gram, machine.range);
  CHECK(jq["range"] == 1);
  REQUIRE(jq["gram"].size() == 2);
  REQUIRE(jq["spectrum"].size() == 2);
  CHECK(jq["c_q"] == snap_g12(quantum_memory(gram)));
  CHECK(double(jq["spectrum"][0]) > double(jq["spectrum"][1]));
}

TEST_CASE("list arguments accept values, commas, and inclusive ranges") {
  CHECK(parse_int_list("2") == std::vector<int>{2});
  CHECK(parse_int_list("1,3,5") == std::vector<int>({1, 3, 5}));
  CHECK(parse_int_list("1..6") == std::vector<int>({1, 2, 3, 4, 5, 6}));
  CHECK(parse_int_list("4..4") == std::vector<int>{4});
  CHECK(parse_int_list("1..3,7") == std::vector<int>({1, 2, 3, 7}));

  CHECK(parse_value_list("0.5,2") == std::vector<double>({0.5, 2.0}));
  CHECK(parse_value_list("1..3") == std::vector<double>({1.0, 2.0, 3.0}));
  CHECK(parse_value_list("1e-2") == std::vector<double>{0.01});

  CHECK_THROWS_AS(parse_int_list(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_int_list("a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_int_list("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_int_list("5..3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_int_list("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_int_list("1,"), std::invalid_argument);
  CHECK_THROWS_AS(parse_value_list("1.5..3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_value_list("x"), std::invalid_argument);
}

TEST_CASE("command-line tool reports outcomes through exit codes") {
  // Success: a small sweep written to a file.
  {
    const temp_file out("io_cli_sweep.csv");
    CHECK(call_cli({"sweep", "--N", "1", "--T", "1,2", "--output",
                    out.path.c_str()}) == 0);
    const std::string text = slurp(out.path);
    CHECK(text.rfind("N,delta,B,T,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);  // header + 2 rows
  }

  // Usage errors: bad physics parameters, unknown flags, missing subcommand.
  CHECK(call_cli({"sweep", "--N", "1", "--T", "1", "--delta", "0.5"}) == 1);
  CHECK(call_cli({"sweep", "--N", "0", "--T", "1"}) == 1);
  CHECK(call_cli({"sweep", "--N", "1", "--T", "-3"}) == 1);
  CHECK(call_cli({"sweep", "--bogus"}) == 1);
  CHECK(call_cli({"no-such-command"}) == 1);
  CHECK(call_cli({}) == 1);
  CHECK(call_cli({"fit"}) == 1);  // --quantity is required
  CHECK(call_cli({"fit", "--quantity", "nonsense"}) == 1);
  CHECK(call_cli({"sweep", "--N", "1", "--T", "1", "--output",
                  "/nonexistent_dir/x.csv"}) == 1);
  // A fit window with too few grid points inside it is a usage error.
  CHECK(call_cli({"fit", "--quantity", "cq", "--T", "100,200"}) == 1);

  // Numerical failure: exact enumeration at a point where the finite chain
  // cannot reach the requested tolerance.
  {
    const temp_file out("io_cli_validate.json");
    CHECK(call_cli({"validate", "--N", "1", "--T", "1", "--L", "16",
                    "--output", out.path.c_str()}) == 2);
    const nlohmann::json report = nlohmann::json::parse(slurp(out.path));
    CHECK(report["ok"] == false);
    CHECK(double(report["conditional_deviation"]) > 1e-3);
  }
  {
    const temp_file out("io_cli_validate_ok.json");
    CHECK(call_cli({"validate", "--N", "1", "--T", "2", "--L", "16",
                    "--output", out.path.c_str()}) == 0);
    const nlohmann::json report = nlohmann::json::parse(slurp(out.path));
    CHECK(report["ok"] == true);
    CHECK(report["markov"]["ok"] == true);
    CHECK(report["cryptic_order"] == 1);
    CHECK(report["m"] == 2);  // defaults to range + 1
  }

  // Machine dumps parse back as JSON with the expected content.
  {
    const temp_file out("io_cli_machine.json");
    CHECK(call_cli({"dump-machine", "--N", "1", "--T", "1", "--output",
                    out.path.c_str()}) == 0);
    const nlohmann::json machine = nlohmann::json::parse(slurp(out.path));
    CHECK(machine["c_mu"] == 1.0);
    CHECK(machine["transitions"].size() == 4);
  }
  {
    const temp_file out("io_cli_qmachine.json");
    CHECK(call_cli({"dump-qmachine", "--N", "1", "--T", "20", "--output",
                    out.path.c_str()}) == 0);
    const nlohmann::json gram = nlohmann::json::parse(slurp(out.path));
    CHECK(gram["spectrum"].size() == 2);
    CHECK(double(gram["c_q"]) == doctest::Approx(0.00754689022609224));
  }

  // Fit subcommand writes the documented JSON object.
  {
    const temp_file out("io_cli_fit.json");
    CHECK(call_cli({"fit", "--quantity", "cq", "--output",
                    out.path.c_str()}) == 0);
    const nlohmann::json fit = nlohmann::json::parse(slurp(out.path));
    CHECK(fit["quantity"] == "cq");
    CHECK(double(fit["exponent"]) ==
          doctest::Approx(-1.83186552013763).epsilon(1e-9));
    CHECK(fit["n_points"] == 7);
    CHECK(fit["window"][0] == 50.0);
  }
}

}  // TEST_SUITE
