#include "spinmem/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace spinmem {
namespace {

nlohmann::json number_or_null(double value) {
  if (std::isnan(value)) return nullptr;
  return snap_g12(value);
}

double nullable_number(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

}  // namespace

std::string format_g12(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

double snap_g12(double value) {
  return std::strtod(format_g12(value).c_str(), nullptr);
}

std::string records_to_csv(const std::vector<sweep_record>& records) {
  std::string out =
      "N,delta,B,T,c_mu,c_q,advantage,stoch_residual,psd_residual,degenerate\n";
  for (const sweep_record& rec : records) {
    out += std::to_string(rec.range);
    out += ',';
    out += format_g12(rec.delta);
    out += ',';
    out += format_g12(rec.field);
    out += ',';
    out += format_g12(rec.temperature);
    out += ',';
    out += format_g12(rec.c_mu);
    out += ',';
    out += format_g12(rec.c_q);
    out += ',';
    out += format_g12(rec.advantage);
    out += ',';
    out += format_g12(rec.stoch_residual);
    out += ',';
    out += format_g12(rec.psd_residual);
    out += ',';
    out += rec.degenerate ? '1' : '0';
    out += '\n';
  }
  return out;
}

nlohmann::json records_to_json(const std::vector<sweep_record>& records) {
  nlohmann::json rows = nlohmann::json::array();
  for (const sweep_record& rec : records) {
    rows.push_back({{"N", rec.range},
                    {"delta", snap_g12(rec.delta)},
                    {"B", snap_g12(rec.field)},
                    {"T", snap_g12(rec.temperature)},
                    {"c_mu", number_or_null(rec.c_mu)},
                    {"c_q", number_or_null(rec.c_q)},
                    {"advantage", number_or_null(rec.advantage)},
                    {"stoch_residual", number_or_null(rec.stoch_residual)},
                    {"psd_residual", number_or_null(rec.psd_residual)},
                    {"degenerate", rec.degenerate}});
  }
  return rows;
}

std::vector<sweep_record> records_from_json(const nlohmann::json& j) {
  std::vector<sweep_record> records;
  records.reserve(j.size());
  for (const nlohmann::json& row : j) {
    sweep_record rec;
    rec.range = row.at("N").get<int>();
    rec.delta = row.at("delta").get<double>();
    rec.field = row.at("B").get<double>();
    rec.temperature = row.at("T").get<double>();
    rec.c_mu = nullable_number(row.at("c_mu"));
    rec.c_q = nullable_number(row.at("c_q"));
    rec.advantage = nullable_number(row.at("advantage"));
    rec.stoch_residual = nullable_number(row.at("stoch_residual"));
    rec.psd_residual = nullable_number(row.at("psd_residual"));
    rec.degenerate = row.at("degenerate").get<bool>();
    records.push_back(rec);
  }
  return records;
}

nlohmann::json fit_to_json(const fit_result& fit) {
  return {{"exponent", snap_g12(fit.exponent)},
          {"intercept", snap_g12(fit.intercept)},
          {"r_squared", snap_g12(fit.r_squared)},
          {"window", {snap_g12(fit.window_lo), snap_g12(fit.window_hi)}},
          {"n_points", fit.n_points}};
}

nlohmann::json machine_to_json(const epsilon_machine& machine) {
  nlohmann::json transitions = nlohmann::json::array();
  for (int s = 0; s < machine.n_states; ++s)
    for (int x = 0; x < 2; ++x)
      transitions.push_back(
          {{"from", s},
           {"symbol", x},
           {"to", static_cast<int>(
                      machine.successor(static_cast<unsigned>(s), x))},
           {"probability", snap_g12(machine.prob(static_cast<unsigned>(s), x))}});
  nlohmann::json stationary = nlohmann::json::array();
  for (int s = 0; s < machine.n_states; ++s)
    stationary.push_back(snap_g12(machine.pi[s]));
  return {{"range", machine.range},
          {"n_states", machine.n_states},
          {"transitions", transitions},
          {"stationary", stationary},
          {"stoch_residual", number_or_null(machine.stoch_residual)},
          {"degenerate", machine.degenerate}};
}

nlohmann::json qmachine_to_json(const gram_matrix& gram, int range) {
  const Eigen::VectorXd spectrum = gram_spectrum(gram);
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < gram.entries.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < gram.entries.cols(); ++k)
      row.push_back(snap_g12(gram.entries(i, k)));
    entries.push_back(row);
  }
  nlohmann::json values = nlohmann::json::array();
  for (Eigen::Index i = 0; i < spectrum.size(); ++i)
    values.push_back(snap_g12(spectrum[i]));
  return {{"range", range},
          {"gram", entries},
          {"spectrum", values},
          {"c_q", snap_g12(quantum_memory(gram))},
          {"psd_residual", number_or_null(gram.psd_residual)}};
}

}  // namespace spinmem
