#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spinmem/analysis.hpp"
#include "spinmem/epsilon_machine.hpp"
#include "spinmem/qmachine.hpp"

namespace spinmem {

// Shortest %.12g rendering; used for every number that leaves the library so
// CSV and JSON carry the same 12 significant digits.
std::string format_g12(double value);

// Round-trips a value through its 12-digit decimal form, so JSON numbers
// compare equal to their CSV counterparts.
double snap_g12(double value);

// Header: N,delta,B,T,c_mu,c_q,advantage,stoch_residual,psd_residual,degenerate
// One row per record in the order given; degenerate is 0/1, NaN prints "nan".
std::string records_to_csv(const std::vector<sweep_record>& records);

nlohmann::json records_to_json(const std::vector<sweep_record>& records);
std::vector<sweep_record> records_from_json(const nlohmann::json& j);

nlohmann::json fit_to_json(const fit_result& fit);

nlohmann::json machine_to_json(const epsilon_machine& machine);
nlohmann::json qmachine_to_json(const gram_matrix& gram, int range);

}  // namespace spinmem
