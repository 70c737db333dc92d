#pragma once

#include <string>
#include <vector>

#include "nlohmann/json.hpp"

#include "afmtj/bitline.hpp"
#include "afmtj/imc.hpp"
#include "afmtj/sweep.hpp"

namespace afmtj {

using Json = nlohmann::ordered_json;

// Fail-closed: any key outside `allowed` is rejected with its path.
void require_keys(const Json& j, const std::vector<std::string>& allowed,
                  const std::string& context);

Json parse_json_file(const std::string& path);

// Device parameter files: keys exactly {kind, lx_nm, ly_nm, lz_nm, Ms_emu_cm3,
// alpha, P0, tmr, r_p_ohm, omega_E_rad_s, Hk_A_m, Nz, temperature_K}.
DeviceParams device_from_json(const Json& j, const std::string& context = "device");
DeviceParams load_device(const std::string& path);
Json device_to_json(const DeviceParams& p);

SolverOptions solver_from_json(const Json& j, const std::string& context = "solver");
PulseSpec pulse_from_json(const Json& j, const std::string& context = "pulse");
SwitchCriterion criterion_from_json(const Json& j, const std::string& context = "criterion");

WorkloadProfile profile_from_json(const Json& j, const std::string& context = "profile");
WorkloadProfile load_profile(const std::string& path);
Json profile_to_json(const WorkloadProfile& p);

DeviceCard card_from_json(const Json& j, const std::string& context = "card");
DeviceCard load_card(const std::string& path);
Json card_to_json(const DeviceCard& c);

HierarchyConfig hierarchy_from_json(const Json& j, const std::string& context = "hierarchy");
CpuBaseline cpu_from_json(const Json& j, const std::string& context = "cpu");

struct LogicConfig {
    ResistanceModel rmodel;
    double v_read = 0.1;
    double t_sense = 200e-12;
};
LogicConfig logic_from_json(const Json& j, const std::string& context = "logic");

}  // namespace afmtj
