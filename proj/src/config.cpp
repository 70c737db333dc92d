#include "afmtj/config.hpp"

#include <algorithm>

#include "afmtj/io_util.hpp"

namespace afmtj {

void require_keys(const Json& j, const std::vector<std::string>& allowed,
                  const std::string& context) {
    if (!j.is_object()) throw ValidationError(context + ": expected a JSON object");
    for (const auto& item : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw ValidationError(context + ": unknown key '" + item.key() + "'");
    }
}

Json parse_json_file(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
}

namespace {

double get_number(const Json& j, const std::string& key, const std::string& context) {
    if (!j.contains(key)) throw ValidationError(context + ": missing key '" + key + "'");
    if (!j.at(key).is_number()) throw ValidationError(context + "." + key + ": expected a number");
    return j.at(key).get<double>();
}

double get_number_or(const Json& j, const std::string& key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

std::string get_string(const Json& j, const std::string& key, const std::string& context) {
    if (!j.contains(key)) throw ValidationError(context + ": missing key '" + key + "'");
    if (!j.at(key).is_string()) throw ValidationError(context + "." + key + ": expected a string");
    return j.at(key).get<std::string>();
}

}  // namespace

DeviceParams device_from_json(const Json& j, const std::string& context) {
    require_keys(j,
                 {"kind", "lx_nm", "ly_nm", "lz_nm", "Ms_emu_cm3", "alpha", "P0", "tmr",
                  "r_p_ohm", "omega_E_rad_s", "Hk_A_m", "Nz", "temperature_K"},
                 context);
    DeviceParams p;
    const std::string kind = get_string(j, "kind", context);
    if (kind == "AFMTJ")
        p.kind = DeviceKind::AFMTJ;
    else if (kind == "MTJ")
        p.kind = DeviceKind::MTJ;
    else
        throw ValidationError(context + ".kind: must be 'AFMTJ' or 'MTJ'");

    p.geometry.lx = get_number(j, "lx_nm", context) * units::nm;
    p.geometry.ly = get_number(j, "ly_nm", context) * units::nm;
    p.geometry.lz = get_number(j, "lz_nm", context) * units::nm;
    p.material.Ms = get_number(j, "Ms_emu_cm3", context) * units::emu_cm3;
    p.material.alpha = get_number(j, "alpha", context);
    p.material.P0 = get_number(j, "P0", context);
    p.material.Hk = get_number(j, "Hk_A_m", context);
    p.material.Nz = get_number(j, "Nz", context);
    p.resistance.tmr = get_number(j, "tmr", context);
    p.resistance.r_p = get_number(j, "r_p_ohm", context);
    p.exchange.omega_E = get_number(j, "omega_E_rad_s", context);
    p.temperature = get_number(j, "temperature_K", context);
    p.validate();
    return p;
}

DeviceParams load_device(const std::string& path) {
    return device_from_json(parse_json_file(path), path);
}

Json device_to_json(const DeviceParams& p) {
    Json j;
    j["kind"] = to_string(p.kind);
    j["lx_nm"] = p.geometry.lx / units::nm;
    j["ly_nm"] = p.geometry.ly / units::nm;
    j["lz_nm"] = p.geometry.lz / units::nm;
    j["Ms_emu_cm3"] = p.material.Ms / units::emu_cm3;
    j["alpha"] = p.material.alpha;
    j["P0"] = p.material.P0;
    j["tmr"] = p.resistance.tmr;
    j["r_p_ohm"] = p.resistance.r_p;
    j["omega_E_rad_s"] = p.exchange.omega_E;
    j["Hk_A_m"] = p.material.Hk;
    j["Nz"] = p.material.Nz;
    j["temperature_K"] = p.temperature;
    return j;
}

SolverOptions solver_from_json(const Json& j, const std::string& context) {
    require_keys(j,
                 {"dt_base_ps", "dt_min_ps", "dt_max_ps", "rel_tol", "t_end_ns",
                  "sample_interval_ps", "temperature_K", "rng_seed"},
                 context);
    SolverOptions o;
    o.dt_base = get_number_or(j, "dt_base_ps", 0.1) * units::ps;
    o.dt_min = get_number_or(j, "dt_min_ps", 0.01) * units::ps;
    o.dt_max = get_number_or(j, "dt_max_ps", 1.0) * units::ps;
    o.rel_tol = get_number_or(j, "rel_tol", 1e-7);
    o.t_end = get_number_or(j, "t_end_ns", 0.0) * units::ns;
    o.sample_interval = get_number_or(j, "sample_interval_ps", 1.0) * units::ps;
    o.temperature = get_number_or(j, "temperature_K", 0.0);
    if (j.contains("rng_seed")) o.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    return o;
}

PulseSpec pulse_from_json(const Json& j, const std::string& context) {
    require_keys(j, {"amplitude_V", "width_ns", "polarity"}, context);
    PulseSpec p;
    p.amplitude = get_number_or(j, "amplitude_V", 1.0);
    p.width = get_number_or(j, "width_ns", 5.0) * units::ns;
    p.polarity = static_cast<int>(get_number_or(j, "polarity", 1));
    p.validate();
    return p;
}

SwitchCriterion criterion_from_json(const Json& j, const std::string& context) {
    require_keys(j, {"threshold", "guard"}, context);
    SwitchCriterion c;
    c.threshold = get_number_or(j, "threshold", 0.9);
    c.guard = get_number_or(j, "guard", 0.5);
    c.validate();
    return c;
}

WorkloadProfile profile_from_json(const Json& j, const std::string& context) {
    require_keys(j,
                 {"name", "cpu_cycles", "cpu_energy_J", "bulk_ops", "bits_per_op",
                  "residual_cpu_cycles", "level"},
                 context);
    WorkloadProfile p;
    p.name = get_string(j, "name", context);
    p.cpu_cycles = get_number(j, "cpu_cycles", context);
    p.cpu_energy = get_number(j, "cpu_energy_J", context);
    if (!j.contains("bulk_ops")) throw ValidationError(context + ": missing key 'bulk_ops'");
    const Json& ops = j.at("bulk_ops");
    require_keys(ops, {"xor", "nand", "write", "read"}, context + ".bulk_ops");
    p.bulk_ops.xor_ops = get_number_or(ops, "xor", 0.0);
    p.bulk_ops.nand_ops = get_number_or(ops, "nand", 0.0);
    p.bulk_ops.write_ops = get_number_or(ops, "write", 0.0);
    p.bulk_ops.read_ops = get_number_or(ops, "read", 0.0);
    p.bits_per_op = get_number(j, "bits_per_op", context);
    p.residual_cpu_cycles = get_number(j, "residual_cpu_cycles", context);
    p.level = get_string(j, "level", context);
    p.validate();
    return p;
}

WorkloadProfile load_profile(const std::string& path) {
    return profile_from_json(parse_json_file(path), path);
}

Json profile_to_json(const WorkloadProfile& p) {
    Json j;
    j["name"] = p.name;
    j["cpu_cycles"] = p.cpu_cycles;
    j["cpu_energy_J"] = p.cpu_energy;
    j["bulk_ops"] = Json{{"xor", p.bulk_ops.xor_ops},
                         {"nand", p.bulk_ops.nand_ops},
                         {"write", p.bulk_ops.write_ops},
                         {"read", p.bulk_ops.read_ops}};
    j["bits_per_op"] = p.bits_per_op;
    j["residual_cpu_cycles"] = p.residual_cpu_cycles;
    j["level"] = p.level;
    return j;
}

DeviceCard card_from_json(const Json& j, const std::string& context) {
    require_keys(j, {"label", "t_write_ps", "e_write_fJ", "t_sense_ps", "e_sense_fJ", "v_nom_V"},
                 context);
    DeviceCard c;
    c.label = get_string(j, "label", context);
    c.t_write = get_number(j, "t_write_ps", context) * units::ps;
    c.e_write = get_number(j, "e_write_fJ", context) * units::fJ;
    c.t_sense = get_number(j, "t_sense_ps", context) * units::ps;
    c.e_sense = get_number(j, "e_sense_fJ", context) * units::fJ;
    c.v_nom = get_number_or(j, "v_nom_V", 1.0);
    c.validate();
    return c;
}

DeviceCard load_card(const std::string& path) {
    return card_from_json(parse_json_file(path), path);
}

Json card_to_json(const DeviceCard& c) {
    Json j;
    j["label"] = c.label;
    j["t_write_ps"] = c.t_write / units::ps;
    j["e_write_fJ"] = c.e_write / units::fJ;
    j["t_sense_ps"] = c.t_sense / units::ps;
    j["e_sense_fJ"] = c.e_sense / units::fJ;
    j["v_nom_V"] = c.v_nom;
    return j;
}

HierarchyConfig hierarchy_from_json(const Json& j, const std::string& context) {
    require_keys(j, {"levels", "controller_time_ps", "controller_energy_fJ"}, context);
    HierarchyConfig h;
    if (!j.contains("levels")) throw ValidationError(context + ": missing key 'levels'");
    for (const auto& lj : j.at("levels")) {
        require_keys(lj, {"name", "capacity_bytes", "parallel_width"}, context + ".levels[]");
        HierarchyLevel l;
        l.name = get_string(lj, "name", context + ".levels[]");
        l.capacity_bytes = get_number(lj, "capacity_bytes", context + ".levels[]");
        l.parallel_width = get_number(lj, "parallel_width", context + ".levels[]");
        h.levels.push_back(l);
    }
    h.controller_time = get_number_or(j, "controller_time_ps", 0.0) * units::ps;
    h.controller_energy = get_number_or(j, "controller_energy_fJ", 0.0) * units::fJ;
    h.validate();
    return h;
}

CpuBaseline cpu_from_json(const Json& j, const std::string& context) {
    require_keys(j, {"f_cpu_GHz", "avg_power_W"}, context);
    CpuBaseline b;
    b.f_cpu = get_number_or(j, "f_cpu_GHz", 2.0) * 1e9;
    b.avg_power = get_number_or(j, "avg_power_W", 5.0);
    b.validate();
    return b;
}

LogicConfig logic_from_json(const Json& j, const std::string& context) {
    require_keys(j, {"r_p_ohm", "tmr", "v_read_V", "t_sense_ps"}, context);
    LogicConfig c;
    c.rmodel.r_p = get_number(j, "r_p_ohm", context);
    c.rmodel.tmr = get_number(j, "tmr", context);
    c.rmodel.validate();
    c.v_read = get_number_or(j, "v_read_V", 0.1);
    c.t_sense = get_number_or(j, "t_sense_ps", 200.0) * units::ps;
    return c;
}

}  // namespace afmtj
