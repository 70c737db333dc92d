#include "afmtj/runspec.hpp"

#include <filesystem>

namespace afmtj {

namespace {

std::string resolve(const std::string& config_path, const std::string& ref) {
    const std::filesystem::path p(ref);
    if (p.is_absolute()) return ref;
    return (std::filesystem::path(config_path).parent_path() / p).string();
}

std::string get_ref(const Json& j, const std::string& key, const std::string& context) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw ValidationError(context + ": missing file reference '" + key + "'");
    return j.at(key).get<std::string>();
}

}  // namespace

WriteSimSpec load_write_sim_spec(const std::string& path) {
    const Json j = parse_json_file(path);
    require_keys(j, {"device", "stt_scale", "pulse", "solver", "criterion"}, path);
    WriteSimSpec spec;
    spec.device = load_device(resolve(path, get_ref(j, "device", path)));
    if (j.contains("stt_scale")) spec.stt_scale = j.at("stt_scale").get<double>();
    if (j.contains("pulse")) spec.pulse = pulse_from_json(j.at("pulse"), path + ".pulse");
    if (j.contains("solver")) spec.solver = solver_from_json(j.at("solver"), path + ".solver");
    if (j.contains("criterion"))
        spec.criterion = criterion_from_json(j.at("criterion"), path + ".criterion");
    return spec;
}

SweepRunSpec load_sweep_spec(const std::string& path) {
    const Json j = parse_json_file(path);
    require_keys(j, {"devices", "voltages_V", "solver", "pulse", "criterion", "jobs", "cards"},
                 path);
    SweepRunSpec spec;
    if (!j.contains("devices") || !j.at("devices").is_array())
        throw ValidationError(path + ": 'devices' must be an array");
    for (const auto& dj : j.at("devices")) {
        require_keys(dj, {"label", "device", "stt_scale"}, path + ".devices[]");
        SweepDevice d;
        d.params = load_device(resolve(path, get_ref(dj, "device", path + ".devices[]")));
        d.label = dj.contains("label") ? dj.at("label").get<std::string>()
                                       : to_string(d.params.kind);
        if (dj.contains("stt_scale")) d.stt_scale = dj.at("stt_scale").get<double>();
        spec.config.devices.push_back(d);
    }
    if (!j.contains("voltages_V") || !j.at("voltages_V").is_array())
        throw ValidationError(path + ": 'voltages_V' must be an array");
    for (const auto& v : j.at("voltages_V")) spec.config.voltages.push_back(v.get<double>());
    if (j.contains("solver"))
        spec.config.solver = solver_from_json(j.at("solver"), path + ".solver");
    if (j.contains("pulse")) spec.config.pulse = pulse_from_json(j.at("pulse"), path + ".pulse");
    if (j.contains("criterion"))
        spec.config.criterion = criterion_from_json(j.at("criterion"), path + ".criterion");
    if (j.contains("jobs")) spec.config.jobs = j.at("jobs").get<int>();
    if (j.contains("cards")) {
        const Json& cj = j.at("cards");
        require_keys(cj, {"voltage_V", "sense"}, path + ".cards");
        if (!cj.contains("voltage_V") || !cj.contains("sense"))
            throw ValidationError(path + ".cards: requires 'voltage_V' and 'sense'");
        spec.card_voltage = cj.at("voltage_V").get<double>();
        for (const auto& sj : cj.at("sense")) {
            require_keys(sj, {"label", "t_sense_ps", "e_sense_fJ"}, path + ".cards.sense[]");
            CardSense s;
            s.label = sj.at("label").get<std::string>();
            s.t_sense = sj.at("t_sense_ps").get<double>() * units::ps;
            s.e_sense = sj.at("e_sense_fJ").get<double>() * units::fJ;
            spec.card_sense.push_back(s);
        }
    }
    spec.config.validate();
    return spec;
}

CalibrationRunSpec load_calibration_spec(const std::string& path) {
    const Json j = parse_json_file(path);
    require_keys(j,
                 {"device", "start_stt_scale", "free_params", "targets", "solver", "criterion",
                  "max_evals", "tolerance"},
                 path);
    CalibrationRunSpec spec;
    spec.base = load_device(resolve(path, get_ref(j, "device", path)));
    if (j.contains("start_stt_scale"))
        spec.start_stt_scale = j.at("start_stt_scale").get<double>();
    if (!j.contains("free_params") || !j.at("free_params").is_array())
        throw ValidationError(path + ": 'free_params' must be an array");
    for (const auto& f : j.at("free_params"))
        spec.problem.free_params.push_back(f.get<std::string>());
    if (!j.contains("targets") || !j.at("targets").is_array())
        throw ValidationError(path + ": 'targets' must be an array");
    for (const auto& tj : j.at("targets")) {
        require_keys(tj, {"voltage_V", "observable", "value_ps", "value_fJ", "weight"},
                     path + ".targets[]");
        CalibrationTarget t;
        t.voltage = tj.at("voltage_V").get<double>();
        const std::string obs = tj.at("observable").get<std::string>();
        if (obs == "latency") {
            t.observable = Observable::Latency;
            if (!tj.contains("value_ps"))
                throw ValidationError(path + ".targets[]: latency target needs 'value_ps'");
            t.value = tj.at("value_ps").get<double>() * units::ps;
        } else if (obs == "energy") {
            t.observable = Observable::Energy;
            if (!tj.contains("value_fJ"))
                throw ValidationError(path + ".targets[]: energy target needs 'value_fJ'");
            t.value = tj.at("value_fJ").get<double>() * units::fJ;
        } else {
            throw ValidationError(path + ".targets[].observable: must be 'latency' or 'energy'");
        }
        if (tj.contains("weight")) t.weight = tj.at("weight").get<double>();
        spec.problem.targets.push_back(t);
    }
    if (j.contains("solver"))
        spec.problem.solver = solver_from_json(j.at("solver"), path + ".solver");
    if (j.contains("criterion"))
        spec.problem.criterion = criterion_from_json(j.at("criterion"), path + ".criterion");
    if (j.contains("max_evals")) spec.problem.max_evals = j.at("max_evals").get<std::size_t>();
    if (j.contains("tolerance")) spec.problem.tolerance = j.at("tolerance").get<double>();
    spec.problem.validate();
    return spec;
}

ImcRunSpec load_imc_spec(const std::string& path) {
    const Json j = parse_json_file(path);
    require_keys(j, {"cards", "profiles", "hierarchy", "cpu"}, path);
    ImcRunSpec spec;
    if (!j.contains("cards") || !j.at("cards").is_array())
        throw ValidationError(path + ": 'cards' must be an array of file references");
    for (const auto& c : j.at("cards"))
        spec.cards.push_back(load_card(resolve(path, c.get<std::string>())));
    if (!j.contains("profiles") || !j.at("profiles").is_array())
        throw ValidationError(path + ": 'profiles' must be an array of file references");
    for (const auto& p : j.at("profiles"))
        spec.profiles.push_back(load_profile(resolve(path, p.get<std::string>())));
    const std::string hier_path = resolve(path, get_ref(j, "hierarchy", path));
    spec.hierarchy = hierarchy_from_json(parse_json_file(hier_path), hier_path);
    if (!j.contains("cpu")) throw ValidationError(path + ": missing key 'cpu'");
    spec.cpu = cpu_from_json(j.at("cpu"), path + ".cpu");
    return spec;
}

}  // namespace afmtj
