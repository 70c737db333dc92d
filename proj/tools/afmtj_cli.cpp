#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "afmtj/acceptance.hpp"
#include "afmtj/bitline.hpp"
#include "afmtj/io_util.hpp"
#include "afmtj/runspec.hpp"
#include "afmtj/transient.hpp"

namespace {

using namespace afmtj;

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
    std::string config;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::string format = "csv";
};

std::string out_path(const GlobalOpts& g, const std::string& name) {
    return (std::filesystem::path(g.out) / name).string();
}

int effective_jobs(const GlobalOpts& g, int config_jobs) {
    if (g.jobs) return *g.jobs;
    if (const char* env = std::getenv("AFMTJ_LAB_JOBS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return config_jobs;
}

// Timestamps are confined to this sidecar; all data files are deterministic.
void write_manifest(const GlobalOpts& g, const std::string& subcommand) {
    Json m;
    m["tool"] = "afmtj";
    m["version"] = kVersion;
    m["subcommand"] = subcommand;
    m["config"] = g.config;
    m["seed"] = g.seed ? Json(*g.seed) : Json(nullptr);
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016zx",
                  std::hash<std::string>{}(g.config.empty() ? "" : read_file(g.config)));
    m["config_hash"] = hash;
    const auto now = std::chrono::system_clock::now();
    m["timestamp_unix_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
    atomic_write_file(out_path(g, "run-manifest.json"), m.dump(2) + "\n");
}

int cmd_write_sim(const GlobalOpts& g) {
    WriteSimSpec spec = load_write_sim_spec(g.config);
    if (g.seed) spec.solver.rng_seed = *g.seed;
    const TransientResult res =
        run_write(spec.device, spec.pulse, spec.solver, spec.criterion, spec.stt_scale);

    export_trajectory_csv(res.trajectory, spec.device.kind, out_path(g, "trajectory.csv"));
    Json summary;
    summary["device"] = to_string(spec.device.kind);
    summary["amplitude_V"] = spec.pulse.amplitude * spec.pulse.polarity;
    summary["switched"] = res.switched;
    summary["latency_ps"] = res.latency ? Json(*res.latency / units::ps) : Json(nullptr);
    summary["energy_fJ"] = res.energy ? Json(*res.energy / units::fJ) : Json(nullptr);
    summary["final_resistance_ohm"] = resistance(res.final_state, spec.device);
    summary["accepted_steps"] = res.trajectory.accepted_steps;
    summary["rejected_steps"] = res.trajectory.rejected_steps;
    summary["max_norm_drift"] = res.trajectory.max_norm_drift;
    atomic_write_file(out_path(g, "write_summary.json"), summary.dump(2) + "\n");
    write_manifest(g, "write-sim");
    std::printf("write-sim: switched=%d latency_ps=%s\n", int(res.switched),
                res.latency ? format_double(*res.latency / units::ps).c_str() : "-");
    return 0;
}

int cmd_sweep(const GlobalOpts& g) {
    SweepRunSpec spec = load_sweep_spec(g.config);
    if (g.seed) spec.config.solver.rng_seed = *g.seed;
    spec.config.jobs = effective_jobs(g, spec.config.jobs);
    const SweepTable table = voltage_sweep(spec.config);

    if (g.format == "json")
        emit_results_json(table, out_path(g, "sweep.json"));
    else
        emit_results_csv(table, out_path(g, "sweep.csv"));

    // Plot data: one voltage column plus one column per device label.
    for (const bool energy : {false, true}) {
        std::ostringstream os;
        os << "voltage_V";
        for (const auto& d : spec.config.devices)
            os << ',' << d.label << (energy ? "_fJ" : "_ps");
        os << '\n';
        for (double v : spec.config.voltages) {
            os << format_double(v);
            for (const auto& d : spec.config.devices) {
                os << ',';
                const auto row = table.find(d.label, v);
                if (row && row->switched)
                    os << format_double(energy ? *row->energy_fJ : *row->latency_ps);
            }
            os << '\n';
        }
        atomic_write_file(out_path(g, energy ? "fig3_energy.csv" : "fig3_latency.csv"),
                          os.str());
    }

    if (spec.card_voltage) {
        for (const auto& sense : spec.card_sense) {
            const auto row = table.find(sense.label, *spec.card_voltage);
            if (!row || !row->switched)
                throw ValidationError("card emission: no switching row for " + sense.label +
                                      " at the card voltage");
            DeviceCard card;
            card.label = sense.label;
            card.t_write = *row->latency_ps * units::ps;
            card.e_write = *row->energy_fJ * units::fJ;
            card.t_sense = sense.t_sense;
            card.e_sense = sense.e_sense;
            card.v_nom = *spec.card_voltage;
            card.validate();
            std::string name = sense.label;
            std::transform(name.begin(), name.end(), name.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            atomic_write_file(out_path(g, "card_" + name + ".json"),
                              card_to_json(card).dump(2) + "\n");
        }
    }
    write_manifest(g, "sweep");
    std::printf("sweep: %zu rows\n", table.rows.size());
    return 0;
}

int cmd_calibrate(const GlobalOpts& g) {
    CalibrationRunSpec spec = load_calibration_spec(g.config);
    if (g.seed) spec.problem.solver.rng_seed = *g.seed;
    const CalibrationResult res = calibrate(spec.problem, spec.base, spec.start_stt_scale);

    Json report;
    report["converged"] = res.converged;
    report["objective"] = res.objective;
    report["evals"] = res.evals;
    report["stt_scale"] = res.stt_scale;
    Json fitted;
    for (const auto& [k, v] : res.fitted) fitted[k] = v;
    report["fitted"] = fitted;
    Json residuals = Json::array();
    for (double r : res.residuals) residuals.push_back(r);
    report["residuals"] = residuals;
    report["device"] = device_to_json(res.params);
    atomic_write_file(out_path(g, "calibration_report.json"), report.dump(2) + "\n");
    write_manifest(g, "calibrate");
    std::printf("calibrate: converged=%d objective=%s\n", int(res.converged),
                format_double(res.objective).c_str());
    return res.converged ? 0 : 3;
}

int cmd_logic(const GlobalOpts& g) {
    const LogicConfig cfg = logic_from_json(parse_json_file(g.config), g.config);
    const SenseConfig sense = auto_references(cfg.rmodel, cfg.v_read, cfg.t_sense);

    std::ostringstream os;
    os << "op,a,b,g_total_S,output,margin_S\n";
    for (const LogicOp op : {LogicOp::And, LogicOp::Nand, LogicOp::Xor}) {
        const char* name = op == LogicOp::And ? "and" : (op == LogicOp::Nand ? "nand" : "xor");
        for (int a = 0; a <= 1; ++a) {
            for (int b = 0; b <= 1; ++b) {
                const double gt =
                    bitline_conductance({CellState{a}, CellState{b}}, cfg.rmodel);
                os << name << ',' << a << ',' << b << ',' << format_double(gt) << ','
                   << execute_logic(op, a, b, cfg.rmodel, sense) << ','
                   << format_double(sense_margin(gt, sense, op)) << '\n';
            }
        }
    }
    atomic_write_file(out_path(g, "logic_report.csv"), os.str());
    write_manifest(g, "logic");
    std::printf("logic: truth tables written\n");
    return 0;
}

int cmd_imc(const GlobalOpts& g) {
    const ImcRunSpec spec = load_imc_spec(g.config);
    const EvalReport report =
        speedup_report(spec.profiles, spec.cards, spec.hierarchy, spec.cpu);
    if (g.format == "json")
        emit_report_json(report, out_path(g, "fig4_report.json"));
    else
        emit_report_csv(report, out_path(g, "fig4_report.csv"));
    write_manifest(g, "imc");
    std::printf("imc: %zu rows\n", report.rows.size());
    return 0;
}

int cmd_validate(const GlobalOpts& g) {
    const std::string data_dir = g.config.empty() ? "data" : g.config;
    const auto results = run_acceptance(data_dir);
    const int failures = report_acceptance(results);
    return failures > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AFMTJ write-dynamics and in-memory-computing toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GlobalOpts g;
    const auto add_common = [&](CLI::App* sub, bool config_required = true) {
        auto* c = sub->add_option("--config", g.config, "configuration file (JSON)");
        if (config_required) c->required();
        sub->add_option("--out", g.out, "output directory");
        sub->add_option("--seed", g.seed, "RNG seed override");
        sub->add_option("--jobs", g.jobs, "worker threads (env AFMTJ_LAB_JOBS as fallback)");
        sub->add_option("--format", g.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* write_sim = app.add_subcommand("write-sim", "single write transient");
    add_common(write_sim);
    auto* sweep = app.add_subcommand("sweep", "voltage sweep and plot data");
    add_common(sweep);
    auto* calib = app.add_subcommand("calibrate", "fit device parameters to targets");
    add_common(calib);
    auto* logic = app.add_subcommand("logic", "bitline truth tables and margins");
    add_common(logic);
    auto* imc = app.add_subcommand("imc", "system-level speedup/energy report");
    add_common(imc);
    auto* validate = app.add_subcommand("validate", "recompute the release checks");
    add_common(validate, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (write_sim->parsed()) return cmd_write_sim(g);
        if (sweep->parsed()) return cmd_sweep(g);
        if (calib->parsed()) return cmd_calibrate(g);
        if (logic->parsed()) return cmd_logic(g);
        if (imc->parsed()) return cmd_imc(g);
        if (validate->parsed()) return cmd_validate(g);
    } catch (const NonConvergedError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
