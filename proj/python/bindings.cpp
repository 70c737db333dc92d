#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "afmtj/acceptance.hpp"
#include "afmtj/bitline.hpp"
#include "afmtj/runspec.hpp"
#include "afmtj/transient.hpp"

namespace py = pybind11;
using namespace afmtj;

namespace {

py::dict transient_to_dict(const TransientResult& r) {
    py::dict d;
    d["switched"] = r.switched;
    d["latency_ps"] = r.latency ? py::cast(*r.latency / units::ps) : py::none();
    d["energy_fJ"] = r.energy ? py::cast(*r.energy / units::fJ) : py::none();
    d["accepted_steps"] = r.trajectory.accepted_steps;
    d["max_norm_drift"] = r.trajectory.max_norm_drift;
    return d;
}

}  // namespace

PYBIND11_MODULE(_afmtj_lab, m) {
    m.doc() = "AFMTJ write-dynamics and in-memory-computing toolkit";

    py::class_<DeviceParams>(m, "Device")
        .def_property_readonly("kind", [](const DeviceParams& d) { return to_string(d.kind); })
        .def("to_json", [](const DeviceParams& d) { return device_to_json(d).dump(2); })
        .def("__repr__", [](const DeviceParams& d) {
            return "<Device " + to_string(d.kind) + ">";
        });

    m.def("load_device", &load_device, py::arg("path"), "Load a device parameter file");

    m.def(
        "run_write",
        [](const DeviceParams& dev, double amplitude_V, double width_ns, int polarity,
           double t_end_ns, double stt_scale, double temperature_K, std::uint64_t seed) {
            PulseSpec pulse;
            pulse.amplitude = amplitude_V;
            pulse.width = width_ns * units::ns;
            pulse.polarity = polarity;
            SolverOptions opts;
            opts.t_end = t_end_ns * units::ns;
            opts.temperature = temperature_K;
            opts.rng_seed = seed;
            return transient_to_dict(run_write(dev, pulse, opts, SwitchCriterion{}, stt_scale));
        },
        py::arg("device"), py::arg("amplitude_V"), py::arg("width_ns") = 5.0,
        py::arg("polarity") = 1, py::arg("t_end_ns") = 5.0, py::arg("stt_scale") = 1.0,
        py::arg("temperature_K") = 0.0, py::arg("seed") = 0,
        "Simulate one write transient; returns latency/energy summary");

    m.def(
        "voltage_sweep",
        [](const std::string& spec_path, int jobs) {
            SweepRunSpec spec = load_sweep_spec(spec_path);
            if (jobs > 0) spec.config.jobs = jobs;
            const SweepTable table = voltage_sweep(spec.config);
            py::list rows;
            for (const auto& r : table.rows) {
                py::dict d;
                d["device"] = r.device;
                d["voltage_V"] = r.voltage;
                d["latency_ps"] = r.latency_ps ? py::cast(*r.latency_ps) : py::none();
                d["energy_fJ"] = r.energy_fJ ? py::cast(*r.energy_fJ) : py::none();
                d["switched"] = r.switched;
                rows.append(d);
            }
            return rows;
        },
        py::arg("spec_path"), py::arg("jobs") = 0,
        "Run the voltage sweep described by a sweep config file");

    m.def(
        "calibrate",
        [](const std::string& spec_path) {
            const CalibrationRunSpec spec = load_calibration_spec(spec_path);
            const CalibrationResult res = calibrate(spec.problem, spec.base,
                                                    spec.start_stt_scale);
            py::dict d;
            d["converged"] = res.converged;
            d["objective"] = res.objective;
            d["stt_scale"] = res.stt_scale;
            d["fitted"] = res.fitted;
            d["residuals"] = res.residuals;
            d["evals"] = res.evals;
            return d;
        },
        py::arg("spec_path"), "Run the calibration described by a calibration config file");

    m.def(
        "execute_logic",
        [](const std::string& op, int a, int b, double r_p, double tmr) {
            ResistanceModel rm;
            rm.r_p = r_p;
            rm.tmr = tmr;
            const SenseConfig cfg = auto_references(rm);
            return execute_logic(logic_op_from_string(op), a, b, rm, cfg);
        },
        py::arg("op"), py::arg("a"), py::arg("b"), py::arg("r_p") = 2080.0,
        py::arg("tmr") = 0.8, "Evaluate one bitline logic operation (and/nand/xor)");

    m.def(
        "speedup_report",
        [](const std::string& spec_path) {
            const ImcRunSpec spec = load_imc_spec(spec_path);
            const EvalReport report =
                speedup_report(spec.profiles, spec.cards, spec.hierarchy, spec.cpu);
            py::list rows;
            for (const auto& r : report.rows) {
                py::dict d;
                d["workload"] = r.workload;
                d["device"] = r.device;
                d["speedup"] = r.speedup;
                d["energy_savings"] = r.energy_savings;
                rows.append(d);
            }
            return rows;
        },
        py::arg("spec_path"), "Evaluate the system-level report from an imc config file");

    m.def(
        "run_acceptance",
        [](const std::string& data_dir) {
            py::list out;
            for (const auto& r : run_acceptance(data_dir)) {
                py::dict d;
                d["id"] = r.id;
                d["name"] = r.name;
                d["pass"] = r.pass;
                d["detail"] = r.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("data_dir"), "Recompute the release checklist against a data directory");
}
