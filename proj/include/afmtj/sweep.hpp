#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "afmtj/transient.hpp"

namespace afmtj {

struct SweepDevice {
    std::string label;  // row key, defaults to the device kind name
    DeviceParams params;
    double stt_scale = 1.0;
};

struct SweepConfig {
    std::vector<double> voltages;  // strictly increasing [V]
    std::vector<SweepDevice> devices;
    SolverOptions solver;
    PulseSpec pulse;  // amplitude overridden per sweep point
    SwitchCriterion criterion;
    int jobs = 1;

    void validate() const;
};

struct SweepRow {
    std::string device;
    double voltage = 0.0;                 // [V]
    std::optional<double> latency_ps;
    std::optional<double> energy_fJ;
    bool switched = false;
};

struct SweepTable {
    std::vector<SweepRow> rows;

    std::optional<SweepRow> find(const std::string& device, double voltage) const;
};

// One run_write per (device, voltage); failures become unswitched rows and
// never abort the sweep.  Rows are keyed (device label, voltage) and sorted,
// so device ordering in the config does not matter.
SweepTable voltage_sweep(const SweepConfig& cfg);

enum class Observable { Latency, Energy };

struct CalibrationTarget {
    double voltage = 0.0;      // [V]
    Observable observable = Observable::Latency;
    double value = 0.0;        // [s] or [J]
    double weight = 1.0;
};

struct CalibrationProblem {
    std::vector<std::string> free_params;  // subset of {omega_E, Hk, r_p, eta}
    std::vector<CalibrationTarget> targets;
    double tolerance = 1e-8;
    std::size_t max_evals = 500;
    SolverOptions solver;
    PulseSpec pulse;
    SwitchCriterion criterion;

    void validate() const;
};

struct CalibrationResult {
    DeviceParams params;
    double stt_scale = 1.0;
    std::map<std::string, double> fitted;       // final free-parameter values
    std::vector<double> residuals;              // (sim-target)/target per target
    double objective = 0.0;
    bool converged = false;
    std::size_t evals = 0;
};

// Derivative-free simplex minimization of sum_i w_i ((sim_i - target_i)/target_i)^2
// over the chosen free parameters (searched in log space; all are positive).
CalibrationResult calibrate(const CalibrationProblem& problem, const DeviceParams& base,
                            double base_stt_scale = 1.0);

void emit_results_csv(const SweepTable& table, const std::string& path);
void emit_results_json(const SweepTable& table, const std::string& path);
SweepTable read_results_csv(const std::string& path);

}  // namespace afmtj
