#pragma once

#include <optional>
#include <string>
#include <vector>

#include "afmtj/config.hpp"

namespace afmtj {

// Loaders for the shipped experiment configs.  Relative file references are
// resolved against the directory of the config file itself.

struct WriteSimSpec {
    DeviceParams device;
    double stt_scale = 1.0;
    PulseSpec pulse;
    SolverOptions solver;
    SwitchCriterion criterion;
};
WriteSimSpec load_write_sim_spec(const std::string& path);

struct CardSense {
    std::string label;
    double t_sense = 0.0;  // [s]
    double e_sense = 0.0;  // [J]
};

struct SweepRunSpec {
    SweepConfig config;
    // Optional device-card emission at one sweep voltage.
    std::optional<double> card_voltage;
    std::vector<CardSense> card_sense;
};
SweepRunSpec load_sweep_spec(const std::string& path);

struct CalibrationRunSpec {
    DeviceParams base;
    double start_stt_scale = 1.0;
    CalibrationProblem problem;
};
CalibrationRunSpec load_calibration_spec(const std::string& path);

struct ImcRunSpec {
    std::vector<DeviceCard> cards;
    std::vector<WorkloadProfile> profiles;
    HierarchyConfig hierarchy;
    CpuBaseline cpu;
};
ImcRunSpec load_imc_spec(const std::string& path);

}  // namespace afmtj
