#pragma once

#include <optional>
#include <string>

#include "afmtj/device.hpp"
#include "afmtj/integrator.hpp"

namespace afmtj {

struct PulseSpec {
    double amplitude = 1.0;  // [V], >= 0
    double width = 5e-9;     // [s], ideal step edges
    int polarity = 1;        // +1 or -1

    double voltage_at(double t) const {
        return (t <= width) ? polarity * amplitude : 0.0;
    }
    void validate() const {
        if (!(width > 0.0)) throw ValidationError("PulseSpec.width must be > 0");
        if (!(amplitude >= 0.0)) throw ValidationError("PulseSpec.amplitude must be >= 0");
        if (polarity != 1 && polarity != -1)
            throw ValidationError("PulseSpec.polarity must be +1 or -1");
    }
};

struct TransientResult {
    Trajectory trajectory;
    std::optional<double> latency;  // [s]
    std::optional<double> energy;   // [J], integrated to latency
    bool switched = false;
    SublatticeState final_state;
};

// Trapezoidal integral of V(t)*I(t) on [0, latency] over the stored samples.
double write_energy(const Trajectory& traj, const PulseSpec& pulse, double latency);

// Voltage pulse -> resistance-dependent current -> torque -> trajectory.
// The instantaneous resistance sets j = V/(R*area) at every RHS evaluation
// (quasi-static circuit coupling).
TransientResult run_write(const DeviceParams& device, const PulseSpec& pulse,
                          const SolverOptions& opts, const SwitchCriterion& crit,
                          double stt_scale = 1.0,
                          const std::optional<SublatticeState>& initial = std::nullopt);

struct ReadResult {
    int resolved_bit = 0;
    double read_current = 0.0;  // [A]
    bool disturb_flag = false;
};

// Short low-bias sensing window; the bit comes from comparing the measured
// resistance with the geometric mean sqrt(r_p * r_ap).
ReadResult run_read(const DeviceParams& device, double v_read, const SolverOptions& opts,
                    const SublatticeState& state, double disturb_ceiling = 0.2);

// CSV with header t_ps,m1x,m1y,m1z,m2x,m2y,m2z,lz,R_ohm,I_uA.
void export_trajectory_csv(const Trajectory& traj, DeviceKind kind, const std::string& path);

}  // namespace afmtj
