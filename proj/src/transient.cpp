#include "afmtj/transient.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "afmtj/io_util.hpp"

namespace afmtj {

double write_energy(const Trajectory& traj, const PulseSpec& pulse, double latency) {
    if (traj.size() < 1 || traj.current.size() != traj.size())
        throw ValidationError("write_energy: trajectory lacks per-sample current");
    if (latency < 0.0 || latency > traj.times.back() + 1e-30)
        throw ValidationError("write_energy: latency outside trajectory span");
    if (latency == 0.0) return 0.0;

    double e = 0.0;
    for (std::size_t i = 1; i < traj.size(); ++i) {
        const double t0 = traj.times[i - 1];
        double t1 = traj.times[i];
        double p0 = pulse.voltage_at(t0) * traj.current[i - 1];
        double p1 = pulse.voltage_at(t1) * traj.current[i];
        if (t0 >= latency) break;
        if (t1 > latency) {
            // Partial last interval, power interpolated to the crossing time.
            const double f = (latency - t0) / (t1 - t0);
            p1 = p0 + f * (p1 - p0);
            t1 = latency;
        }
        e += 0.5 * (p0 + p1) * (t1 - t0);
    }
    return e;
}

TransientResult run_write(const DeviceParams& device, const PulseSpec& pulse,
                          const SolverOptions& opts, const SwitchCriterion& crit,
                          double stt_scale, const std::optional<SublatticeState>& initial) {
    device.validate();
    pulse.validate();
    crit.validate();

    SolverOptions run_opts = opts;
    if (run_opts.t_end <= 0.0) run_opts.t_end = pulse.width;
    run_opts.temperature = opts.temperature > 0.0 ? opts.temperature : device.temperature;
    run_opts.validate();

    const SublatticeState start = initial.value_or(initial_write_state(device));

    const bool single = device.kind == DeviceKind::MTJ;
    const double area = device.geometry.area();

    StateRhs rhs = [&](double t, const SublatticeState& s,
                       const std::array<Vec3, 2>& h_th) -> SublatticeRates {
        LlgDrive drive;
        const double v = pulse.voltage_at(t);
        drive.j_density = v / (resistance(s, device) * area);
        drive.p1 = device.p1;
        drive.p2 = device.p2;
        drive.stt_scale = stt_scale;
        drive.h_thermal = h_th;
        drive.single_spin = single;
        return llg_rhs(s, device.material, device.exchange, device.geometry, drive,
                       device.exchange_channel);
    };

    ThermalSpec thermal;
    thermal.temperature = run_opts.temperature;
    thermal.volume = device.geometry.volume();
    thermal.material = device.material;

    TransientResult res;
    res.trajectory = integrate_adaptive(rhs, start, run_opts, thermal);

    // Fill per-sample resistance and current from the sampled states.
    Trajectory& traj = res.trajectory;
    traj.resistance.resize(traj.size());
    traj.current.resize(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        traj.resistance[i] = resistance(traj.states[i], device);
        traj.current[i] = pulse.voltage_at(traj.times[i]) / traj.resistance[i];
    }

    res.final_state = traj.final_state;
    res.latency = detect_switch(traj, crit, device.kind);
    res.switched = res.latency.has_value();
    if (res.switched) res.energy = write_energy(traj, pulse, *res.latency);
    return res;
}

ReadResult run_read(const DeviceParams& device, double v_read, const SolverOptions& opts,
                    const SublatticeState& state, double disturb_ceiling) {
    device.validate();
    if (v_read > disturb_ceiling)
        throw ValidationError("run_read: v_read above disturb ceiling (disturb risk)");

    const double r_mid =
        std::sqrt(device.resistance.r_p * device.resistance.r_ap());

    ReadResult out;
    if (v_read == 0.0) {
        out.resolved_bit = resistance(state, device) < r_mid ? 1 : 0;
        out.read_current = 0.0;
        out.disturb_flag = false;
        return out;
    }

    PulseSpec pulse;
    pulse.amplitude = v_read;
    pulse.width = 100e-12;
    pulse.polarity = 1;

    SolverOptions read_opts = opts;
    read_opts.t_end = pulse.width;
    if (read_opts.sample_interval > 10e-12) read_opts.sample_interval = 1e-12;

    SwitchCriterion crit;  // defaults; read windows never reach them
    TransientResult tr = run_write(device, pulse, read_opts, crit, 1.0, state);

    // Time-averaged resistance over the sensing window.
    const Trajectory& traj = tr.trajectory;
    double r_acc = 0.0;
    double t_span = 0.0;
    for (std::size_t i = 1; i < traj.size(); ++i) {
        const double dt = traj.times[i] - traj.times[i - 1];
        r_acc += 0.5 * (traj.resistance[i] + traj.resistance[i - 1]) * dt;
        t_span += dt;
    }
    const double r_meas = t_span > 0.0 ? r_acc / t_span : traj.resistance.front();

    out.resolved_bit = r_meas < r_mid ? 1 : 0;
    out.read_current = v_read / r_meas;

    const Vec3 l0 = order_parameter(traj.states.front(), device.kind);
    double max_move = 0.0;
    for (const auto& s : traj.states)
        max_move = std::max(max_move, (order_parameter(s, device.kind) - l0).norm());
    out.disturb_flag = max_move > 0.05;
    return out;
}

void export_trajectory_csv(const Trajectory& traj, DeviceKind kind, const std::string& path) {
    std::ostringstream csv;
    csv << "t_ps,m1x,m1y,m1z,m2x,m2y,m2z,lz,R_ohm,I_uA\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const SublatticeState& s = traj.states[i];
        const double lz = order_parameter(s, kind).z;
        csv << format_double(traj.times[i] / units::ps) << ',' << format_double(s.m1.x) << ','
            << format_double(s.m1.y) << ',' << format_double(s.m1.z) << ','
            << format_double(s.m2.x) << ',' << format_double(s.m2.y) << ','
            << format_double(s.m2.z) << ',' << format_double(lz) << ','
            << format_double(traj.resistance.empty() ? 0.0 : traj.resistance[i]) << ','
            << format_double(traj.current.empty() ? 0.0 : traj.current[i] / 1e-6) << '\n';
    }
    atomic_write_file(path, csv.str());
}

}  // namespace afmtj
