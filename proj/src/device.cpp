#include "afmtj/device.hpp"

#include <algorithm>
#include <cmath>

namespace afmtj {

Vec3 order_parameter(const SublatticeState& state, DeviceKind kind) {
    if (kind == DeviceKind::MTJ) return state.m1;
    return 0.5 * (state.m1 - state.m2);
}

double resistance_from_costheta(double cos_theta, const ResistanceModel& rm) {
    const double r_p = rm.r_p;
    const double r_ap = rm.r_ap();
    return 2.0 * r_p * r_ap / ((r_ap + r_p) + (r_ap - r_p) * cos_theta);
}

double resistance(const SublatticeState& state, const DeviceParams& device) {
    const Vec3 l = order_parameter(state, device.kind);
    const double n = l.norm();
    // Degenerate (fully uncompensated) order parameter reads as midpoint angle.
    const double cos_theta = n > 1e-12 ? std::clamp(l.z / n, -1.0, 1.0) : 0.0;
    return resistance_from_costheta(cos_theta, device.resistance);
}

BiasPoint bias_current(double voltage, const SublatticeState& state,
                       const DeviceParams& device) {
    BiasPoint b;
    b.current = voltage / resistance(state, device);
    b.current_density = b.current / device.geometry.area();
    return b;
}

std::optional<double> detect_switch(const Trajectory& traj, const SwitchCriterion& crit,
                                    DeviceKind kind) {
    crit.validate();
    if (traj.size() < 2) throw ValidationError("detect_switch: trajectory needs >= 2 samples");

    const std::size_t n = traj.size();
    std::vector<double> lz(n);
    for (std::size_t i = 0; i < n; ++i) lz[i] = order_parameter(traj.states[i], kind).z;

    // Reversal is measured against the initial orientation.
    const double axis = lz[0] >= 0.0 ? 1.0 : -1.0;
    std::vector<double> proj(n);
    for (std::size_t i = 0; i < n; ++i) proj[i] = axis * lz[i];

    // Guard suffix: the earliest index from which proj never rises above -guard.
    std::size_t guard_from = n;
    for (std::size_t i = n; i-- > 0;) {
        if (proj[i] <= -crit.guard)
            guard_from = i;
        else
            break;
    }

    for (std::size_t i = 1; i < n; ++i) {
        if (proj[i] <= -crit.threshold && i >= guard_from) {
            const double p0 = proj[i - 1];
            const double p1 = proj[i];
            double f = 1.0;
            if (p1 < p0) f = (-crit.threshold - p0) / (p1 - p0);
            f = std::clamp(f, 0.0, 1.0);
            return traj.times[i - 1] + f * (traj.times[i] - traj.times[i - 1]);
        }
    }
    return std::nullopt;
}

SublatticeState initial_write_state(const DeviceParams& device, bool down, double tilt_deg) {
    const double th = tilt_deg * M_PI / 180.0;
    const double s = std::sin(th);
    const double c = std::cos(th);
    SublatticeState state;
    if (down) {
        state.m1 = {s, 0.0, -c};
        state.m2 = device.kind == DeviceKind::AFMTJ ? Vec3{-s, 0.0, c} : Vec3{0.0, 0.0, 1.0};
    } else {
        state.m1 = {s, 0.0, c};
        state.m2 = device.kind == DeviceKind::AFMTJ ? Vec3{-s, 0.0, -c} : Vec3{0.0, 0.0, 1.0};
    }
    return state;
}

}  // namespace afmtj
