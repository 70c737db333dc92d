#pragma once

#include <optional>

#include "afmtj/integrator.hpp"
#include "afmtj/magdyn.hpp"
#include "afmtj/params.hpp"

namespace afmtj {

// AFMTJ: Neel vector l = (m1 - m2)/2.  MTJ: m1 itself.
Vec3 order_parameter(const SublatticeState& state, DeviceKind kind);

// R(theta) = 2*r_p*r_ap / ((r_ap + r_p) + (r_ap - r_p)*cos(theta)) where theta
// is the angle between the order parameter and the fixed +z reference.
double resistance_from_costheta(double cos_theta, const ResistanceModel& rm);
double resistance(const SublatticeState& state, const DeviceParams& device);

struct BiasPoint {
    double current = 0.0;          // [A]
    double current_density = 0.0;  // [A/m^2]
};
BiasPoint bias_current(double voltage, const SublatticeState& state, const DeviceParams& device);

// Earliest reversal instant of the order-parameter z projection, linearly
// interpolated between samples.  The reversal axis is the sign of the initial
// projection (writes run in either direction); a crossing counts only when the
// projection stays beyond -guard for the rest of the window.
std::optional<double> detect_switch(const Trajectory& traj, const SwitchCriterion& crit,
                                    DeviceKind kind);

// Deterministic pre-write state: order parameter along +/-z with a 1 degree
// tilt in the x-z plane.  down=true puts the order parameter near -z (the
// high-resistance end of the write).
SublatticeState initial_write_state(const DeviceParams& device, bool down = true,
                                    double tilt_deg = 1.0);

}  // namespace afmtj
