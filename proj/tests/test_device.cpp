#include <cmath>

#include "afmtj/device.hpp"
#include "doctest.h"

using namespace afmtj;

namespace {

DeviceParams afmtj_device() {
    DeviceParams d;
    d.kind = DeviceKind::AFMTJ;
    d.exchange.omega_E = 1e12;
    return d;
}

Trajectory synthetic_lz(const std::vector<double>& times_ps, const std::vector<double>& lz) {
    Trajectory t;
    for (std::size_t i = 0; i < times_ps.size(); ++i) {
        t.times.push_back(times_ps[i] * 1e-12);
        SublatticeState s;
        const double z = lz[i];
        const double x = std::sqrt(std::max(0.0, 1.0 - z * z));
        s.m1 = {x, 0.0, z};
        s.m2 = {-x, 0.0, -z};
        t.states.push_back(s);
    }
    return t;
}

}  // namespace

TEST_CASE("order parameter per device kind") {
    SublatticeState s;
    s.m1 = Vec3{0.0, 0.6, 0.8};
    s.m2 = Vec3{0.0, -0.6, -0.8};
    const Vec3 l = order_parameter(s, DeviceKind::AFMTJ);
    CHECK(l.y == doctest::Approx(0.6));
    CHECK(l.z == doctest::Approx(0.8));
    CHECK(l.norm() == doctest::Approx(1.0));
    const Vec3 m = order_parameter(s, DeviceKind::MTJ);
    CHECK(m.z == doctest::Approx(0.8));
}

TEST_CASE("resistance formula endpoints and midpoint") {
    ResistanceModel rm;  // r_p = 2900, tmr = 0.8 -> r_ap = 5220
    CHECK(rm.r_ap() == doctest::Approx(5220.0));
    CHECK(resistance_from_costheta(1.0, rm) == doctest::Approx(2900.0));
    CHECK(resistance_from_costheta(-1.0, rm) == doctest::Approx(5220.0));
    // cos(theta) = 0: harmonic mean of the two conductance channels.
    const double r_mid = 2.0 * 2900.0 * 5220.0 / (2900.0 + 5220.0);
    CHECK(resistance_from_costheta(0.0, rm) == doctest::Approx(r_mid));
    // Monotone decreasing resistance as the state rotates toward parallel.
    double prev = resistance_from_costheta(-1.0, rm);
    for (double c = -0.9; c <= 1.0; c += 0.1) {
        const double r = resistance_from_costheta(c, rm);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("resistance: conductance-average identity") {
    // The formula is equivalent to G(theta) = (G_p + G_ap)/2 + (G_p - G_ap)/2 cos(theta).
    ResistanceModel rm;
    rm.r_p = 1234.0;
    rm.tmr = 1.7;
    const double g_p = 1.0 / rm.r_p;
    const double g_ap = 1.0 / rm.r_ap();
    for (double c : {-1.0, -0.5, 0.0, 0.3, 0.99}) {
        const double g = 0.5 * (g_p + g_ap) + 0.5 * (g_p - g_ap) * c;
        CHECK(resistance_from_costheta(c, rm) == doctest::Approx(1.0 / g).epsilon(1e-12));
    }
}

TEST_CASE("resistance of states and bias current") {
    const DeviceParams d = afmtj_device();
    SublatticeState up;  // l = +z -> parallel
    up.m1 = {0.0, 0.0, 1.0};
    up.m2 = {0.0, 0.0, -1.0};
    CHECK(resistance(up, d) == doctest::Approx(2900.0));

    SublatticeState down;  // l = -z -> antiparallel
    down.m1 = {0.0, 0.0, -1.0};
    down.m2 = {0.0, 0.0, 1.0};
    CHECK(resistance(down, d) == doctest::Approx(5220.0));

    // Degenerate order parameter (both sublattices aligned) reads midpoint.
    SublatticeState deg;
    deg.m1 = {0.0, 0.0, 1.0};
    deg.m2 = {0.0, 0.0, 1.0};
    const double r_mid = 2.0 * 2900.0 * 5220.0 / (2900.0 + 5220.0);
    CHECK(resistance(deg, d) == doctest::Approx(r_mid));

    const BiasPoint b = bias_current(1.0, up, d);
    CHECK(b.current == doctest::Approx(1.0 / 2900.0));
    CHECK(b.current_density == doctest::Approx(1.0 / (2900.0 * 45e-9 * 45e-9)));
}

TEST_CASE("detect_switch: clean reversal with interpolation") {
    // lz goes from +1 down through -0.9 at a known instant.
    const Trajectory t =
        synthetic_lz({0, 10, 20, 30, 40, 50}, {1.0, 0.5, -0.2, -0.8, -0.95, -0.99});
    SwitchCriterion crit;  // threshold 0.9, guard 0.5
    const auto sw = detect_switch(t, crit, DeviceKind::AFMTJ);
    REQUIRE(sw.has_value());
    // Crossing of -0.9 between 30 ps (-0.8) and 40 ps (-0.95): f = 2/3.
    CHECK(*sw == doctest::Approx((30.0 + 10.0 * 2.0 / 3.0) * 1e-12).epsilon(1e-9));
}

TEST_CASE("detect_switch: back-hopping cancels the event") {
    const Trajectory t = synthetic_lz({0, 10, 20, 30, 40, 50},
                                      {1.0, -0.95, -0.95, 0.2, 0.9, 0.95});
    SwitchCriterion crit;
    CHECK_FALSE(detect_switch(t, crit, DeviceKind::AFMTJ).has_value());
}

TEST_CASE("detect_switch: guard tolerates shallow ringing but not escapes") {
    // Dips past threshold, rings back up to -0.6 (below -guard = -0.5): still switched.
    const Trajectory ok = synthetic_lz({0, 10, 20, 30, 40},
                                       {1.0, -0.95, -0.6, -0.9, -0.99});
    SwitchCriterion crit;
    const auto sw = detect_switch(ok, crit, DeviceKind::AFMTJ);
    REQUIRE(sw.has_value());
    CHECK(*sw < 10.1e-12);  // first crossing counts

    // Same dip but rises to -0.3 (above -guard): event voided until re-crossing.
    const Trajectory retry = synthetic_lz({0, 10, 20, 30, 40},
                                          {1.0, -0.95, -0.3, -0.92, -0.99});
    const auto sw2 = detect_switch(retry, crit, DeviceKind::AFMTJ);
    REQUIRE(sw2.has_value());
    CHECK(*sw2 > 20.0e-12);  // only the second crossing survives the guard
}

TEST_CASE("detect_switch: works from a negative initial orientation") {
    std::vector<double> lz = {-1.0, -0.4, 0.3, 0.93, 0.99};
    const Trajectory t = synthetic_lz({0, 10, 20, 30, 40}, lz);
    SwitchCriterion crit;
    const auto sw = detect_switch(t, crit, DeviceKind::AFMTJ);
    REQUIRE(sw.has_value());
    CHECK(*sw > 20e-12);
    CHECK(*sw < 30e-12);
}

TEST_CASE("detect_switch: no event when nothing crosses") {
    const Trajectory t = synthetic_lz({0, 10, 20}, {1.0, 0.9, 0.8});
    SwitchCriterion crit;
    CHECK_FALSE(detect_switch(t, crit, DeviceKind::AFMTJ).has_value());
}

TEST_CASE("initial_write_state: tilt geometry and unit norms") {
    const DeviceParams d = afmtj_device();
    const SublatticeState s = initial_write_state(d, true, 1.0);
    s.check_unit();
    const Vec3 l = order_parameter(s, d.kind);
    CHECK(l.z == doctest::Approx(-std::cos(M_PI / 180.0)));
    CHECK(l.x == doctest::Approx(std::sin(M_PI / 180.0)));

    const SublatticeState up = initial_write_state(d, false, 1.0);
    CHECK(order_parameter(up, d.kind).z == doctest::Approx(std::cos(M_PI / 180.0)));

    DeviceParams mtj;
    mtj.kind = DeviceKind::MTJ;
    const SublatticeState ms = initial_write_state(mtj, true, 1.0);
    CHECK(order_parameter(ms, mtj.kind).z == doctest::Approx(-std::cos(M_PI / 180.0)));
}

TEST_CASE("resistance model validation bounds") {
    ResistanceModel rm;
    rm.tmr = 5.0;
    CHECK_NOTHROW(rm.validate());
    rm.tmr = 5.01;
    CHECK_THROWS_AS(rm.validate(), ValidationError);
    rm.tmr = -0.1;
    CHECK_THROWS_AS(rm.validate(), ValidationError);
    rm.tmr = 0.8;
    rm.r_p = 0.0;
    CHECK_THROWS_AS(rm.validate(), ValidationError);
}
