#include <cmath>
#include <vector>

#include "afmtj/integrator.hpp"
#include "doctest.h"

using namespace afmtj;

namespace {

// Pure precession about +z at a fixed field magnitude [A/m], no damping.
StateRhs precession_rhs(double h_field) {
    return [h_field](double, const SublatticeState& s,
                     const std::array<Vec3, 2>&) -> SublatticeRates {
        const Vec3 h{0.0, 0.0, h_field};
        SublatticeRates r;
        r.dm1 = -constants::gamma_mu0 * cross(s.m1, h);
        r.dm2 = -constants::gamma_mu0 * cross(s.m2, h);
        return r;
    };
}

SolverOptions short_opts(double t_end, double sample = 1e-13) {
    SolverOptions o;
    o.t_end = t_end;
    o.sample_interval = sample;
    return o;
}

}  // namespace

TEST_CASE("rk4_step: exponential decay against closed form") {
    auto rhs = [](double, const std::array<double, 1>& y) -> std::array<double, 1> {
        return {-y[0]};
    };
    std::array<double, 1> y{1.0};
    const double dt = 0.01;
    for (int i = 0; i < 100; ++i) y = rk4_step(rhs, y, i * dt, dt);
    CHECK(y[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("rk4_step: fourth-order convergence on a harmonic oscillator") {
    auto rhs = [](double, const std::array<double, 2>& y) -> std::array<double, 2> {
        return {y[1], -y[0]};
    };
    auto integrate = [&](double dt, double t_end) {
        std::array<double, 2> y{1.0, 0.0};
        const int n = static_cast<int>(std::round(t_end / dt));
        for (int i = 0; i < n; ++i) y = rk4_step(rhs, y, i * dt, dt);
        return y[0];
    };
    const double exact = std::cos(1.0);
    const double e1 = std::abs(integrate(0.02, 1.0) - exact);
    const double e2 = std::abs(integrate(0.01, 1.0) - exact);
    const double ratio = e1 / e2;  // ~16 for a 4th-order method
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("integrate_adaptive: Larmor frequency at mu0*H = 0.1 T") {
    // f = gamma*mu0*H / (2*pi) = 1.760859e11 * 0.1 / (2*pi) = 2.80225 GHz.
    const double h_field = 0.1 / constants::mu0;
    const double f_expected = constants::gamma * 0.1 / (2.0 * M_PI);

    SolverOptions opts = short_opts(1.0e-9, 5e-14);
    SublatticeState init;
    init.m1 = Vec3{1.0, 0.0, 0.0};
    init.m2 = Vec3{0.0, 0.0, -1.0};

    const Trajectory traj = integrate_adaptive(precession_rhs(h_field), init, opts, {});

    // Count full periods via phase unwrapping of m1 in the x-y plane.
    double phase = 0.0;
    double prev = std::atan2(init.m1.y, init.m1.x);
    for (std::size_t i = 1; i < traj.size(); ++i) {
        double a = std::atan2(traj.states[i].m1.y, traj.states[i].m1.x);
        double d = a - prev;
        while (d > M_PI) d -= 2.0 * M_PI;
        while (d < -M_PI) d += 2.0 * M_PI;
        phase += d;
        prev = a;
    }
    const double f_measured = std::abs(phase) / (2.0 * M_PI) / traj.final_time;
    CHECK(f_measured == doctest::Approx(f_expected).epsilon(1e-3));
    CHECK(f_measured == doctest::Approx(2.80225e9).epsilon(2e-3));
}

TEST_CASE("integrate_adaptive: sampling grid and unit norms") {
    const double h_field = 0.1 / constants::mu0;
    SolverOptions opts = short_opts(0.2e-9, 1e-12);
    SublatticeState init;
    init.m1 = Vec3{0.6, 0.0, 0.8};
    init.m2 = Vec3{0.0, 0.0, -1.0};
    const Trajectory traj = integrate_adaptive(precession_rhs(h_field), init, opts, {});

    REQUIRE(traj.size() >= 2);
    CHECK(traj.times.front() == 0.0);
    for (std::size_t i = 1; i < traj.size(); ++i) {
        CHECK(traj.times[i] > traj.times[i - 1]);
        CHECK(traj.times[i] == doctest::Approx(i * opts.sample_interval).epsilon(1e-12));
    }
    for (const auto& s : traj.states) {
        CHECK(s.m1.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.m2.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(traj.final_time == doctest::Approx(opts.t_end));
    CHECK(traj.max_norm_drift < 1e-8);
    CHECK(traj.rng_draws == 0);  // T = 0 path must not consume randomness
}

TEST_CASE("integrate_adaptive: precession conserves m_z without damping") {
    const double h_field = 0.1 / constants::mu0;
    SolverOptions opts = short_opts(0.5e-9);
    SublatticeState init;
    init.m1 = Vec3{0.6, 0.0, 0.8};
    init.m2 = Vec3{0.0, 0.6, -0.8};
    const Trajectory traj = integrate_adaptive(precession_rhs(h_field), init, opts, {});
    CHECK(traj.final_state.m1.z == doctest::Approx(0.8).epsilon(1e-7));
    CHECK(traj.final_state.m2.z == doctest::Approx(-0.8).epsilon(1e-7));
}

TEST_CASE("integrate_adaptive: stiff problem raises NumericalError") {
    // Rotation far beyond what dt_min can resolve.
    auto rhs = [](double, const SublatticeState& s,
                  const std::array<Vec3, 2>&) -> SublatticeRates {
        SublatticeRates r;
        r.dm1 = 1e17 * cross(s.m1, Vec3{0.0, 0.0, 1.0});
        r.dm2 = Vec3{};
        return r;
    };
    SolverOptions opts = short_opts(1e-10);
    SublatticeState init;
    init.m1 = Vec3{1.0, 0.0, 0.0};
    CHECK_THROWS_AS(integrate_adaptive(rhs, init, opts, {}), NumericalError);
}

TEST_CASE("counter rng: reproducible and statistically sane") {
    CounterRng a(42), b(42), c(43);
    const Vec3 va = a.normal3(7, 1);
    const Vec3 vb = b.normal3(7, 1);
    CHECK(va.x == vb.x);
    CHECK(va.y == vb.y);
    CHECK(va.z == vb.z);
    CHECK(c.normal3(7, 1).x != va.x);  // seed changes the stream
    CHECK(a.normal3(8, 1).x != va.x);  // step index changes the stream
    CHECK(a.draws() == 3 * 2 * 2);     // two normal3 calls, Box-Muller pairs

    // Moments over many counters.
    CounterRng rng(123);
    double sum = 0.0, sum2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const Vec3 v = rng.normal3(i, 0);
        sum += v.x + v.y + v.z;
        sum2 += v.x * v.x + v.y * v.y + v.z * v.z;
    }
    const double mean = sum / (3.0 * n);
    const double var = sum2 / (3.0 * n) - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(var == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("thermal field: sigma formula and zero-temperature short circuit") {
    MaterialParams mat;
    const double vol = 45e-9 * 45e-9 * 0.45e-9;
    const double dt = 1e-13;
    const double expected = std::sqrt(
        2.0 * mat.alpha * constants::kB * 300.0 /
        (constants::gamma * constants::mu0 * constants::mu0 * mat.Ms * vol * dt));
    CHECK(thermal_sigma(mat, vol, 300.0, dt) == doctest::Approx(expected).epsilon(1e-12));
    // Scaling: sigma ~ sqrt(T/dt).
    CHECK(thermal_sigma(mat, vol, 1200.0, dt) == doctest::Approx(2.0 * expected));
    CHECK(thermal_sigma(mat, vol, 300.0, 4.0 * dt) == doctest::Approx(0.5 * expected));

    CounterRng rng(1);
    const Vec3 h0 = sample_thermal_field(mat, vol, 0.0, dt, rng, 0, 0);
    CHECK(h0.norm() == 0.0);
    CHECK(rng.draws() == 0);
    const Vec3 h1 = sample_thermal_field(mat, vol, 300.0, dt, rng, 0, 0);
    CHECK(h1.norm() > 0.0);
    CHECK(rng.draws() == 6);
}

TEST_CASE("integrate_adaptive: thermal runs are deterministic per seed") {
    MaterialParams mat;
    ExchangeParams ex;
    ex.omega_E = 1e12;
    DeviceGeometry geom;
    ThermalSpec thermal;
    thermal.temperature = 300.0;
    thermal.volume = geom.volume();
    thermal.material = mat;

    auto rhs = [&](double, const SublatticeState& s,
                   const std::array<Vec3, 2>& h_th) -> SublatticeRates {
        LlgDrive drive;
        drive.h_thermal = h_th;
        return llg_rhs(s, mat, ex, geom, drive);
    };

    SolverOptions opts = short_opts(0.1e-9);
    opts.temperature = 300.0;
    opts.rng_seed = 99;
    SublatticeState init;
    init.m1 = Vec3{0.1, 0.0, 1.0}.normalized();
    init.m2 = Vec3{-0.1, 0.0, -1.0}.normalized();

    const Trajectory t1 = integrate_adaptive(rhs, init, opts, thermal);
    const Trajectory t2 = integrate_adaptive(rhs, init, opts, thermal);
    REQUIRE(t1.size() == t2.size());
    CHECK(t1.rng_draws > 0);
    CHECK(t1.rng_draws == t2.rng_draws);
    for (std::size_t i = 0; i < t1.size(); ++i) {
        CHECK(t1.states[i].m1.x == t2.states[i].m1.x);
        CHECK(t1.states[i].m2.z == t2.states[i].m2.z);
    }

    opts.rng_seed = 100;
    const Trajectory t3 = integrate_adaptive(rhs, init, opts, thermal);
    CHECK(t3.final_state.m1.x != t1.final_state.m1.x);
}

TEST_CASE("solver options validation") {
    SolverOptions o;
    o.t_end = 1e-9;
    CHECK_NOTHROW(o.validate());
    o.rel_tol = 0.0;
    CHECK_THROWS_AS(o.validate(), ValidationError);
    o.rel_tol = 1e-7;
    o.dt_min = 1e-12;
    o.dt_base = 0.1e-12;  // dt_min > dt_base
    CHECK_THROWS_AS(o.validate(), ValidationError);
}
