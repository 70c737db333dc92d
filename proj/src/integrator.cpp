#include "afmtj/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace afmtj {

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline double to_unit_interval(std::uint64_t h) {
    // (0, 1]: never returns 0, safe under log().
    return (static_cast<double>(h >> 11) + 1.0) * 0x1p-53;
}

inline std::array<double, 6> to_array(const SublatticeState& s) {
    return {s.m1.x, s.m1.y, s.m1.z, s.m2.x, s.m2.y, s.m2.z};
}

inline SublatticeState from_array(const std::array<double, 6>& a) {
    SublatticeState s;
    s.m1 = {a[0], a[1], a[2]};
    s.m2 = {a[3], a[4], a[5]};
    return s;
}

}  // namespace

double CounterRng::normal1(std::uint64_t step, std::uint32_t sublattice,
                           std::uint32_t component) {
    std::uint64_t s = splitmix64(seed_ ^ (step * 0xd1342543de82ef95ULL));
    s = splitmix64(s ^ (static_cast<std::uint64_t>(sublattice) << 32) ^ component);
    const double u1 = to_unit_interval(s);
    const double u2 = to_unit_interval(splitmix64(s));
    draws_ += 2;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Vec3 CounterRng::normal3(std::uint64_t step, std::uint32_t sublattice) {
    return {normal1(step, sublattice, 0), normal1(step, sublattice, 1),
            normal1(step, sublattice, 2)};
}

double thermal_sigma(const MaterialParams& mat, double volume, double temperature, double dt) {
    if (!(volume > 0.0 && dt > 0.0))
        throw ValidationError("thermal_sigma requires volume > 0 and dt > 0");
    if (temperature == 0.0) return 0.0;
    const double var = 2.0 * mat.alpha * constants::kB * temperature /
                       (constants::gamma * constants::mu0 * constants::mu0 * mat.Ms * volume * dt);
    return std::sqrt(var);
}

Vec3 sample_thermal_field(const MaterialParams& mat, double volume, double temperature,
                          double dt, CounterRng& rng, std::uint64_t step,
                          std::uint32_t sublattice) {
    if (temperature == 0.0) return Vec3{};  // exactly zero, no draws consumed
    return thermal_sigma(mat, volume, temperature, dt) * rng.normal3(step, sublattice);
}

Trajectory integrate_adaptive(const StateRhs& rhs, const SublatticeState& initial,
                              const SolverOptions& opts, const ThermalSpec& thermal) {
    opts.validate();
    initial.check_unit();

    Trajectory traj;
    CounterRng rng(opts.rng_seed);

    SublatticeState state = initial;
    double t = 0.0;
    double dt_ctrl = opts.dt_base;  // controller memory, independent of end-of-window clamping
    std::uint64_t step_index = 0;
    double next_sample = 0.0;

    auto emit_samples_until = [&](double t_prev, double t_new, const SublatticeState& prev,
                                  const SublatticeState& cur) {
        while (next_sample <= t_new + 1e-30) {
            const double f =
                (t_new > t_prev) ? (next_sample - t_prev) / (t_new - t_prev) : 0.0;
            SublatticeState s;
            s.m1 = (prev.m1 * (1.0 - f) + cur.m1 * f).normalized();
            s.m2 = (prev.m2 * (1.0 - f) + cur.m2 * f).normalized();
            traj.times.push_back(next_sample);
            traj.states.push_back(s);
            next_sample += opts.sample_interval;
        }
    };

    emit_samples_until(0.0, 0.0, state, state);  // t = 0 sample

    while (t < opts.t_end - 1e-30) {
        const double dt = std::min(dt_ctrl, opts.t_end - t);

        std::array<Vec3, 2> h_th{};
        if (thermal.enabled()) {
            // Same underlying draws on a retry; only the 1/sqrt(dt) scale changes.
            const double sigma =
                thermal_sigma(thermal.material, thermal.volume, thermal.temperature, dt);
            h_th[0] = sigma * rng.normal3(step_index, 0);
            h_th[1] = sigma * rng.normal3(step_index, 1);
        }

        auto rhs6 = [&](double tt, const std::array<double, 6>& y) -> std::array<double, 6> {
            const SublatticeState s = from_array(y);
            const SublatticeRates r = rhs(tt, s, h_th);
            if (!r.dm1.finite() || !r.dm2.finite())
                throw NumericalError("non-finite right-hand side", tt);
            return {r.dm1.x, r.dm1.y, r.dm1.z, r.dm2.x, r.dm2.y, r.dm2.z};
        };

        const std::array<double, 6> y0 = to_array(state);
        const std::array<double, 6> full = rk4_step(rhs6, y0, t, dt);
        std::array<double, 6> half = rk4_step(rhs6, y0, t, 0.5 * dt);
        half = rk4_step(rhs6, half, t + 0.5 * dt, 0.5 * dt);

        double err = 0.0;
        bool finite = true;
        for (int i = 0; i < 6; ++i) {
            if (!std::isfinite(half[i]) || !std::isfinite(full[i])) finite = false;
            err = std::max(err, std::abs(full[i] - half[i]));
        }
        if (!finite) throw NumericalError("non-finite state after RK4 step", t);

        if (err > opts.rel_tol) {
            if (dt <= opts.dt_min * (1.0 + 1e-12))
                throw NumericalError("step-doubling error above tolerance at dt_min (stiff)", t);
            dt_ctrl = std::max(0.5 * dt, opts.dt_min);
            ++traj.rejected_steps;
            continue;
        }

        SublatticeState accepted = from_array(half);
        traj.max_norm_drift = std::max(
            {traj.max_norm_drift, std::abs(accepted.m1.norm() - 1.0),
             std::abs(accepted.m2.norm() - 1.0)});
        accepted.renormalize();

        const double t_new = t + dt;
        emit_samples_until(t, t_new, state, accepted);
        state = accepted;
        t = t_new;
        ++step_index;
        ++traj.accepted_steps;

        if (err < opts.rel_tol / 32.0) dt_ctrl = std::min(2.0 * dt, opts.dt_max);
    }

    traj.final_state = state;
    traj.final_time = t;
    traj.rng_draws = rng.draws();
    return traj;
}

}  // namespace afmtj
