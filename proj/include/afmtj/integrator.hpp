#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "afmtj/magdyn.hpp"
#include "afmtj/params.hpp"

namespace afmtj {

struct SolverOptions {
    double dt_base = 0.1e-12;         // [s]
    double dt_min = 0.01e-12;         // [s]
    double dt_max = 1.0e-12;          // [s]
    double rel_tol = 1e-7;            // local error tolerance per step
    double t_end = 0.0;               // [s]
    double sample_interval = 1e-12;   // trajectory decimation [s]
    double temperature = 0.0;         // [K]
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (!(dt_min <= dt_base && dt_base <= dt_max))
            throw ValidationError("SolverOptions requires dt_min <= dt_base <= dt_max");
        if (!(rel_tol > 0.0)) throw ValidationError("SolverOptions.rel_tol must be > 0");
        if (!(t_end > 0.0)) throw ValidationError("SolverOptions.t_end must be > 0");
        if (!(sample_interval > 0.0))
            throw ValidationError("SolverOptions.sample_interval must be > 0");
        if (!(temperature >= 0.0)) throw ValidationError("SolverOptions.temperature must be >= 0");
    }
};

struct Trajectory {
    std::vector<double> times;             // strictly increasing [s]
    std::vector<SublatticeState> states;   // one per sample
    std::vector<double> resistance;        // [ohm], filled by the transient module
    std::vector<double> current;           // [A], filled by the transient module

    SublatticeState final_state;
    double final_time = 0.0;

    // Integrator diagnostics.
    double max_norm_drift = 0.0;       // pre-renormalization |norm - 1| per accepted step
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::uint64_t rng_draws = 0;

    std::size_t size() const { return times.size(); }
};

// Classical RK4 over a flat state array; shared by the 6-component
// magnetization path and scalar test embeddings.
template <std::size_t N, typename Rhs>
std::array<double, N> rk4_step(Rhs&& rhs, const std::array<double, N>& y, double t, double dt) {
    std::array<double, N> k1 = rhs(t, y);
    std::array<double, N> tmp;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    std::array<double, N> k2 = rhs(t + 0.5 * dt, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    std::array<double, N> k3 = rhs(t + 0.5 * dt, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + dt * k3[i];
    std::array<double, N> k4 = rhs(t + dt, tmp);
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

// Counter-based normal sampler: a (seed, step, sublattice) tuple addresses a
// reproducible stream, so adaptive retries never desynchronize draws.
class CounterRng {
   public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    // Standard-normal triple for one sublattice at one accepted-step index.
    Vec3 normal3(std::uint64_t step, std::uint32_t sublattice);

    std::uint64_t draws() const { return draws_; }

   private:
    double normal1(std::uint64_t step, std::uint32_t sublattice, std::uint32_t component);
    std::uint64_t seed_;
    std::uint64_t draws_ = 0;
};

struct ThermalSpec {
    double temperature = 0.0;  // [K]
    double volume = 0.0;       // per-sublattice magnetic volume [m^3]
    MaterialParams material;

    bool enabled() const { return temperature > 0.0; }
};

// Zero-mean Gaussian field, sigma^2 = 2*alpha*kB*T / (gamma*mu0^2*Ms*V*dt) per
// component, held constant within a step.
double thermal_sigma(const MaterialParams& mat, double volume, double temperature, double dt);
Vec3 sample_thermal_field(const MaterialParams& mat, double volume, double temperature,
                          double dt, CounterRng& rng, std::uint64_t step,
                          std::uint32_t sublattice);

using StateRhs =
    std::function<SublatticeRates(double t, const SublatticeState&, const std::array<Vec3, 2>&)>;
using SampleHook = std::function<void(double t, const SublatticeState&)>;

// Step-doubling adaptive RK4: accept the two-half-step result when the
// one-step/two-half-step componentwise difference stays within rel_tol;
// halve on rejection (down to dt_min), grow when comfortably below tolerance.
Trajectory integrate_adaptive(const StateRhs& rhs, const SublatticeState& initial,
                              const SolverOptions& opts, const ThermalSpec& thermal);

}  // namespace afmtj
