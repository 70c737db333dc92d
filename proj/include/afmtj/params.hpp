#pragma once

#include <cmath>
#include <string>

#include "afmtj/errors.hpp"
#include "afmtj/vec3.hpp"

namespace afmtj {

// CODATA values, fixed for every run.
namespace constants {
inline constexpr double gamma = 1.760859e11;       // gyromagnetic ratio [rad/(s*T)]
inline constexpr double mu0 = 1.25663706212e-6;    // vacuum permeability [T*m/A]
inline constexpr double hbar = 1.054571817e-34;    // reduced Planck constant [J*s]
inline constexpr double e_charge = 1.602176634e-19;  // elementary charge [C]
inline constexpr double kB = 1.380649e-23;         // Boltzmann constant [J/K]
// Precession rate per unit field: gamma*mu0 [rad/s per A/m].
inline constexpr double gamma_mu0 = gamma * mu0;
}  // namespace constants

// Unit conversions applied at the config boundary; SI everywhere else.
namespace units {
inline constexpr double nm = 1e-9;
inline constexpr double ps = 1e-12;
inline constexpr double ns = 1e-9;
inline constexpr double fJ = 1e-15;
inline constexpr double emu_cm3 = 1e3;  // 1 emu/cm^3 = 10^3 A/m
}  // namespace units

struct MaterialParams {
    double Ms = 6e5;     // saturation magnetization [A/m]
    double alpha = 0.01; // Gilbert damping
    double P0 = 0.8;     // spin polarization
    double Hk = 4e4;     // effective uniaxial anisotropy field, easy axis +z [A/m]
    double Nz = 1.0;     // thin-film demagnetization factor

    void validate() const {
        if (!(Ms > 0.0)) throw ValidationError("MaterialParams.Ms must be > 0");
        if (!(alpha > 0.0)) throw ValidationError("MaterialParams.alpha must be > 0");
        if (!(P0 > 0.0 && P0 <= 1.0)) throw ValidationError("MaterialParams.P0 must be in (0, 1]");
        if (!(Hk >= 0.0)) throw ValidationError("MaterialParams.Hk must be >= 0");
        if (!(Nz >= 0.0 && Nz <= 1.0)) throw ValidationError("MaterialParams.Nz must be in [0, 1]");
    }
};

struct ExchangeParams {
    double j_af_raw = 5e-3;  // bare dimensionless coupling constant; metadata only
    double omega_E = 0.0;    // exchange torque rate [rad/s]; the quantity the model uses

    // Equivalent exchange field magnitude [A/m]: gamma*mu0*h_E == omega_E.
    double h_E() const { return omega_E / constants::gamma_mu0; }

    void validate() const {
        if (!(omega_E >= 0.0)) throw ValidationError("ExchangeParams.omega_E must be >= 0");
    }
};

struct DeviceGeometry {
    double lx = 45e-9;  // [m]
    double ly = 45e-9;  // [m]
    double lz = 0.45e-9;  // free-layer thickness [m]

    double area() const { return lx * ly; }
    double volume() const { return lx * ly * lz; }

    void validate() const {
        if (!(lx > 0.0 && ly > 0.0 && lz > 0.0))
            throw ValidationError("DeviceGeometry dimensions must be > 0");
    }
};

struct ResistanceModel {
    double r_p = 2900.0;  // parallel resistance [ohm]
    double tmr = 0.8;     // TMR ratio

    double r_ap() const { return r_p * (1.0 + tmr); }

    void validate() const {
        if (!(r_p > 0.0)) throw ValidationError("ResistanceModel.r_p must be > 0");
        if (!(tmr >= 0.0)) throw ValidationError("ResistanceModel.tmr must be >= 0");
        if (tmr > 5.0)
            throw ValidationError("ResistanceModel.tmr exceeds the admissible bound 5.0 (500%)");
    }
};

enum class DeviceKind { AFMTJ, MTJ };

inline std::string to_string(DeviceKind k) {
    return k == DeviceKind::AFMTJ ? "AFMTJ" : "MTJ";
}

// Exchange enters the equation of motion either as a torque term (default)
// or folded into the effective field.
enum class ExchangeChannel { Torque, Field };

struct DeviceParams {
    DeviceKind kind = DeviceKind::AFMTJ;
    DeviceGeometry geometry;
    MaterialParams material;
    ExchangeParams exchange;
    ResistanceModel resistance;
    Vec3 p1 = {0.0, 0.0, 1.0};   // staggered polarizer, sublattice 1
    Vec3 p2 = {0.0, 0.0, -1.0};  // staggered polarizer, sublattice 2
    double temperature = 0.0;    // [K]
    ExchangeChannel exchange_channel = ExchangeChannel::Torque;

    void validate() const {
        geometry.validate();
        material.validate();
        exchange.validate();
        resistance.validate();
        if (!(temperature >= 0.0)) throw ValidationError("DeviceParams.temperature must be >= 0");
        if (kind == DeviceKind::MTJ && exchange.omega_E > 0.0)
            throw ValidationError("MTJ kind must have omega_E = 0 (single macrospin)");
        if (kind == DeviceKind::AFMTJ && !(exchange.omega_E > 0.0))
            throw ValidationError("AFMTJ kind requires omega_E > 0");
        if (std::abs(p1.norm() - 1.0) > 1e-9 || std::abs(p2.norm() - 1.0) > 1e-9)
            throw ValidationError("polarizers must be unit vectors");
    }
};

struct SwitchCriterion {
    double threshold = 0.9;  // reversal threshold on the order-parameter projection
    double guard = 0.5;      // anti-backhopping floor

    void validate() const {
        if (!(guard > 0.0 && guard < threshold && threshold <= 1.0))
            throw ValidationError("SwitchCriterion requires 0 < guard < threshold <= 1");
    }
};

}  // namespace afmtj
