#pragma once

#include <array>

#include "afmtj/params.hpp"
#include "afmtj/vec3.hpp"

namespace afmtj {

struct SublatticeState {
    Vec3 m1{0.0, 0.0, 1.0};
    Vec3 m2{0.0, 0.0, -1.0};

    void check_unit(double tol = 1e-9) const {
        if (!m1.finite() || !m2.finite())
            throw NumericalError("SublatticeState has non-finite components");
        if (std::abs(m1.norm() - 1.0) > tol || std::abs(m2.norm() - 1.0) > tol)
            throw ValidationError("SublatticeState vectors must be unit length");
    }
    void renormalize() {
        m1 = m1.normalized();
        m2 = m2.normalized();
    }
};

// Time derivatives of the two sublattice vectors [rad/s scale, unit-vector rates].
struct SublatticeRates {
    Vec3 dm1;
    Vec3 dm2;
};

// Effective field with each contribution retrievable per sublattice [A/m].
struct EffectiveField {
    std::array<Vec3, 2> anisotropy{};
    std::array<Vec3, 2> demag{};
    std::array<Vec3, 2> exchange{};
    std::array<Vec3, 2> thermal{};

    Vec3 total(int i) const {
        return anisotropy[i] + demag[i] + exchange[i] + thermal[i];
    }
    // Field without the exchange contribution, for the torque-channel formulation.
    Vec3 total_no_exchange(int i) const {
        return anisotropy[i] + demag[i] + thermal[i];
    }
};

// h_i = Hk*(m_i.z)*z - Nz*Ms*m_net,z*z - h_E*m_j + h_thermal,i with m_net = (m1+m2)/2.
EffectiveField effective_field(const SublatticeState& state, const MaterialParams& mat,
                               const ExchangeParams& ex,
                               const std::array<Vec3, 2>& h_thermal = {});

// tau_ex = omega_E * (m_self x m_other), the torque exerted by the exchange
// field -h_E*m_other; antisymmetric under sublattice swap.
Vec3 exchange_torque(const Vec3& m_self, const Vec3& m_other, const ExchangeParams& ex);

// Slonczewski in-plane torque tau = -a_J * m x (m x p) with
// a_J = gamma*hbar*P0*eta*j / (2*e*Ms*t_F) [rad/s].
double stt_prefactor(double j_density, const MaterialParams& mat, double thickness,
                     double stt_scale = 1.0);
Vec3 stt_torque(const Vec3& m, const Vec3& p, double j_density, const MaterialParams& mat,
                double thickness, double stt_scale = 1.0);

struct LlgDrive {
    double j_density = 0.0;  // [A/m^2]
    Vec3 p1{0.0, 0.0, 1.0};
    Vec3 p2{0.0, 0.0, -1.0};
    double stt_scale = 1.0;  // calibration efficiency on top of P0
    std::array<Vec3, 2> h_thermal{};
    // MTJ mode: sublattice 2 is slaved (dm2/dt = 0, no exchange coupling).
    bool single_spin = false;
};

// Explicit form of the Gilbert equation; exact because every torque term is
// perpendicular to m:
//   dm/dt = 1/(1+a^2) * [ -g*mu0 m x H - g*mu0*a m x (m x H) + T + a m x T ]
SublatticeRates llg_rhs(const SublatticeState& state, const MaterialParams& mat,
                        const ExchangeParams& ex, const DeviceGeometry& geom,
                        const LlgDrive& drive,
                        ExchangeChannel channel = ExchangeChannel::Torque);

}  // namespace afmtj
