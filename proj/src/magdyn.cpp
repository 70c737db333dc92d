#include "afmtj/magdyn.hpp"

namespace afmtj {

EffectiveField effective_field(const SublatticeState& state, const MaterialParams& mat,
                               const ExchangeParams& ex,
                               const std::array<Vec3, 2>& h_thermal) {
    // No unit check here: RK4 stage states drift slightly off-norm by design.
    EffectiveField f;
    const Vec3 m[2] = {state.m1, state.m2};
    const double m_net_z = 0.5 * (state.m1.z + state.m2.z);
    const double h_E = ex.h_E();
    for (int i = 0; i < 2; ++i) {
        f.anisotropy[i] = Vec3{0.0, 0.0, mat.Hk * m[i].z};
        // Demag acts on the net moment only; a compensated AFM has m_net ~ 0.
        f.demag[i] = Vec3{0.0, 0.0, -mat.Nz * mat.Ms * m_net_z};
        f.exchange[i] = -h_E * m[1 - i];
        f.thermal[i] = h_thermal[i];
    }
    return f;
}

Vec3 exchange_torque(const Vec3& m_self, const Vec3& m_other, const ExchangeParams& ex) {
    // Matches the field form -h_E*m_other: -g*mu0 m x (-h_E m_other) = +omega_E m x m_other.
    // The opposite sign anti-damps the staggered state toward ferromagnetic
    // alignment, which contradicts the AFM ground state.
    return ex.omega_E * cross(m_self, m_other);
}

double stt_prefactor(double j_density, const MaterialParams& mat, double thickness,
                     double stt_scale) {
    if (!(thickness > 0.0)) throw ValidationError("stt_torque: free-layer thickness must be > 0");
    return constants::gamma * constants::hbar * mat.P0 * stt_scale * j_density /
           (2.0 * constants::e_charge * mat.Ms * thickness);
}

Vec3 stt_torque(const Vec3& m, const Vec3& p, double j_density, const MaterialParams& mat,
                double thickness, double stt_scale) {
    const double a_j = stt_prefactor(j_density, mat, thickness, stt_scale);
    return -a_j * cross(m, cross(m, p));
}

namespace {

Vec3 gilbert_explicit(const Vec3& m, const Vec3& h, const Vec3& torque, double alpha) {
    const double inv = 1.0 / (1.0 + alpha * alpha);
    const Vec3 m_x_h = cross(m, h);
    const Vec3 precession = -constants::gamma_mu0 * m_x_h;
    const Vec3 damping = -constants::gamma_mu0 * alpha * cross(m, m_x_h);
    return inv * (precession + damping + torque + alpha * cross(m, torque));
}

}  // namespace

SublatticeRates llg_rhs(const SublatticeState& state, const MaterialParams& mat,
                        const ExchangeParams& ex, const DeviceGeometry& geom,
                        const LlgDrive& drive, ExchangeChannel channel) {
    const EffectiveField f = effective_field(state, mat, ex, drive.h_thermal);
    const bool field_channel = (channel == ExchangeChannel::Field);

    const Vec3 h1 = field_channel ? f.total(0) : f.total_no_exchange(0);
    Vec3 t1 = stt_torque(state.m1, drive.p1, drive.j_density, mat, geom.lz, drive.stt_scale);
    if (!field_channel && !drive.single_spin) t1 += exchange_torque(state.m1, state.m2, ex);

    SublatticeRates rates;
    rates.dm1 = gilbert_explicit(state.m1, h1, t1, mat.alpha);

    if (drive.single_spin) {
        rates.dm2 = Vec3{};
        return rates;
    }

    const Vec3 h2 = field_channel ? f.total(1) : f.total_no_exchange(1);
    Vec3 t2 = stt_torque(state.m2, drive.p2, drive.j_density, mat, geom.lz, drive.stt_scale);
    if (!field_channel) t2 += exchange_torque(state.m2, state.m1, ex);
    rates.dm2 = gilbert_explicit(state.m2, h2, t2, mat.alpha);
    return rates;
}

}  // namespace afmtj
