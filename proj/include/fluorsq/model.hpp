#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace fluorsq {

// Physical inputs of the driven Y-type atom. Levels: |1>,|2> excited,
// |3> intermediate, |4> ground. All rates and frequencies are in units of
// gamma3 once validated. gamma1, gamma2, gamma3 are half decay rates (the
// full rates are 2*gamma).
struct SystemParams {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double gamma3 = 1.0;
    double w12 = 0.0;     // excited-state splitting
    double delta_a = 0.0; // omega_13 - omega_a
    double delta_b = 0.0; // omega_34 - omega_b
    double omega1 = 0.0;  // Rabi frequencies (real)
    double omega2 = 0.0;
    double omega3 = 0.0;
    double p = 0.0;       // interference parameter, cosine of the dipole angle
    double theta = 0.0;   // quadrature phase, radians

    bool operator==(const SystemParams&) const = default;
};

// Fixed normalization of the emitted spectra. Every member is unity; the
// struct only records the convention: S_a is reported in units of
// mu^2 f(r)^2 / (pi gamma3), S_b in units of |mu_34|^2 g(r)^2 / (pi gamma3),
// and both propagation phases exp(2 i omega r / c) are set to 1.
struct SpectralScale {
    static constexpr double scale_a = 1.0;
    static constexpr double scale_b = 1.0;
    static constexpr double propagation_phase_a = 1.0;
    static constexpr double propagation_phase_b = 1.0;
};

// Checks the physical constraints and rescales everything by gamma3.
// Throws Error{BadNormalization | NegativeRate | InterferenceOutOfRange}.
SystemParams validate(const SystemParams& raw);

// Non-fatal remarks about a validated parameter set (e.g. upper decays off,
// so interference terms vanish identically).
std::vector<std::string> warnings(const SystemParams& params);

// p * sqrt(gamma1 * gamma2), the cross-damping strength.
inline double cross_damping(const SystemParams& s) { return s.p * std::sqrt(s.gamma1 * s.gamma2); }

} // namespace fluorsq
