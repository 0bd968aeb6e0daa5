#pragma once

#include "fluorsq/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace fluorsq {

using Complex = std::complex<double>;

inline constexpr int kComponents = 15;

using CVector = Eigen::Matrix<Complex, kComponents, 1>;
using CMatrix = Eigen::Matrix<Complex, kComponents, kComponents>;
using DensityMatrix = Eigen::Matrix<Complex, 4, 4>;

// Bare level pair (m, n), levels numbered 1..4.
struct LevelPair {
    int m = 0;
    int n = 0;
    constexpr bool operator==(const LevelPair&) const = default;
};

// Fixed ordering of the 15-component state vector. Component k (1-based)
// holds rho_{mn}; the matching operator in the correlation vectors is A_{nm},
// so that <A_{op(k)}> equals psi_k. rho_44 is eliminated through the trace.
namespace components {

inline constexpr std::array<LevelPair, kComponents> kRhoLabels = {{
    {1, 1}, {2, 2}, {3, 3}, {1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4},
    {3, 4}, {2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {4, 3},
}};

constexpr LevelPair rho_label(int k) { return kRhoLabels.at(static_cast<std::size_t>(k - 1)); }

constexpr LevelPair op_label(int k) {
    const LevelPair r = rho_label(k);
    return {r.n, r.m};
}

// 1-based component holding rho_{mn}; 0 for rho_44, which is not stored.
constexpr int component_of(int m, int n) {
    for (int k = 1; k <= kComponents; ++k) {
        if (kRhoLabels[static_cast<std::size_t>(k - 1)] == LevelPair{m, n}) return k;
    }
    return 0;
}

// 0-based storage slot of rho_{mn}.
constexpr int slot(int m, int n) { return component_of(m, n) - 1; }

// Index involution mapping the rho_{mn} component onto rho_{nm}.
constexpr int conjugate_component(int k) {
    const LevelPair r = rho_label(k);
    return component_of(r.n, r.m);
}

} // namespace components

// Linear generator of d psi / dt = L psi + I.
struct LiouvillianSystem {
    CMatrix L = CMatrix::Zero();
    CVector I = CVector::Zero();
};

struct StateVector {
    CVector psi = CVector::Zero();
    double rho44 = 1.0;

    // rho_{mn} for any pair of levels, including the derived rho_44.
    Complex rho(int m, int n) const {
        if (m == 4 && n == 4) return {rho44, 0.0};
        return psi(components::slot(m, n));
    }

    DensityMatrix density_matrix() const;
};

// Assembles L and I from the density-matrix equations of the driven Y-type
// atom with cross-damping p*sqrt(gamma1*gamma2). Rows for rho_{nm} are the
// complex conjugates of the rows for rho_{mn}.
LiouvillianSystem build(const SystemParams& params);

// psi = -L^{-1} I by partial-pivoting LU. Throws Error{SingularLiouvillian}
// when the reciprocal condition estimate falls below kSingularRcond.
StateVector steady_state(const LiouvillianSystem& sys);

inline constexpr double kSingularRcond = 1e-12;

// Diagnostics used by tests and the CLI.
double residual_norm(const LiouvillianSystem& sys, const StateVector& state);
double hermiticity_defect(const StateVector& state);
// Largest real part over the spectrum of L (negative for a stable system).
double spectral_abscissa(const LiouvillianSystem& sys);

// Assembles a state vector from a Hermitian 4x4 density matrix.
StateVector from_density_matrix(const DensityMatrix& rho);

} // namespace fluorsq
