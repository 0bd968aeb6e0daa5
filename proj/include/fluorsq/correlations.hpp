#pragma once

#include "fluorsq/liouvillian.hpp"

#include <span>
#include <vector>

namespace fluorsq {

// Transition operators whose fluctuations feed the spectra: A_31, A_32 (upper
// transitions, field a) and A_43 (lower transition, field b).
inline constexpr LevelPair kTargetA31{3, 1};
inline constexpr LevelPair kTargetA32{3, 2};
inline constexpr LevelPair kTargetA43{4, 3};

// Equal-time steady-state fluctuation correlations
//   u0_k = <dA_{op(k)} dA_{mn}>,  dA = A - <A>,
// in the component ordering of the state vector.
struct CorrelationVector {
    LevelPair target;
    CVector u0 = CVector::Zero();
};

// Uses A_{ab} A_{mn} = delta_{bm} A_{an} and <A_{an}> = rho_{na}:
//   u0_k = delta_{b,m} rho_{n,a} - rho_{b,a} rho_{n,m},  (a,b) = op_label(k).
// Throws Error{UnsupportedTarget} for targets other than A31, A32, A43.
CorrelationVector initial_correlations(const StateVector& state, LevelPair target);

struct PropagationOptions {
    // Accepted local error per unit tau (max-norm, absolute).
    double tolerance = 1e-10;
    double min_step = 1e-12;
    double initial_step = 1e-3;
};

// Integrates du/dtau = L u from u(0) = u0 with adaptive RK4 (step doubling)
// and returns u at every point of tau_grid. The grid must start at 0 and be
// non-decreasing. Throws Error{StepSizeUnderflow} when the controller needs a
// step below options.min_step.
std::vector<CVector> propagate(const LiouvillianSystem& sys, const CVector& u0, std::span<const double> tau_grid,
                               const PropagationOptions& options = {});

inline std::vector<CVector> propagate(const LiouvillianSystem& sys, const CorrelationVector& u0,
                                      std::span<const double> tau_grid, const PropagationOptions& options = {}) {
    return propagate(sys, u0.u0, tau_grid, options);
}

} // namespace fluorsq
