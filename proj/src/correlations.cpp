#include "fluorsq/correlations.hpp"

#include "fluorsq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fluorsq {

CorrelationVector initial_correlations(const StateVector& state, LevelPair target) {
    if (target != kTargetA31 && target != kTargetA32 && target != kTargetA43) {
        throw Error(ErrorCode::UnsupportedTarget, "initial_correlations: target (" + std::to_string(target.m) +
                                                      "," + std::to_string(target.n) + ")");
    }
    const int m = target.m, n = target.n;
    CorrelationVector out{target, CVector::Zero()};
    for (int k = 1; k <= kComponents; ++k) {
        const auto [a, b] = components::op_label(k);
        Complex value = -state.rho(b, a) * state.rho(n, m);
        if (b == m) value += state.rho(n, a);
        out.u0(k - 1) = value;
    }
    return out;
}

namespace {

CVector rk4_step(const CMatrix& L, const CVector& y, double h) {
    const CVector k1 = L * y;
    const CVector k2 = L * (y + 0.5 * h * k1);
    const CVector k3 = L * (y + 0.5 * h * k2);
    const CVector k4 = L * (y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace

std::vector<CVector> propagate(const LiouvillianSystem& sys, const CVector& u0, std::span<const double> tau_grid,
                               const PropagationOptions& options) {
    std::vector<CVector> out;
    if (tau_grid.empty()) return out;
    if (tau_grid.front() != 0.0) throw Error(ErrorCode::InvalidArgument, "propagate: tau grid must start at 0");
    if (!std::is_sorted(tau_grid.begin(), tau_grid.end()))
        throw Error(ErrorCode::AscendingGridRequired, "propagate: tau grid must be ascending");

    out.reserve(tau_grid.size());
    CVector y = u0;
    double t = 0.0;
    double h = options.initial_step;
    out.push_back(y);

    for (std::size_t i = 1; i < tau_grid.size(); ++i) {
        const double target = tau_grid[i];
        while (t < target) {
            // Absorb a short remainder instead of leaving a sliver step.
            const bool last = t + 1.25 * h >= target;
            const double step = last ? target - t : h;

            const CVector full = rk4_step(sys.L, y, step);
            const CVector half = rk4_step(sys.L, rk4_step(sys.L, y, 0.5 * step), 0.5 * step);
            const double err = (half - full).cwiseAbs().maxCoeff() / 15.0;
            // Differences below the rounding level of y carry no information.
            const double floor = 64.0 * std::numeric_limits<double>::epsilon() * y.cwiseAbs().maxCoeff();
            const double allowed = std::max(options.tolerance * step, floor);

            if (err <= allowed) {
                y = half + (half - full) / 15.0;
                t = last ? target : t + step;
            }
            // Fourth-order controller on the error per unit step.
            const double factor =
                err == 0.0 ? 4.0 : std::clamp(0.9 * std::pow(allowed / err, 0.25), 0.2, 4.0);
            if (err > allowed) {
                // A rejected step must shrink enough to escape the remainder slack.
                h = step * std::min(factor, 0.7);
            } else if (last) {
                // Keep the controller's step rather than the truncated one.
                h = std::max(h, step * factor);
            } else {
                h = step * factor;
            }
            if (h < options.min_step) {
                throw Error(ErrorCode::StepSizeUnderflow,
                            "propagate: step size " + std::to_string(h) + " at tau = " + std::to_string(t));
            }
        }
        out.push_back(y);
    }
    return out;
}

} // namespace fluorsq
