#include "fluorsq/dressed.hpp"

#include "fluorsq/errors.hpp"
#include "fluorsq/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fluorsq {

Eigen::Matrix4d interaction_hamiltonian(const SystemParams& s) {
    const double e1 = s.delta_a + s.delta_b;
    const double e2 = s.delta_a + s.delta_b - s.w12;
    Eigen::Matrix4d h;
    // clang-format off
    h << e1,         0.0,        -s.omega1,  0.0,
         0.0,        e2,         -s.omega2,  0.0,
         -s.omega1,  -s.omega2,  s.delta_b,  -s.omega3,
         0.0,        0.0,        -s.omega3,  0.0;
    // clang-format on
    return h;
}

std::optional<Eigen::Vector4d> closed_form_coefficients(const SystemParams& s, double lambda) {
    const double d1 = lambda - s.delta_a - s.delta_b;
    const double d2 = lambda + s.w12 - s.delta_a - s.delta_b;
    if (std::abs(d1) <= kClosedFormMinDenominator || std::abs(d2) <= kClosedFormMinDenominator) return std::nullopt;

    const double norm = std::sqrt(s.omega3 * s.omega3 + lambda * lambda +
                                  lambda * lambda * s.omega1 * s.omega1 / (d1 * d1) +
                                  lambda * lambda * s.omega2 * s.omega2 / (d2 * d2));
    if (norm == 0.0) return std::nullopt;
    return Eigen::Vector4d(lambda * s.omega1 / (norm * d1), lambda * s.omega2 / (norm * d2), -lambda / norm,
                           s.omega3 / norm);
}

DressedBasis dressed_basis(const SystemParams& params) {
    DressedBasis out;
    out.hamiltonian = interaction_hamiltonian(params);
    const auto eig = jacobi_eigen<4>(out.hamiltonian);
    out.lambdas = eig.values;
    out.coeffs = eig.vectors;
    out.off_diagonal_norm = eig.off_diagonal_norm;

    for (int i = 0; i + 1 < 4; ++i) {
        if (out.lambdas(i + 1) - out.lambdas(i) < kDegenerateGap) {
            throw Error(ErrorCode::DegenerateSpectrum,
                        "dressed_basis: eigenvalues " + std::to_string(out.lambdas(i)) + " and " +
                            std::to_string(out.lambdas(i + 1)) + " coincide");
        }
    }

    double deviation = 0.0;
    bool closed_form_ok = true;
    for (int i = 0; i < 4; ++i) {
        auto column = out.coeffs.col(i);
        const auto closed = closed_form_coefficients(params, out.lambdas(i));
        if (closed) {
            if (column.dot(*closed) < 0.0) column = -column;
            deviation = std::max(deviation, (column - *closed).cwiseAbs().maxCoeff());
        } else {
            closed_form_ok = false;
            Eigen::Index largest = 0;
            column.cwiseAbs().maxCoeff(&largest);
            if (column(largest) < 0.0) column = -column;
        }
    }
    if (closed_form_ok) out.closed_form_deviation = deviation;
    return out;
}

DressedBasis assign_labels(DressedBasis basis, double feature_omega) {
    const double target = std::abs(feature_omega);
    double best = std::numeric_limits<double>::infinity();
    for (int hi = 0; hi < 4; ++hi) {
        for (int lo = 0; lo < hi; ++lo) {
            const double distance = std::abs(basis.lambdas(hi) - basis.lambdas(lo) - target);
            if (distance < best) {
                best = distance;
                basis.labels.alpha = hi;
                basis.labels.beta = lo;
            }
        }
    }
    std::array<int, 2> rest{};
    int n = 0;
    for (int i = 3; i >= 0; --i) {
        if (i != basis.labels.alpha && i != basis.labels.beta) rest[static_cast<std::size_t>(n++)] = i;
    }
    basis.labels.kappa = rest[0];
    basis.labels.delta = rest[1];
    return basis;
}

double deepest_dip(const SpectrumSeries& series) {
    if (series.values.empty()) throw Error(ErrorCode::InvalidArgument, "deepest_dip: empty spectrum");
    const auto it = std::min_element(series.values.begin(), series.values.end());
    return series.grid[static_cast<std::size_t>(it - series.values.begin())];
}

Eigen::Vector4d dressed_populations(const DressedBasis& basis, const StateVector& state) {
    Eigen::Vector4d out = Eigen::Vector4d::Zero();
    for (int i = 0; i < 4; ++i) {
        Complex sum = 0.0;
        for (int m = 1; m <= 4; ++m) {
            for (int n = 1; n <= 4; ++n) sum += basis.a(m, i) * basis.a(n, i) * state.rho(m, n);
        }
        out(i) = sum.real();
    }
    return out;
}

DecayRateTerms decay_rate_terms(const DressedBasis& b, int i, int j) {
    const auto a = [&b](int level, int column) { return b.a(level, column); };
    DecayRateTerms t;
    t.g1 = a(1, i) * a(1, i) + a(1, j) * a(1, j) - 2.0 * a(1, i) * a(1, j) * a(3, i) * a(3, j);
    t.g2 = a(2, i) * a(2, i) + a(2, j) * a(2, j) - 2.0 * a(2, i) * a(2, j) * a(3, i) * a(3, j);
    t.g3 = a(3, i) * a(3, i) + a(3, j) * a(3, j) - 2.0 * a(3, i) * a(3, j) * a(4, i) * a(4, j);
    t.gprime = 2.0 * a(1, i) * a(2, i) + 2.0 * a(1, j) * a(2, j) -
               2.0 * a(3, i) * a(3, j) * (a(1, i) * a(2, j) + a(1, j) * a(2, i));
    return t;
}

double coherence_decay_rate(const DressedBasis& basis, int i, int j, const SystemParams& s) {
    const DecayRateTerms t = decay_rate_terms(basis, i, j);
    return t.g1 * s.gamma1 + t.g2 * s.gamma2 + t.g3 * s.gamma3 + t.gprime * cross_damping(s);
}

DressedPair dressed_pair(const DressedBasis& basis, int i, int j, const SystemParams& params,
                        const Eigen::Vector4d& pops) {
    DressedPair out;
    out.i = i;
    out.j = j;
    out.omega_ij = basis.lambda(i) - basis.lambda(j);
    out.gamma_ij = coherence_decay_rate(basis, i, j, params);
    out.pop_i = pops(i);
    out.pop_j = pops(j);
    return out;
}

namespace {

double lorentzian_pair(double gamma, double center, double omega) {
    return gamma / (gamma * gamma + (omega - center) * (omega - center)) +
           gamma / (gamma * gamma + (omega + center) * (omega + center));
}

} // namespace

double lorentzian_a(const DressedBasis& b, const DressedPair& pair, const SystemParams& params, double omega) {
    const int al = pair.i, be = pair.j;
    const auto a = [&b](int level, int column) { return b.a(level, column); };
    const double p = params.p;
    const double weight = a(3, al) * a(1, be) + a(1, al) * a(3, be);
    const double bracket = (a(3, be) * a(1, al) + p * a(3, be) * a(2, al)) * pair.pop_i +
                           (a(3, al) * a(1, be) + p * a(3, al) * a(2, be)) * pair.pop_j;
    return weight * bracket * lorentzian_pair(pair.gamma_ij, pair.omega_ij, omega);
}

double lorentzian_b(const DressedBasis& b, const DressedPair& pair, double omega) {
    const int al = pair.i, be = pair.j;
    const auto a = [&b](int level, int column) { return b.a(level, column); };
    const double weight = a(3, al) * a(4, be) + a(4, al) * a(3, be);
    const double bracket = a(3, al) * a(4, be) * pair.pop_i + a(4, al) * a(3, be) * pair.pop_j;
    return weight * bracket * lorentzian_pair(pair.gamma_ij, pair.omega_ij, omega);
}

} // namespace fluorsq
