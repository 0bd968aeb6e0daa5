#pragma once

#include "fluorsq/liouvillian.hpp"
#include "fluorsq/model.hpp"
#include "fluorsq/spectrum.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>

namespace fluorsq {

// Column indices (into DressedBasis::coeffs) of the four labelled dressed
// states. alpha/beta is the pair behind the dominant sideband.
struct DressedLabels {
    int alpha = 3;
    int beta = 0;
    int kappa = 2;
    int delta = 1;
};

struct DressedBasis {
    Eigen::Vector4d lambdas;     // ascending
    Eigen::Matrix4d coeffs;      // coeffs(j, i) = <j+1 | Phi_i>
    Eigen::Matrix4d hamiltonian; // H / hbar in the bare basis |1>..|4>
    DressedLabels labels;
    double off_diagonal_norm = 0.0;
    // Largest |numeric - closed form| coefficient deviation; empty when some
    // closed-form denominator is too small to evaluate reliably.
    std::optional<double> closed_form_deviation;

    double lambda(int column) const { return lambdas(column); }
    double a(int level, int column) const { return coeffs(level - 1, column); }
};

inline constexpr double kDegenerateGap = 1e-8;
inline constexpr double kClosedFormMinDenominator = 1e-6;

Eigen::Matrix4d interaction_hamiltonian(const SystemParams& params);

// Expansion coefficients of the eigenvector with eigenvalue lambda written in
// closed form; nullopt if |lambda - da - db| or |lambda + w12 - da - db| is at
// most kClosedFormMinDenominator.
std::optional<Eigen::Vector4d> closed_form_coefficients(const SystemParams& params, double lambda);

// Jacobi eigen-decomposition of the interaction Hamiltonian. Column signs
// follow the closed form where it is defined (otherwise the largest entry is
// made positive). Labels default to alpha = highest, beta = lowest; use
// assign_labels / label_from_spectrum for the spectrum-driven rule.
// Throws Error{DegenerateSpectrum} if two eigenvalues lie within kDegenerateGap.
DressedBasis dressed_basis(const SystemParams& params);

// alpha/beta become the pair whose transition frequency |lambda_i - lambda_j|
// is closest to |feature_omega|, with alpha the upper state; kappa and delta
// are the remaining two in descending order.
DressedBasis assign_labels(DressedBasis basis, double feature_omega);

// Location of the most negative sample of a spectrum.
double deepest_dip(const SpectrumSeries& series);

inline DressedBasis label_from_spectrum(DressedBasis basis, const SpectrumSeries& series) {
    return assign_labels(std::move(basis), deepest_dip(series));
}

// rho^D_ii = sum_{m,n} a_mi a_ni rho_mn for each column i.
Eigen::Vector4d dressed_populations(const DressedBasis& basis, const StateVector& state);

// Coefficients of the dressed coherence decay rate
//   Gamma_ij = g1 * gamma1 + g2 * gamma2 + g3 * gamma3 + gprime * p sqrt(gamma1 gamma2).
struct DecayRateTerms {
    double g1 = 0.0;
    double g2 = 0.0;
    double g3 = 0.0;
    double gprime = 0.0;
};

DecayRateTerms decay_rate_terms(const DressedBasis& basis, int i, int j);
double coherence_decay_rate(const DressedBasis& basis, int i, int j, const SystemParams& params);

struct DressedPair {
    int i = 0;
    int j = 0;
    double omega_ij = 0.0; // lambda_i - lambda_j
    double gamma_ij = 0.0;
    double pop_i = 0.0;
    double pop_j = 0.0;
};

DressedPair dressed_pair(const DressedBasis& basis, int i, int j, const SystemParams& params,
                        const Eigen::Vector4d& pops);

inline DressedPair alpha_beta(const DressedBasis& basis, const SystemParams& params, const Eigen::Vector4d& pops) {
    return dressed_pair(basis, basis.labels.alpha, basis.labels.beta, params, pops);
}

// Secular Lorentzian pair at +-omega_ij approximating S_a(omega, 0) and
// S_b(omega, 0) near the (i, j) sidebands; both branches are summed.
double lorentzian_a(const DressedBasis& basis, const DressedPair& pair, const SystemParams& params, double omega);
double lorentzian_b(const DressedBasis& basis, const DressedPair& pair, double omega);

} // namespace fluorsq
