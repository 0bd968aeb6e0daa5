#pragma once

#include "fluorsq/correlations.hpp"
#include "fluorsq/liouvillian.hpp"
#include "fluorsq/model.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fluorsq {

// Field a is emitted on the upper transitions |1>,|2> -> |3>, field b on |3> -> |4>.
enum class Channel { a, b };

std::string_view to_string(Channel channel) noexcept;

// Everything the spectra need that does not depend on omega or theta.
struct StationaryProblem {
    SystemParams params;
    LiouvillianSystem system;
    StateVector state;
    CorrelationVector u31;
    CorrelationVector u32;
    CorrelationVector u43;
};

// Validates params, builds L, solves for the steady state and assembles the
// three correlation vectors.
StationaryProblem prepare(const SystemParams& params);

struct ResolventMatrix {
    double omega = 0.0;
    // (i omega - L)^{-1} + (-i omega - L)^{-1}
    CMatrix m = CMatrix::Zero();
};

// LU factorizations of both shifted matrices at one frequency. apply() gives
// M(omega) * v without forming the inverse.
class ShiftedResolvent {
public:
    // Throws Error{ResolventSingular} if either shift is numerically singular.
    ShiftedResolvent(const LiouvillianSystem& sys, double omega);

    double omega() const noexcept { return omega_; }
    CVector apply(const CVector& v) const;
    CMatrix matrix() const;

private:
    double omega_;
    Eigen::PartialPivLU<CMatrix> plus_;
    Eigen::PartialPivLU<CMatrix> minus_;
};

ResolventMatrix resolvent(const LiouvillianSystem& sys, double omega);

// Squeezing spectra in the fixed units of SpectralScale: the real part of the
// bracketed resolvent sum. The raw variants return the complex sum before the
// real part is taken.
Complex spectrum_a_raw(const StationaryProblem& problem, double omega, double theta);
Complex spectrum_b_raw(const StationaryProblem& problem, double omega, double theta);
double spectrum_a(const StationaryProblem& problem, double omega, double theta);
double spectrum_b(const StationaryProblem& problem, double omega, double theta);

// Single-transition (s1, s2) and vacuum-mediated (s12, s21) parts of S_a at
// theta = 0: S_a = s1 + s2 + p (s12 + s21).
struct Decomposition {
    double s1 = 0.0;
    double s2 = 0.0;
    double s12 = 0.0;
    double s21 = 0.0;

    double recompose(double p) const { return s1 + s2 + p * (s12 + s21); }
};

Decomposition decompose_a(const StationaryProblem& problem, double omega);

struct SpectrumSeries {
    struct Components {
        std::vector<double> s1, s2, s12, s21;
    };

    std::vector<double> grid;
    std::vector<double> values;
    // Imaginary part of the bracketed sum discarded at each point.
    std::vector<double> imag;
    Channel channel = Channel::a;
    double theta = 0.0;
    std::optional<Components> components;

    std::size_t size() const noexcept { return grid.size(); }
    double max_abs_imag() const;
};

// Evaluates one channel over an ascending frequency grid, one LU pair per
// point. Components are only available for channel a. Per-point failures are
// collected and reported together with the offending frequencies.
SpectrumSeries sweep(const StationaryProblem& problem, std::span<const double> grid, Channel channel, double theta,
                     bool with_components = false);

SpectrumSeries sweep(const SystemParams& params, std::span<const double> grid, Channel channel, double theta,
                     bool with_components = false);

// n equally spaced points on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

} // namespace fluorsq
