#include "fluorsq/spectrum.hpp"

#include "fluorsq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace fluorsq {

std::string_view to_string(Channel channel) noexcept { return channel == Channel::a ? "a" : "b"; }

StationaryProblem prepare(const SystemParams& params) {
    StationaryProblem out;
    out.params = validate(params);
    out.system = build(out.params);
    out.state = steady_state(out.system);
    out.u31 = initial_correlations(out.state, kTargetA31);
    out.u32 = initial_correlations(out.state, kTargetA32);
    out.u43 = initial_correlations(out.state, kTargetA43);
    return out;
}

namespace {

constexpr Complex kI{0.0, 1.0};

// Row of the resolvent sum that carries the operator A_{ab}.
constexpr int row_of(int a, int b) { return components::slot(b, a); }

Eigen::PartialPivLU<CMatrix> factor_shift(const LiouvillianSystem& sys, Complex shift, double omega) {
    CMatrix shifted = -sys.L;
    shifted.diagonal().array() += shift;
    Eigen::PartialPivLU<CMatrix> lu(shifted);
    if (!(lu.rcond() >= kSingularRcond)) {
        throw Error(ErrorCode::ResolventSingular, "resolvent: shifted Liouvillian singular at omega = " +
                                                      std::to_string(omega));
    }
    return lu;
}

Complex phase_factor(double theta) { return std::exp(2.0 * kI * theta); }

} // namespace

ShiftedResolvent::ShiftedResolvent(const LiouvillianSystem& sys, double omega)
    : omega_(omega), plus_(factor_shift(sys, kI * omega, omega)), minus_(factor_shift(sys, -kI * omega, omega)) {}

CVector ShiftedResolvent::apply(const CVector& v) const { return plus_.solve(v) + minus_.solve(v); }

CMatrix ShiftedResolvent::matrix() const { return plus_.inverse() + minus_.inverse(); }

ResolventMatrix resolvent(const LiouvillianSystem& sys, double omega) {
    return {omega, ShiftedResolvent(sys, omega).matrix()};
}

namespace {

// M u31 and M u32 share one factorization.
struct UpperSums {
    CVector m31;
    CVector m32;
};

UpperSums upper_sums(const StationaryProblem& problem, const ShiftedResolvent& r) {
    return {r.apply(problem.u31.u0), r.apply(problem.u32.u0)};
}

Complex spectrum_a_from(const UpperSums& s, double p, double theta) {
    const CVector field1 = s.m31 + p * s.m32; // |mu13|^2 U31 + mu13.mu23 U32
    const CVector field2 = s.m32 + p * s.m31;
    const Complex squeezed = field1(row_of(3, 1)) + field2(row_of(3, 2));
    const Complex normal = field1(row_of(1, 3)) + field2(row_of(2, 3));
    return squeezed * phase_factor(theta) + normal;
}

Complex spectrum_b_from(const CVector& m43, double theta) {
    return m43(row_of(4, 3)) * phase_factor(theta) + m43(row_of(3, 4));
}

Decomposition decompose_from(const UpperSums& s) {
    const int r31 = row_of(3, 1), r13 = row_of(1, 3);
    const int r32 = row_of(3, 2), r23 = row_of(2, 3);
    return {
        (s.m31(r31) + s.m31(r13)).real(),
        (s.m32(r32) + s.m32(r23)).real(),
        (s.m32(r31) + s.m32(r13)).real(),
        (s.m31(r32) + s.m31(r23)).real(),
    };
}

} // namespace

Complex spectrum_a_raw(const StationaryProblem& problem, double omega, double theta) {
    const ShiftedResolvent r(problem.system, omega);
    return spectrum_a_from(upper_sums(problem, r), problem.params.p, theta);
}

Complex spectrum_b_raw(const StationaryProblem& problem, double omega, double theta) {
    const ShiftedResolvent r(problem.system, omega);
    return spectrum_b_from(r.apply(problem.u43.u0), theta);
}

double spectrum_a(const StationaryProblem& problem, double omega, double theta) {
    return spectrum_a_raw(problem, omega, theta).real();
}

double spectrum_b(const StationaryProblem& problem, double omega, double theta) {
    return spectrum_b_raw(problem, omega, theta).real();
}

Decomposition decompose_a(const StationaryProblem& problem, double omega) {
    const ShiftedResolvent r(problem.system, omega);
    return decompose_from(upper_sums(problem, r));
}

double SpectrumSeries::max_abs_imag() const {
    double out = 0.0;
    for (double v : imag) out = std::max(out, std::abs(v));
    return out;
}

SpectrumSeries sweep(const StationaryProblem& problem, std::span<const double> grid, Channel channel, double theta,
                     bool with_components) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1]))
            throw Error(ErrorCode::AscendingGridRequired, "sweep: frequency grid must be strictly ascending");
    }
    if (with_components && channel != Channel::a)
        throw Error(ErrorCode::InvalidArgument, "sweep: components are defined for channel a only");

    SpectrumSeries out;
    out.channel = channel;
    out.theta = theta;
    out.grid.assign(grid.begin(), grid.end());
    out.values.resize(grid.size());
    out.imag.resize(grid.size());
    if (with_components) {
        out.components.emplace();
        for (auto* column : {&out.components->s1, &out.components->s2, &out.components->s12, &out.components->s21})
            column->resize(grid.size());
    }

    std::vector<double> failed;
    ErrorCode failure = ErrorCode::ResolventSingular;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            const ShiftedResolvent r(problem.system, grid[i]);
            Complex raw;
            if (channel == Channel::a) {
                const UpperSums sums = upper_sums(problem, r);
                raw = spectrum_a_from(sums, problem.params.p, theta);
                if (with_components) {
                    const Decomposition d = decompose_from(sums);
                    out.components->s1[i] = d.s1;
                    out.components->s2[i] = d.s2;
                    out.components->s12[i] = d.s12;
                    out.components->s21[i] = d.s21;
                }
            } else {
                raw = spectrum_b_from(r.apply(problem.u43.u0), theta);
            }
            out.values[i] = raw.real();
            out.imag[i] = raw.imag();
        } catch (const Error& e) {
            failure = e.code();
            failed.push_back(grid[i]);
        }
    }
    if (!failed.empty()) {
        std::string where;
        for (double w : failed) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%s%.9g", where.empty() ? "" : ", ", w);
            where += buf;
        }
        throw Error(failure, "sweep failed at omega = " + where);
    }
    return out;
}

SpectrumSeries sweep(const SystemParams& params, std::span<const double> grid, Channel channel, double theta,
                     bool with_components) {
    return sweep(prepare(params), grid, channel, theta, with_components);
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
    if (n > 1) out.back() = hi;
    return out;
}

} // namespace fluorsq
