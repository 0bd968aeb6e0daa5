// Independent reference computations used only by the test suites. Nothing
// here calls into the resolvent path it is meant to check.
#pragma once

#include "fluorsq/correlations.hpp"
#include "fluorsq/dressed.hpp"
#include "fluorsq/liouvillian.hpp"
#include "fluorsq/model.hpp"
#include "fluorsq/spectrum.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using fluorsq::Complex;
using fluorsq::CMatrix;
using fluorsq::CVector;
using fluorsq::DensityMatrix;
using fluorsq::SystemParams;

inline constexpr Complex kI{0.0, 1.0};

inline SystemParams fig2(double gamma, double p, double w12 = 10.0) {
    SystemParams s;
    s.gamma1 = s.gamma2 = gamma;
    s.gamma3 = 1.0;
    s.w12 = w12;
    s.delta_a = s.delta_b = 10.0;
    s.omega1 = s.omega2 = s.omega3 = 3.0;
    s.p = p;
    return s;
}

inline SystemParams fig5(double p) {
    SystemParams s;
    s.gamma1 = s.gamma2 = 3.0;
    s.gamma3 = 1.0;
    s.w12 = 10.0;
    s.delta_a = s.delta_b = 20.0;
    s.omega1 = s.omega2 = s.omega3 = 6.0;
    s.p = p;
    return s;
}

// |m><n| in the bare basis (levels 1..4).
inline DensityMatrix ket_bra(int m, int n) {
    DensityMatrix a = DensityMatrix::Zero();
    a(m - 1, n - 1) = 1.0;
    return a;
}

// Right-hand sides of the nine independent density-matrix equations written
// out term by term, in the order rho11, rho22, rho33, rho12, rho13, rho23,
// rho34, rho14, rho24. rho44 enters only through the trace.
inline std::array<Complex, 9> literal_rhs(const SystemParams& s, const DensityMatrix& rho) {
    const auto r = [&rho](int m, int n) -> Complex {
        if (m == 4 && n == 4) return 1.0 - rho(0, 0) - rho(1, 1) - rho(2, 2);
        return rho(m - 1, n - 1);
    };
    const double q = s.p * std::sqrt(s.gamma1 * s.gamma2);
    const double g1 = s.gamma1, g2 = s.gamma2, g3 = s.gamma3;
    const double o1 = s.omega1, o2 = s.omega2, o3 = s.omega3;
    const double da = s.delta_a, db = s.delta_b, w = s.w12;
    return {
        -2.0 * g1 * r(1, 1) + kI * o1 * (r(3, 1) - r(1, 3)) - q * (r(1, 2) + r(2, 1)),
        -2.0 * g2 * r(2, 2) + kI * o2 * (r(3, 2) - r(2, 3)) - q * (r(1, 2) + r(2, 1)),
        2.0 * g1 * r(1, 1) + 2.0 * g2 * r(2, 2) - 2.0 * g3 * r(3, 3) + kI * o1 * (r(1, 3) - r(3, 1)) +
            kI * o2 * (r(2, 3) - r(3, 2)) + kI * o3 * (r(4, 3) - r(3, 4)) + 2.0 * q * (r(1, 2) + r(2, 1)),
        -(g1 + g2 + kI * w) * r(1, 2) + kI * o1 * r(3, 2) - kI * o2 * r(1, 3) - q * (r(1, 1) + r(2, 2)),
        -(g1 + g3 + kI * da) * r(1, 3) + kI * o1 * (r(3, 3) - r(1, 1)) - kI * o2 * r(1, 2) - kI * o3 * r(1, 4) -
            q * r(2, 3),
        -(g2 + g3 + kI * (da - w)) * r(2, 3) + kI * o2 * (r(3, 3) - r(2, 2)) - kI * o1 * r(2, 1) -
            kI * o3 * r(2, 4) - q * r(1, 3),
        -(g3 + kI * db) * r(3, 4) + kI * o3 * (r(4, 4) - r(3, 3)) + kI * o1 * r(1, 4) + kI * o2 * r(2, 4),
        -(g1 + kI * (da + db)) * r(1, 4) + kI * o1 * r(3, 4) - kI * o3 * r(1, 3) - q * r(2, 4),
        -(g2 + kI * (da + db - w)) * r(2, 4) + kI * o2 * r(3, 4) - kI * o3 * r(2, 3) - q * r(1, 4),
    };
}

// Lindblad dissipator with cross-damping between the two upper decay channels.
inline DensityMatrix dissipator(const SystemParams& s, const DensityMatrix& rho) {
    const double q = s.p * std::sqrt(s.gamma1 * s.gamma2);
    const double rates[2][2] = {{s.gamma1, q}, {q, s.gamma2}};
    DensityMatrix out = DensityMatrix::Zero();
    for (int j = 1; j <= 2; ++j) {
        for (int k = 1; k <= 2; ++k) {
            const double g = rates[j - 1][k - 1];
            const DensityMatrix down_j = ket_bra(3, j), up_k = ket_bra(k, 3), akj = ket_bra(k, j);
            out += g * (2.0 * down_j * rho * up_k - akj * rho - rho * akj);
        }
    }
    const DensityMatrix a43 = ket_bra(4, 3), a34 = ket_bra(3, 4), a33 = ket_bra(3, 3);
    out += s.gamma3 * (2.0 * a43 * rho * a34 - a33 * rho - rho * a33);
    return out;
}

// -i [H, rho] + D[rho] with H taken from the interaction Hamiltonian.
inline DensityMatrix lindblad_rhs(const SystemParams& s, const DensityMatrix& rho) {
    const DensityMatrix h = fluorsq::interaction_hamiltonian(s).cast<Complex>();
    return -kI * (h * rho - rho * h) + dissipator(s, rho);
}

// Secular decay rate of the dressed coherence |i><j| read off the dissipator.
inline double secular_decay_rate(const fluorsq::DressedBasis& basis, int i, int j, const SystemParams& s) {
    const Eigen::Vector4cd phi_i = basis.coeffs.col(i).cast<Complex>();
    const Eigen::Vector4cd phi_j = basis.coeffs.col(j).cast<Complex>();
    const DensityMatrix coherence = phi_i * phi_j.adjoint();
    const Complex rate = phi_i.adjoint() * dissipator(s, coherence) * phi_j;
    return -rate.real();
}

inline DensityMatrix random_density_matrix(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Matrix4cd g;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g(r, c) = Complex(n(rng), n(rng));
    DensityMatrix rho = g * g.adjoint();
    return rho / rho.trace();
}

// <dA_{ab} dA_{mn}> = Tr(rho A_ab A_mn) - Tr(rho A_ab) Tr(rho A_mn).
inline CVector brute_force_u0(const DensityMatrix& rho, fluorsq::LevelPair target) {
    CVector out;
    const DensityMatrix x = ket_bra(target.m, target.n);
    for (int k = 1; k <= fluorsq::kComponents; ++k) {
        const auto [a, b] = fluorsq::components::op_label(k);
        const DensityMatrix y = ket_bra(a, b);
        out(k - 1) = (rho * y * x).trace() - (rho * y).trace() * (rho * x).trace();
    }
    return out;
}

// Fixed-step RK4 for d psi / dt = L psi + I.
inline CVector integrate_state(const fluorsq::LiouvillianSystem& sys, CVector psi, double t_end, double h) {
    const auto f = [&sys](const CVector& y) -> CVector { return sys.L * y + sys.I; };
    const int steps = static_cast<int>(std::ceil(t_end / h));
    const double dt = t_end / steps;
    for (int i = 0; i < steps; ++i) {
        const CVector k1 = f(psi);
        const CVector k2 = f(psi + 0.5 * dt * k1);
        const CVector k3 = f(psi + 0.5 * dt * k2);
        const CVector k4 = f(psi + dt * k3);
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi;
}

inline CMatrix expm(const CMatrix& a) { return a.exp(); }

// Quadrature horizon: at least 50 / gamma3, long enough that the slowest
// mode has decayed by e^-25.
inline double horizon(const fluorsq::LiouvillianSystem& sys) {
    const double slowest = -fluorsq::spectral_abscissa(sys);
    return std::max(50.0, 25.0 / slowest);
}

// Composite 10-point Gauss-Legendre rule on panels of width `panel`.
struct TimeQuadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline TimeQuadrature gauss_panels(double t_end, double panel = 0.1) {
    using Rule = boost::math::quadrature::gauss<double, 10>;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    TimeQuadrature q;
    q.nodes.push_back(0.0);
    q.weights.push_back(0.0);
    const int panels = static_cast<int>(std::ceil(t_end / panel));
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * panel, half = 0.5 * panel;
        for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i) {
            q.nodes.push_back(mid - half * x[static_cast<std::size_t>(i)]);
            q.weights.push_back(half * w[static_cast<std::size_t>(i)]);
        }
        for (std::size_t i = 0; i < x.size(); ++i) {
            q.nodes.push_back(mid + half * x[i]);
            q.weights.push_back(half * w[i]);
        }
    }
    return q;
}

// Regression-propagated correlations u(tau) for one target on the quadrature nodes.
struct PropagatedCorrelation {
    TimeQuadrature quad;
    std::vector<CVector> u;
};

inline PropagatedCorrelation propagate_on_panels(const fluorsq::LiouvillianSystem& sys, const CVector& u0,
                                                 double t_end, double tolerance = 1e-13) {
    PropagatedCorrelation out;
    out.quad = gauss_panels(t_end);
    fluorsq::PropagationOptions opts;
    opts.tolerance = tolerance;
    out.u = fluorsq::propagate(sys, u0, out.quad.nodes, opts);
    return out;
}

// int_0^T (e^{i w tau} + e^{-i w tau}) u(tau) d tau
inline CVector fourier(const PropagatedCorrelation& c, double omega) {
    CVector acc = CVector::Zero();
    for (std::size_t i = 0; i < c.u.size(); ++i) {
        acc += (c.quad.weights[i] * 2.0 * std::cos(omega * c.quad.nodes[i])) * c.u[i];
    }
    return acc;
}

// Time-domain evaluation of the squeezing spectra from propagated correlations.
class TimeDomainSpectrum {
public:
    explicit TimeDomainSpectrum(const fluorsq::StationaryProblem& problem)
        : p_(problem.params.p), t_end_(oracle::horizon(problem.system)),
          u31_(propagate_on_panels(problem.system, problem.u31.u0, t_end_)),
          u32_(propagate_on_panels(problem.system, problem.u32.u0, t_end_)),
          u43_(propagate_on_panels(problem.system, problem.u43.u0, t_end_)) {}

    double horizon() const { return t_end_; }

    Complex raw_a(double omega, double theta) const {
        const CVector f31 = fourier(u31_, omega), f32 = fourier(u32_, omega);
        const CVector field1 = f31 + p_ * f32, field2 = f32 + p_ * f31;
        using fluorsq::components::slot;
        const Complex squeezed = field1(slot(1, 3)) + field2(slot(2, 3));
        const Complex normal = field1(slot(3, 1)) + field2(slot(3, 2));
        return squeezed * std::exp(2.0 * kI * theta) + normal;
    }

    Complex raw_b(double omega, double theta) const {
        const CVector f43 = fourier(u43_, omega);
        using fluorsq::components::slot;
        return f43(slot(3, 4)) * std::exp(2.0 * kI * theta) + f43(slot(4, 3));
    }

    double a(double omega, double theta) const { return raw_a(omega, theta).real(); }
    double b(double omega, double theta) const { return raw_b(omega, theta).real(); }

private:
    double p_;
    double t_end_;
    PropagatedCorrelation u31_, u32_, u43_;
};

} // namespace oracle
