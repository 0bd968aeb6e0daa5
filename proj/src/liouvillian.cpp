#include "fluorsq/liouvillian.hpp"

#include "fluorsq/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

namespace fluorsq {

namespace {

constexpr Complex kI{0.0, 1.0};

// Writes one row of the coherent-plus-dissipative equations, addressed by
// level pairs instead of raw indices.
class RowWriter {
public:
    explicit RowWriter(CMatrix& L) : L_(L) {}

    RowWriter& row(int m, int n) {
        row_ = components::slot(m, n);
        return *this;
    }

    RowWriter& add(int m, int n, Complex value) {
        L_(row_, components::slot(m, n)) += value;
        return *this;
    }

private:
    CMatrix& L_;
    int row_ = 0;
};

} // namespace

LiouvillianSystem build(const SystemParams& s) {
    LiouvillianSystem sys;
    RowWriter w(sys.L);

    const double g1 = s.gamma1, g2 = s.gamma2, g3 = s.gamma3;
    const double o1 = s.omega1, o2 = s.omega2, o3 = s.omega3;
    const double q = cross_damping(s);
    const double da = s.delta_a, db = s.delta_b, w12 = s.w12;

    w.row(1, 1)
        .add(1, 1, -2.0 * g1)
        .add(3, 1, kI * o1)
        .add(1, 3, -kI * o1)
        .add(1, 2, -q)
        .add(2, 1, -q);

    w.row(2, 2)
        .add(2, 2, -2.0 * g2)
        .add(3, 2, kI * o2)
        .add(2, 3, -kI * o2)
        .add(1, 2, -q)
        .add(2, 1, -q);

    w.row(3, 3)
        .add(1, 1, 2.0 * g1)
        .add(2, 2, 2.0 * g2)
        .add(3, 3, -2.0 * g3)
        .add(1, 3, kI * o1)
        .add(3, 1, -kI * o1)
        .add(2, 3, kI * o2)
        .add(3, 2, -kI * o2)
        .add(4, 3, kI * o3)
        .add(3, 4, -kI * o3)
        .add(1, 2, 2.0 * q)
        .add(2, 1, 2.0 * q);

    w.row(1, 2)
        .add(1, 2, -(g1 + g2 + kI * w12))
        .add(3, 2, kI * o1)
        .add(1, 3, -kI * o2)
        .add(1, 1, -q)
        .add(2, 2, -q);

    w.row(1, 3)
        .add(1, 3, -(g1 + g3 + kI * da))
        .add(3, 3, kI * o1)
        .add(1, 1, -kI * o1)
        .add(1, 2, -kI * o2)
        .add(1, 4, -kI * o3)
        .add(2, 3, -q);

    w.row(2, 3)
        .add(2, 3, -(g2 + g3 + kI * (da - w12)))
        .add(3, 3, kI * o2)
        .add(2, 2, -kI * o2)
        .add(2, 1, -kI * o1)
        .add(2, 4, -kI * o3)
        .add(1, 3, -q);

    // rho_44 - rho_33 = 1 - rho_11 - rho_22 - 2 rho_33; the constant goes to I.
    w.row(3, 4)
        .add(3, 4, -(g3 + kI * db))
        .add(1, 1, -kI * o3)
        .add(2, 2, -kI * o3)
        .add(3, 3, -2.0 * kI * o3)
        .add(1, 4, kI * o1)
        .add(2, 4, kI * o2);
    sys.I(components::slot(3, 4)) = kI * o3;

    w.row(1, 4)
        .add(1, 4, -(g1 + kI * (da + db)))
        .add(3, 4, kI * o1)
        .add(1, 3, -kI * o3)
        .add(2, 4, -q);

    w.row(2, 4)
        .add(2, 4, -(g2 + kI * (da + db - w12)))
        .add(3, 4, kI * o2)
        .add(2, 3, -kI * o3)
        .add(1, 4, -q);

    // Rows 10..15 mirror rows 4..9.
    for (int k = 4; k <= 9; ++k) {
        const int j = k - 1;
        const int jc = components::conjugate_component(k) - 1;
        for (int c = 1; c <= kComponents; ++c) {
            sys.L(jc, components::conjugate_component(c) - 1) = std::conj(sys.L(j, c - 1));
        }
        sys.I(jc) = std::conj(sys.I(j));
    }
    return sys;
}

StateVector steady_state(const LiouvillianSystem& sys) {
    const Eigen::PartialPivLU<CMatrix> lu(sys.L);
    const double rcond = lu.rcond();
    if (!(rcond >= kSingularRcond)) {
        throw Error(ErrorCode::SingularLiouvillian,
                    "steady_state: reciprocal condition estimate " + std::to_string(rcond));
    }
    StateVector out;
    out.psi = -lu.solve(sys.I);
    out.rho44 = 1.0 - out.psi(0).real() - out.psi(1).real() - out.psi(2).real();
    return out;
}

DensityMatrix StateVector::density_matrix() const {
    DensityMatrix rho;
    for (int m = 1; m <= 4; ++m) {
        for (int n = 1; n <= 4; ++n) rho(m - 1, n - 1) = this->rho(m, n);
    }
    return rho;
}

StateVector from_density_matrix(const DensityMatrix& rho) {
    StateVector out;
    for (int k = 1; k <= kComponents; ++k) {
        const LevelPair r = components::rho_label(k);
        out.psi(k - 1) = rho(r.m - 1, r.n - 1);
    }
    out.rho44 = 1.0 - out.psi(0).real() - out.psi(1).real() - out.psi(2).real();
    return out;
}

double residual_norm(const LiouvillianSystem& sys, const StateVector& state) {
    return (sys.L * state.psi + sys.I).norm();
}

double hermiticity_defect(const StateVector& state) {
    double defect = 0.0;
    for (int k = 1; k <= kComponents; ++k) {
        const int kc = components::conjugate_component(k);
        defect = std::max(defect, std::abs(state.psi(kc - 1) - std::conj(state.psi(k - 1))));
    }
    return defect;
}

double spectral_abscissa(const LiouvillianSystem& sys) {
    const Eigen::ComplexEigenSolver<CMatrix> solver(sys.L, false);
    return solver.eigenvalues().real().maxCoeff();
}

} // namespace fluorsq
