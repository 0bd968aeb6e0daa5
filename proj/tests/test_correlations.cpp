#include "fluorsq/correlations.hpp"
#include "fluorsq/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace fluorsq;

namespace {

StateVector fig2_state(double p) { return steady_state(build(oracle::fig2(0.1, p))); }

// Correlations with the target operator placed first: <dA_target dA_{op(k)}>.
CVector reversed_order_u0(const DensityMatrix& rho, LevelPair target) {
    CVector out;
    const DensityMatrix x = oracle::ket_bra(target.m, target.n);
    for (int k = 1; k <= kComponents; ++k) {
        const auto [a, b] = components::op_label(k);
        const DensityMatrix y = oracle::ket_bra(a, b);
        out(k - 1) = (rho * x * y).trace() - (rho * x).trace() * (rho * y).trace();
    }
    return out;
}

} // namespace

TEST_CASE("ground state has no fluctuations") {
    StateVector ground;
    ground.psi = CVector::Zero();
    ground.rho44 = 1.0;
    for (auto target : {kTargetA31, kTargetA32, kTargetA43}) {
        CHECK(initial_correlations(ground, target).u0.isZero(0.0));
    }
}

TEST_CASE("closed form on a hand-built state") {
    DensityMatrix rho = DensityMatrix::Zero();
    rho(0, 0) = 0.2;
    rho(2, 2) = 0.3;
    rho(3, 3) = 0.5;
    rho(0, 2) = Complex(0.1, 0.05);
    rho(2, 0) = std::conj(rho(0, 2));
    const auto u = initial_correlations(from_density_matrix(rho), kTargetA31).u0;
    // k = 3 pairs A_33 with A_31: rho_13 - rho_33 rho_13.
    CHECK(std::abs(u(2) - (rho(0, 2) - rho(2, 2) * rho(0, 2))) < 1e-15);
    // k = 5 pairs A_31 with A_31: -rho_13^2.
    CHECK(std::abs(u(4) + rho(0, 2) * rho(0, 2)) < 1e-15);
}

TEST_CASE("closed form matches brute-force operator products") {
    for (double p : {0.0, 1.0}) {
        const StateVector st = fig2_state(p);
        const DensityMatrix rho = st.density_matrix();
        for (auto target : {kTargetA31, kTargetA32, kTargetA43}) {
            const CVector expected = oracle::brute_force_u0(rho, target);
            CHECK((initial_correlations(st, target).u0 - expected).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = oracle::random_density_matrix(rng);
        const StateVector st = from_density_matrix(rho);
        for (auto target : {kTargetA31, kTargetA32, kTargetA43}) {
            const CVector expected = oracle::brute_force_u0(rho, target);
            CHECK((initial_correlations(st, target).u0 - expected).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}

TEST_CASE("conjugation relates a target to its adjoint") {
    const StateVector st = fig2_state(1.0);
    const DensityMatrix rho = st.density_matrix();
    for (auto target : {kTargetA31, kTargetA32, kTargetA43}) {
        const CVector u = initial_correlations(st, target).u0;
        const CVector v = reversed_order_u0(rho, LevelPair{target.n, target.m});
        for (int k = 1; k <= kComponents; ++k) {
            CHECK(std::abs(std::conj(u(k - 1)) - v(components::conjugate_component(k) - 1)) < 1e-14);
        }
    }
}

TEST_CASE("initial vector is at most quadratic in the coherence scale") {
    const DensityMatrix rho = fig2_state(1.0).density_matrix();
    const auto scaled = [&rho](double c) {
        DensityMatrix r = rho;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j) r(i, j) *= c;
        return from_density_matrix(r);
    };
    for (auto target : {kTargetA31, kTargetA32, kTargetA43}) {
        const CVector u0 = initial_correlations(scaled(0.0), target).u0;
        const CVector u1 = initial_correlations(scaled(1.0), target).u0;
        const CVector u2 = initial_correlations(scaled(2.0), target).u0;
        const CVector u3 = initial_correlations(scaled(3.0), target).u0;
        CHECK((u3 - 3.0 * u2 + 3.0 * u1 - u0).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("unsupported targets are rejected") {
    const StateVector st = fig2_state(0.0);
    try {
        initial_correlations(st, LevelPair{1, 2});
        FAIL("expected UnsupportedTarget");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnsupportedTarget);
    }
}

TEST_CASE("propagation matches the matrix exponential") {
    const auto sys = build(oracle::fig2(0.1, 1.0));
    const StateVector st = steady_state(sys);
    const CVector u0 = initial_correlations(st, kTargetA31).u0;
    const std::vector<double> grid = {0.0, 0.1, 1.0, 10.0};
    const auto u = propagate(sys, u0, grid);
    REQUIRE(u.size() == grid.size());
    CHECK(u[0] == u0);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const CVector expected = oracle::expm(sys.L * grid[i]) * u0;
        CHECK((u[i] - expected).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("propagation is linear and decays") {
    const auto sys = build(oracle::fig5(0.0));
    const StateVector st = steady_state(sys);
    const CVector a = initial_correlations(st, kTargetA31).u0;
    const CVector b = initial_correlations(st, kTargetA43).u0;
    const Complex ca(0.7, -0.2), cb(-1.3, 0.4);
    const std::vector<double> grid = {0.0, 0.5, 2.0, 7.5};
    PropagationOptions opts;
    opts.tolerance = 1e-12;
    const auto ua = propagate(sys, a, grid, opts);
    const auto ub = propagate(sys, b, grid, opts);
    const auto uc = propagate(sys, CVector(ca * a + cb * b), grid, opts);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK((uc[i] - (ca * ua[i] + cb * ub[i])).cwiseAbs().maxCoeff() < 1e-9);
    }

    const std::vector<double> zero_grid = {0.0, 1.0, 100.0};
    for (const auto& v : propagate(sys, CVector(CVector::Zero()), zero_grid)) CHECK(v.isZero(0.0));

    const std::vector<double> long_grid = {0.0, 300.0};
    const auto late = propagate(sys, a, long_grid);
    CHECK(late[1].norm() < 1e-10);
}

TEST_CASE("propagation validates its grid and step size") {
    const auto sys = build(oracle::fig2(0.1, 0.0));
    const CVector u0 = initial_correlations(steady_state(sys), kTargetA31).u0;
    const auto code_of = [&](std::vector<double> grid, PropagationOptions opts) {
        try {
            propagate(sys, u0, grid, opts);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    CHECK(code_of({0.0, 2.0, 1.0}, {}) == ErrorCode::AscendingGridRequired);
    CHECK(code_of({0.5, 1.0}, {}) == ErrorCode::InvalidArgument);
    PropagationOptions strict;
    strict.tolerance = 1e-30;
    strict.min_step = 1e-3;
    CHECK(code_of({0.0, 1.0}, strict) == ErrorCode::StepSizeUnderflow);
}

TEST_CASE("dense and nearly coincident grid points terminate") {
    const auto sys = build(oracle::fig2(0.1, 1.0));
    const CVector u0 = initial_correlations(steady_state(sys), kTargetA31).u0;
    const auto quad = oracle::gauss_panels(5.0);
    const auto u = propagate(sys, u0, quad.nodes);
    CHECK((u.back() - oracle::expm(sys.L * quad.nodes.back()) * u0).cwiseAbs().maxCoeff() < 1e-8);

    const std::vector<double> sliver = {0.0, 1.0, 1.0 + 1e-14, 2.0};
    const auto v = propagate(sys, u0, sliver);
    CHECK((v[3] - oracle::expm(sys.L * 2.0) * u0).cwiseAbs().maxCoeff() < 1e-8);
}
