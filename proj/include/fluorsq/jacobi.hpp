#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace fluorsq {

template <int N>
struct SymmetricEigen {
    Eigen::Matrix<double, N, 1> values;  // ascending
    Eigen::Matrix<double, N, N> vectors; // columns, matching values
    double off_diagonal_norm = 0.0;
    int sweeps = 0;
};

// Cyclic Jacobi rotations for a small real symmetric matrix. Iterates until
// the Frobenius norm of the off-diagonal part drops below
// tolerance * max(1, ||A||_F) or max_sweeps is reached.
template <int N>
SymmetricEigen<N> jacobi_eigen(const Eigen::Matrix<double, N, N>& input, double tolerance = 1e-12,
                               int max_sweeps = 100) {
    using Matrix = Eigen::Matrix<double, N, N>;
    Matrix a = 0.5 * (input + input.transpose());
    Matrix v = Matrix::Identity();

    const auto off_norm = [&a] {
        double sum = 0.0;
        for (int p = 0; p < N; ++p)
            for (int q = 0; q < N; ++q)
                if (p != q) sum += a(p, q) * a(p, q);
        return std::sqrt(sum);
    };

    const double threshold = tolerance * std::max(1.0, a.norm());
    SymmetricEigen<N> out;
    while (out.sweeps < max_sweeps && off_norm() >= threshold) {
        for (int p = 0; p < N - 1; ++p) {
            for (int q = p + 1; q < N; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < N; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < N; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < N; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        ++out.sweeps;
    }
    out.off_diagonal_norm = off_norm();

    std::array<int, N> order;
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&a](int i, int j) { return a(i, i) < a(j, j); });
    for (int i = 0; i < N; ++i) {
        out.values(i) = a(order[i], order[i]);
        out.vectors.col(i) = v.col(order[i]);
    }
    return out;
}

} // namespace fluorsq
