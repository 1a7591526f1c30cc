#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "specfact/spectra.hpp"

namespace specfact::testing {

// Scalar moving-average model X_t = xi_t + theta xi_{t-1}.
inline MASpec scalar_ma1(double theta) {
    std::vector<Mat> b(2, Mat(1, 1));
    b[0](0, 0) = 1.0;
    b[1](0, 0) = theta;
    return MASpec(1, 1, std::move(b));
}

// Rank-one model in two dimensions: X_t = u (xi_t + theta xi_{t-1}) with
// u = (1, 1)^T / sqrt(2).
inline MASpec rank_one_ma1(double theta) {
    Mat u(2, 1);
    u << Complex(1.0 / std::sqrt(2.0), 0.0), Complex(1.0 / std::sqrt(2.0), 0.0);
    std::vector<Mat> b = {u, theta * u};
    return MASpec(2, 1, std::move(b));
}

// Two independent scalar MA(1) channels mixed by a constant unitary.
inline MASpec mixed_two_channel(double theta1, double theta2) {
    Mat u(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    u << Complex(s, 0.0), Complex(s, 0.0), Complex(s, 0.0), Complex(-s, 0.0);
    Mat b0 = u;
    Mat b1 = u * Mat(Eigen::Vector2cd(theta1, theta2).asDiagonal());
    return MASpec(2, 2, {b0, b1});
}

// Random full-rank minimum-phase spec: a constant random unitary times a
// diagonal of scalar polynomials prod_k (1 + a_k z) with |a_k| < 0.9, whose
// zeros -1/a_k therefore lie outside the unit disc. Such models keep the
// eigenvector field one-sided (the eigenvectors are constant), so they stay
// inside the class the factorization pipeline accepts.
inline MASpec random_miniphase_spec(std::uint64_t seed, Eigen::Index d, int q) {
    std::mt19937_64 engine(seed);
    std::uniform_real_distribution<double> unif(-0.9, 0.9);
    auto gauss = [&]() {
        return Complex(std::normal_distribution<double>()(engine),
                       std::normal_distribution<double>()(engine));
    };

    Mat g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) g(i, j) = gauss();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat unitary = qr.householderQ() * Mat::Identity(d, d);

    // Per-channel polynomial coefficients of degree q.
    std::vector<std::vector<Complex>> polys(static_cast<std::size_t>(d));
    for (auto& p : polys) {
        p = {Complex(1.0, 0.0)};
        for (int k = 0; k < q; ++k) {
            const Complex a(unif(engine), unif(engine) * 0.3);
            std::vector<Complex> next(p.size() + 1, Complex(0.0, 0.0));
            for (std::size_t i = 0; i < p.size(); ++i) {
                next[i] += p[i];
                next[i + 1] += p[i] * a;
            }
            p = std::move(next);
        }
    }

    std::vector<Mat> b(static_cast<std::size_t>(q) + 1, Mat::Zero(d, d));
    for (Eigen::Index j = 0; j < d; ++j)
        for (std::size_t k = 0; k < polys[static_cast<std::size_t>(j)].size(); ++k)
            b[k].col(j) = unitary.col(j) * polys[static_cast<std::size_t>(j)][k];
    return MASpec(d, d, std::move(b));
}

}  // namespace specfact::testing
