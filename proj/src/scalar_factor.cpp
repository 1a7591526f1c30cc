#include "specfact/scalar_factor.hpp"

#include <cmath>
#include <sstream>

namespace specfact {

CepstrumCoeffs cepstrum(const RealVec& lambda, const FrequencyGrid& grid, int eigen_index,
                        double floor) {
    if (static_cast<std::size_t>(lambda.size()) != grid.size) {
        throw DimensionError("cepstrum: one sample per grid node required");
    }
    std::vector<Complex> logs(grid.size);
    for (std::size_t m = 0; m < grid.size; ++m) {
        double value = lambda(static_cast<Eigen::Index>(m));
        if (floor > 0.0) value = std::max(value, floor);
        if (value <= 0.0) {
            std::ostringstream msg;
            msg << "cepstrum: eigenvalue " << eigen_index << " is non-positive at node " << m;
            throw PositivityError(msg.str());
        }
        logs[m] = Complex(std::log(value), 0.0);
    }
    const int half = static_cast<int>(grid.size) / 2;
    // log lambda = sum_n beta_n e^{+i n omega}; dft_coefficients uses the
    // e^{-i k omega} convention, so beta_n = c(-n).
    FourierCoeffs c = dft_coefficients(logs, -(half - 1), half - 1);
    CepstrumCoeffs out;
    out.eigen_index = eigen_index;
    out.applied_floor = floor;
    out.beta.min_index = -(half - 1);
    out.beta.values.resize(c.values.size());
    for (int n = -(half - 1); n <= half - 1; ++n) {
        out.beta.values[static_cast<std::size_t>(n + half - 1)] = c.at(-n);
    }
    double total = 0.0, high = 0.0;
    const int quartile = (3 * (half - 1)) / 4;
    for (int n = -(half - 1); n <= half - 1; ++n) {
        if (n == 0) continue;
        double e = std::norm(out.beta.at(n));
        total += e;
        if (std::abs(n) > quartile) high += e;
    }
    out.high_frequency_energy_ratio = total > 0.0 ? high / total : 0.0;
    return out;
}

std::vector<Complex> analytic_half(const CepstrumCoeffs& c, const FrequencyGrid& grid) {
    FourierCoeffs one_sided;
    one_sided.min_index = 0;
    const int max_n = c.beta.max_index();
    one_sided.values.resize(static_cast<std::size_t>(max_n + 1));
    one_sided.values[0] = 0.5 * c.beta.at(0);
    for (int n = 1; n <= max_n; ++n) {
        one_sided.values[static_cast<std::size_t>(n)] = std::conj(c.beta.at(n));
    }
    return dft_synthesize(one_sided, grid.size);
}

ScalarFactor scalar_factor(const std::vector<Complex>& q, const FrequencyGrid& grid,
                           int eigen_index) {
    if (q.size() != grid.size) {
        throw DimensionError("scalar_factor: one sample per grid node required");
    }
    ScalarFactor out;
    out.eigen_index = eigen_index;
    out.analytic = q;
    out.gamma.resize(grid.size);
    for (std::size_t m = 0; m < grid.size; ++m) {
        if (std::abs(q[m]) > 700.0) {
            std::ostringstream msg;
            msg << "scalar_factor: exp would overflow at node " << m
                << " (|Q| = " << std::abs(q[m]) << ")";
            throw MagnitudeError(msg.str());
        }
        out.gamma[m] = std::exp(q[m]);
    }
    const int half = static_cast<int>(grid.size) / 2;
    FourierCoeffs full = dft_coefficients(out.gamma, -(half - 1), half - 1);
    double total = 0.0, neg = 0.0;
    for (int k = full.min_index; k <= full.max_index(); ++k) {
        double e = std::norm(full.at(k));
        total += e;
        if (k < 0) neg += e;
    }
    out.negative_energy_ratio = total > 0.0 ? neg / total : 0.0;
    out.coefficients.min_index = 0;
    out.coefficients.values.assign(full.values.begin() + (half - 1), full.values.end());
    return out;
}

ScalarFactorSet factor_eigenvalues(const EigenField& field, double lambda_floor) {
    ScalarFactorSet set;
    set.lambda_floor = lambda_floor;
    const int r = field.rank;
    for (int j = 0; j < r; ++j) {
        RealVec lambda(static_cast<Eigen::Index>(field.grid.size));
        for (std::size_t m = 0; m < field.grid.size; ++m) {
            lambda(static_cast<Eigen::Index>(m)) = field.lambdas[m](j);
        }
        CepstrumCoeffs c = cepstrum(lambda, field.grid, j, lambda_floor);
        std::vector<Complex> q = analytic_half(c, field.grid);
        set.factors.push_back(scalar_factor(q, field.grid, j));
        set.cepstra.push_back(std::move(c));
    }
    return set;
}

}  // namespace specfact
