#pragma once

#include <vector>

#include "specfact/eigenfield.hpp"

namespace specfact {

/// Fourier coefficients beta_n of log lambda_j(omega) = sum_n beta_n e^{i n omega},
/// |n| <= N/2 - 1, with beta_{-n} = conj(beta_n).
struct CepstrumCoeffs {
    int eigen_index = 0;
    FourierCoeffs beta;  // indexed by n
    /// Relative energy of log lambda in the top quartile of |n|; a smoothness
    /// proxy, reported but never enforced.
    double high_frequency_energy_ratio = 0.0;
    double applied_floor = 0.0;
};

/// Cepstrum of a strictly positive eigenvalue sampled on the grid. A positive
/// `floor` clamps lambda to lambda >= floor before taking logs (recorded in
/// the result); by default no flooring is applied and any non-positive node
/// is an error.
CepstrumCoeffs cepstrum(const RealVec& lambda, const FrequencyGrid& grid,
                        int eigen_index = 0, double floor = 0.0);

/// Analytic half Q_j(omega) = beta_0/2 + sum_{n>=1} conj(beta_n) e^{-i n omega},
/// so that Q_j + conj(Q_j) = log lambda_j on the grid.
std::vector<Complex> analytic_half(const CepstrumCoeffs& c, const FrequencyGrid& grid);

/// Scalar factor gamma_j = exp(Q_j): zero-free, |gamma_j|^2 = lambda_j, and
/// one-sided Fourier coefficients for band-limited log lambda_j.
struct ScalarFactor {
    int eigen_index = 0;
    std::vector<Complex> gamma;     // grid values
    std::vector<Complex> analytic;  // Q_j grid values
    FourierCoeffs coefficients;     // one-sided window 0 .. N/2 - 1
    double negative_energy_ratio = 0.0;
};

ScalarFactor scalar_factor(const std::vector<Complex>& q, const FrequencyGrid& grid,
                           int eigen_index = 0);

struct ScalarFactorSet {
    std::vector<CepstrumCoeffs> cepstra;  // one per eigenvalue index
    std::vector<ScalarFactor> factors;
    double lambda_floor = 0.0;
};

/// Runs cepstrum -> analytic_half -> scalar_factor for every eigenvalue of
/// the field. Independent per index.
ScalarFactorSet factor_eigenvalues(const EigenField& field, double lambda_floor = 0.0);

}  // namespace specfact
