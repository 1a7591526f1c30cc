#pragma once

#include <cstddef>
#include <vector>

#include "specfact/numeric_core.hpp"

namespace specfact {

/// Uniform frequency grid omega_m = -pi + 2 pi m / N, m = 0..N-1.
struct FrequencyGrid {
    std::size_t size = 0;

    explicit FrequencyGrid(std::size_t n);

    double omega(std::size_t m) const {
        return -kPi + kTwoPi * static_cast<double>(m) / static_cast<double>(size);
    }
    double node_weight() const { return kTwoPi / static_cast<double>(size); }
};

/// Finite moving-average specification X_t = sum_{j=0}^{q} b(j) xi_{t-j}
/// with d x r coefficient matrices.
struct MASpec {
    Eigen::Index dimension = 0;
    Eigen::Index rank = 0;
    std::vector<Mat> coefficients;  // b(0)..b(q)

    MASpec(Eigen::Index d, Eigen::Index r, std::vector<Mat> coeffs);

    Eigen::Index order() const { return static_cast<Eigen::Index>(coefficients.size()) - 1; }
};

/// Covariance matrices C(h) for lags h = -H..H, with C(-h) = C(h)*.
struct CovarianceSequence {
    Eigen::Index dimension = 0;
    int max_lag = 0;
    std::vector<Mat> matrices;  // index h + max_lag

    CovarianceSequence(Eigen::Index d, int max_lag, std::vector<Mat> mats);

    const Mat& at(int h) const { return matrices[static_cast<std::size_t>(h + max_lag)]; }
};

/// Hermitian PSD d x d matrices f(omega_m) sampled on the frequency grid.
struct SpectralDensityField {
    FrequencyGrid grid;
    Eigen::Index dimension = 0;
    std::vector<Mat> values;

    SpectralDensityField(FrequencyGrid g, std::vector<Mat> vals);

    /// (2 pi / N) sum_m tr f(omega_m); equals tr C(0) for consistent inputs.
    double total_power() const;
};

/// f(omega) = (1/2pi) phi phi* with phi(omega) = sum_j b(j) exp(-i j omega).
SpectralDensityField density_from_ma(const MASpec& spec, const FrequencyGrid& grid);

/// C(h) = (2 pi / N) sum_m exp(i h omega_m) f(omega_m), h = -H..H.
CovarianceSequence covariance_from_density(const SpectralDensityField& f, int max_lag);

struct DensityFromCovarianceResult {
    SpectralDensityField field;
    double adjustment_mass = 0.0;   // total eigenvalue mass clipped by psd_fix
    std::size_t clipped_nodes = 0;
};

/// Truncated inversion f ~ (1/2pi) sum_h C(h) exp(-i h omega). Without
/// psd_fix, indefiniteness beyond 1e-6 * ||f|| is an error; with psd_fix,
/// negative eigenvalues are clipped and the adjustment recorded.
DensityFromCovarianceResult density_from_covariance(const CovarianceSequence& cov,
                                                    const FrequencyGrid& grid,
                                                    bool psd_fix = false);

/// max_m of the spectral norm of f(omega_m).
double sup_norm_bound(const SpectralDensityField& f);

}  // namespace specfact
