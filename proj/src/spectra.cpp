#include "specfact/spectra.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace specfact {

FrequencyGrid::FrequencyGrid(std::size_t n) : size(n) {
    if (n < 8 || !is_power_of_two(n)) {
        throw ValidationError("FrequencyGrid: size must be a power of two >= 8");
    }
}

MASpec::MASpec(Eigen::Index d, Eigen::Index r, std::vector<Mat> coeffs)
    : dimension(d), rank(r), coefficients(std::move(coeffs)) {
    if (d < 1 || r < 1 || r > d) {
        throw ValidationError("MASpec: need 1 <= rank <= dimension");
    }
    if (coefficients.empty()) {
        throw ValidationError("MASpec: at least b(0) is required");
    }
    for (const Mat& b : coefficients) {
        if (b.rows() != d || b.cols() != r) {
            throw DimensionError("MASpec: coefficient shape mismatch");
        }
        require_finite(b, "MASpec coefficient");
    }
    if (coefficients.front().norm() == 0.0) {
        throw ValidationError("MASpec: b(0) must be nonzero");
    }
}

CovarianceSequence::CovarianceSequence(Eigen::Index d, int max_lag_, std::vector<Mat> mats)
    : dimension(d), max_lag(max_lag_), matrices(std::move(mats)) {
    if (max_lag < 0 || matrices.size() != static_cast<std::size_t>(2 * max_lag + 1)) {
        throw DimensionError("CovarianceSequence: need 2H+1 matrices for lags -H..H");
    }
    for (const Mat& c : matrices) {
        if (c.rows() != d || c.cols() != d) {
            throw DimensionError("CovarianceSequence: matrix shape mismatch");
        }
        require_finite(c, "covariance matrix");
    }
    for (int h = 1; h <= max_lag; ++h) {
        double defect = (at(-h) - at(h).adjoint()).norm();
        if (defect > 1e-12 * (1.0 + at(h).norm())) {
            throw SymmetryError("CovarianceSequence: C(-h) != C(h)* within tolerance");
        }
    }
    const Mat& c0 = at(0);
    if (spectral_norm(c0 - c0.adjoint()) > 1e-10 * (1.0 + spectral_norm(c0))) {
        throw SymmetryError("CovarianceSequence: C(0) not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (c0 + c0.adjoint()),
                                              Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10 * (1.0 + spectral_norm(c0))) {
        throw DefinitenessError("CovarianceSequence: C(0) not PSD within tolerance");
    }
}

SpectralDensityField::SpectralDensityField(FrequencyGrid g, std::vector<Mat> vals)
    : grid(g), values(std::move(vals)) {
    if (values.size() != grid.size) {
        throw DimensionError("SpectralDensityField: one matrix per grid node required");
    }
    dimension = values.front().rows();
    for (const Mat& f : values) {
        if (f.rows() != dimension || f.cols() != dimension) {
            throw DimensionError("SpectralDensityField: matrix shape mismatch");
        }
        require_finite(f, "density value");
        double scale = spectral_norm(f);
        if (spectral_norm(f - f.adjoint()) > 1e-10 * (1.0 + scale)) {
            throw SymmetryError("SpectralDensityField: value not Hermitian within tolerance");
        }
        Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (f + f.adjoint()),
                                                  Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -1e-10 * scale - 1e-300) {
            throw DefinitenessError("SpectralDensityField: value not PSD within tolerance");
        }
    }
}

double SpectralDensityField::total_power() const {
    double sum = 0.0;
    for (const Mat& f : values) sum += f.trace().real();
    return grid.node_weight() * sum;
}

SpectralDensityField density_from_ma(const MASpec& spec, const FrequencyGrid& grid) {
    if (spec.order() >= static_cast<Eigen::Index>(grid.size / 2)) {
        throw RangeError("density_from_ma: MA order must be < N/2");
    }
    std::vector<Mat> values;
    values.reserve(grid.size);
    for (std::size_t m = 0; m < grid.size; ++m) {
        Mat phi = Mat::Zero(spec.dimension, spec.rank);
        for (std::size_t j = 0; j < spec.coefficients.size(); ++j) {
            double angle = -static_cast<double>(j) * grid.omega(m);
            phi += spec.coefficients[j] * Complex(std::cos(angle), std::sin(angle));
        }
        values.push_back((phi * phi.adjoint()) / kTwoPi);
    }
    return SpectralDensityField(grid, std::move(values));
}

CovarianceSequence covariance_from_density(const SpectralDensityField& f, int max_lag) {
    if (max_lag >= static_cast<int>(f.grid.size) / 2) {
        throw RangeError("covariance_from_density: max lag must be < N/2");
    }
    // C(h) = 2 pi * c(h) with the analysis convention of dft_coefficients.
    std::vector<Mat> coeffs = dft_matrix_coefficients(f.values, 0, max_lag);
    std::vector<Mat> mats(static_cast<std::size_t>(2 * max_lag + 1));
    for (int h = 0; h <= max_lag; ++h) {
        Mat c = kTwoPi * coeffs[static_cast<std::size_t>(h)];
        mats[static_cast<std::size_t>(h + max_lag)] = c;
        if (h > 0) mats[static_cast<std::size_t>(max_lag - h)] = c.adjoint();
    }
    // Symmetrize C(0) so the PSD check sees an exactly Hermitian matrix.
    Mat& c0 = mats[static_cast<std::size_t>(max_lag)];
    c0 = 0.5 * (c0 + c0.adjoint()).eval();
    return CovarianceSequence(f.dimension, max_lag, std::move(mats));
}

DensityFromCovarianceResult density_from_covariance(const CovarianceSequence& cov,
                                                    const FrequencyGrid& grid, bool psd_fix) {
    if (cov.max_lag >= static_cast<int>(grid.size) / 2) {
        throw RangeError("density_from_covariance: max lag must be < N/2");
    }
    std::vector<Mat> values;
    values.reserve(grid.size);
    double adjustment = 0.0;
    std::size_t clipped = 0;
    for (std::size_t m = 0; m < grid.size; ++m) {
        Mat f = Mat::Zero(cov.dimension, cov.dimension);
        for (int h = -cov.max_lag; h <= cov.max_lag; ++h) {
            double angle = -static_cast<double>(h) * grid.omega(m);
            f += cov.at(h) * Complex(std::cos(angle), std::sin(angle));
        }
        f /= kTwoPi;
        f = 0.5 * (f + f.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Mat> solver(f);
        double min_eig = solver.eigenvalues().minCoeff();
        double scale = std::max(std::abs(solver.eigenvalues().maxCoeff()), std::abs(min_eig));
        if (min_eig < -1e-10 * scale) {
            if (!psd_fix && min_eig < -1e-6 * scale) {
                throw DefinitenessError(
                    "density_from_covariance: indefinite density; pass psd_fix to clip");
            }
            RealVec vals = solver.eigenvalues();
            for (Eigen::Index i = 0; i < vals.size(); ++i) {
                if (vals(i) < 0.0) {
                    adjustment += -vals(i);
                    vals(i) = 0.0;
                }
            }
            f = solver.eigenvectors() * vals.asDiagonal() * solver.eigenvectors().adjoint();
            f = 0.5 * (f + f.adjoint()).eval();
            ++clipped;
        }
        values.push_back(std::move(f));
    }
    return DensityFromCovarianceResult{SpectralDensityField(grid, std::move(values)),
                                       adjustment, clipped};
}

double sup_norm_bound(const SpectralDensityField& f) {
    double bound = 0.0;
    for (const Mat& v : f.values) bound = std::max(bound, spectral_norm(v));
    return bound;
}

}  // namespace specfact
