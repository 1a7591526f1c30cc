#include "specfact/matrix_factor.hpp"

#include <algorithm>
#include <cmath>

namespace specfact {

namespace {

struct CoefficientSplit {
    std::vector<Mat> kept;  // indices 0..J
    double tail_energy = 0.0;
    double negative_ratio = 0.0;
};

CoefficientSplit split_coefficients(const std::vector<Mat>& values, int trunc) {
    const int n = static_cast<int>(values.size());
    const int half = n / 2;
    std::vector<Mat> coeffs = dft_matrix_coefficients(values, -(half - 1), half - 1);
    CoefficientSplit out;
    double total = 0.0, neg = 0.0, kept = 0.0;
    for (int k = -(half - 1); k <= half - 1; ++k) {
        double e = coeffs[static_cast<std::size_t>(k + half - 1)].squaredNorm();
        total += e;
        if (k < 0) neg += e;
        if (k >= 0 && k <= trunc) kept += e;
    }
    out.kept.assign(coeffs.begin() + (half - 1), coeffs.begin() + (half - 1) + trunc + 1);
    out.tail_energy = total - kept;
    out.negative_ratio = total > 0.0 ? neg / total : 0.0;
    return out;
}

int resolve_trunc(int trunc, std::size_t grid_size) {
    if (trunc <= 0) return static_cast<int>(grid_size) / 4;
    if (trunc >= static_cast<int>(grid_size) / 2) {
        throw RangeError("truncation order must be < N/2");
    }
    return trunc;
}

void check_compatible(const EigenField& field, const ScalarFactorSet& factors) {
    if (static_cast<int>(factors.factors.size()) != field.rank) {
        throw DimensionError("rank mismatch between eigen field and scalar factors");
    }
    for (const ScalarFactor& f : factors.factors) {
        if (f.gamma.size() != field.grid.size) {
            throw DimensionError("scalar factor grid size mismatch");
        }
    }
}

}  // namespace

SpectralFactorField assemble_factor(const EigenField& field, const ScalarFactorSet& factors,
                                    int trunc) {
    check_compatible(field, factors);
    const int j_max = resolve_trunc(trunc, field.grid.size);
    SpectralFactorField out{field.grid};
    out.dimension = field.dimension;
    out.rank = field.rank;
    out.gauge = field.aligned ? "aligned" : "unaligned";
    out.values.reserve(field.grid.size);
    const double scale = std::sqrt(kTwoPi);
    for (std::size_t m = 0; m < field.grid.size; ++m) {
        Mat phi = field.vectors[m];
        for (int j = 0; j < field.rank; ++j) {
            phi.col(j) *= scale * factors.factors[static_cast<std::size_t>(j)].gamma[m];
        }
        out.values.push_back(std::move(phi));
    }
    CoefficientSplit split = split_coefficients(out.values, j_max);
    out.b = std::move(split.kept);
    out.tail_energy = split.tail_energy;
    out.negative_energy_ratio = split.negative_ratio;
    return out;
}

MPInverseField assemble_inverse(const EigenField& field, const ScalarFactorSet& factors,
                                int trunc) {
    check_compatible(field, factors);
    const int k_max = resolve_trunc(trunc, field.grid.size);
    MPInverseField out{field.grid};
    out.dimension = field.dimension;
    out.rank = field.rank;
    out.gauge = field.aligned ? "aligned" : "unaligned";
    out.values.reserve(field.grid.size);
    const double scale = 1.0 / std::sqrt(kTwoPi);
    for (std::size_t m = 0; m < field.grid.size; ++m) {
        Mat psi = field.vectors[m].adjoint();
        for (int j = 0; j < field.rank; ++j) {
            const Complex g = factors.factors[static_cast<std::size_t>(j)].gamma[m];
            // gamma is exp of a finite number, never zero.
            psi.row(j) *= scale / g;
        }
        out.values.push_back(std::move(psi));
    }
    CoefficientSplit split = split_coefficients(out.values, k_max);
    out.c_psi = std::move(split.kept);
    out.tail_energy = split.tail_energy;
    out.negative_energy_ratio = split.negative_ratio;
    return out;
}

FactorizationReport verify_factorization(const SpectralDensityField& f,
                                         const SpectralFactorField& phi,
                                         const MPInverseField& psi,
                                         const VerifyTolerances& tol) {
    if (phi.values.size() != f.values.size() || psi.values.size() != f.values.size()) {
        throw DimensionError("verify_factorization: grid size mismatch");
    }
    FactorizationReport report;
    report.tolerances = tol;
    const Mat identity = Mat::Identity(phi.rank, phi.rank);
    const Mat identity_d = Mat::Identity(f.dimension, f.dimension);
    double f_scale = 0.0;
    for (std::size_t m = 0; m < f.values.size(); ++m) {
        const Mat& fv = f.values[m];
        const Mat& pv = phi.values[m];
        const Mat& qv = psi.values[m];
        f_scale = std::max(f_scale, spectral_norm(fv));
        report.gram_deviation =
            std::max(report.gram_deviation, spectral_norm(pv * pv.adjoint() / kTwoPi - fv));
        report.inverse_deviation =
            std::max(report.inverse_deviation, spectral_norm(qv * pv - identity));
        Mat left = pv * qv - identity_d;
        report.residual_deviation =
            std::max(report.residual_deviation, spectral_norm(left * fv * left.adjoint()));
    }
    report.phi_negative_ratio = phi.negative_energy_ratio;
    report.psi_negative_ratio = psi.negative_energy_ratio;
    report.gram_pass = report.gram_deviation <= tol.gram_tol * (1.0 + f_scale);
    report.inverse_pass = report.inverse_deviation <= tol.inverse_tol;
    report.residual_pass = report.residual_deviation <= tol.residual_tol * (1.0 + f_scale);
    report.causal_pass = report.phi_negative_ratio <= tol.causal_tol &&
                         report.psi_negative_ratio <= tol.causal_tol;
    report.pass = report.gram_pass && report.inverse_pass && report.residual_pass &&
                  report.causal_pass;
    return report;
}

std::pair<SpectralFactorField, MPInverseField> normalize_phase(SpectralFactorField phi,
                                                               MPInverseField psi,
                                                               double rank_tol) {
    if (phi.b.empty()) throw GaugeError("normalize_phase: no coefficients");
    const Mat& b0 = phi.b.front();
    const int r = phi.rank;
    SVDResult full = svd(b0);
    if (full.singulars.size() < r ||
        full.singulars(r - 1) <= rank_tol * full.singulars(0)) {
        throw GaugeError("normalize_phase: b(0) is rank deficient");
    }
    // Polar decomposition of the leading r x r block of b(0): with
    // B = W S V*, the unitary Q = V W* makes B Q Hermitian PSD.
    Mat block = b0.topRows(r);
    SVDResult s = svd(block);
    if (s.singulars(r - 1) <= rank_tol * s.singulars(0)) {
        throw GaugeError("normalize_phase: leading block of b(0) is rank deficient");
    }
    Mat q = s.right * s.left.adjoint();
    for (Mat& m : phi.values) m = m * q;
    for (Mat& m : phi.b) m = m * q;
    for (Mat& m : psi.values) m = q.adjoint() * m;
    for (Mat& m : psi.c_psi) m = q.adjoint() * m;
    phi.gauge += "+polar";
    psi.gauge += "+polar";
    return {std::move(phi), std::move(psi)};
}

}  // namespace specfact
