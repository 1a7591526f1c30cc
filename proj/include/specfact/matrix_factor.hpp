#pragma once

#include <string>
#include <utility>
#include <vector>

#include "specfact/scalar_factor.hpp"

namespace specfact {

/// Matrix spectral factor phi = sqrt(2 pi) U Gamma with f = (1/2pi) phi phi*
/// and one-sided coefficients b(j) for causal fields.
struct SpectralFactorField {
    FrequencyGrid grid;
    Eigen::Index dimension = 0;
    int rank = 0;
    std::vector<Mat> values;     // phi(omega_m), d x r
    std::vector<Mat> b;          // b(0)..b(J), d x r
    double tail_energy = 0.0;    // energy outside the retained window 0..J
    double negative_energy_ratio = 0.0;
    std::string gauge;
};

/// Moore-Penrose inverse field psi = (2 pi)^{-1/2} Gamma^{-1} U* with
/// psi phi = I_r and one-sided coefficients c_psi(k).
struct MPInverseField {
    FrequencyGrid grid;
    Eigen::Index dimension = 0;
    int rank = 0;
    std::vector<Mat> values;     // psi(omega_m), r x d
    std::vector<Mat> c_psi;      // c_psi(0)..c_psi(K), r x d
    double tail_energy = 0.0;
    double negative_energy_ratio = 0.0;
    std::string gauge;
};

/// trunc <= 0 selects the default truncation N/4.
SpectralFactorField assemble_factor(const EigenField& field, const ScalarFactorSet& factors,
                                    int trunc = 0);

MPInverseField assemble_inverse(const EigenField& field, const ScalarFactorSet& factors,
                                int trunc = 0);

struct VerifyTolerances {
    double gram_tol = 1e-8;      // relative, against 1 + ||f||
    double inverse_tol = 1e-8;
    double residual_tol = 1e-8;
    double causal_tol = 1e-8;
};

struct FactorizationReport {
    double gram_deviation = 0.0;      // max_m ||(1/2pi) phi phi* - f||
    double inverse_deviation = 0.0;   // max_m ||psi phi - I_r||
    double residual_deviation = 0.0;  // max_m ||(phi psi - I) f (psi* phi* - I)||
    double phi_negative_ratio = 0.0;
    double psi_negative_ratio = 0.0;
    bool gram_pass = false;
    bool inverse_pass = false;
    bool residual_pass = false;
    bool causal_pass = false;
    bool pass = false;
    VerifyTolerances tolerances;
    /// The per-eigenvalue diagonal factor D is built so that
    /// (1/2pi) D D* = Lambda_r; the adjoint is part of this artifact's
    /// reading of the factorization identity.
    std::string note = "diagonal factor satisfies (1/2pi) D D* = Lambda_r";
};

FactorizationReport verify_factorization(const SpectralDensityField& f,
                                         const SpectralFactorField& phi,
                                         const MPInverseField& psi,
                                         const VerifyTolerances& tol = {});

/// Fixes the constant-unitary gauge: right-multiplies phi (and left-multiplies
/// psi) by the r x r unitary that makes the leading r x r block of b(0)
/// Hermitian PSD (polar decomposition). Requires b(0) of full column rank.
std::pair<SpectralFactorField, MPInverseField> normalize_phase(SpectralFactorField phi,
                                                               MPInverseField psi,
                                                               double rank_tol = 1e-12);

}  // namespace specfact
