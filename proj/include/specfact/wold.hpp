#pragma once

#include <string>
#include <vector>

#include "specfact/matrix_factor.hpp"
#include "specfact/simulate.hpp"

namespace specfact {

/// Wold-model outputs: truncated coefficient sequences, innovation
/// covariance Sigma = b(0) b(0)*, rank, grid metadata.
struct WoldModel {
    Eigen::Index dimension = 0;
    int rank = 0;
    std::vector<Mat> b;       // b(0)..b(J), d x r
    std::vector<Mat> c_psi;   // c_psi(0)..c_psi(K), r x d
    Mat sigma;                // d x d, Hermitian PSD
    std::size_t grid_size = 0;
    std::string gauge;
    double b_tail_energy = 0.0;
    double c_psi_tail_energy = 0.0;
};

WoldModel make_wold_model(const SpectralFactorField& phi, const MPInverseField& psi);

/// Closed-form innovation covariance
///   Sigma = 2 pi U_mean diag(exp beta_{j,0}) U_mean*,
/// with U_mean = (1/N) sum_m U(omega_m) and beta_{j,0} the mean of
/// log lambda_j. Agrees with b(0) b(0)* when the aligned field is causal.
Mat innovation_covariance_closed(const EigenField& field, const ScalarFactorSet& factors);

struct KSReport {
    bool full_rank = false;
    double det_sigma = 0.0;       // lhs for full rank
    double rhs = 0.0;             // (2 pi)^d exp((1/N) sum_m log det Lambda_r)
    double surrogate_lhs = 0.0;   // det(b(0)* b(0)); only meaningful when r < d
    bool surrogate = false;
    double abs_gap = 0.0;
    double rel_gap = 0.0;
    double rel_tol = 1e-6;
    bool pass = false;
};

/// Determinant identity between the innovation covariance and the geometric
/// mean of the density eigenvalues. Enforced at rel_tol only in the full-rank
/// case; for r < d both sides are reported and the left side is the labeled
/// surrogate det(b(0)* b(0)).
KSReport ks_determinant_check(const EigenField& field, const Mat& sigma,
                              const Mat* b0 = nullptr, double rel_tol = 1e-6);

/// Recovered fundamental noise over the usable window t = K+1..T (1-based).
struct InnovationSeries {
    Eigen::Index dimension = 0;
    std::size_t start_index = 0;  // first usable t
    std::vector<Vec> values;
    double truncation_bias_bound = 0.0;
};

/// xi_t = sum_{k=0}^{K} c_psi(k) X_{t-k}; uses only X_s with s <= t.
InnovationSeries recover_noise(const WoldModel& model, const SamplePath& path);

struct PredictionResult {
    int horizon = 0;
    std::vector<Vec> predictions;         // X_1 .. X_h given the past ending at time 0
    std::vector<Mat> error_covariances;   // E_h = sum_{j<h} b(j) b(j)*
};

/// Best linear h-step prediction conditioning on the recovered noise window,
/// whose last sample plays the role of time 0.
PredictionResult predict(const WoldModel& model, const InnovationSeries& noise, int horizon);

/// Innovation series eta_t = b(0) xi_t (d-dimensional).
InnovationSeries innovations_from_prediction(const WoldModel& model, const SamplePath& path);

}  // namespace specfact
