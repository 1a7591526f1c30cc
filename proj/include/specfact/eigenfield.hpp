#pragma once

#include <map>
#include <optional>
#include <vector>

#include "specfact/spectra.hpp"

namespace specfact {

struct RankReport {
    int rank = 0;
    std::map<int, std::size_t> histogram;  // per-node eigenvalue count -> node count
    double agreement = 0.0;                // fraction of nodes matching the modal rank
    bool ae_rank = false;                  // agreement >= threshold
    double rank_tol = 0.0;
    double agreement_threshold = 0.0;
};

/// Pointwise spectral decomposition f(omega_m) = U(omega_m) Lambda U*(omega_m)
/// keeping the r largest eigenvalues at each node.
struct EigenField {
    FrequencyGrid grid;
    Eigen::Index dimension = 0;
    int rank = 0;
    std::vector<RealVec> lambdas;  // r values per node; non-increasing at construction
    std::vector<Mat> vectors;      // d x r per node, orthonormal columns
    bool aligned = false;
    std::vector<std::size_t> deficient_nodes;  // nodes where lambda_r falls below the rank cutoff
    RankReport rank_report;
};

RankReport detect_rank(const SpectralDensityField& f, double rank_tol,
                       double agreement_threshold = 0.99);

struct PointwiseEigOptions {
    double rank_tol = 1e-10;
    double agreement_threshold = 0.99;
    bool allow_rank_instability = false;
};

EigenField pointwise_eig(const SpectralDensityField& f, const PointwiseEigOptions& options);

inline EigenField pointwise_eig(const SpectralDensityField& f, double rank_tol) {
    return pointwise_eig(f, PointwiseEigOptions{rank_tol});
}

struct AlignmentWarning {
    std::size_t node = 0;
    int column = 0;
    double overlap = 0.0;
};

struct AlignmentReport {
    std::vector<AlignmentWarning> warnings;
    double wraparound_gap = 0.0;     // ||U(omega_0) - U(omega_{N-1})||_F
    double max_adjacent_gap = 0.0;   // max_m ||U(omega_m) - U(omega_{m-1})||_F
};

/// Sequential sweep: match columns to the previous node by greedy maximum
/// |<u_prev, u_cur>| assignment, then rotate each column so that inner
/// product is real positive. Node 0 columns get their largest-magnitude
/// component rotated real positive. Order-dependent by contract; spans at
/// each node are unchanged. Idempotent: an already aligned field is
/// returned as is.
std::pair<EigenField, AlignmentReport> align_phases(const EigenField& field);

struct CausalityReport {
    std::vector<Mat> coefficients;   // psi_U(j), j = min_index .. min_index + size - 1
    int min_index = 0;
    double negative_energy_ratio = 0.0;
    std::vector<double> column_ratios;
    double wraparound_gap = 0.0;
    double max_adjacent_gap = 0.0;
    double causal_tol = 0.0;
    bool field_was_aligned = false;
    bool pass = false;
};

/// One-sidedness diagnostic for the eigenvector field: computes the
/// coefficients psi_U(j), |j| <= N/2 - 1, and the fraction of energy at
/// negative indices. Always returns a report; pass/fail is a field.
CausalityReport hinfty_check(const EigenField& field, double causal_tol);

struct LogIntegrabilityReport {
    double integral = 0.0;      // (2 pi / N) sum_m log lambda_r(omega_m)
    double min_lambda_r = 0.0;
    std::size_t underflow_nodes = 0;  // lambda_r <= 1e-300
    double floor = 0.0;
    bool pass = false;
};

LogIntegrabilityReport log_integrability_check(const EigenField& field, double floor = -1e6);

}  // namespace specfact
