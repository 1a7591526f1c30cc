#pragma once

#include <optional>
#include <string>

#include "specfact/wold.hpp"

namespace specfact {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::size_t grid_size = 4096;
    double rank_tol = 1e-10;
    double causal_tol = 1e-8;
    int trunc = 0;  // 0 selects N/4
    std::uint64_t seed = 0;
    bool force_noncausal = false;
    double agreement_threshold = 0.99;
    double log_floor = -1e6;
    double lambda_floor = 0.0;
    double sigma_gap_tol = 1e-6;

    void validate() const;
};

/// Everything the regularity checks and factorization produce on one input
/// density. A model is present only when the regularity conditions hold (or
/// a non-causal gauge was forced).
struct FactorizationOutcome {
    RankReport rank_report;
    std::optional<LogIntegrabilityReport> log_report;
    std::optional<AlignmentReport> alignment;
    std::optional<CausalityReport> causality;
    std::optional<FactorizationReport> factorization;
    std::optional<KSReport> ks;

    bool condition_rank = false;       // a.e. constant rank
    bool condition_log = false;        // log lambda_r integrable
    bool condition_causal = false;     // eigenvector field one-sided
    bool conditions_ok = false;

    std::optional<WoldModel> model;
    Mat sigma_closed;                  // two-route check, empty if no model
    double sigma_gap = 0.0;            // ||sigma_closed - b(0) b(0)*||
    bool sigma_gap_pass = false;
    std::string gauge;
    std::string failure;               // human-readable reason when no model

    bool all_pass = false;
};

/// Runs the full pipeline: rank detection, log-integrability, phase
/// alignment, causality check, cepstral scalar factors, factor assembly,
/// verification, both innovation-covariance routes, determinant identity.
FactorizationOutcome run_factorization(const SpectralDensityField& f, const RunConfig& config);

struct RoundTripReport {
    Mat procrustes_q;          // constant unitary aligning recovered b to the spec
    double residual = 0.0;     // sqrt(sum_j ||bhat(j) Q - b(j)||_F^2)
    double residual_at_identity = 0.0;
    double sigma_gap = 0.0;    // ||sigma_hat - b(0) b(0)*|| against the generating spec
    double ks_rel_gap = 0.0;
    double u_causality_ratio = 0.0;
    double phi_causality_ratio = 0.0;
    double psi_causality_ratio = 0.0;
    bool factorization_ok = false;
    FactorizationOutcome outcome;
};

/// End-to-end experiment: spec -> density -> factorization -> comparison of
/// recovered coefficients with the generating ones modulo a constant unitary
/// (orthogonal Procrustes). Non-miniphase inputs yield the miniphase
/// representative and a correspondingly large residual.
RoundTripReport round_trip(const MASpec& spec, const FrequencyGrid& grid,
                           const RunConfig& config);

}  // namespace specfact
