#include "specfact/pipeline.hpp"

#include <cmath>

namespace specfact {

void RunConfig::validate() const {
    if (grid_size < 8 || !is_power_of_two(grid_size)) {
        throw ValidationError("RunConfig: grid_size must be a power of two >= 8");
    }
    if (rank_tol <= 0.0 || causal_tol <= 0.0) {
        throw ValidationError("RunConfig: tolerances must be positive");
    }
    if (trunc < 0 || trunc >= static_cast<int>(grid_size) / 2) {
        throw ValidationError("RunConfig: truncation must be in [0, N/2)");
    }
}

FactorizationOutcome run_factorization(const SpectralDensityField& f, const RunConfig& config) {
    config.validate();
    FactorizationOutcome out;

    PointwiseEigOptions options;
    options.rank_tol = config.rank_tol;
    options.agreement_threshold = config.agreement_threshold;
    options.allow_rank_instability = true;
    EigenField raw = pointwise_eig(f, options);
    out.rank_report = raw.rank_report;
    out.condition_rank = raw.rank_report.ae_rank;

    out.log_report = log_integrability_check(raw, config.log_floor);
    out.condition_log = out.log_report->pass;
    if (!out.condition_log) {
        out.failure = "log-integrability failure: smallest eigenvalue field not log-integrable";
        out.conditions_ok = false;
        return out;
    }

    auto [field, alignment] = align_phases(raw);
    out.alignment = alignment;
    out.causality = hinfty_check(field, config.causal_tol);
    out.condition_causal = out.causality->pass;
    out.conditions_ok = out.condition_rank && out.condition_log && out.condition_causal;

    if (!out.condition_causal && !config.force_noncausal) {
        out.failure = "eigenvector field is not one-sided; pass force_noncausal to proceed";
        return out;
    }
    if (!out.condition_rank && !config.force_noncausal) {
        out.failure = "rank is not a.e. constant across the grid";
        return out;
    }

    ScalarFactorSet factors = factor_eigenvalues(field, config.lambda_floor);
    SpectralFactorField phi = assemble_factor(field, factors, config.trunc);
    MPInverseField psi = assemble_inverse(field, factors, config.trunc);
    try {
        std::tie(phi, psi) = normalize_phase(std::move(phi), std::move(psi));
    } catch (const GaugeError&) {
        phi.gauge += "+unnormalized";
        psi.gauge += "+unnormalized";
    }
    if (!out.condition_causal) {
        phi.gauge = "non-causal:" + phi.gauge;
        psi.gauge = "non-causal:" + psi.gauge;
    }

    VerifyTolerances tol;
    tol.causal_tol = config.causal_tol;
    out.factorization = verify_factorization(f, phi, psi, tol);

    WoldModel model = make_wold_model(phi, psi);
    out.sigma_closed = innovation_covariance_closed(field, factors);
    out.sigma_gap = spectral_norm(out.sigma_closed - model.sigma);
    out.sigma_gap_pass =
        out.sigma_gap <= config.sigma_gap_tol * (1.0 + spectral_norm(model.sigma));
    out.ks = ks_determinant_check(field, model.sigma, &model.b.front());
    out.gauge = model.gauge;
    out.model = std::move(model);

    out.all_pass = out.conditions_ok && out.factorization->pass && out.sigma_gap_pass &&
                   out.ks->pass;
    return out;
}

RoundTripReport round_trip(const MASpec& spec, const FrequencyGrid& grid,
                           const RunConfig& config) {
    RoundTripReport report;
    SpectralDensityField density = density_from_ma(spec, grid);
    report.outcome = run_factorization(density, config);
    report.factorization_ok = report.outcome.model.has_value();
    if (!report.factorization_ok) return report;

    const WoldModel& model = *report.outcome.model;
    const std::size_t j_count =
        std::max(model.b.size(), spec.coefficients.size());
    auto b_true = [&](std::size_t j) -> Mat {
        if (j < spec.coefficients.size()) return spec.coefficients[j];
        return Mat::Zero(spec.dimension, spec.rank);
    };
    auto b_hat = [&](std::size_t j) -> Mat {
        if (j < model.b.size()) return model.b[j];
        return Mat::Zero(model.dimension, model.rank);
    };

    // Q = argmin_Q sum_j ||bhat(j) Q - b(j)||_F^2 over unitary Q,
    // solved by the SVD of M = sum_j bhat(j)* b(j).
    Mat m = Mat::Zero(model.rank, spec.rank);
    for (std::size_t j = 0; j < j_count; ++j) m += b_hat(j).adjoint() * b_true(j);
    SVDResult s = svd(m);
    report.procrustes_q = s.left * s.right.adjoint();

    double res2 = 0.0, res2_id = 0.0;
    for (std::size_t j = 0; j < j_count; ++j) {
        res2 += (b_hat(j) * report.procrustes_q - b_true(j)).squaredNorm();
        res2_id += (b_hat(j) - b_true(j)).squaredNorm();
    }
    report.residual = std::sqrt(res2);
    report.residual_at_identity = std::sqrt(res2_id);

    Mat sigma_true = spec.coefficients.front() * spec.coefficients.front().adjoint();
    report.sigma_gap = spectral_norm(model.sigma - sigma_true);
    report.ks_rel_gap = report.outcome.ks ? report.outcome.ks->rel_gap : 0.0;
    report.u_causality_ratio =
        report.outcome.causality ? report.outcome.causality->negative_energy_ratio : 0.0;
    if (report.outcome.factorization) {
        report.phi_causality_ratio = report.outcome.factorization->phi_negative_ratio;
        report.psi_causality_ratio = report.outcome.factorization->psi_negative_ratio;
    }
    return report;
}

}  // namespace specfact
