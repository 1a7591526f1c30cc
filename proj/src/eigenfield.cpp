#include "specfact/eigenfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace specfact {

namespace {

std::vector<HermitianEigResult> decompose_all(const SpectralDensityField& f) {
    std::vector<HermitianEigResult> out;
    out.reserve(f.grid.size);
    for (const Mat& v : f.values) out.push_back(eig_hermitian(v, /*symmetrize=*/true));
    return out;
}

RankReport rank_from_decompositions(const std::vector<HermitianEigResult>& eigs,
                                    double rank_tol, double agreement_threshold) {
    if (rank_tol <= 0.0) throw ValidationError("detect_rank: rank_tol must be positive");
    double global_max = 0.0;
    for (const auto& e : eigs) {
        if (e.eigenvalues.size() > 0) global_max = std::max(global_max, e.eigenvalues(0));
    }
    RankReport report;
    report.rank_tol = rank_tol;
    report.agreement_threshold = agreement_threshold;
    double cutoff = rank_tol * global_max;
    for (const auto& e : eigs) {
        int count = 0;
        for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i) {
            if (e.eigenvalues(i) > cutoff) ++count;
        }
        ++report.histogram[count];
    }
    std::size_t best = 0;
    // Ties go to the larger rank: the map iterates in increasing key order,
    // so >= picks the highest count among equally common ranks.
    for (const auto& [count, nodes] : report.histogram) {
        if (nodes >= best) {
            best = nodes;
            report.rank = count;
        }
    }
    report.agreement = static_cast<double>(best) / static_cast<double>(eigs.size());
    report.ae_rank = report.agreement >= agreement_threshold;
    return report;
}

}  // namespace

RankReport detect_rank(const SpectralDensityField& f, double rank_tol,
                       double agreement_threshold) {
    return rank_from_decompositions(decompose_all(f), rank_tol, agreement_threshold);
}

EigenField pointwise_eig(const SpectralDensityField& f, const PointwiseEigOptions& options) {
    std::vector<HermitianEigResult> eigs = decompose_all(f);
    RankReport report = rank_from_decompositions(eigs, options.rank_tol,
                                                 options.agreement_threshold);
    if (!report.ae_rank && !options.allow_rank_instability) {
        std::ostringstream msg;
        msg << "pointwise_eig: rank varies across nodes (agreement "
            << report.agreement << " < " << options.agreement_threshold << ")";
        throw RankInstabilityError(msg.str(), report.histogram);
    }
    if (report.rank == 0) {
        throw RankInstabilityError("pointwise_eig: density is zero on most of the grid",
                                   report.histogram);
    }

    EigenField field{f.grid};
    field.dimension = f.dimension;
    field.rank = report.rank;
    field.rank_report = report;
    field.lambdas.reserve(f.grid.size);
    field.vectors.reserve(f.grid.size);
    const int r = report.rank;
    double global_max = 0.0;
    for (const auto& e : eigs) {
        if (e.eigenvalues.size() > 0) global_max = std::max(global_max, e.eigenvalues(0));
    }
    const double cutoff = options.rank_tol * global_max;
    for (std::size_t m = 0; m < f.grid.size; ++m) {
        field.lambdas.push_back(eigs[m].eigenvalues.head(r));
        field.vectors.push_back(eigs[m].eigenvectors.leftCols(r));
        if (field.lambdas.back()(r - 1) <= cutoff) field.deficient_nodes.push_back(m);
    }
    return field;
}

namespace {

void normalize_node0(Mat& u) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
        Eigen::Index best = 0;
        double best_mag = 0.0;
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            double mag = std::abs(u(i, c));
            if (mag > best_mag) {
                best_mag = mag;
                best = i;
            }
        }
        if (best_mag == 0.0) continue;
        Complex entry = u(best, c);
        if (entry.imag() == 0.0 && entry.real() > 0.0) continue;
        u.col(c) *= std::conj(entry) / best_mag;
    }
}

// Greedy maximum-overlap assignment; ties prefer the diagonal, then the
// lowest index pair.
std::vector<Eigen::Index> greedy_match(const Mat& overlaps) {
    const Eigen::Index r = overlaps.rows();
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(r), -1);
    std::vector<bool> row_used(static_cast<std::size_t>(r), false);
    std::vector<bool> col_used(static_cast<std::size_t>(r), false);
    for (Eigen::Index step = 0; step < r; ++step) {
        Eigen::Index bi = -1, bj = -1;
        double best = -1.0;
        for (Eigen::Index i = 0; i < r; ++i) {
            if (row_used[static_cast<std::size_t>(i)]) continue;
            for (Eigen::Index j = 0; j < r; ++j) {
                if (col_used[static_cast<std::size_t>(j)]) continue;
                double mag = std::abs(overlaps(i, j));
                bool better = mag > best + 1e-12;
                bool tie = std::abs(mag - best) <= 1e-12;
                if (better || (tie && i == j && bi != bj)) {
                    best = mag;
                    bi = i;
                    bj = j;
                }
            }
        }
        perm[static_cast<std::size_t>(bi)] = bj;
        row_used[static_cast<std::size_t>(bi)] = true;
        col_used[static_cast<std::size_t>(bj)] = true;
    }
    return perm;
}

}  // namespace

std::pair<EigenField, AlignmentReport> align_phases(const EigenField& field) {
    AlignmentReport report;
    if (field.aligned) {
        // Idempotent by contract.
        EigenField copy = field;
        const std::size_t n = field.grid.size;
        for (std::size_t m = 1; m < n; ++m) {
            report.max_adjacent_gap = std::max(
                report.max_adjacent_gap, (copy.vectors[m] - copy.vectors[m - 1]).norm());
        }
        report.wraparound_gap = (copy.vectors[0] - copy.vectors[n - 1]).norm();
        return {std::move(copy), report};
    }

    EigenField out = field;
    const std::size_t n = field.grid.size;
    const Eigen::Index r = field.rank;
    normalize_node0(out.vectors[0]);
    for (std::size_t m = 1; m < n; ++m) {
        const Mat& prev = out.vectors[m - 1];
        Mat overlaps = prev.adjoint() * out.vectors[m];
        std::vector<Eigen::Index> perm = greedy_match(overlaps);
        Mat matched(out.vectors[m].rows(), r);
        RealVec lam(r);
        for (Eigen::Index i = 0; i < r; ++i) {
            Eigen::Index j = perm[static_cast<std::size_t>(i)];
            Complex z = overlaps(i, j);
            double mag = std::abs(z);
            Vec col = out.vectors[m].col(j);
            if (mag > 0.0) col *= std::conj(z) / mag;
            matched.col(i) = col;
            lam(i) = out.lambdas[m](j);
            if (mag < 0.1) {
                report.warnings.push_back({m, static_cast<int>(i), mag});
            }
        }
        out.vectors[m] = std::move(matched);
        out.lambdas[m] = std::move(lam);
        report.max_adjacent_gap =
            std::max(report.max_adjacent_gap, (out.vectors[m] - out.vectors[m - 1]).norm());
    }
    report.wraparound_gap = (out.vectors[0] - out.vectors[n - 1]).norm();
    out.aligned = true;
    return {std::move(out), report};
}

CausalityReport hinfty_check(const EigenField& field, double causal_tol) {
    CausalityReport report;
    report.causal_tol = causal_tol;
    report.field_was_aligned = field.aligned;
    const int half = static_cast<int>(field.grid.size) / 2;
    report.min_index = -(half - 1);
    report.coefficients = dft_matrix_coefficients(field.vectors, -(half - 1), half - 1);

    const Eigen::Index r = field.rank;
    std::vector<double> col_total(static_cast<std::size_t>(r), 0.0);
    std::vector<double> col_neg(static_cast<std::size_t>(r), 0.0);
    for (int j = report.min_index; j <= half - 1; ++j) {
        const Mat& c = report.coefficients[static_cast<std::size_t>(j - report.min_index)];
        for (Eigen::Index col = 0; col < r; ++col) {
            double e = c.col(col).squaredNorm();
            col_total[static_cast<std::size_t>(col)] += e;
            if (j < 0) col_neg[static_cast<std::size_t>(col)] += e;
        }
    }
    double total = 0.0, neg = 0.0;
    report.column_ratios.resize(static_cast<std::size_t>(r), 0.0);
    for (Eigen::Index col = 0; col < r; ++col) {
        total += col_total[static_cast<std::size_t>(col)];
        neg += col_neg[static_cast<std::size_t>(col)];
        if (col_total[static_cast<std::size_t>(col)] > 0.0) {
            report.column_ratios[static_cast<std::size_t>(col)] =
                col_neg[static_cast<std::size_t>(col)] / col_total[static_cast<std::size_t>(col)];
        }
    }
    report.negative_energy_ratio = total > 0.0 ? neg / total : 0.0;

    const std::size_t n = field.grid.size;
    for (std::size_t m = 1; m < n; ++m) {
        report.max_adjacent_gap = std::max(
            report.max_adjacent_gap, (field.vectors[m] - field.vectors[m - 1]).norm());
    }
    report.wraparound_gap = (field.vectors[0] - field.vectors[n - 1]).norm();
    // The wraparound gap of a continuous periodic field is at most a few
    // node-to-node steps; a nonzero phase winding shows up as a gap of
    // order 1.
    double gap_threshold = 10.0 * report.max_adjacent_gap + 1e-12;
    report.pass = report.negative_energy_ratio <= causal_tol &&
                  report.wraparound_gap <= gap_threshold;
    return report;
}

LogIntegrabilityReport log_integrability_check(const EigenField& field, double floor) {
    LogIntegrabilityReport report;
    report.floor = floor;
    const int r = field.rank;
    double sum = 0.0;
    double min_lambda = std::numeric_limits<double>::infinity();
    for (const RealVec& lam : field.lambdas) {
        double lr = lam(r - 1);
        min_lambda = std::min(min_lambda, lr);
        if (lr <= 1e-300) {
            ++report.underflow_nodes;
            sum += std::log(1e-300);
        } else {
            sum += std::log(lr);
        }
    }
    report.integral = field.grid.node_weight() * sum;
    report.min_lambda_r = min_lambda;
    report.pass = report.underflow_nodes == 0 && report.integral >= floor;
    return report;
}

}  // namespace specfact
