#include "specfact/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace specfact {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw ValidationError("expected complex number as [re, im]");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw ValidationError("expected matrix as nested row-major arrays");
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (static_cast<Eigen::Index>(j[i].size()) != cols) {
            throw ValidationError("ragged matrix rows in JSON input");
        }
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
    }
    return m;
}

Json ma_spec_to_json(const MASpec& spec) {
    Json j;
    j["type"] = "ma_spec";
    j["dimension"] = spec.dimension;
    j["rank"] = spec.rank;
    Json coeffs = Json::array();
    for (const Mat& b : spec.coefficients) coeffs.push_back(matrix_to_json(b));
    j["coefficients"] = std::move(coeffs);
    return j;
}

MASpec ma_spec_from_json(const Json& j) {
    if (!j.contains("dimension") || !j.contains("rank") || !j.contains("coefficients")) {
        throw ValidationError("MA spec JSON requires dimension, rank, coefficients");
    }
    std::vector<Mat> coeffs;
    for (const Json& c : j.at("coefficients")) coeffs.push_back(matrix_from_json(c));
    return MASpec(j.at("dimension").get<Eigen::Index>(), j.at("rank").get<Eigen::Index>(),
                  std::move(coeffs));
}

Json covariance_to_json(const CovarianceSequence& cov) {
    Json j;
    j["type"] = "covariance";
    j["dimension"] = cov.dimension;
    j["max_lag"] = cov.max_lag;
    Json lags = Json::array();
    for (int h = -cov.max_lag; h <= cov.max_lag; ++h) {
        lags.push_back(Json{{"h", h}, {"matrix", matrix_to_json(cov.at(h))}});
    }
    j["lags"] = std::move(lags);
    return j;
}

CovarianceSequence covariance_from_json(const Json& j) {
    if (!j.contains("dimension") || !j.contains("lags")) {
        throw ValidationError("covariance JSON requires dimension and lags");
    }
    const Json& lags = j.at("lags");
    int max_lag = 0;
    for (const Json& entry : lags) max_lag = std::max(max_lag, std::abs(entry.at("h").get<int>()));
    const Eigen::Index d = j.at("dimension").get<Eigen::Index>();
    std::vector<Mat> mats(static_cast<std::size_t>(2 * max_lag + 1), Mat::Zero(d, d));
    std::vector<bool> seen(mats.size(), false);
    for (const Json& entry : lags) {
        int h = entry.at("h").get<int>();
        mats[static_cast<std::size_t>(h + max_lag)] = matrix_from_json(entry.at("matrix"));
        seen[static_cast<std::size_t>(h + max_lag)] = true;
    }
    // Missing negative lags are filled from the Hermitian transpose.
    for (int h = 1; h <= max_lag; ++h) {
        std::size_t pos = static_cast<std::size_t>(h + max_lag);
        std::size_t negpos = static_cast<std::size_t>(max_lag - h);
        if (!seen[negpos] && seen[pos]) mats[negpos] = mats[pos].adjoint();
        if (!seen[pos] && seen[negpos]) mats[pos] = mats[negpos].adjoint();
    }
    return CovarianceSequence(d, max_lag, std::move(mats));
}

Json density_to_json(const SpectralDensityField& f) {
    Json j;
    j["type"] = "density";
    j["dimension"] = f.dimension;
    j["grid_size"] = f.grid.size;
    Json values = Json::array();
    for (const Mat& v : f.values) values.push_back(matrix_to_json(v));
    j["values"] = std::move(values);
    return j;
}

SpectralDensityField density_from_json(const Json& j) {
    if (!j.contains("grid_size") || !j.contains("values")) {
        throw ValidationError("density JSON requires grid_size and values");
    }
    FrequencyGrid grid(j.at("grid_size").get<std::size_t>());
    std::vector<Mat> values;
    for (const Json& v : j.at("values")) values.push_back(matrix_from_json(v));
    return SpectralDensityField(grid, std::move(values));
}

Json wold_model_to_json(const WoldModel& model) {
    Json j;
    j["type"] = "wold_model";
    j["dimension"] = model.dimension;
    j["rank"] = model.rank;
    j["grid_size"] = model.grid_size;
    j["gauge"] = model.gauge;
    Json b = Json::array();
    for (const Mat& m : model.b) b.push_back(matrix_to_json(m));
    j["b"] = std::move(b);
    Json c = Json::array();
    for (const Mat& m : model.c_psi) c.push_back(matrix_to_json(m));
    j["c_psi"] = std::move(c);
    j["sigma"] = matrix_to_json(model.sigma);
    j["tail_energy"] = Json{{"b", model.b_tail_energy}, {"c_psi", model.c_psi_tail_energy}};
    return j;
}

WoldModel wold_model_from_json(const Json& j) {
    WoldModel model;
    model.dimension = j.at("dimension").get<Eigen::Index>();
    model.rank = j.at("rank").get<int>();
    model.grid_size = j.at("grid_size").get<std::size_t>();
    model.gauge = j.value("gauge", std::string{});
    for (const Json& m : j.at("b")) model.b.push_back(matrix_from_json(m));
    for (const Json& m : j.at("c_psi")) model.c_psi.push_back(matrix_from_json(m));
    model.sigma = matrix_from_json(j.at("sigma"));
    if (j.contains("tail_energy")) {
        model.b_tail_energy = j["tail_energy"].value("b", 0.0);
        model.c_psi_tail_energy = j["tail_energy"].value("c_psi", 0.0);
    }
    if (model.b.empty() || model.c_psi.empty()) {
        throw ValidationError("wold model JSON requires b and c_psi coefficients");
    }
    return model;
}

Json run_config_to_json(const RunConfig& config) {
    return Json{{"grid_size", config.grid_size},
                {"rank_tol", config.rank_tol},
                {"causal_tol", config.causal_tol},
                {"trunc", config.trunc},
                {"seed", config.seed},
                {"force_noncausal", config.force_noncausal},
                {"agreement_threshold", config.agreement_threshold},
                {"log_floor", config.log_floor},
                {"lambda_floor", config.lambda_floor},
                {"sigma_gap_tol", config.sigma_gap_tol}};
}

namespace {

Json rank_report_to_json(const RankReport& r) {
    Json hist = Json::object();
    for (const auto& [count, nodes] : r.histogram) hist[std::to_string(count)] = nodes;
    return Json{{"rank", r.rank},
                {"histogram", std::move(hist)},
                {"agreement", r.agreement},
                {"ae_rank", r.ae_rank},
                {"rank_tol", r.rank_tol},
                {"agreement_threshold", r.agreement_threshold}};
}

Json causality_report_to_json(const CausalityReport& c) {
    return Json{{"negative_energy_ratio", c.negative_energy_ratio},
                {"column_ratios", c.column_ratios},
                {"wraparound_gap", c.wraparound_gap},
                {"max_adjacent_gap", c.max_adjacent_gap},
                {"causal_tol", c.causal_tol},
                {"field_was_aligned", c.field_was_aligned},
                {"pass", c.pass}};
}

Json alignment_report_to_json(const AlignmentReport& a) {
    Json warnings = Json::array();
    for (const AlignmentWarning& w : a.warnings) {
        warnings.push_back(Json{{"node", w.node}, {"column", w.column}, {"overlap", w.overlap}});
    }
    return Json{{"warnings", std::move(warnings)},
                {"wraparound_gap", a.wraparound_gap},
                {"max_adjacent_gap", a.max_adjacent_gap}};
}

Json log_report_to_json(const LogIntegrabilityReport& l) {
    return Json{{"integral", l.integral},
                {"min_lambda_r", l.min_lambda_r},
                {"underflow_nodes", l.underflow_nodes},
                {"floor", l.floor},
                {"pass", l.pass}};
}

Json factorization_report_to_json(const FactorizationReport& f) {
    return Json{{"gram_deviation", f.gram_deviation},
                {"inverse_deviation", f.inverse_deviation},
                {"residual_deviation", f.residual_deviation},
                {"phi_negative_ratio", f.phi_negative_ratio},
                {"psi_negative_ratio", f.psi_negative_ratio},
                {"gram_pass", f.gram_pass},
                {"inverse_pass", f.inverse_pass},
                {"residual_pass", f.residual_pass},
                {"causal_pass", f.causal_pass},
                {"pass", f.pass},
                {"note", f.note}};
}

Json ks_report_to_json(const KSReport& k) {
    return Json{{"full_rank", k.full_rank},
                {"det_sigma", k.det_sigma},
                {"rhs", k.rhs},
                {"surrogate", k.surrogate},
                {"surrogate_lhs", k.surrogate_lhs},
                {"abs_gap", k.abs_gap},
                {"rel_gap", k.rel_gap},
                {"rel_tol", k.rel_tol},
                {"pass", k.pass}};
}

}  // namespace

Json outcome_to_json(const FactorizationOutcome& outcome, const RunConfig& config) {
    Json j;
    j["version"] = kVersion;
    j["config"] = run_config_to_json(config);
    j["conditions"] = Json{{"rank", outcome.condition_rank},
                           {"log_integrability", outcome.condition_log},
                           {"causality", outcome.condition_causal},
                           {"all", outcome.conditions_ok}};
    j["rank_report"] = rank_report_to_json(outcome.rank_report);
    if (outcome.log_report) j["log_integrability"] = log_report_to_json(*outcome.log_report);
    if (outcome.alignment) j["alignment"] = alignment_report_to_json(*outcome.alignment);
    if (outcome.causality) j["causality"] = causality_report_to_json(*outcome.causality);
    if (outcome.factorization) {
        j["factorization"] = factorization_report_to_json(*outcome.factorization);
    }
    if (outcome.ks) j["kolmogorov_szego"] = ks_report_to_json(*outcome.ks);
    if (outcome.model) {
        j["sigma_closed"] = matrix_to_json(outcome.sigma_closed);
        j["sigma_gap"] = outcome.sigma_gap;
        j["sigma_gap_pass"] = outcome.sigma_gap_pass;
        j["gauge"] = outcome.gauge;
        j["tail_energy"] = Json{{"b", outcome.model->b_tail_energy},
                                {"c_psi", outcome.model->c_psi_tail_energy}};
    }
    if (!outcome.failure.empty()) j["failure"] = outcome.failure;
    j["all_pass"] = outcome.all_pass;
    return j;
}

Json round_trip_to_json(const RoundTripReport& report, const RunConfig& config) {
    Json j;
    j["version"] = kVersion;
    j["config"] = run_config_to_json(config);
    j["residual"] = report.residual;
    j["residual_at_identity"] = report.residual_at_identity;
    j["procrustes_q"] = report.procrustes_q.size() > 0 ? matrix_to_json(report.procrustes_q)
                                                       : Json();
    j["sigma_gap"] = report.sigma_gap;
    j["ks_rel_gap"] = report.ks_rel_gap;
    j["causality_ratios"] = Json{{"u", report.u_causality_ratio},
                                 {"phi", report.phi_causality_ratio},
                                 {"psi", report.psi_causality_ratio}};
    j["factorization_ok"] = report.factorization_ok;
    j["report"] = outcome_to_json(report.outcome, config);
    return j;
}

Json prediction_to_json(const PredictionResult& result) {
    Json j;
    j["horizon"] = result.horizon;
    Json preds = Json::array();
    for (std::size_t i = 0; i < result.predictions.size(); ++i) {
        Json values = Json::array();
        for (Eigen::Index k = 0; k < result.predictions[i].size(); ++k) {
            values.push_back(complex_to_json(result.predictions[i](k)));
        }
        preds.push_back(Json{{"t", i + 1}, {"value", std::move(values)}});
    }
    j["predictions"] = std::move(preds);
    Json errs = Json::array();
    for (const Mat& e : result.error_covariances) errs.push_back(matrix_to_json(e));
    j["error_covariances"] = std::move(errs);
    return j;
}

DensityInput load_density_input(const std::filesystem::path& path, const RunConfig& config) {
    Json j = load_json_file(path);
    std::string type = j.value("type", std::string{});
    if (type.empty()) {
        if (j.contains("coefficients")) type = "ma_spec";
        else if (j.contains("lags")) type = "covariance";
        else if (j.contains("values")) type = "density";
    }
    FrequencyGrid grid(config.grid_size);
    if (type == "ma_spec") {
        MASpec spec = ma_spec_from_json(j);
        return DensityInput{InputKind::ma_spec, density_from_ma(spec, grid), std::move(spec)};
    }
    if (type == "covariance") {
        CovarianceSequence cov = covariance_from_json(j);
        return DensityInput{InputKind::covariance,
                            density_from_covariance(cov, grid, /*psd_fix=*/true).field,
                            std::nullopt};
    }
    if (type == "density") {
        return DensityInput{InputKind::density, density_from_json(j), std::nullopt};
    }
    throw ValidationError("unrecognized input JSON: expected ma_spec, covariance, or density");
}

Json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path.string());
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file: " + path.string());
    out << j.dump(2) << '\n';
}

namespace {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

void write_path_csv(const std::filesystem::path& path, const SamplePath& sample) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file: " + path.string());
    out << "t";
    for (Eigen::Index i = 1; i <= sample.dimension; ++i) {
        out << ",x" << i << "_re,x" << i << "_im";
    }
    out << '\n';
    for (std::size_t t = 0; t < sample.values.size(); ++t) {
        out << (t + 1);
        for (Eigen::Index i = 0; i < sample.dimension; ++i) {
            out << ',' << format_double(sample.values[t](i).real()) << ','
                << format_double(sample.values[t](i).imag());
        }
        out << '\n';
    }
}

SamplePath read_path_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open path file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty path file: " + path.string());
    std::size_t columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    if (columns < 3 || (columns - 1) % 2 != 0) {
        throw ValidationError("path CSV header must be t,x1_re,x1_im,...");
    }
    const Eigen::Index d = static_cast<Eigen::Index>((columns - 1) / 2);
    SamplePath sample;
    sample.dimension = d;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');  // time index
        Vec x(d);
        for (Eigen::Index i = 0; i < d; ++i) {
            double re = 0.0, im = 0.0;
            if (!std::getline(row, cell, ',')) {
                throw ValidationError("short row in path CSV");
            }
            re = std::stod(cell);
            if (!std::getline(row, cell, ',')) {
                throw ValidationError("short row in path CSV");
            }
            im = std::stod(cell);
            x(i) = Complex(re, im);
        }
        sample.values.push_back(std::move(x));
    }
    if (sample.values.empty()) throw ValidationError("path CSV has no data rows");
    return sample;
}

void write_prediction_csv(const std::filesystem::path& path, const PredictionResult& result) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file: " + path.string());
    const Eigen::Index d = result.predictions.empty() ? 0 : result.predictions.front().size();
    out << "t";
    for (Eigen::Index i = 1; i <= d; ++i) out << ",x" << i << "_re,x" << i << "_im";
    out << '\n';
    for (std::size_t t = 0; t < result.predictions.size(); ++t) {
        out << (t + 1);
        for (Eigen::Index i = 0; i < d; ++i) {
            out << ',' << format_double(result.predictions[t](i).real()) << ','
                << format_double(result.predictions[t](i).imag());
        }
        out << '\n';
    }
}

}  // namespace specfact
