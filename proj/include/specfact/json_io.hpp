#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "specfact/pipeline.hpp"

namespace specfact {

using Json = nlohmann::json;

// Complex numbers serialize as [re, im]; matrices as row-major nested arrays.
Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

Json ma_spec_to_json(const MASpec& spec);
MASpec ma_spec_from_json(const Json& j);

Json covariance_to_json(const CovarianceSequence& cov);
CovarianceSequence covariance_from_json(const Json& j);

Json density_to_json(const SpectralDensityField& f);
SpectralDensityField density_from_json(const Json& j);

Json wold_model_to_json(const WoldModel& model);
WoldModel wold_model_from_json(const Json& j);

Json run_config_to_json(const RunConfig& config);

/// Machine-readable report for a factorization run: version, config echo,
/// per-condition results, factorization deviations, determinant identity,
/// gauge tag and tail energies.
Json outcome_to_json(const FactorizationOutcome& outcome, const RunConfig& config);

Json round_trip_to_json(const RoundTripReport& report, const RunConfig& config);

Json prediction_to_json(const PredictionResult& result);

enum class InputKind { ma_spec, covariance, density };

struct DensityInput {
    InputKind kind;
    SpectralDensityField field;
    std::optional<MASpec> spec;
};

/// Loads an MA-spec, covariance, or sampled-density JSON file and converts
/// it to a sampled density on the configured grid (sampled densities keep
/// their own grid).
DensityInput load_density_input(const std::filesystem::path& path, const RunConfig& config);

Json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

/// CSV path format: header "t,x1_re,x1_im,...,xd_re,xd_im", one row per
/// time index, >= 17 significant digits.
void write_path_csv(const std::filesystem::path& path, const SamplePath& sample);
SamplePath read_path_csv(const std::filesystem::path& path);

void write_prediction_csv(const std::filesystem::path& path, const PredictionResult& result);

}  // namespace specfact
