#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "specfact/spectra.hpp"

namespace specfact {

enum class NoiseKind { complex_circular_gaussian, real_gaussian };

struct SimulationConfig {
    std::size_t length = 0;
    std::uint64_t seed = 0;
    std::size_t burn_in = 0;
    NoiseKind noise_kind = NoiseKind::complex_circular_gaussian;
};

/// Finite realization X_1..X_T of a d-dimensional process, with the
/// generating noise stored alongside when known.
struct SamplePath {
    Eigen::Index dimension = 0;
    std::vector<Vec> values;  // X_t, t = 1..T
    std::vector<Vec> noise;   // xi_t aligned with values; may be empty
};

/// Deterministic Gaussian sampler seeded from a 64-bit integer. Uses the
/// mt19937_64 integer stream with an explicit Box-Muller transform so the
/// double stream is identical across platforms.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}
    double next();

private:
    double uniform();

    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Orthonormal white noise: E xi = 0, E xi xi* = I_r. The complex-circular
/// kind draws independent real/imaginary parts of variance 1/2 each.
std::vector<Vec> draw_noise(const SimulationConfig& config, Eigen::Index r, std::size_t count);

/// X_t = sum_{j=0}^{q} b(j) xi_{t-j}. The first max(burn_in, q) samples,
/// where the MA window is incomplete, are discarded.
SamplePath ma_sample_path(const MASpec& spec, const SimulationConfig& config);

}  // namespace specfact
