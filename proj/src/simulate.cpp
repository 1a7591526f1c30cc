#include "specfact/simulate.hpp"

#include <cmath>

namespace specfact {

double GaussianSampler::uniform() {
    // 53-bit mantissa, strictly inside (0, 1).
    return (static_cast<double>(engine_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double GaussianSampler::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = kTwoPi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::vector<Vec> draw_noise(const SimulationConfig& config, Eigen::Index r, std::size_t count) {
    if (r < 1) throw ValidationError("draw_noise: rank must be >= 1");
    GaussianSampler sampler(config.seed);
    std::vector<Vec> noise;
    noise.reserve(count);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t t = 0; t < count; ++t) {
        Vec xi(r);
        for (Eigen::Index i = 0; i < r; ++i) {
            if (config.noise_kind == NoiseKind::complex_circular_gaussian) {
                xi(i) = Complex(sampler.next(), sampler.next()) * inv_sqrt2;
            } else {
                xi(i) = Complex(sampler.next(), 0.0);
            }
        }
        noise.push_back(std::move(xi));
    }
    return noise;
}

SamplePath ma_sample_path(const MASpec& spec, const SimulationConfig& config) {
    if (config.length < 1) throw ValidationError("ma_sample_path: length must be >= 1");
    const std::size_t q = static_cast<std::size_t>(spec.order());
    const std::size_t burn = std::max(config.burn_in, q);
    const std::size_t total = config.length + burn;
    std::vector<Vec> noise = draw_noise(config, spec.rank, total);
    SamplePath path;
    path.dimension = spec.dimension;
    path.values.reserve(config.length);
    path.noise.reserve(config.length);
    for (std::size_t t = burn; t < total; ++t) {
        Vec x = Vec::Zero(spec.dimension);
        for (std::size_t j = 0; j <= q; ++j) {
            x += spec.coefficients[j] * noise[t - j];
        }
        path.values.push_back(std::move(x));
        path.noise.push_back(noise[t]);
    }
    return path;
}

}  // namespace specfact
