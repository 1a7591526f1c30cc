#include <doctest.h>

#include "helpers.hpp"
#include "specfact/spectra.hpp"

using namespace specfact;
using namespace specfact::testing;

TEST_CASE("frequency grid") {
    FrequencyGrid g(8);
    CHECK(g.omega(0) == doctest::Approx(-kPi));
    CHECK(g.omega(4) == doctest::Approx(0.0));
    CHECK(g.node_weight() == doctest::Approx(kTwoPi / 8.0));
    CHECK_THROWS_AS(FrequencyGrid(12), ValidationError);
    CHECK_THROWS_AS(FrequencyGrid(4), ValidationError);
}

TEST_CASE("density from moving-average coefficients") {
    SUBCASE("unit-variance white noise in one dimension") {
        std::vector<Mat> b = {Mat::Constant(1, 1, std::sqrt(kTwoPi))};
        SpectralDensityField f = density_from_ma(MASpec(1, 1, std::move(b)), FrequencyGrid(16));
        for (const Mat& v : f.values) CHECK(std::abs(v(0, 0) - Complex(1.0)) < 1e-14);
    }
    SUBCASE("scalar MA(1) value at omega = 0") {
        SpectralDensityField f = density_from_ma(scalar_ma1(0.5), FrequencyGrid(16));
        // node m = 8 is omega = 0; |1 + 0.5|^2 / (2 pi) = 2.25 / (2 pi)
        CHECK(std::abs(f.values[8](0, 0) - Complex(2.25 / kTwoPi)) < 1e-14);
    }
    SUBCASE("identity coefficients give white noise") {
        SpectralDensityField f =
            density_from_ma(MASpec(2, 2, {Mat::Identity(2, 2)}), FrequencyGrid(8));
        for (const Mat& v : f.values)
            CHECK((v - Mat::Identity(2, 2) / kTwoPi).norm() < 1e-14);
    }
}

TEST_CASE("covariances from a density") {
    SUBCASE("white noise") {
        SpectralDensityField f =
            density_from_ma(MASpec(3, 3, {Mat::Identity(3, 3)}), FrequencyGrid(32));
        CovarianceSequence c = covariance_from_density(f, 2);
        CHECK((c.at(0) - Mat::Identity(3, 3)).norm() < 1e-13);
        CHECK(c.at(1).norm() < 1e-13);
        CHECK(c.at(2).norm() < 1e-13);
    }
    SUBCASE("scalar MA(1) covariances") {
        SpectralDensityField f = density_from_ma(scalar_ma1(0.5), FrequencyGrid(64));
        CovarianceSequence c = covariance_from_density(f, 3);
        CHECK(std::abs(c.at(0)(0, 0) - Complex(1.25)) < 1e-12);
        CHECK(std::abs(c.at(1)(0, 0) - Complex(0.5)) < 1e-12);
        CHECK(std::abs(c.at(2)(0, 0)) < 1e-12);
        CHECK(std::abs(c.at(-1)(0, 0) - Complex(0.5)) < 1e-12);
    }
    SUBCASE("linearity in the density") {
        SpectralDensityField f = density_from_ma(scalar_ma1(0.5), FrequencyGrid(64));
        SpectralDensityField f3 = f;
        for (Mat& v : f3.values) v *= 3.0;
        CovarianceSequence a = covariance_from_density(f, 2);
        CovarianceSequence b = covariance_from_density(f3, 2);
        for (int h = -2; h <= 2; ++h) CHECK((b.at(h) - 3.0 * a.at(h)).norm() < 1e-12);
    }
    SUBCASE("matches the direct coefficient convolution") {
        MASpec spec = mixed_two_channel(0.5, -0.3);
        SpectralDensityField f = density_from_ma(spec, FrequencyGrid(128));
        CovarianceSequence c = covariance_from_density(f, 3);
        for (int h = 0; h <= 3; ++h) {
            Mat expected = Mat::Zero(2, 2);
            for (std::size_t j = 0; j + static_cast<std::size_t>(h) < spec.coefficients.size();
                 ++j)
                expected += spec.coefficients[j + static_cast<std::size_t>(h)] *
                            spec.coefficients[j].adjoint();
            CHECK((c.at(h) - expected).norm() < 1e-12);
        }
    }
}

TEST_CASE("density from covariances") {
    SUBCASE("white covariance") {
        std::vector<Mat> mats = {Mat::Identity(2, 2)};
        CovarianceSequence c(2, 0, std::move(mats));
        DensityFromCovarianceResult r = density_from_covariance(c, FrequencyGrid(16));
        for (const Mat& v : r.field.values)
            CHECK((v - Mat::Identity(2, 2) / kTwoPi).norm() < 1e-14);
        CHECK(r.adjustment_mass == 0.0);
    }
    SUBCASE("round-trips the scalar MA(1) density") {
        SpectralDensityField f = density_from_ma(scalar_ma1(0.5), FrequencyGrid(64));
        CovarianceSequence c = covariance_from_density(f, 1);
        DensityFromCovarianceResult r = density_from_covariance(c, FrequencyGrid(64));
        for (std::size_t m = 0; m < 64; ++m)
            CHECK((r.field.values[m] - f.values[m]).norm() < 1e-12);
    }
    SUBCASE("indefinite truncation flagged without psd_fix") {
        // 1 + 1.4 cos(omega) is -0.4 at omega = pi.
        std::vector<Mat> mats = {Mat::Constant(1, 1, 0.7), Mat::Constant(1, 1, 1.0),
                                 Mat::Constant(1, 1, 0.7)};
        CovarianceSequence c(1, 1, std::move(mats));
        CHECK_THROWS_AS(density_from_covariance(c, FrequencyGrid(32)), DefinitenessError);
        DensityFromCovarianceResult r =
            density_from_covariance(c, FrequencyGrid(32), /*psd_fix=*/true);
        CHECK(r.clipped_nodes > 0);
        CHECK(r.adjustment_mass > 0.0);
        // Clipped field is PSD at every node.
        for (const Mat& v : r.field.values) CHECK(v(0, 0).real() >= -1e-15);
    }
}

TEST_CASE("sup-norm bound") {
    SpectralDensityField white =
        density_from_ma(MASpec(2, 2, {Mat::Identity(2, 2)}), FrequencyGrid(16));
    CHECK(sup_norm_bound(white) == doctest::Approx(1.0 / kTwoPi));

    SpectralDensityField f = density_from_ma(scalar_ma1(0.5), FrequencyGrid(64));
    CHECK(sup_norm_bound(f) == doctest::Approx(2.25 / kTwoPi));

    SpectralDensityField f2 = f;
    for (Mat& v : f2.values) v *= 5.0;
    CHECK(sup_norm_bound(f2) == doctest::Approx(5.0 * 2.25 / kTwoPi));
}

TEST_CASE("input validation") {
    SUBCASE("covariance symmetry C(-h) = C(h)*") {
        std::vector<Mat> mats = {Mat::Constant(1, 1, 0.3), Mat::Constant(1, 1, 1.0),
                                 Mat::Constant(1, 1, 0.4)};
        CHECK_THROWS_AS(CovarianceSequence(1, 1, std::move(mats)), SymmetryError);
    }
    SUBCASE("C(0) must be positive semidefinite") {
        std::vector<Mat> mats = {Mat::Constant(1, 1, -1.0)};
        CHECK_THROWS_AS(CovarianceSequence(1, 0, std::move(mats)), DefinitenessError);
    }
    SUBCASE("density nodes must be hermitian") {
        std::vector<Mat> vals(8, Mat::Identity(2, 2));
        vals[3](0, 1) = Complex(0.5, 0.0);  // not mirrored below the diagonal
        CHECK_THROWS_AS(SpectralDensityField(FrequencyGrid(8), std::move(vals)), SymmetryError);
    }
    SUBCASE("leading MA coefficient must be nonzero") {
        std::vector<Mat> b = {Mat::Zero(1, 1), Mat::Constant(1, 1, 1.0)};
        CHECK_THROWS_AS(MASpec(1, 1, std::move(b)), ValidationError);
    }
}

TEST_CASE("total power equals the trace of the zero-lag covariance") {
    MASpec spec = mixed_two_channel(0.5, -0.3);
    SpectralDensityField f = density_from_ma(spec, FrequencyGrid(128));
    CovarianceSequence c = covariance_from_density(f, 0);
    CHECK(f.total_power() == doctest::Approx(c.at(0).trace().real()).epsilon(1e-12));
}
