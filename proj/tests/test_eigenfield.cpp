#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "specfact/eigenfield.hpp"

using namespace specfact;
using namespace specfact::testing;

namespace {

SpectralDensityField constant_diag_density(std::size_t n) {
    Mat v = Mat::Zero(2, 2);
    v(0, 0) = 2.0 / kTwoPi;
    v(1, 1) = 1.0 / kTwoPi;
    return SpectralDensityField(FrequencyGrid(n), std::vector<Mat>(n, v));
}

// f(omega) = lambda(omega) u u* with u = (1,1)^T/sqrt(2) and the scalar
// MA(1) eigenvalue lambda = |1 + theta e^{-i omega}|^2 / (2 pi).
SpectralDensityField rank_one_density(std::size_t n, double theta) {
    return density_from_ma(rank_one_ma1(theta), FrequencyGrid(n));
}

}  // namespace

TEST_CASE("rank detection") {
    SUBCASE("white noise has full rank everywhere") {
        SpectralDensityField f =
            density_from_ma(MASpec(2, 2, {Mat::Identity(2, 2)}), FrequencyGrid(32));
        RankReport r = detect_rank(f, 1e-10);
        CHECK(r.rank == 2);
        CHECK(r.agreement == doctest::Approx(1.0));
        CHECK(r.ae_rank);
    }
    SUBCASE("rank-one construction") {
        RankReport r = detect_rank(rank_one_density(64, 0.5), 1e-10);
        CHECK(r.rank == 1);
        CHECK(r.agreement == doctest::Approx(1.0));
    }
    SUBCASE("density vanishing at an interior node") {
        // theta = 1 makes |1 + e^{-i omega}|^2 vanish at omega = -pi, which
        // is node 0 of the grid.
        SpectralDensityField f = density_from_ma(scalar_ma1(1.0), FrequencyGrid(64));
        RankReport r = detect_rank(f, 1e-10);
        CHECK(r.rank == 1);
        CHECK(r.agreement < 1.0);
        CHECK(r.histogram.count(0) == 1);
    }
}

TEST_CASE("pointwise eigendecomposition") {
    SUBCASE("constant diagonal field") {
        EigenField e = pointwise_eig(constant_diag_density(16), 1e-10);
        CHECK(e.rank == 2);
        for (std::size_t m = 0; m < 16; ++m) {
            CHECK(e.lambdas[m](0) == doctest::Approx(2.0 / kTwoPi));
            CHECK(e.lambdas[m](1) == doctest::Approx(1.0 / kTwoPi));
            CHECK((e.vectors[m] - Mat::Identity(2, 2)).norm() < 1e-13);
        }
    }
    SUBCASE("rank-one field keeps one column proportional to u") {
        EigenField e = pointwise_eig(rank_one_density(32, 0.5), 1e-10);
        CHECK(e.rank == 1);
        Vec u(2);
        u << Complex(1.0 / std::sqrt(2.0), 0.0), Complex(1.0 / std::sqrt(2.0), 0.0);
        for (std::size_t m = 0; m < 32; ++m) {
            const double overlap = std::abs((u.adjoint() * e.vectors[m].col(0))(0, 0));
            CHECK(overlap == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    SUBCASE("reconstruction at every node") {
        SpectralDensityField f = density_from_ma(mixed_two_channel(0.5, -0.3), FrequencyGrid(64));
        EigenField e = pointwise_eig(f, 1e-10);
        for (std::size_t m = 0; m < 64; ++m) {
            Mat rebuilt = e.vectors[m] * e.lambdas[m].cast<Complex>().asDiagonal() *
                          e.vectors[m].adjoint();
            CHECK((rebuilt - f.values[m]).norm() < 1e-12);
        }
    }
    SUBCASE("unstable rank rejected unless explicitly allowed") {
        SpectralDensityField f = density_from_ma(scalar_ma1(1.0), FrequencyGrid(64));
        PointwiseEigOptions strict;
        strict.agreement_threshold = 1.0;
        CHECK_THROWS_AS(pointwise_eig(f, strict), RankInstabilityError);
        PointwiseEigOptions loose = strict;
        loose.allow_rank_instability = true;
        EigenField e = pointwise_eig(f, loose);
        CHECK(!e.deficient_nodes.empty());
    }
}

TEST_CASE("phase alignment") {
    SUBCASE("random per-node phases on a constant field are removed") {
        EigenField e = pointwise_eig(constant_diag_density(32), 1e-10);
        std::mt19937_64 engine(5);
        std::uniform_real_distribution<double> unif(-kPi, kPi);
        for (std::size_t m = 0; m < 32; ++m)
            for (int j = 0; j < 2; ++j)
                e.vectors[m].col(j) *= std::exp(Complex(0.0, unif(engine)));
        e.aligned = false;
        auto [aligned, report] = align_phases(e);
        // Up to one global phase per column, the field is constant again.
        for (std::size_t m = 1; m < 32; ++m)
            CHECK((aligned.vectors[m] - aligned.vectors[0]).norm() < 1e-12);
        CHECK(report.max_adjacent_gap < 1e-12);
    }
    SUBCASE("slowly rotating real field becomes forward-correlated") {
        const std::size_t n = 64;
        FrequencyGrid grid(n);
        EigenField e{grid};
        e.dimension = 2;
        e.rank = 1;
        for (std::size_t m = 0; m < n; ++m) {
            const double w = grid.omega(m);
            Mat u(2, 1);
            // Angle w/4 keeps the sweep within a quarter turn so adjacent
            // overlaps stay well above zero.
            u << Complex(std::cos(w / 4.0), 0.0), Complex(std::sin(w / 4.0), 0.0);
            e.vectors.push_back(u);
            e.lambdas.push_back(RealVec::Ones(1));
        }
        auto [aligned, report] = align_phases(e);
        for (std::size_t m = 1; m < n; ++m) {
            const Complex ip =
                (aligned.vectors[m - 1].col(0).adjoint() * aligned.vectors[m].col(0))(0, 0);
            CHECK(ip.real() > 0.0);
            CHECK(std::abs(ip.imag()) < 1e-12);
        }
        CHECK(report.warnings.empty());
    }
    SUBCASE("degenerate eigenvalues keep the identity permutation") {
        SpectralDensityField f =
            density_from_ma(MASpec(2, 2, {Mat::Identity(2, 2)}), FrequencyGrid(16));
        EigenField e = pointwise_eig(f, 1e-10);
        auto [aligned, report] = align_phases(e);
        CHECK(report.warnings.empty());
        for (std::size_t m = 0; m < 16; ++m)
            CHECK((aligned.vectors[m] - aligned.vectors[0]).norm() < 1e-12);
    }
    SUBCASE("idempotent on an aligned field") {
        EigenField e = pointwise_eig(rank_one_density(32, 0.5), 1e-10);
        auto [once, r1] = align_phases(e);
        auto [twice, r2] = align_phases(once);
        for (std::size_t m = 0; m < 32; ++m)
            CHECK((twice.vectors[m] - once.vectors[m]).norm() == 0.0);
    }
    SUBCASE("spans are unchanged by alignment") {
        SpectralDensityField f = density_from_ma(mixed_two_channel(0.5, -0.3), FrequencyGrid(64));
        EigenField e = pointwise_eig(f, 1e-10);
        auto [aligned, report] = align_phases(e);
        for (std::size_t m = 0; m < 64; ++m) {
            Mat p_raw = e.vectors[m] * e.vectors[m].adjoint();
            Mat p_aligned = aligned.vectors[m] * aligned.vectors[m].adjoint();
            CHECK((p_raw - p_aligned).norm() < 1e-12);
        }
    }
}

TEST_CASE("one-sidedness diagnostic") {
    SUBCASE("constant field is causal with zero ratio") {
        EigenField e = pointwise_eig(constant_diag_density(32), 1e-10);
        auto [aligned, report] = align_phases(e);
        CausalityReport c = hinfty_check(aligned, 1e-8);
        CHECK(c.negative_energy_ratio < 1e-14);
        CHECK(c.pass);
    }
    SUBCASE("one-sided column u = (1, e^{-i omega})/sqrt(2)") {
        const std::size_t n = 64;
        FrequencyGrid grid(n);
        EigenField e{grid};
        e.dimension = 2;
        e.rank = 1;
        e.aligned = true;
        for (std::size_t m = 0; m < n; ++m) {
            Mat u(2, 1);
            u << Complex(1.0 / std::sqrt(2.0), 0.0),
                std::exp(Complex(0.0, -grid.omega(m))) / std::sqrt(2.0);
            e.vectors.push_back(u);
            e.lambdas.push_back(RealVec::Ones(1));
        }
        CausalityReport c = hinfty_check(e, 1e-8);
        CHECK(c.negative_energy_ratio < 1e-12);
        CHECK(c.pass);
    }
    SUBCASE("anti-causal column u = (1, e^{+i omega})/sqrt(2) fails at ratio 0.5") {
        const std::size_t n = 64;
        FrequencyGrid grid(n);
        EigenField e{grid};
        e.dimension = 2;
        e.rank = 1;
        e.aligned = true;
        for (std::size_t m = 0; m < n; ++m) {
            Mat u(2, 1);
            u << Complex(1.0 / std::sqrt(2.0), 0.0),
                std::exp(Complex(0.0, grid.omega(m))) / std::sqrt(2.0);
            e.vectors.push_back(u);
            e.lambdas.push_back(RealVec::Ones(1));
        }
        CausalityReport c = hinfty_check(e, 1e-8);
        // The energy splits evenly between indices 0 and -1.
        CHECK(c.negative_energy_ratio == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(!c.pass);
    }
}

TEST_CASE("log-integrability quadrature") {
    SUBCASE("constant eigenvalue 1/(2 pi)") {
        SpectralDensityField f =
            density_from_ma(MASpec(1, 1, {Mat::Constant(1, 1, 1.0)}), FrequencyGrid(32));
        EigenField e = pointwise_eig(f, 1e-10);
        LogIntegrabilityReport r = log_integrability_check(e);
        CHECK(r.integral == doctest::Approx(kTwoPi * std::log(1.0 / kTwoPi)));
        CHECK(r.pass);
    }
    SUBCASE("scalar MA(1) Szego integral") {
        // For |theta| < 1 the mean of log f is -log(2 pi), so the integral
        // over [-pi, pi) is -2 pi log(2 pi).
        SpectralDensityField f = density_from_ma(scalar_ma1(0.5), FrequencyGrid(4096));
        EigenField e = pointwise_eig(f, 1e-10);
        LogIntegrabilityReport r = log_integrability_check(e);
        CHECK(r.integral == doctest::Approx(-kTwoPi * std::log(kTwoPi)).epsilon(1e-9));
        CHECK(r.pass);
    }
    SUBCASE("band-limited eigenvalue fails") {
        const std::size_t n = 64;
        FrequencyGrid grid(n);
        std::vector<Mat> vals(n, Mat::Zero(1, 1));
        // Positive on three quarters of the circle so the modal rank stays
        // one, zero on the remaining band.
        for (std::size_t m = 0; m < n; ++m)
            vals[m](0, 0) = std::abs(grid.omega(m)) < 3.0 * kPi / 4.0 ? 1.0 : 0.0;
        SpectralDensityField f(grid, std::move(vals));
        PointwiseEigOptions options;
        options.allow_rank_instability = true;
        EigenField e = pointwise_eig(f, options);
        LogIntegrabilityReport r = log_integrability_check(e);
        CHECK(!r.pass);
        CHECK(r.underflow_nodes > 0);
    }
}
