#include "specfact/numeric_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace specfact {

double spectral_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> solver(m);
    return solver.singularValues()(0);
}

void require_finite(const Mat& m, const char* what) {
    if (!m.allFinite()) {
        throw ValidationError(std::string(what) + " contains non-finite entries");
    }
}

namespace {

// Rotates a column so its largest-magnitude component is real positive.
// Ties in magnitude go to the lowest index.
void phase_normalize_column(Eigen::Ref<Vec> v) {
    Eigen::Index best = 0;
    double best_mag = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double mag = std::abs(v(i));
        if (mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    if (best_mag == 0.0) return;
    Complex rot = std::conj(v(best)) / best_mag;
    v *= rot;
}

bool lexicographically_less(const Vec& a, const Vec& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
        if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
    }
    return false;
}

}  // namespace

HermitianEigResult eig_hermitian(const Mat& m, bool symmetrize, double hermitian_tol) {
    if (m.rows() != m.cols()) {
        throw DimensionError("eig_hermitian: matrix is not square");
    }
    require_finite(m, "eig_hermitian input");
    if (!symmetrize) {
        double defect = spectral_norm(m - m.adjoint());
        if (defect > hermitian_tol * (1.0 + spectral_norm(m))) {
            throw SymmetryError("eig_hermitian: matrix is not Hermitian within tolerance");
        }
    }
    Mat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> solver(h);

    const Eigen::Index d = m.rows();
    HermitianEigResult out;
    out.eigenvalues.resize(d);
    out.eigenvectors.resize(d, d);
    // Eigen returns increasing order; flip to non-increasing.
    for (Eigen::Index i = 0; i < d; ++i) {
        out.eigenvalues(i) = solver.eigenvalues()(d - 1 - i);
        out.eigenvectors.col(i) = solver.eigenvectors().col(d - 1 - i);
        phase_normalize_column(out.eigenvectors.col(i));
    }

    // Deterministic ordering inside groups of equal eigenvalues.
    double scale = std::max(1.0, std::abs(out.eigenvalues(0)));
    Eigen::Index start = 0;
    while (start < d) {
        Eigen::Index end = start + 1;
        while (end < d && std::abs(out.eigenvalues(end) - out.eigenvalues(start)) <= 1e-12 * scale) {
            ++end;
        }
        if (end - start > 1) {
            std::vector<Eigen::Index> idx(static_cast<std::size_t>(end - start));
            std::iota(idx.begin(), idx.end(), start);
            std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
                return lexicographically_less(out.eigenvectors.col(a), out.eigenvectors.col(b));
            });
            Mat cols(d, end - start);
            RealVec vals(end - start);
            for (Eigen::Index i = 0; i < end - start; ++i) {
                cols.col(i) = out.eigenvectors.col(idx[static_cast<std::size_t>(i)]);
                vals(i) = out.eigenvalues(idx[static_cast<std::size_t>(i)]);
            }
            out.eigenvectors.middleCols(start, end - start) = cols;
            out.eigenvalues.segment(start, end - start) = vals;
        }
        start = end;
    }
    return out;
}

SVDResult svd(const Mat& m) {
    require_finite(m, "svd input");
    Eigen::JacobiSVD<Mat> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SVDResult out;
    out.left = solver.matrixU();
    out.singulars = solver.singularValues();
    out.right = solver.matrixV();
    return out;
}

Mat moore_penrose_pinv(const Mat& m, double rank_tol) {
    if (rank_tol <= 0.0) {
        throw ValidationError("moore_penrose_pinv: rank_tol must be positive");
    }
    SVDResult s = svd(m);
    const Eigen::Index k = s.singulars.size();
    if (k == 0 || s.singulars(0) == 0.0) {
        return Mat::Zero(m.cols(), m.rows());
    }
    double cutoff = rank_tol * s.singulars(0);
    RealVec inv = RealVec::Zero(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        if (s.singulars(i) > cutoff) inv(i) = 1.0 / s.singulars(i);
    }
    return s.right * inv.asDiagonal() * s.left.adjoint();
}

void fft_inplace(std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n)) {
        throw RangeError("fft: size must be a power of two");
    }
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double angle = kTwoPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        Complex wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                Complex u = a[i + j];
                Complex v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        for (auto& x : a) x /= static_cast<double>(n);
    }
}

namespace {

void check_alias_free(int kmin, int kmax, std::size_t n) {
    const int half = static_cast<int>(n) / 2;
    if (kmin > kmax) throw RangeError("dft: empty index range");
    if (kmin <= -half || kmax >= half) {
        throw RangeError("dft: requested index outside alias-free range |k| < N/2");
    }
}

}  // namespace

FourierCoeffs dft_coefficients(const std::vector<Complex>& samples, int kmin, int kmax) {
    const std::size_t n = samples.size();
    if (!is_power_of_two(n)) {
        throw RangeError("dft_coefficients: grid size must be a power of two");
    }
    check_alias_free(kmin, kmax, n);
    // c(k) = (-1)^k * (1/N) sum_m g_m exp(+i 2 pi k m / N); the (-1)^k comes
    // from the grid offset omega_0 = -pi.
    std::vector<Complex> buf = samples;
    fft_inplace(buf, /*inverse=*/true);
    FourierCoeffs out;
    out.min_index = kmin;
    out.values.resize(static_cast<std::size_t>(kmax - kmin + 1));
    for (int k = kmin; k <= kmax; ++k) {
        std::size_t idx = static_cast<std::size_t>((k % static_cast<int>(n) + static_cast<int>(n)) %
                                                   static_cast<int>(n));
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        out.values[static_cast<std::size_t>(k - kmin)] = sign * buf[idx];
    }
    return out;
}

std::vector<Complex> dft_synthesize(const FourierCoeffs& coefficients, std::size_t grid_size) {
    if (!is_power_of_two(grid_size)) {
        throw RangeError("dft_synthesize: grid size must be a power of two");
    }
    check_alias_free(coefficients.min_index, coefficients.max_index(), grid_size);
    std::vector<Complex> buf(grid_size, Complex(0.0, 0.0));
    for (int k = coefficients.min_index; k <= coefficients.max_index(); ++k) {
        std::size_t idx = static_cast<std::size_t>(
            (k % static_cast<int>(grid_size) + static_cast<int>(grid_size)) %
            static_cast<int>(grid_size));
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        buf[idx] += sign * coefficients.at(k);
    }
    fft_inplace(buf, /*inverse=*/false);
    return buf;
}

std::vector<Mat> dft_matrix_coefficients(const std::vector<Mat>& values, int kmin, int kmax) {
    if (values.empty()) throw RangeError("dft_matrix_coefficients: empty field");
    const std::size_t n = values.size();
    check_alias_free(kmin, kmax, n);
    const Eigen::Index rows = values.front().rows();
    const Eigen::Index cols = values.front().cols();
    std::vector<Mat> out(static_cast<std::size_t>(kmax - kmin + 1), Mat::Zero(rows, cols));
    std::vector<Complex> buf(n);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            for (std::size_t m = 0; m < n; ++m) buf[m] = values[m](i, j);
            FourierCoeffs c = dft_coefficients(buf, kmin, kmax);
            for (int k = kmin; k <= kmax; ++k) {
                out[static_cast<std::size_t>(k - kmin)](i, j) = c.at(k);
            }
        }
    }
    return out;
}

}  // namespace specfact
