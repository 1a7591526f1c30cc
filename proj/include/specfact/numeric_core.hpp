#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "specfact/errors.hpp"

namespace specfact {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Largest singular value of a dense matrix.
double spectral_norm(const Mat& m);

/// Throws ValidationError if any entry is NaN or infinite.
void require_finite(const Mat& m, const char* what = "matrix");

/// Result of a Hermitian eigendecomposition. Eigenvalues are sorted
/// non-increasing; eigenvector columns are orthonormal and each column has
/// its largest-magnitude component rotated to be real positive, so the
/// decomposition is deterministic for a fixed input.
struct HermitianEigResult {
    RealVec eigenvalues;
    Mat eigenvectors;
};

/// Eigendecomposition of a Hermitian matrix. If `symmetrize` is set the
/// input is replaced by its Hermitian part first; otherwise inputs farther
/// than hermitian_tol * (1 + ||m||) from Hermitian are rejected.
/// Equal eigenvalues are ordered by the lexicographically earlier
/// phase-normalized eigenvector.
HermitianEigResult eig_hermitian(const Mat& m, bool symmetrize = false,
                                 double hermitian_tol = 1e-10);

struct SVDResult {
    Mat left;           // sub-unitary columns
    RealVec singulars;  // non-increasing, non-negative
    Mat right;          // sub-unitary columns
};

SVDResult svd(const Mat& m);

/// Moore-Penrose pseudoinverse. Singular values <= rank_tol * s_max are
/// treated as zero.
Mat moore_penrose_pinv(const Mat& m, double rank_tol = 1e-12);

/// A finite window of Fourier coefficients c(k), k = min_index .. max_index,
/// of an expansion g(omega) = sum_k c(k) exp(-i k omega).
struct FourierCoeffs {
    int min_index = 0;
    std::vector<Complex> values;

    int max_index() const { return min_index + static_cast<int>(values.size()) - 1; }

    Complex at(int k) const {
        if (k < min_index || k > max_index()) return Complex(0.0, 0.0);
        return values[static_cast<std::size_t>(k - min_index)];
    }
};

/// In-place radix-2 FFT, forward kernel exp(-i 2 pi k m / N). Size must be a
/// power of two. The inverse divides by N.
void fft_inplace(std::vector<Complex>& a, bool inverse);

/// Analysis transform on the grid omega_m = -pi + 2 pi m / N:
///   c(k) = (1/N) sum_m g(omega_m) exp(+i k omega_m),
/// so that g(omega) = sum_k c(k) exp(-i k omega) for band-limited g.
/// Requested indices must satisfy |k| < N/2.
FourierCoeffs dft_coefficients(const std::vector<Complex>& samples, int kmin, int kmax);

/// Evaluates g(omega_m) = sum_k c(k) exp(-i k omega_m) on the N-point grid.
/// All coefficient indices must satisfy |k| < N/2.
std::vector<Complex> dft_synthesize(const FourierCoeffs& coefficients, std::size_t grid_size);

/// Entrywise dft_coefficients over a field of equally shaped matrices.
/// Returns matrices indexed k = kmin .. kmax.
std::vector<Mat> dft_matrix_coefficients(const std::vector<Mat>& values, int kmin, int kmax);

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace specfact
