#pragma once

#include "switchstab/mat.hpp"

namespace switchstab {

/// Euclidean-induced operator norm (largest singular value).
///
/// N=2 uses the closed form from the 2x2 Gram matrix; N>2 runs cyclic
/// Jacobi sweeps on a'a, which converge unconditionally for symmetric
/// matrices.
double operator_norm(const Mat& a);

/// Spectral radius (largest eigenvalue modulus).
///
/// N=2 is the exact quadratic formula, including the complex-pair case.
/// N>2 iterates normalized repeated squaring, tracking the scale in log
/// space, until the norm-root estimate stabilizes; throws NotConverged
/// rather than returning a doubtful value.
double spectral_radius(const Mat& a);

namespace detail {

// 2x2 closed forms on raw row-major entries [a00, a01, a10, a11]; these are
// also the scalar reference kernels the SIMD variants must match.
double opnorm2x2(double a00, double a01, double a10, double a11);
double specrad2x2(double a00, double a01, double a10, double a11);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_symmetric_eigenvalues(Mat s);

} // namespace detail

} // namespace switchstab
