#pragma once

#include <vector>

#include "opschur/complex_matrix.hpp"

namespace opschur::linalg {

// Residual bound for the eigensolver: ||M v_i - lambda_i v_i||_2 <= kEigTol * ||M||_F
// and ||V*V - I||_F <= kEigTol * dim.
inline constexpr double kEigTol = 1e-12;
inline constexpr int kMaxSweeps = 100;
inline constexpr double kDefaultTol = 1e-9;

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are orthonormal eigenvectors, same order
};

// Full spectral decomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Throws NonConvergence if the off-diagonal Frobenius mass fails to drop below
// kEigTol * ||M||_F within kMaxSweeps sweeps.
EigenDecomposition eigh(const HermitianMatrix& m);

struct PsdResult {
    bool positive;
    double min_eig;
    std::vector<Complex> witness;  // eigenvector for the smallest eigenvalue
};

// Positive iff min eigenvalue >= -tol * max(1, ||M||_F).
PsdResult psd_check(const HermitianMatrix& m, double tol = kDefaultTol);

// G with M = G G*, dim rows and numerical-rank columns. Requires psd_check Positive.
ComplexMatrix gram_factor(const HermitianMatrix& m, double tol = kDefaultTol);

// Vectors r_j = sqrt(lambda_j) v_j over eigenpairs above the rank threshold,
// so that M = sum_j r_j r_j*. Requires psd_check Positive.
std::vector<std::vector<Complex>> rank_one_decompose(const HermitianMatrix& m,
                                                     double tol = kDefaultTol);

// Moore-Penrose inverse via the spectral decomposition; eigenvalues below the
// rank threshold are mapped to zero.
HermitianMatrix pseudo_inverse(const HermitianMatrix& m, double tol = kDefaultTol);

// Largest singular value. For Hermitian input this is max |eigenvalue|.
double operator_norm(const ComplexMatrix& m);

}  // namespace opschur::linalg
