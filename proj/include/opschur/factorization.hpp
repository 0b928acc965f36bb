#pragma once

#include <cstdint>
#include <vector>

#include "opschur/multiplier.hpp"

namespace opschur::factorization {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;
using multiplier::BlockMultiplier;

// Two-sided form phi(x, y) = sum_i A_i(x) B_i(y) with the row/column bounds
// row_bound = max_x ||sum_i A_i(x) A_i(x)*||^(1/2),
// col_bound = max_y ||sum_i B_i(y)* B_i(y)||^(1/2).
// When the assembled multiplier is PSD the factorization is symmetric,
// B_i(y) = A_i(y)*.
struct TwoSidedFactorization {
    int d;
    int m;
    std::vector<std::vector<ComplexMatrix>> a;  // a[i][x]
    std::vector<std::vector<ComplexMatrix>> b;  // b[i][y]
    double row_bound;
    double col_bound;
    bool symmetric;
};

// Balanced singular-value split of the assembled nd x nd matrix, realized by
// eigendecomposing the Hermitian doubling [[0, M], [M*, 0]].
TwoSidedFactorization factorize(const BlockMultiplier& phi, double tol = linalg::kDefaultTol);

ComplexMatrix factorization_evaluate(const TwoSidedFactorization& f, int x, int y);

// Upper bound on the completely bounded norm of the Schur action.
double cb_norm_upper(const TwoSidedFactorization& f);

// Sampled lower bound: the largest ratio ||S_phi(T)|| / ||T|| over random
// kernels. Never exceeds the cb norm; reported alongside the upper bound
// since the gap between the two is not resolved here.
double cb_norm_lower_sampled(const BlockMultiplier& phi, int trials, std::uint64_t seed);

struct EquivalenceReport {
    bool assembled_psd;        // (a) the assembled block matrix is PSD
    bool kernels_psd;          // (b) sampled PSD kernels map to PSD images
    bool ampliations_psd;      // (c) ampliated PSD kernels map to PSD images
    bool gram_exists;          // (d) a symmetric Gram factorization reconstructs phi
    bool j_kernel_falsified;   // the all-ones kernel alone falsified (b)
    double min_eig;            // of the assembled matrix
    bool agree[4][4];          // pairwise agreement of the four verdicts
    bool all_agree;
};

// Evaluates the four positivity characterizations of a full multiplier at
// finite scale: assembled PSD, Schur action on sampled PSD kernels, truncated
// ampliations, and existence of a symmetric Gram form. The all-ones kernel is
// always tested first; its image is the assembled matrix, so it falsifies (b)
// deterministically whenever (a) fails.
EquivalenceReport positivity_equivalences(const BlockMultiplier& phi, int trials,
                                          int max_ampliation = 3, std::uint64_t seed = 0,
                                          double tol = linalg::kDefaultTol);

}  // namespace opschur::factorization
