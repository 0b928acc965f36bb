#pragma once

#include <cstdint>
#include <vector>

#include "opschur/complex_matrix.hpp"
#include "opschur/linalg.hpp"

namespace opschur::cones {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;

// Hermitian element of the n x n block matrix space over M_k.
struct BlockElement {
    int n, k;
    HermitianMatrix x;  // nk x nk

    BlockElement(int n_, int k_, HermitianMatrix x_);
};

// Tuple (D_1, ..., D_n) of diagonal k x k matrices, stored by their diagonals.
struct DiagonalTuple {
    int n, k;
    std::vector<std::vector<Complex>> diags;  // n vectors of length k
};

// One summand of a maximal-cone certificate: blocks D_i * core * D_j*.
struct MaxConeSummand {
    DiagonalTuple tuple;
    HermitianMatrix core;  // k x k, PSD
};

struct MaxConeCertificate {
    std::vector<MaxConeSummand> summands;
};

// Assembled nk x nk matrix of a certificate (sum over summands of the
// conjugated cores).
HermitianMatrix certificate_assemble(const MaxConeCertificate& cert, int n, int k);

struct SampledMembership {
    bool violation;
    DiagonalTuple tuple;
    double value;  // the negative quadratic form value found
    int trial;     // -1 when no violation found
};

// Membership search for the minimal cone over diagonal conjugation: random
// diagonal tuples C and unit vectors eta probe Re <(C* X C) eta, eta>. A value
// below -1e-10 * max(1, ||X||_F) is a conclusive violation.
SampledMembership min_cone_check_sampled(const BlockElement& x, int trials, std::uint64_t seed);

struct ExactMembership {
    bool member;
    double min_eig;
};

// Exact membership: over M_k with diagonal module action the minimal cone is
// global positivity of the nk x nk matrix.
ExactMembership min_cone_check_exact(const BlockElement& x, double tol = linalg::kDefaultTol);

// Constructive maximal-cone certificate for a PSD block element: each rank-one
// piece R R* becomes one summand with all-ones core and diagonals sliced from
// R. Throws NotPsd when the element is not positive.
MaxConeCertificate max_cone_decompose(const BlockElement& x, double tol = linalg::kDefaultTol);

struct ConeEquivalenceReport {
    int trials;
    int breaches;
    double max_err;  // worst relative certificate reconstruction error
};

// For random Hermitian draws, checks the three-way equivalence between global
// positivity, exact minimal-cone membership, and decomposability with a valid
// certificate. Requires n*k <= 64.
ConeEquivalenceReport verify_cone_equivalence(int n, int k, int trials, std::uint64_t seed);

// Random elements of the maximal cone: nonnegative combinations of generator
// cores conjugated by random diagonal tuples. Every output lies in the cone by
// construction.
std::vector<BlockElement> max_cone_sample(const std::vector<HermitianMatrix>& generators, int n,
                                          int count, std::uint64_t seed);

}  // namespace opschur::cones
