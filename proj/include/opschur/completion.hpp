#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "opschur/multiplier.hpp"

namespace opschur::completion {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;
using multiplier::BlockMultiplier;
using multiplier::PartialBlockMultiplier;

struct CompletionResult {
    BlockMultiplier psi;                                    // full positive extension
    std::vector<std::tuple<int, int, ComplexMatrix>> filled;  // (x, y, block), x < y, fill order
    double min_eig;                                         // of the assembled extension
};

// Positive completion of an admissible multiplier on a chordal pattern. Each
// unspecified pair (x, y) is filled one at a time in a chordality-preserving
// order; the value is B C^+ D over the separator S mediating (x, y), with
// B = [psi(x,s)], C = [psi(s,t)], D = [psi(s,y)]. Specified blocks are copied
// through untouched. The final assembled matrix is eigenchecked at final_tol.
CompletionResult complete(const PartialBlockMultiplier& phi,
                          double tol = linalg::kDefaultTol, double final_tol = 1e-8);

// Heuristic variant for non-chordal patterns: the pattern is first extended by
// fill_in, the new pairs are filled over greedy clique separators, and the
// chordal engine finishes the job. May legitimately fail (CompletionFailure)
// since admissibility on a non-chordal pattern does not imply extendability.
CompletionResult complete_with_fill_in(const PartialBlockMultiplier& phi,
                                       double tol = linalg::kDefaultTol,
                                       double final_tol = 1e-8);

struct GramFactorization {
    int d;
    int m;                                   // number of summands
    std::vector<std::vector<ComplexMatrix>> blocks;  // blocks[i][x] is A_i(x), d x d
    double row_bound;                        // max_x || sum_i A_i(x) A_i(x)* ||
};

// Gram form psi(x, y) = sum_i A_i(x) A_i(y)* from the factor of the assembled
// extension, zero-padded into d-wide block columns.
GramFactorization gram_factorize(const CompletionResult& res, double tol = linalg::kDefaultTol);
GramFactorization gram_factorize(const BlockMultiplier& psi, double tol = linalg::kDefaultTol);

// Evaluates the Gram form at a pair.
ComplexMatrix gram_evaluate(const GramFactorization& f, int x, int y);

struct ExtensionReport {
    bool restriction_exact;    // psi agrees with phi on kappa, bitwise
    bool assembled_psd;
    double min_eig;
    int kernel_trials;
    int kernel_violations;     // PSD kernels whose Schur image failed the eigencheck
    int ampliation_trials;
    int ampliation_violations;
    bool pass;
};

// Never throws on check failures; the report carries them.
ExtensionReport verify_extension(const PartialBlockMultiplier& phi, const BlockMultiplier& psi,
                                 int trials = 50, int max_ampliation = 3, std::uint64_t seed = 0,
                                 double tol = linalg::kDefaultTol);

struct C4Options {
    double real_step = 0.01;     // grid step for the two free real entries in [-1, 1]
    int phase_count = 36;        // phases per entry in the complex sweep
    double amplitude_step = 0.1; // amplitude step for the complex sweep
    bool phase_sweep = true;
};

struct C4Demonstration {
    std::vector<double> edge_values;      // (0,1), (1,2), (2,3), (3,0)
    bool edge_blocks_psd;                 // every specified 2x2 clique block is PSD
    long grid_points;
    double grid_max_min_eig;              // max over the real grid of the min eigenvalue
    double epsilon;                       // -grid_max_min_eig, certifies non-completability
    long phase_grid_points;               // 0 when the sweep is disabled
    double phase_max_min_eig;
};

// The 4-cycle with edge data (1, 1, 1, -1): every clique block is PSD yet no
// positive completion exists. A grid search over the two free entries
// certifies a strictly negative best-possible minimum eigenvalue.
C4Demonstration counterexample_c4(const C4Options& opts = {});

}  // namespace opschur::completion
