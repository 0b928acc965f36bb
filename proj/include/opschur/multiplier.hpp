#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "opschur/complex_matrix.hpp"
#include "opschur/linalg.hpp"
#include "opschur/pattern.hpp"

namespace opschur::multiplier {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;

// Block-valued function phi: kappa -> M_d, defined exactly on the pattern
// pairs. Hermitian pair symmetry phi(y,x) = phi(x,y)* is required within 1e-12
// (relative) and then made exact; only blocks with x <= y need to be supplied,
// the mirrors are derived by adjoint.
class PartialBlockMultiplier {
  public:
    PartialBlockMultiplier(pattern::Pattern pat, int d,
                           const std::map<std::pair<int, int>, ComplexMatrix>& blocks);

    const pattern::Pattern& pattern() const { return pattern_; }
    int n() const { return pattern_.n(); }
    int d() const { return d_; }
    const ComplexMatrix& block(int x, int y) const;
    bool specified(int x, int y) const { return pattern_.has(x, y); }
    double scale() const;  // Frobenius norm of all specified blocks

  private:
    pattern::Pattern pattern_;
    int d_;
    std::map<std::pair<int, int>, ComplexMatrix> blocks_;
};

// Fully defined multiplier on X x X.
class BlockMultiplier {
  public:
    BlockMultiplier(int n, int d, std::vector<ComplexMatrix> blocks_row_major);
    explicit BlockMultiplier(const PartialBlockMultiplier& full);

    // Slice an nd x nd Hermitian matrix into blocks.
    static BlockMultiplier from_assembled(const HermitianMatrix& m, int n, int d);

    int n() const { return n_; }
    int d() const { return d_; }
    const ComplexMatrix& block(int x, int y) const { return blocks_[static_cast<std::size_t>(x) * n_ + y]; }

  private:
    int n_, d_;
    std::vector<ComplexMatrix> blocks_;
};

struct ScalarKernel {
    int n;
    ComplexMatrix entries;
};

enum class UnspecifiedFill { zero, fail };

// The nd x nd block matrix [phi(x, y)], unspecified blocks zero-filled or
// rejected. Output is exactly Hermitian (zero constructor correction).
HermitianMatrix assemble(const PartialBlockMultiplier& phi, UnspecifiedFill fill);
HermitianMatrix assemble(const BlockMultiplier& phi);

// Inflated Schur action on a scalar kernel: block (x, y) = k(x, y) * phi(x, y).
ComplexMatrix schur_apply(const BlockMultiplier& phi, const ScalarKernel& k);

// Restriction of a full multiplier to a pattern.
PartialBlockMultiplier restrict(const BlockMultiplier& psi, const pattern::Pattern& p);

struct AdmissibilityResult {
    bool admissible;
    std::vector<int> clique;  // first failing maximal clique when rejected
    double min_eig;
};

// Exact admissibility on chordal patterns: every maximal clique block matrix
// [phi(x,y)]_{x,y in beta} must be PSD.
AdmissibilityResult admissible_chordal(const PartialBlockMultiplier& phi,
                                       double tol = linalg::kDefaultTol);

struct SampledAdmissibility {
    bool violation_found;
    ScalarKernel kernel;              // violating PSD kernel supported in kappa
    double min_eig;                   // of the Schur image
    std::vector<Complex> witness;
    int trial;                        // -1 when no violation found
};

// Falsification-only check for arbitrary patterns: PSD scalar kernels
// supported inside kappa (Gram vectors on clique-contained sets, plus sums
// across cliques) are pushed through the Schur action and eigenchecked.
// Finding nothing proves nothing; a violation is conclusive.
SampledAdmissibility admissible_sampled(const PartialBlockMultiplier& phi, int trials,
                                        std::uint64_t seed, double tol = linalg::kDefaultTol);

}  // namespace opschur::multiplier
