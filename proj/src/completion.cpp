#include "opschur/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>

#include "opschur/rng.hpp"

namespace opschur::completion {

namespace {

using pattern::Pattern;

// Working state of a completion: the current pattern plus one block per
// specified pair. Specified input blocks are copied through bitwise.
struct WorkingBlocks {
    int n, d;
    std::vector<std::optional<ComplexMatrix>> blocks;  // n*n row-major

    WorkingBlocks(const PartialBlockMultiplier& phi)
        : n(phi.n()), d(phi.d()), blocks(static_cast<std::size_t>(phi.n()) * phi.n()) {
        for (auto& [x, y] : phi.pattern().pairs()) at(x, y) = phi.block(x, y);
    }

    std::optional<ComplexMatrix>& at(int x, int y) { return blocks[static_cast<std::size_t>(x) * n + y]; }

    ComplexMatrix stack_row(int x, const std::vector<int>& sep) const {
        ComplexMatrix b(d, sep.size() * d);
        for (std::size_t s = 0; s < sep.size(); ++s) {
            const ComplexMatrix& blk = *blocks[static_cast<std::size_t>(x) * n + sep[s]];
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) b(r, s * d + c) = blk(r, c);
        }
        return b;
    }

    ComplexMatrix stack_col(const std::vector<int>& sep, int y) const {
        ComplexMatrix dmat(sep.size() * d, d);
        for (std::size_t s = 0; s < sep.size(); ++s) {
            const ComplexMatrix& blk = *blocks[static_cast<std::size_t>(sep[s]) * n + y];
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) dmat(s * d + r, c) = blk(r, c);
        }
        return dmat;
    }

    ComplexMatrix core(const std::vector<int>& sep) const {
        ComplexMatrix cmat(sep.size() * d, sep.size() * d);
        for (std::size_t s = 0; s < sep.size(); ++s)
            for (std::size_t t = 0; t < sep.size(); ++t) {
                const ComplexMatrix& blk = *blocks[static_cast<std::size_t>(sep[s]) * n + sep[t]];
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c) cmat(s * d + r, t * d + c) = blk(r, c);
            }
        return cmat;
    }

    // canonical single-entry fill over the separator: B C^+ D
    ComplexMatrix fill_value(int x, int y, const std::vector<int>& sep, double tol) const {
        if (sep.empty()) return ComplexMatrix(d, d);
        const ComplexMatrix b = stack_row(x, sep);
        const ComplexMatrix dmat = stack_col(sep, y);
        const HermitianMatrix c(core(sep));
        return b * linalg::pseudo_inverse(c, tol).matrix() * dmat;
    }

    BlockMultiplier to_full() const {
        std::vector<ComplexMatrix> out;
        out.reserve(blocks.size());
        for (const auto& b : blocks) out.push_back(*b);
        return BlockMultiplier(n, d, std::move(out));
    }
};

}  // namespace

CompletionResult complete(const PartialBlockMultiplier& phi, double tol, double final_tol) {
    const pattern::ChordalityResult ch = pattern::is_chordal(phi.pattern());
    if (!ch.chordal) throw NotChordalError(ch.cycle);
    const multiplier::AdmissibilityResult adm = admissible_chordal(phi, tol);
    if (!adm.admissible) throw NotAdmissible(adm.clique, adm.min_eig);

    WorkingBlocks work(phi);
    Pattern cur = phi.pattern();
    std::vector<std::tuple<int, int, ComplexMatrix>> filled;

    while (auto step = pattern::next_completion_step(cur)) {
        const ComplexMatrix z = work.fill_value(step->x, step->y, step->separator, tol);
        work.at(step->x, step->y) = z;
        work.at(step->y, step->x) = z.adjoint();
        filled.emplace_back(step->x, step->y, z);
        cur = cur.with_pair(step->x, step->y);
    }

    BlockMultiplier psi = work.to_full();
    const HermitianMatrix m = assemble(psi);
    const linalg::PsdResult psd = linalg::psd_check(m, final_tol);
    if (!psd.positive) throw CompletionFailure(psd.min_eig);
    return {std::move(psi), std::move(filled), psd.min_eig};
}

CompletionResult complete_with_fill_in(const PartialBlockMultiplier& phi, double tol,
                                       double final_tol) {
    const pattern::FillResult fr = pattern::fill_in(phi.pattern());
    if (fr.added.empty()) return complete(phi, tol, final_tol);

    // first pass: fill the chordalizing pairs over greedy clique separators
    WorkingBlocks work(phi);
    Pattern cur = phi.pattern();
    std::vector<std::tuple<int, int, ComplexMatrix>> filled;
    for (auto& [x, y] : fr.added) {
        std::vector<int> sep;
        for (int s = 0; s < cur.n(); ++s) {
            if (s == x || s == y || !cur.has(x, s) || !cur.has(s, y)) continue;
            if (std::all_of(sep.begin(), sep.end(), [&](int t) { return cur.has(s, t); }))
                sep.push_back(s);
        }
        const ComplexMatrix z = work.fill_value(x, y, sep, tol);
        work.at(x, y) = z;
        work.at(y, x) = z.adjoint();
        filled.emplace_back(x, y, z);
        cur = cur.with_pair(x, y);
    }

    std::map<std::pair<int, int>, ComplexMatrix> blocks;
    for (auto& [x, y] : cur.pairs())
        if (x <= y) blocks[{x, y}] = *work.at(x, y);
    PartialBlockMultiplier extended(cur, phi.d(), blocks);

    try {
        CompletionResult res = complete(extended, tol, final_tol);
        filled.insert(filled.end(), res.filled.begin(), res.filled.end());
        return {std::move(res.psi), std::move(filled), res.min_eig};
    } catch (const NotAdmissible& e) {
        // the heuristic first pass produced a clique block that cannot be
        // positive; on this route that is a completion failure, not bad input
        throw CompletionFailure(e.min_eig);
    }
}

GramFactorization gram_factorize(const BlockMultiplier& psi, double tol) {
    const HermitianMatrix m = assemble(psi);
    const ComplexMatrix g = linalg::gram_factor(m, tol);
    const int d = psi.d(), n = psi.n();
    const int r = static_cast<int>(g.cols());
    const int summands = (r + d - 1) / d;

    GramFactorization out;
    out.d = d;
    out.m = summands;
    out.blocks.assign(summands, std::vector<ComplexMatrix>(n, ComplexMatrix(d, d)));
    for (int i = 0; i < summands; ++i)
        for (int x = 0; x < n; ++x)
            for (int row = 0; row < d; ++row)
                for (int col = 0; col < d; ++col) {
                    const int gc = i * d + col;
                    if (gc < r) out.blocks[i][x](row, col) = g(static_cast<std::size_t>(x) * d + row, gc);
                }

    double bound = 0.0;
    for (int x = 0; x < n; ++x) {
        ComplexMatrix sum(d, d);
        for (int i = 0; i < summands; ++i)
            sum += out.blocks[i][x] * out.blocks[i][x].adjoint();
        bound = std::max(bound, linalg::operator_norm(sum));
    }
    out.row_bound = bound;
    return out;
}

GramFactorization gram_factorize(const CompletionResult& res, double tol) {
    return gram_factorize(res.psi, tol);
}

ComplexMatrix gram_evaluate(const GramFactorization& f, int x, int y) {
    ComplexMatrix sum(f.d, f.d);
    for (int i = 0; i < f.m; ++i) sum += f.blocks[i][x] * f.blocks[i][y].adjoint();
    return sum;
}

ExtensionReport verify_extension(const PartialBlockMultiplier& phi, const BlockMultiplier& psi,
                                 int trials, int max_ampliation, std::uint64_t seed, double tol) {
    if (phi.n() != psi.n() || phi.d() != psi.d())
        throw DimensionMismatch("extension dimensions do not match the partial multiplier");
    const int n = psi.n(), d = psi.d();
    Rng rng(seed);
    ExtensionReport rep{};

    rep.restriction_exact = true;
    for (auto& [x, y] : phi.pattern().pairs()) {
        const ComplexMatrix& a = phi.block(x, y);
        const ComplexMatrix& b = psi.block(x, y);
        for (int r = 0; r < d && rep.restriction_exact; ++r)
            for (int c = 0; c < d; ++c)
                if (a(r, c) != b(r, c)) {
                    rep.restriction_exact = false;
                    break;
                }
    }

    const HermitianMatrix m = assemble(psi);
    const linalg::PsdResult psd = linalg::psd_check(m, tol);
    rep.assembled_psd = psd.positive;
    rep.min_eig = psd.min_eig;

    auto random_psd_kernel = [&](int size) {
        ComplexMatrix k(size, size);
        const int terms = 1 + rng.index(3);
        for (int t = 0; t < terms; ++t) {
            std::vector<Complex> g(size);
            for (Complex& z : g) z = rng.complex_gaussian();
            for (int a = 0; a < size; ++a)
                for (int b = 0; b < size; ++b) k(a, b) += g[a] * std::conj(g[b]);
        }
        return k;
    };

    rep.kernel_trials = trials;
    for (int t = 0; t < trials; ++t) {
        const multiplier::ScalarKernel k{n, random_psd_kernel(n)};
        const ComplexMatrix image = schur_apply(psi, k);
        if (!linalg::psd_check(HermitianMatrix(image), tol).positive) ++rep.kernel_violations;
    }

    for (int amp = 2; amp <= max_ampliation; ++amp) {
        const int amp_trials = std::max(1, trials / 10);
        for (int t = 0; t < amp_trials; ++t) {
            const ComplexMatrix k = random_psd_kernel(amp * n);
            ComplexMatrix image(static_cast<std::size_t>(amp) * n * d,
                                static_cast<std::size_t>(amp) * n * d);
            for (int ax = 0; ax < amp * n; ++ax)
                for (int by = 0; by < amp * n; ++by) {
                    const ComplexMatrix& blk = psi.block(ax % n, by % n);
                    for (int r = 0; r < d; ++r)
                        for (int c = 0; c < d; ++c)
                            image(static_cast<std::size_t>(ax) * d + r,
                                  static_cast<std::size_t>(by) * d + c) = k(ax, by) * blk(r, c);
                }
            ++rep.ampliation_trials;
            if (!linalg::psd_check(HermitianMatrix(image), tol).positive)
                ++rep.ampliation_violations;
        }
    }

    rep.pass = rep.restriction_exact && rep.assembled_psd && rep.kernel_violations == 0 &&
               rep.ampliation_violations == 0;
    return rep;
}

C4Demonstration counterexample_c4(const C4Options& opts) {
    C4Demonstration demo{};
    demo.edge_values = {1.0, 1.0, 1.0, -1.0};

    demo.edge_blocks_psd = true;
    for (double e : demo.edge_values) {
        ComplexMatrix b(2, 2);
        b(0, 0) = b(1, 1) = 1.0;
        b(0, 1) = b(1, 0) = e;
        if (!linalg::psd_check(HermitianMatrix(b), 0.0).positive) demo.edge_blocks_psd = false;
    }

    auto min_eig_for = [&](Complex a, Complex b) {
        ComplexMatrix m(4, 4);
        for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
        m(0, 1) = m(1, 0) = 1.0;
        m(1, 2) = m(2, 1) = 1.0;
        m(2, 3) = m(3, 2) = 1.0;
        m(3, 0) = m(0, 3) = -1.0;
        m(0, 2) = a;
        m(2, 0) = std::conj(a);
        m(1, 3) = b;
        m(3, 1) = std::conj(b);
        return linalg::eigh(HermitianMatrix(m)).values.front();
    };

    const int steps = static_cast<int>(std::lround(2.0 / opts.real_step)) + 1;
    demo.grid_max_min_eig = -std::numeric_limits<double>::infinity();
    demo.grid_points = 0;
    for (int i = 0; i < steps; ++i) {
        const double a = -1.0 + i * opts.real_step;
        for (int j = 0; j < steps; ++j) {
            const double b = -1.0 + j * opts.real_step;
            demo.grid_max_min_eig = std::max(demo.grid_max_min_eig, min_eig_for(a, b));
            ++demo.grid_points;
        }
    }
    demo.epsilon = -demo.grid_max_min_eig;

    demo.phase_grid_points = 0;
    demo.phase_max_min_eig = -std::numeric_limits<double>::infinity();
    if (opts.phase_sweep) {
        std::vector<Complex> values{Complex(0.0, 0.0)};
        const int amps = static_cast<int>(std::lround(1.0 / opts.amplitude_step));
        for (int i = 1; i <= amps; ++i)
            for (int p = 0; p < opts.phase_count; ++p) {
                const double theta = 2.0 * std::numbers::pi * p / opts.phase_count;
                values.emplace_back(i * opts.amplitude_step * std::cos(theta),
                                    i * opts.amplitude_step * std::sin(theta));
            }
        for (const Complex& a : values)
            for (const Complex& b : values) {
                demo.phase_max_min_eig = std::max(demo.phase_max_min_eig, min_eig_for(a, b));
                ++demo.phase_grid_points;
            }
    }
    return demo;
}

}  // namespace opschur::completion
