#include "opschur/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "opschur/rng.hpp"

namespace opschur::multiplier {

namespace {

ComplexMatrix exact_adjoint_pair(const ComplexMatrix& upper) { return upper.adjoint(); }

ComplexMatrix hermitianize_exact(const ComplexMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out(i, i) = Complex(m(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return out;
}

}  // namespace

PartialBlockMultiplier::PartialBlockMultiplier(
    pattern::Pattern pat, int d, const std::map<std::pair<int, int>, ComplexMatrix>& blocks)
    : pattern_(std::move(pat)), d_(d) {
    if (d < 1) throw std::invalid_argument("block dimension must be positive");

    double scale_sq = 0.0;
    for (auto& [key, b] : blocks) scale_sq += b.frobenius_norm() * b.frobenius_norm();
    const double scale = std::max(1.0, std::sqrt(scale_sq));

    for (auto& [key, b] : blocks) {
        auto [x, y] = key;
        if (!pattern_.has(x, y)) throw UnspecifiedEntry(x, y);
        if (b.rows() != static_cast<std::size_t>(d) || b.cols() != static_cast<std::size_t>(d))
            throw DimensionMismatch("block (" + std::to_string(x) + "," + std::to_string(y) +
                                    ") is not " + std::to_string(d) + "x" + std::to_string(d));
        if (!b.all_finite()) throw Error("non-finite entry in block");
    }

    for (auto& [x, y] : pattern_.pairs()) {
        if (x > y) continue;
        const auto fwd = blocks.find({x, y});
        const auto bwd = blocks.find({y, x});
        if (fwd == blocks.end() && bwd == blocks.end()) throw UnspecifiedEntry(x, y);

        ComplexMatrix upper = fwd != blocks.end() ? fwd->second : bwd->second.adjoint();
        if (fwd != blocks.end() && bwd != blocks.end()) {
            const ComplexMatrix diff = fwd->second - bwd->second.adjoint();
            if (diff.frobenius_norm() > 1e-12 * scale)
                throw Error("blocks (" + std::to_string(x) + "," + std::to_string(y) +
                            ") and its mirror are not adjoints of each other");
        }
        if (x == y) {
            const ComplexMatrix diff = upper - upper.adjoint();
            if (diff.frobenius_norm() > 1e-12 * scale)
                throw Error("diagonal block " + std::to_string(x) + " is not Hermitian");
            upper = hermitianize_exact(upper);
        }
        blocks_[{x, y}] = upper;
        if (x != y) blocks_[{y, x}] = exact_adjoint_pair(upper);
    }
}

const ComplexMatrix& PartialBlockMultiplier::block(int x, int y) const {
    const auto it = blocks_.find({x, y});
    if (it == blocks_.end()) throw UnspecifiedEntry(x, y);
    return it->second;
}

double PartialBlockMultiplier::scale() const {
    double s = 0.0;
    for (auto& [key, b] : blocks_) s += b.frobenius_norm() * b.frobenius_norm();
    return std::sqrt(s);
}

BlockMultiplier::BlockMultiplier(int n, int d, std::vector<ComplexMatrix> blocks)
    : n_(n), d_(d), blocks_(std::move(blocks)) {
    if (blocks_.size() != static_cast<std::size_t>(n) * n)
        throw DimensionMismatch("full multiplier needs n*n blocks");
}

BlockMultiplier::BlockMultiplier(const PartialBlockMultiplier& full)
    : n_(full.n()), d_(full.d()) {
    if (!full.pattern().is_full())
        throw UnspecifiedEntry(-1, -1);
    blocks_.reserve(static_cast<std::size_t>(n_) * n_);
    for (int x = 0; x < n_; ++x)
        for (int y = 0; y < n_; ++y) blocks_.push_back(full.block(x, y));
}

BlockMultiplier BlockMultiplier::from_assembled(const HermitianMatrix& m, int n, int d) {
    if (m.dim() != static_cast<std::size_t>(n) * d)
        throw DimensionMismatch("assembled dimension is not n*d");
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            ComplexMatrix b(d, d);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c)
                    b(r, c) = m(static_cast<std::size_t>(x) * d + r, static_cast<std::size_t>(y) * d + c);
            blocks.push_back(std::move(b));
        }
    return BlockMultiplier(n, d, std::move(blocks));
}

namespace {

HermitianMatrix assemble_blocks(int n, int d,
                                const std::function<const ComplexMatrix*(int, int)>& get) {
    ComplexMatrix out(static_cast<std::size_t>(n) * d, static_cast<std::size_t>(n) * d);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const ComplexMatrix* b = get(x, y);
            if (!b) continue;
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c)
                    out(static_cast<std::size_t>(x) * d + r, static_cast<std::size_t>(y) * d + c) = (*b)(r, c);
        }
    return HermitianMatrix(out);
}

}  // namespace

HermitianMatrix assemble(const PartialBlockMultiplier& phi, UnspecifiedFill fill) {
    if (fill == UnspecifiedFill::fail && !phi.pattern().is_full()) {
        for (int x = 0; x < phi.n(); ++x)
            for (int y = 0; y < phi.n(); ++y)
                if (!phi.specified(x, y)) throw UnspecifiedEntry(x, y);
    }
    return assemble_blocks(phi.n(), phi.d(), [&](int x, int y) -> const ComplexMatrix* {
        return phi.specified(x, y) ? &phi.block(x, y) : nullptr;
    });
}

HermitianMatrix assemble(const BlockMultiplier& phi) {
    return assemble_blocks(phi.n(), phi.d(),
                           [&](int x, int y) -> const ComplexMatrix* { return &phi.block(x, y); });
}

ComplexMatrix schur_apply(const BlockMultiplier& phi, const ScalarKernel& k) {
    if (k.n != phi.n()) throw DimensionMismatch("kernel size does not match multiplier");
    const int n = phi.n(), d = phi.d();
    ComplexMatrix out(static_cast<std::size_t>(n) * d, static_cast<std::size_t>(n) * d);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const Complex w = k.entries(x, y);
            const ComplexMatrix& b = phi.block(x, y);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c)
                    out(static_cast<std::size_t>(x) * d + r, static_cast<std::size_t>(y) * d + c) =
                        w * b(r, c);
        }
    return out;
}

PartialBlockMultiplier restrict(const BlockMultiplier& psi, const pattern::Pattern& p) {
    if (p.n() != psi.n()) throw DimensionMismatch("pattern size does not match multiplier");
    std::map<std::pair<int, int>, ComplexMatrix> blocks;
    for (auto& [x, y] : p.pairs())
        if (x <= y) blocks[{x, y}] = psi.block(x, y);
    return PartialBlockMultiplier(p, psi.d(), blocks);
}

AdmissibilityResult admissible_chordal(const PartialBlockMultiplier& phi, double tol) {
    const pattern::CliqueTree tree = pattern::clique_tree(phi.pattern());
    const int d = phi.d();
    for (const std::vector<int>& clique : tree.cliques) {
        const int m = static_cast<int>(clique.size());
        ComplexMatrix block(static_cast<std::size_t>(m) * d, static_cast<std::size_t>(m) * d);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                const ComplexMatrix& phib = phi.block(clique[a], clique[b]);
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c)
                        block(static_cast<std::size_t>(a) * d + r, static_cast<std::size_t>(b) * d + c) =
                            phib(r, c);
            }
        const linalg::PsdResult psd = linalg::psd_check(HermitianMatrix(block), tol);
        if (!psd.positive) return {false, clique, psd.min_eig};
    }
    return {true, {}, 0.0};
}

SampledAdmissibility admissible_sampled(const PartialBlockMultiplier& phi, int trials,
                                        std::uint64_t seed, double tol) {
    const int n = phi.n();
    Rng rng(seed);

    // clique cover of kappa to support the sampled kernels; for non-chordal
    // patterns every vertex and edge is grown greedily into a maximal clique
    std::vector<std::vector<int>> cliques;
    const pattern::ChordalityResult ch = pattern::is_chordal(phi.pattern());
    if (ch.chordal) {
        cliques = pattern::clique_tree(phi.pattern()).cliques;
    } else {
        auto grow = [&](std::vector<int> seed) {
            for (int v = 0; v < n; ++v) {
                if (std::find(seed.begin(), seed.end(), v) != seed.end()) continue;
                if (std::all_of(seed.begin(), seed.end(),
                                [&](int u) { return phi.pattern().has(u, v); }))
                    seed.push_back(v);
            }
            std::sort(seed.begin(), seed.end());
            return seed;
        };
        for (int x = 0; x < n; ++x) cliques.push_back(grow({x}));
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                if (phi.pattern().has(x, y)) cliques.push_back(grow({x, y}));
    }

    const BlockMultiplier zero_filled =
        BlockMultiplier::from_assembled(assemble(phi, UnspecifiedFill::zero), n, phi.d());

    auto test_kernel = [&](const ScalarKernel& k, int trial) -> std::optional<SampledAdmissibility> {
        const ComplexMatrix image = schur_apply(zero_filled, k);
        const linalg::PsdResult psd = linalg::psd_check(HermitianMatrix(image), tol);
        if (!psd.positive) return SampledAdmissibility{true, k, psd.min_eig, psd.witness, trial};
        return std::nullopt;
    };

    for (int trial = 0; trial < trials; ++trial) {
        ScalarKernel k{n, ComplexMatrix(n, n)};
        if (trial < n) {
            // deterministic singletons first: K = e_x e_x*
            k.entries(trial, trial) = Complex(1.0, 0.0);
        } else {
            // sum of gg* with each g supported on a clique-contained set
            const int terms = 1 + rng.index(3);
            for (int t = 0; t < terms; ++t) {
                const std::vector<int>& c = cliques[rng.index(static_cast<int>(cliques.size()))];
                std::vector<Complex> g(n, Complex(0.0, 0.0));
                for (int v : c)
                    if (rng.uniform() < 0.85) g[v] = rng.complex_gaussian();
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) k.entries(a, b) += g[a] * std::conj(g[b]);
            }
        }
        if (auto hit = test_kernel(k, trial)) return *hit;
    }
    return {false, ScalarKernel{n, ComplexMatrix(n, n)}, 0.0, {}, -1};
}

}  // namespace opschur::multiplier
