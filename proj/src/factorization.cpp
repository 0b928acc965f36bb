#include "opschur/factorization.hpp"

#include <algorithm>
#include <cmath>

#include "opschur/completion.hpp"
#include "opschur/rng.hpp"

namespace opschur::factorization {

namespace {

// Left/right factors L, R with M = L * R from the Hermitian doubling
// [[0, M], [M*, 0]]: eigenpairs (sigma, (u; v)/sqrt(2)) with sigma > 0 give
// M = sum sigma * u v*.
std::pair<ComplexMatrix, ComplexMatrix> svd_split(const HermitianMatrix& m, double tol) {
    const std::size_t nd = m.dim();
    ComplexMatrix doubled(2 * nd, 2 * nd);
    for (std::size_t i = 0; i < nd; ++i)
        for (std::size_t j = 0; j < nd; ++j) {
            doubled(i, nd + j) = m(i, j);
            doubled(nd + i, j) = std::conj(m(j, i));
        }
    const linalg::EigenDecomposition eig = linalg::eigh(HermitianMatrix(doubled));

    const double cut = tol * std::max(1.0, m.frobenius_norm());
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < eig.values.size(); ++i)
        if (eig.values[i] > cut) kept.push_back(i);

    const std::size_t r = kept.size();
    ComplexMatrix left(nd, r), right(r, nd);
    const double sqrt2 = std::sqrt(2.0);
    for (std::size_t c = 0; c < r; ++c) {
        const double sigma = eig.values[kept[c]];
        const double w = std::sqrt(sigma);
        for (std::size_t i = 0; i < nd; ++i) {
            const Complex u = sqrt2 * eig.vectors(i, kept[c]);
            const Complex v = sqrt2 * eig.vectors(nd + i, kept[c]);
            left(i, c) = w * u;
            right(c, i) = w * std::conj(v);
        }
    }
    return {std::move(left), std::move(right)};
}

std::vector<std::vector<ComplexMatrix>> slice_blocks(const ComplexMatrix& factor, int n, int d,
                                                     int summands, bool rows_are_space) {
    std::vector<std::vector<ComplexMatrix>> out(summands,
                                                std::vector<ComplexMatrix>(n, ComplexMatrix(d, d)));
    for (int i = 0; i < summands; ++i)
        for (int x = 0; x < n; ++x)
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) {
                    if (rows_are_space) {
                        const std::size_t fr = static_cast<std::size_t>(x) * d + r;
                        const std::size_t fc = static_cast<std::size_t>(i) * d + c;
                        if (fc < factor.cols()) out[i][x](r, c) = factor(fr, fc);
                    } else {
                        const std::size_t fr = static_cast<std::size_t>(i) * d + r;
                        const std::size_t fc = static_cast<std::size_t>(x) * d + c;
                        if (fr < factor.rows()) out[i][x](r, c) = factor(fr, fc);
                    }
                }
    return out;
}

double row_bound_of(const std::vector<std::vector<ComplexMatrix>>& a, int n, int d) {
    double bound = 0.0;
    for (int x = 0; x < n; ++x) {
        ComplexMatrix sum(d, d);
        for (const auto& blocks : a) sum += blocks[x] * blocks[x].adjoint();
        bound = std::max(bound, linalg::operator_norm(sum));
    }
    return std::sqrt(bound);
}

double col_bound_of(const std::vector<std::vector<ComplexMatrix>>& b, int n, int d) {
    double bound = 0.0;
    for (int y = 0; y < n; ++y) {
        ComplexMatrix sum(d, d);
        for (const auto& blocks : b) sum += blocks[y].adjoint() * blocks[y];
        bound = std::max(bound, linalg::operator_norm(sum));
    }
    return std::sqrt(bound);
}

}  // namespace

TwoSidedFactorization factorize(const BlockMultiplier& phi, double tol) {
    const int n = phi.n(), d = phi.d();
    const HermitianMatrix m = assemble(phi);

    TwoSidedFactorization out;
    out.d = d;

    if (linalg::psd_check(m, tol).positive) {
        // symmetric Gram split
        const completion::GramFactorization gram = completion::gram_factorize(phi, tol);
        out.m = gram.m;
        out.a = gram.blocks;
        out.b.assign(gram.m, std::vector<ComplexMatrix>(n, ComplexMatrix(d, d)));
        for (int i = 0; i < gram.m; ++i)
            for (int y = 0; y < n; ++y) out.b[i][y] = gram.blocks[i][y].adjoint();
        out.symmetric = true;
    } else {
        const auto [left, right] = svd_split(m, tol);
        const int r = static_cast<int>(left.cols());
        out.m = (r + d - 1) / d;
        out.a = slice_blocks(left, n, d, out.m, true);
        out.b = slice_blocks(right, n, d, out.m, false);
        out.symmetric = false;
    }
    out.row_bound = row_bound_of(out.a, n, d);
    out.col_bound = col_bound_of(out.b, n, d);
    return out;
}

ComplexMatrix factorization_evaluate(const TwoSidedFactorization& f, int x, int y) {
    ComplexMatrix sum(f.d, f.d);
    for (int i = 0; i < f.m; ++i) sum += f.a[i][x] * f.b[i][y];
    return sum;
}

double cb_norm_upper(const TwoSidedFactorization& f) { return f.row_bound * f.col_bound; }

double cb_norm_lower_sampled(const BlockMultiplier& phi, int trials, std::uint64_t seed) {
    const int n = phi.n();
    Rng rng(seed);
    double lower = 0.0;

    // the all-ones kernel first: S_phi(J) is the assembled matrix and the
    // kernel has norm n, often already a good direction
    {
        ComplexMatrix ones(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) ones(a, b) = Complex(1.0, 0.0);
        lower = linalg::operator_norm(schur_apply(phi, multiplier::ScalarKernel{n, ones})) / n;
    }
    for (int t = 0; t < trials; ++t) {
        ComplexMatrix k(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) k(a, b) = rng.complex_gaussian();
        const double tnorm = linalg::operator_norm(k);
        if (tnorm == 0.0) continue;
        const double inorm =
            linalg::operator_norm(schur_apply(phi, multiplier::ScalarKernel{n, k}));
        lower = std::max(lower, inorm / tnorm);
    }
    return lower;
}

EquivalenceReport positivity_equivalences(const BlockMultiplier& phi, int trials,
                                          int max_ampliation, std::uint64_t seed, double tol) {
    const int n = phi.n(), d = phi.d();
    Rng rng(seed);
    EquivalenceReport rep{};

    const HermitianMatrix m = assemble(phi);
    const linalg::PsdResult psd = linalg::psd_check(m, tol);
    rep.assembled_psd = psd.positive;
    rep.min_eig = psd.min_eig;

    // (b): the all-ones kernel first (its image is the assembled matrix), then
    // random PSD kernels
    rep.kernels_psd = true;
    rep.j_kernel_falsified = false;
    {
        ComplexMatrix ones(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) ones(a, b) = Complex(1.0, 0.0);
        const ComplexMatrix image = schur_apply(phi, multiplier::ScalarKernel{n, ones});
        if (!linalg::psd_check(HermitianMatrix(image), tol).positive) {
            rep.kernels_psd = false;
            rep.j_kernel_falsified = true;
        }
    }
    for (int t = 0; rep.kernels_psd && t < trials; ++t) {
        ComplexMatrix k(n, n);
        const int terms = 1 + rng.index(3);
        for (int term = 0; term < terms; ++term) {
            std::vector<Complex> g(n);
            for (Complex& z : g) z = rng.complex_gaussian();
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) k(a, b) += g[a] * std::conj(g[b]);
        }
        const ComplexMatrix image = schur_apply(phi, multiplier::ScalarKernel{n, k});
        if (!linalg::psd_check(HermitianMatrix(image), tol).positive) rep.kernels_psd = false;
    }

    // (c): ampliations
    rep.ampliations_psd = true;
    for (int amp = 2; amp <= max_ampliation && rep.ampliations_psd; ++amp) {
        const int amp_trials = std::max(1, trials / 5);
        for (int t = 0; t < amp_trials && rep.ampliations_psd; ++t) {
            const int size = amp * n;
            ComplexMatrix k(size, size);
            const int terms = 1 + rng.index(3);
            for (int term = 0; term < terms; ++term) {
                std::vector<Complex> g(size);
                for (Complex& z : g) z = rng.complex_gaussian();
                for (int a = 0; a < size; ++a)
                    for (int b = 0; b < size; ++b) k(a, b) += g[a] * std::conj(g[b]);
            }
            ComplexMatrix image(static_cast<std::size_t>(size) * d,
                                static_cast<std::size_t>(size) * d);
            for (int ax = 0; ax < size; ++ax)
                for (int by = 0; by < size; ++by) {
                    const ComplexMatrix& blk = phi.block(ax % n, by % n);
                    for (int r = 0; r < d; ++r)
                        for (int c = 0; c < d; ++c)
                            image(static_cast<std::size_t>(ax) * d + r,
                                  static_cast<std::size_t>(by) * d + c) = k(ax, by) * blk(r, c);
                }
            if (!linalg::psd_check(HermitianMatrix(image), tol).positive)
                rep.ampliations_psd = false;
        }
    }

    // (d): symmetric Gram form
    rep.gram_exists = false;
    if (psd.positive) {
        try {
            const completion::GramFactorization gram = completion::gram_factorize(phi, tol);
            double err = 0.0;
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    err += std::pow((completion::gram_evaluate(gram, x, y) - phi.block(x, y))
                                        .frobenius_norm(),
                                    2);
            rep.gram_exists = std::sqrt(err) <= 1e-7 * std::max(1.0, m.frobenius_norm());
        } catch (const NotPsd&) {
            rep.gram_exists = false;
        }
    }

    const bool verdicts[4] = {rep.assembled_psd, rep.kernels_psd, rep.ampliations_psd,
                              rep.gram_exists};
    rep.all_agree = true;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            rep.agree[i][j] = verdicts[i] == verdicts[j];
            if (!rep.agree[i][j]) rep.all_agree = false;
        }
    return rep;
}

}  // namespace opschur::factorization
