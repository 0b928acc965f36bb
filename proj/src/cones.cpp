#include "opschur/cones.hpp"

#include <algorithm>
#include <cmath>

#include "opschur/rng.hpp"

namespace opschur::cones {

BlockElement::BlockElement(int n_, int k_, HermitianMatrix x_) : n(n_), k(k_), x(std::move(x_)) {
    if (n < 1 || k < 1) throw std::invalid_argument("block element needs n, k >= 1");
    if (x.dim() != static_cast<std::size_t>(n) * k)
        throw DimensionMismatch("block element dimension is not n*k");
}

HermitianMatrix certificate_assemble(const MaxConeCertificate& cert, int n, int k) {
    ComplexMatrix out(static_cast<std::size_t>(n) * k, static_cast<std::size_t>(n) * k);
    for (const MaxConeSummand& s : cert.summands) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b)
                        out(static_cast<std::size_t>(i) * k + a, static_cast<std::size_t>(j) * k + b) +=
                            s.tuple.diags[i][a] * s.core(a, b) * std::conj(s.tuple.diags[j][b]);
    }
    return HermitianMatrix(out);
}

SampledMembership min_cone_check_sampled(const BlockElement& x, int trials, std::uint64_t seed) {
    Rng rng(seed);
    const int n = x.n, k = x.k;
    const double threshold = -1e-10 * std::max(1.0, x.x.frobenius_norm());

    for (int trial = 0; trial < trials; ++trial) {
        DiagonalTuple tuple{n, k, std::vector<std::vector<Complex>>(n, std::vector<Complex>(k))};
        for (auto& diag : tuple.diags)
            for (Complex& z : diag) z = rng.complex_gaussian();
        std::vector<Complex> eta(k);
        double norm_sq = 0.0;
        for (Complex& z : eta) {
            z = rng.complex_gaussian();
            norm_sq += std::norm(z);
        }
        if (norm_sq == 0.0) continue;
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (Complex& z : eta) z *= inv;

        // Re <(sum_ij D_i* X_ij D_j) eta, eta> = Re <X zeta, zeta>, zeta_i = D_i eta
        std::vector<Complex> zeta(static_cast<std::size_t>(n) * k);
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < k; ++a)
                zeta[static_cast<std::size_t>(i) * k + a] = tuple.diags[i][a] * eta[a];
        Complex value(0.0, 0.0);
        for (std::size_t r = 0; r < zeta.size(); ++r)
            for (std::size_t c = 0; c < zeta.size(); ++c)
                value += std::conj(zeta[r]) * x.x(r, c) * zeta[c];

        if (value.real() < threshold) return {true, std::move(tuple), value.real(), trial};
    }
    return {false, DiagonalTuple{n, k, {}}, 0.0, -1};
}

ExactMembership min_cone_check_exact(const BlockElement& x, double tol) {
    const linalg::PsdResult psd = linalg::psd_check(x.x, tol);
    return {psd.positive, psd.min_eig};
}

MaxConeCertificate max_cone_decompose(const BlockElement& x, double tol) {
    const std::vector<std::vector<Complex>> pieces = linalg::rank_one_decompose(x.x, tol);
    const int n = x.n, k = x.k;

    ComplexMatrix ones(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) ones(a, b) = Complex(1.0, 0.0);
    const HermitianMatrix core(ones);

    MaxConeCertificate cert;
    for (const std::vector<Complex>& r : pieces) {
        MaxConeSummand s{DiagonalTuple{n, k, std::vector<std::vector<Complex>>(n)}, core};
        for (int i = 0; i < n; ++i)
            s.tuple.diags[i].assign(r.begin() + static_cast<std::ptrdiff_t>(i) * k,
                                    r.begin() + static_cast<std::ptrdiff_t>(i + 1) * k);
        cert.summands.push_back(std::move(s));
    }
    return cert;
}

ConeEquivalenceReport verify_cone_equivalence(int n, int k, int trials, std::uint64_t seed) {
    if (n < 1 || k < 1 || n * k > 64)
        throw std::invalid_argument("verify_cone_equivalence requires 1 <= n*k <= 64");
    Rng rng(seed);
    ConeEquivalenceReport rep{trials, 0, 0.0};

    for (int trial = 0; trial < trials; ++trial) {
        // alternate plain Gaussian-symmetrized draws (indefinite for large nk)
        // with Gram draws, so both sides of the equivalence carry weight
        const int dim = n * k;
        ComplexMatrix raw(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) raw(i, j) = rng.complex_gaussian();
        ComplexMatrix herm = trial % 2 == 0 ? raw + raw.adjoint() : raw * raw.adjoint();
        if (trial % 2 == 0) herm *= Complex(0.5, 0.0);
        const BlockElement x(n, k, HermitianMatrix(herm));

        const bool psd = linalg::psd_check(x.x).positive;
        const bool member = min_cone_check_exact(x).member;
        bool decomposed = false;
        double err = 0.0;
        try {
            const MaxConeCertificate cert = max_cone_decompose(x);
            const HermitianMatrix back = certificate_assemble(cert, n, k);
            err = (back.matrix() - x.x.matrix()).frobenius_norm() /
                  std::max(1.0, x.x.frobenius_norm());
            bool cores_psd = true;
            for (const MaxConeSummand& s : cert.summands)
                if (!linalg::psd_check(s.core).positive) cores_psd = false;
            decomposed = cores_psd && err <= 1e-8;
        } catch (const NotPsd&) {
            decomposed = false;
        }

        if (psd != member || psd != decomposed) ++rep.breaches;
        if (psd) rep.max_err = std::max(rep.max_err, err);
    }
    return rep;
}

std::vector<BlockElement> max_cone_sample(const std::vector<HermitianMatrix>& generators, int n,
                                          int count, std::uint64_t seed) {
    if (generators.empty()) throw std::invalid_argument("need at least one generator");
    const int k = static_cast<int>(generators.front().dim());
    for (const HermitianMatrix& g : generators) {
        if (g.dim() != static_cast<std::size_t>(k))
            throw DimensionMismatch("generators must share one dimension");
        if (!linalg::psd_check(g).positive)
            throw NotPsd(linalg::psd_check(g).min_eig);
    }

    Rng rng(seed);
    std::vector<BlockElement> out;
    out.reserve(count);
    for (int c = 0; c < count; ++c) {
        const int terms = 1 + rng.index(3);
        MaxConeCertificate cert;
        for (int t = 0; t < terms; ++t) {
            // nonnegative combination of the generator cores
            ComplexMatrix core(k, k);
            for (const HermitianMatrix& g : generators) {
                const double w = std::abs(rng.gaussian());
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b) core(a, b) += w * g(a, b);
            }
            MaxConeSummand s{DiagonalTuple{n, k, std::vector<std::vector<Complex>>(
                                                     n, std::vector<Complex>(k))},
                             HermitianMatrix(core)};
            for (auto& diag : s.tuple.diags)
                for (Complex& z : diag) z = rng.complex_gaussian();
            cert.summands.push_back(std::move(s));
        }
        out.emplace_back(n, k, certificate_assemble(cert, n, k));
    }
    return out;
}

}  // namespace opschur::cones
