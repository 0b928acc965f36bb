#include "opschur/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace opschur::linalg {

namespace {

double off_diagonal_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

double rank_threshold(double tol, double scale) { return tol * std::max(1.0, scale); }

}  // namespace

EigenDecomposition eigh(const HermitianMatrix& hm) {
    const std::size_t n = hm.dim();
    ComplexMatrix a = hm.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = a.frobenius_norm();
    // Converge well below the contract bound; only report NonConvergence when
    // the contract bound itself is still violated after the sweep budget.
    const double target = 0.01 * kEigTol * scale;
    const double contract = kEigTol * scale;

    if (n > 1 && scale > 0.0) {
        // entries below this can never push the off-diagonal mass above the
        // target on their own (n^2 of them contribute at most target/2), so
        // rotating them away is wasted work
        const double skip = 0.5 * target / static_cast<double>(n);
        bool converged = false;
        for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            if (off_diagonal_norm(a) <= target) {
                converged = true;
                break;
            }
            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const Complex beta = a(p, q);
                    const double b = std::abs(beta);
                    if (b <= 1e-300 || b <= skip) continue;
                    const Complex phase = beta / b;  // a(p,q) = b * phase
                    const double alpha = a(p, p).real();
                    const double gamma = a(q, q).real();
                    const double tau = (gamma - alpha) / (2.0 * b);
                    const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                                : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    const Complex u = std::conj(phase);

                    // M <- M * U  with U = [[c, s], [-s*u, c*u]] on the (p, q) plane
                    for (std::size_t r = 0; r < n; ++r) {
                        const Complex mp = a(r, p), mq = a(r, q);
                        a(r, p) = c * mp - s * u * mq;
                        a(r, q) = s * mp + c * u * mq;
                    }
                    // M <- U* * M
                    for (std::size_t col = 0; col < n; ++col) {
                        const Complex mp = a(p, col), mq = a(q, col);
                        a(p, col) = c * mp - s * phase * mq;
                        a(q, col) = s * mp + c * phase * mq;
                    }
                    // V <- V * U
                    for (std::size_t r = 0; r < n; ++r) {
                        const Complex vp = v(r, p), vq = v(r, q);
                        v(r, p) = c * vp - s * u * vq;
                        v(r, q) = s * vp + c * u * vq;
                    }
                    a(p, q) = a(q, p) = Complex(0.0, 0.0);
                    a(p, p) = Complex(a(p, p).real(), 0.0);
                    a(q, q) = Complex(a(q, q).real(), 0.0);
                }
            }
        }
        if (!converged && off_diagonal_norm(a) > contract)
            throw NonConvergence("Jacobi eigensolver did not converge within " +
                                 std::to_string(kMaxSweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

PsdResult psd_check(const HermitianMatrix& m, double tol) {
    if (m.dim() == 0) return {true, 0.0, {}};
    const EigenDecomposition eig = eigh(m);
    PsdResult res;
    res.min_eig = eig.values.front();
    res.positive = res.min_eig >= -tol * std::max(1.0, m.frobenius_norm());
    res.witness.resize(m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r) res.witness[r] = eig.vectors(r, 0);
    return res;
}

ComplexMatrix gram_factor(const HermitianMatrix& m, double tol) {
    const PsdResult psd = psd_check(m, tol);
    if (!psd.positive) throw NotPsd(psd.min_eig);

    const EigenDecomposition eig = eigh(m);
    const double cut = rank_threshold(tol, m.frobenius_norm());
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < eig.values.size(); ++k)
        if (eig.values[k] > cut) kept.push_back(k);

    ComplexMatrix g(m.dim(), kept.size());
    for (std::size_t c = 0; c < kept.size(); ++c) {
        const double w = std::sqrt(eig.values[kept[c]]);
        for (std::size_t r = 0; r < m.dim(); ++r) g(r, c) = w * eig.vectors(r, kept[c]);
    }
    return g;
}

std::vector<std::vector<Complex>> rank_one_decompose(const HermitianMatrix& m, double tol) {
    const ComplexMatrix g = gram_factor(m, tol);
    std::vector<std::vector<Complex>> out(g.cols(), std::vector<Complex>(m.dim()));
    for (std::size_t c = 0; c < g.cols(); ++c)
        for (std::size_t r = 0; r < m.dim(); ++r) out[c][r] = g(r, c);
    return out;
}

HermitianMatrix pseudo_inverse(const HermitianMatrix& m, double tol) {
    const EigenDecomposition eig = eigh(m);
    const double cut = rank_threshold(tol, m.frobenius_norm());
    const std::size_t n = m.dim();

    // V diag(1/lambda) V* over eigenvalues above the rank threshold
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(eig.values[k]) <= cut) continue;
        const double w = 1.0 / eig.values[k];
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vi = eig.vectors(i, k);
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += w * vi * std::conj(eig.vectors(j, k));
        }
    }
    return HermitianMatrix(out);
}

double operator_norm(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    const ComplexMatrix gram = m.adjoint() * m;
    const EigenDecomposition eig = eigh(HermitianMatrix(gram));
    return std::sqrt(std::max(0.0, eig.values.back()));
}

}  // namespace opschur::linalg
