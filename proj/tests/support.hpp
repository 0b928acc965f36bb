#pragma once

// Test-only helpers: independent oracles and random instance generators.
// Everything here stays out of the library so the oracles cannot share code
// with the implementation paths they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "opschur/complex_matrix.hpp"
#include "opschur/multiplier.hpp"
#include "opschur/pattern.hpp"
#include "opschur/rng.hpp"

namespace testsupport {

using opschur::Rng;
using opschur::linalg::Complex;
using opschur::linalg::ComplexMatrix;
using opschur::linalg::HermitianMatrix;

inline ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows) {
    ComplexMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

inline HermitianMatrix random_hermitian(int dim, Rng& rng) {
    ComplexMatrix raw(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) raw(i, j) = rng.complex_gaussian();
    ComplexMatrix sym = raw + raw.adjoint();
    sym *= Complex(0.5, 0.0);
    return HermitianMatrix(sym);
}

// PSD with full-rank Gram G G* plus nothing else
inline HermitianMatrix random_psd(int dim, Rng& rng, int rank = -1) {
    if (rank < 0) rank = dim;
    ComplexMatrix g(dim, rank);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = rng.complex_gaussian();
    return HermitianMatrix(g * g.adjoint());
}

// Leading-principal-minor PSD oracle via fraction-free (Bareiss) elimination
// on M + tol * max(1, ||M||_F) * I. Returns nullopt when a pivot vanishes and
// the test should be skipped for that draw.
inline std::optional<bool> minor_psd_oracle(const HermitianMatrix& m, double tol) {
    const int n = static_cast<int>(m.dim());
    const double shift = tol * std::max(1.0, m.frobenius_norm());
    std::vector<std::vector<Complex>> a(n, std::vector<Complex>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m(i, j) + (i == j ? Complex(shift, 0.0) : Complex(0.0, 0.0));

    // Bareiss: after step k, a[k][k] is the determinant of the leading
    // (k+1) x (k+1) minor
    const double scale = std::max(1.0, m.frobenius_norm());
    Complex prev(1.0, 0.0);
    for (int k = 0; k < n - 1; ++k) {
        if (std::abs(a[k][k]) < 1e-150) return std::nullopt;
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    for (int k = 0; k < n; ++k) {
        const Complex det = a[k][k];
        if (det.real() < -1e-9 * std::pow(scale, k + 1)) return false;
        if (det.real() < 1e-12 * std::pow(scale, k + 1)) return std::nullopt;  // too close to call
    }
    return true;
}

// Exhaustive chordality oracle: a graph is chordal iff no vertex subset of
// size >= 4 induces a cycle.
inline bool chordal_oracle(const opschur::pattern::Pattern& p) {
    const int n = p.n();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> verts;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) verts.push_back(v);
        if (verts.size() < 4) continue;
        bool degree_two = true;
        int edges = 0;
        for (std::size_t i = 0; i < verts.size() && degree_two; ++i) {
            int deg = 0;
            for (std::size_t j = 0; j < verts.size(); ++j)
                if (i != j && p.has(verts[i], verts[j])) ++deg;
            if (deg != 2) degree_two = false;
            edges += deg;
        }
        if (!degree_two || edges != 2 * static_cast<int>(verts.size())) continue;
        // all degrees two and |E| = |V|: the induced graph is a disjoint union
        // of cycles; connectivity makes it a single chordless cycle
        std::vector<bool> seen(verts.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < verts.size(); ++j)
                if (!seen[j] && p.has(verts[cur], verts[j])) {
                    seen[j] = true;
                    ++reached;
                    stack.push_back(j);
                }
        }
        if (reached == verts.size()) return false;
    }
    return true;
}

inline opschur::pattern::Pattern random_graph(int n, double edge_prob, Rng& rng) {
    std::vector<std::pair<int, int>> pairs;
    for (int v = 0; v < n; ++v) pairs.emplace_back(v, v);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (rng.uniform() < edge_prob) {
                pairs.emplace_back(x, y);
                pairs.emplace_back(y, x);
            }
    return opschur::pattern::Pattern::validated(n, pairs);
}

inline opschur::pattern::Pattern random_chordal(int n, double edge_prob, Rng& rng) {
    return opschur::pattern::fill_in(random_graph(n, edge_prob, rng)).pattern;
}

// random full PSD block multiplier via a Gram product at block scale
inline opschur::multiplier::BlockMultiplier random_psd_multiplier(int n, int d, Rng& rng) {
    const HermitianMatrix m = random_psd(n * d, rng);
    return opschur::multiplier::BlockMultiplier::from_assembled(m, n, d);
}

inline double rel_err(const ComplexMatrix& got, const ComplexMatrix& want) {
    return (got - want).frobenius_norm() / std::max(1.0, want.frobenius_norm());
}

}  // namespace testsupport
