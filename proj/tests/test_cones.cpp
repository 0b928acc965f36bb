#include <doctest.h>

#include <cmath>

#include "opschur/cones.hpp"
#include "support.hpp"

using namespace opschur;
using namespace opschur::cones;
using testsupport::Rng;
using testsupport::from_rows;

namespace {

BlockElement random_element(int n, int k, Rng& rng, bool psd) {
    if (psd) return {n, k, testsupport::random_psd(n * k, rng)};
    return {n, k, testsupport::random_hermitian(n * k, rng)};
}

}  // namespace

TEST_CASE("sampled minimal-cone check never flags PSD elements") {
    Rng rng(91);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + rng.index(3), k = 1 + rng.index(3);
        const BlockElement x = random_element(n, k, rng, true);
        CHECK_FALSE(min_cone_check_sampled(x, 400, trial).violation);
    }
}

TEST_CASE("sampled check flags the negative scalar immediately") {
    ComplexMatrix neg(1, 1);
    neg(0, 0) = Complex(-1.0, 0.0);
    const BlockElement x(1, 1, HermitianMatrix(neg));
    const SampledMembership res = min_cone_check_sampled(x, 100, 0);
    REQUIRE(res.violation);
    CHECK(res.value < 0.0);
    CHECK(res.tuple.n == 1);
}

TEST_CASE("sampled check finds indefinite elements with PSD diagonal blocks") {
    // n = k = 2: PSD diagonal blocks, strongly indefinite off-diagonal coupling
    const ComplexMatrix m = from_rows({{1.0, 0.0, 2.0, 0.0},
                                       {0.0, 1.0, 0.0, 2.0},
                                       {2.0, 0.0, 1.0, 0.0},
                                       {0.0, 2.0, 0.0, 1.0}});
    const BlockElement x(2, 2, HermitianMatrix(m));
    REQUIRE_FALSE(min_cone_check_exact(x).member);
    // diagonal blocks are the identity
    const SampledMembership res = min_cone_check_sampled(x, 10000, 0);
    REQUIRE(res.violation);
    CHECK(res.trial < 10000);

    // the found tuple really certifies: assemble sum D_i* X_ij D_j and eigencheck
    const int k = 2;
    ComplexMatrix compressed(k, k);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b)
                    compressed(a, b) += std::conj(res.tuple.diags[i][a]) * x.x(i * k + a, j * k + b) *
                                        res.tuple.diags[j][b];
    CHECK(linalg::eigh(HermitianMatrix(compressed)).values.front() < 0.0);
}

TEST_CASE("exact membership is global positivity") {
    Rng rng(97);
    CHECK(min_cone_check_exact({2, 2, HermitianMatrix::identity(4)}).member);
    CHECK(min_cone_check_exact({2, 2, testsupport::random_psd(4, rng)}).member);

    ComplexMatrix neg(1, 1);
    neg(0, 0) = Complex(-1.0, 0.0);
    CHECK_FALSE(min_cone_check_exact({1, 1, HermitianMatrix(neg)}).member);
}

TEST_CASE("maximal-cone decomposition certificates") {
    Rng rng(101);

    // n = 1: plain PSD matrices decompose with all-ones cores
    const BlockElement flat(1, 3, testsupport::random_psd(3, rng));
    const MaxConeCertificate cert = max_cone_decompose(flat);
    const HermitianMatrix back = certificate_assemble(cert, 1, 3);
    CHECK((back.matrix() - flat.x.matrix()).frobenius_norm() <= 1e-8 * flat.x.frobenius_norm());
    for (const MaxConeSummand& s : cert.summands)
        CHECK(linalg::psd_check(s.core).positive);  // the all-ones core

    // rank-one e_0 e_0*: a single summand with one nonzero diagonal entry
    ComplexMatrix e0(4, 4);
    e0(0, 0) = 1.0;
    const MaxConeCertificate single = max_cone_decompose({2, 2, HermitianMatrix(e0)});
    REQUIRE(single.summands.size() == 1);
    int nonzero = 0;
    for (const auto& diag : single.summands[0].tuple.diags)
        for (const Complex& z : diag)
            if (std::abs(z) > 1e-12) ++nonzero;
    CHECK(nonzero == 1);

    // identity: one summand per eigenvector
    const MaxConeCertificate id = max_cone_decompose({2, 3, HermitianMatrix::identity(6)});
    CHECK(id.summands.size() == 6);

    ComplexMatrix neg(2, 2);
    neg(0, 0) = 1.0;
    neg(1, 1) = -1.0;
    CHECK_THROWS_AS(max_cone_decompose({1, 2, HermitianMatrix(neg)}), const NotPsd&);
}

TEST_CASE("certificate reconstruction accuracy on random PSD elements") {
    Rng rng(103);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 1 + rng.index(4), k = 1 + rng.index(4);
        const BlockElement x = random_element(n, k, rng, true);
        const MaxConeCertificate cert = max_cone_decompose(x);
        const HermitianMatrix back = certificate_assemble(cert, n, k);
        CHECK((back.matrix() - x.x.matrix()).frobenius_norm() <=
              1e-8 * std::max(1.0, x.x.frobenius_norm()));
    }
}

TEST_CASE("three-way equivalence holds with zero breaches") {
    const ConeEquivalenceReport rep = verify_cone_equivalence(2, 2, 500, 0);
    CHECK(rep.trials == 500);
    CHECK(rep.breaches == 0);
    CHECK(rep.max_err <= 1e-9);

    // n = k = 1 reduces to a sign test
    const ConeEquivalenceReport scalar = verify_cone_equivalence(1, 1, 200, 1);
    CHECK(scalar.breaches == 0);

    CHECK_THROWS_AS(verify_cone_equivalence(9, 8, 10, 0), const std::invalid_argument&);
}

TEST_CASE("equivalence breaches stay zero for every shape with nk <= 16") {
    int configs = 0;
    for (int n = 1; n <= 16; ++n)
        for (int k = 1; n * k <= 16; ++k) {
            const ConeEquivalenceReport rep =
                verify_cone_equivalence(n, k, 500, 7000 + 100 * n + k);
            CHECK(rep.breaches == 0);
            CHECK(rep.max_err <= 1e-8);
            ++configs;
        }
    CHECK(configs == 50);
}

TEST_CASE("all three verdicts reject -I") {
    const int n = 2, k = 2;
    ComplexMatrix m(4, 4);
    for (int i = 0; i < 4; ++i) m(i, i) = -1.0;
    const BlockElement x(n, k, HermitianMatrix(m));
    CHECK_FALSE(linalg::psd_check(x.x).positive);
    CHECK_FALSE(min_cone_check_exact(x).member);
    CHECK_THROWS_AS(max_cone_decompose(x), const NotPsd&);
}

TEST_CASE("maximal-cone samples always pass exact minimal-cone membership") {
    Rng rng(107);
    // generators: identity plus a random rank-one
    for (int config = 0; config < 4; ++config) {
        const int n = 1 + rng.index(4), k = 1 + rng.index(4);
        std::vector<HermitianMatrix> gens{HermitianMatrix::identity(k)};
        ComplexMatrix v(k, 1);
        for (int i = 0; i < k; ++i) v(i, 0) = rng.complex_gaussian();
        gens.push_back(HermitianMatrix(v * v.adjoint()));

        const auto samples = max_cone_sample(gens, n, 50, config);
        for (const BlockElement& s : samples) {
            CHECK(min_cone_check_exact(s).member);
            CHECK_FALSE(min_cone_check_sampled(s, 50, config + 1).violation);
        }
    }

    // single rank-one generator bounds the sample rank
    ComplexMatrix v(3, 1);
    v(0, 0) = 1.0;
    v(1, 0) = 2.0;
    v(2, 0) = Complex(0.0, 1.0);
    const auto low = max_cone_sample({HermitianMatrix(v * v.adjoint())}, 2, 10, 5);
    for (const BlockElement& s : low) {
        const auto eig = linalg::eigh(s.x);
        int rank = 0;
        for (double lambda : eig.values)
            if (lambda > 1e-9 * std::max(1.0, s.x.frobenius_norm())) ++rank;
        CHECK(rank <= 3);  // at most one rank-one core per summand, up to 3 summands
    }

    ComplexMatrix neg(2, 2);
    neg(1, 1) = -1.0;
    CHECK_THROWS_AS(max_cone_sample({HermitianMatrix(neg)}, 2, 5, 0), const NotPsd&);
}
