#include <doctest.h>

#include "az/transforms.hpp"
#include "test_support.hpp"

using namespace az;
using az::testing::Gen;

TEST_CASE("FFT matches the dense DFT for all small and selected lengths")
{
    Gen                g(10);
    std::vector<Index> lengths;
    for (Index L = 1; L <= 32; ++L)
        lengths.push_back(L);
    lengths.push_back(201);
    lengths.push_back(804);

    for (Index L : lengths) {
        CAPTURE(L);
        const FftPlan       plan(L);
        const ComplexMatrix F = dft_matrix(L);
        const ComplexVector v = g.vector(L);
        const double        s = v.norm() * std::sqrt(static_cast<double>(L));

        CHECK((plan.forward(v) - F * v).norm() <= 1e-12 * s);
        CHECK((plan.backward(v) - F.adjoint() * v).norm() <= 1e-12 * s);
        CHECK((plan.inverse(plan.forward(v)) - v).norm() <= 1e-12 * v.norm());
        CHECK((dft(v) - F * v).norm() <= 1e-12 * s);
        CHECK((idft(dft(v)) - v).norm() <= 1e-12 * v.norm());
    }
}

TEST_CASE("FFT basics and errors")
{
    const FftPlan plan(8);
    ComplexVector e = ComplexVector::Zero(8);
    e[0]            = 1.0;
    CHECK((plan.forward(e) - ComplexVector::Ones(8)).norm() == 0.0);
    CHECK_THROWS_AS(FftPlan(0), ShapeError);
    CHECK_THROWS_AS(plan.forward(ComplexVector::Zero(7)), ShapeError);
}

TEST_CASE("Gauss-Legendre rules")
{
    const auto one = gauss_legendre(1);
    CHECK(one.nodes[0] == doctest::Approx(0.0));
    CHECK(one.weights[0] == doctest::Approx(2.0));
    CHECK_THROWS(gauss_legendre(0));

    for (Index L : {2, 3, 7, 20, 64, 101}) {
        CAPTURE(L);
        const auto q = gauss_legendre(L);
        CHECK(q.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
        for (Index i = 0; i < L; ++i) {
            CHECK(q.nodes[i] == -q.nodes[L - 1 - i]);
            CHECK(q.weights[i] == doctest::Approx(q.weights[L - 1 - i]).epsilon(1e-14));
            if (i > 0)
                CHECK(q.nodes[i] > q.nodes[i - 1]);
        }
        // exact for degree <= 2L - 1
        for (Index k = 0; k <= 2 * L - 1 && k <= 40; ++k) {
            const double exact = (k % 2 == 1) ? 0.0 : 2.0 / static_cast<double>(k + 1);
            CHECK(q.weights.dot(q.nodes.array().pow(static_cast<double>(k)).matrix()) ==
                  doctest::Approx(exact).epsilon(1e-13).scale(1.0));
        }
        // nodes are roots of P_L
        const RealMatrix P = legendre_eval(L, q.nodes);
        CHECK(P.col(L).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, static_cast<double>(L)));
    }
}

TEST_CASE("Legendre recurrence and discrete orthogonality")
{
    RealVector x(5);
    x << -1.0, -0.3, 0.0, 0.5, 1.0;
    const RealMatrix P = legendre_eval(4, x);
    for (Index i = 0; i < 5; ++i) {
        CHECK(P(i, 0) == 1.0);
        CHECK(P(i, 1) == x[i]);
        CHECK(P(i, 2) == doctest::Approx(1.5 * x[i] * x[i] - 0.5));
        CHECK(P(i, 3) == doctest::Approx(2.5 * x[i] * x[i] * x[i] - 1.5 * x[i]));
    }
    for (Index n = 0; n <= 4; ++n) {
        CHECK(P(4, n) == doctest::Approx(1.0));
        CHECK(P(0, n) == doctest::Approx(n % 2 ? -1.0 : 1.0));
    }
    CHECK_THROWS(legendre_eval(-1, x));

    const Index      L = 64;
    const auto       q = gauss_legendre(L);
    const RealMatrix F = legendre_eval(L - 1, q.nodes);
    const RealMatrix G = F.transpose() * q.weights.asDiagonal() * F;
    for (Index i = 0; i < L; ++i)
        for (Index j = 0; j < L; ++j)
            CHECK(std::abs(G(i, j) - (i == j ? legendre_norm_squared(i) : 0.0)) <= 1e-10);
}

TEST_CASE("Chebyshev nodes")
{
    const RealVector r = chebyshev_nodes(4, ChebyshevKind::roots);
    const RealVector e = chebyshev_nodes(5, ChebyshevKind::extremae);
    for (Index l = 0; l < 4; ++l)
        CHECK(r[l] == doctest::Approx(std::cos(std::numbers::pi * (l + 0.5) / 4.0)));
    for (Index l = 0; l < 5; ++l)
        CHECK(e[l] == doctest::Approx(std::cos(std::numbers::pi * l / 4.0)).scale(1.0));
    CHECK(e[0] == 1.0);
    CHECK(e[4] == -1.0);
    CHECK_THROWS(chebyshev_nodes(1, ChebyshevKind::extremae));
}

TEST_CASE("fast Chebyshev sums equal the dense Vandermonde products")
{
    Gen g(11);
    for (auto kind : {ChebyshevKind::roots, ChebyshevKind::extremae}) {
        for (Index L : {2, 3, 8, 17, 64, 100}) {
            CAPTURE(L);
            const ChebyshevGrid grid(L, kind);
            for (Index N : {Index(1), L / 2 + 1, L}) {
                const RealMatrix    V = chebyshev_vandermonde(grid.nodes(), N);
                const ComplexVector c = g.vector(N);
                const ComplexVector v = g.vector(L);
                CHECK((grid.evaluate(c) - V.cast<Complex>() * c).norm() <= 1e-12 * L * c.norm());
                CHECK((grid.evaluate_transpose(v, N) - V.transpose().cast<Complex>() * v).norm() <=
                      1e-12 * L * v.norm());
            }
            // discrete orthogonality with the documented weights and norms
            const RealMatrix V = chebyshev_vandermonde(grid.nodes(), L);
            const RealMatrix G = V.transpose() * grid.node_weights().asDiagonal() * V;
            for (Index i = 0; i < L; ++i)
                for (Index j = 0; j < L; ++j)
                    CHECK(std::abs(G(i, j) - (i == j ? grid.norm(i) : 0.0)) <= 1e-11 * L);

            const ComplexVector c = g.vector(L);
            CHECK((grid.transform(grid.evaluate(c)) - c).norm() <= 1e-12 * L * c.norm());
        }
    }
    const ComplexVector c = Gen(12).vector(9);
    CHECK((chebyshev_transform(ChebyshevGrid(9, ChebyshevKind::roots).evaluate(c)) - c).norm() <= 1e-13);
    CHECK_THROWS_AS(ChebyshevGrid(4, ChebyshevKind::roots).evaluate(ComplexVector::Zero(5)), ShapeError);
}
