#include <doctest.h>

#include "az/solvers.hpp"
#include "test_support.hpp"

using namespace az;
using az::testing::Gen;

namespace {

RealVector geometric(Index n, double ratio)
{
    RealVector s(n);
    for (Index k = 0; k < n; ++k)
        s[k] = std::pow(ratio, static_cast<double>(k));
    return s;
}

// x = V_1 Sigma_1^{-1} U_1^* b with the oracle factors
ComplexVector tsvd_oracle(const ComplexMatrix& A, const ComplexVector& b, double eps)
{
    Eigen::JacobiSVD<ComplexMatrix> j(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    ComplexVector                   x = ComplexVector::Zero(A.cols());
    for (Index k = 0; k < j.singularValues().size(); ++k)
        if (j.singularValues()[k] >= eps)
            x += j.matrixV().col(k) * (j.matrixU().col(k).dot(b) / j.singularValues()[k]);
    return x;
}

}  // namespace

TEST_CASE("direct least squares matches the normal equations")
{
    Gen g(30);
    for (int trial = 0; trial < 20; ++trial) {
        const Index         n = g.size(1, 15), m = n + g.size(0, 15);
        const ComplexMatrix A = g.matrix(m, n);
        const ComplexVector b = g.vector(m);
        const ComplexVector x = (A.adjoint() * A).ldlt().solve(A.adjoint() * b);
        const auto          rep = direct_lsq(A, b);
        CHECK((rep.x - x).norm() <= 1e-10 * (1.0 + x.norm()));
        CHECK(rep.rank_used == n);
        CHECK(rep.residual_norm == doctest::Approx((b - A * x).norm()).epsilon(1e-10));
    }
    CHECK_THROWS_AS(direct_lsq(ComplexMatrix::Ones(2, 3), ComplexVector::Ones(2)), ShapeError);
    CHECK_THROWS_AS(direct_lsq(ComplexMatrix::Ones(3, 2), ComplexVector::Ones(2)), ShapeError);
}

TEST_CASE("truncated SVD keeps singular values >= eps")
{
    Gen                 g(31);
    const ComplexMatrix A = g.with_spectrum(20, 10, geometric(10, 0.5));
    const ComplexVector b = g.vector(20);

    for (double eps : {1e-1, 1e-3, 1e-6}) {
        const auto rep = tsvd_solve(A, b, eps);
        CHECK((rep.x - tsvd_oracle(A, b, eps)).norm() <= 1e-10 * (1.0 + rep.x.norm()));
        Index expect = 0;
        for (Index k = 0; k < 10; ++k)
            expect += std::pow(0.5, k) >= eps;
        CHECK(rep.rank_used == expect);
    }

    // ties are retained
    RealVector s(3);
    s << 1.0, 0.25, 0.0625;
    const ComplexMatrix T = g.with_spectrum(6, 3, s);
    CHECK(tsvd_solve(T, g.vector(6), 0.25).rank_used == 2);

    // everything truncated gives x = 0
    const auto none = tsvd_solve(A, b, 10.0);
    CHECK(none.rank_used == 0);
    CHECK(none.x.norm() == 0.0);
    CHECK(none.residual_norm == doctest::Approx(b.norm()));

    CHECK_THROWS(tsvd_solve(A, b, 0.0));
    CHECK_THROWS_AS(tsvd_solve(A, g.vector(5), 1e-3), ShapeError);
}

TEST_CASE("randomized TSVD recovers exactly low-rank solutions")
{
    Gen g(32);
    for (int trial = 0; trial < 10; ++trial) {
        const Index         r = g.size(1, 8);
        const ComplexMatrix A = g.matrix(40, r) * g.matrix(r, 25);
        const ComplexVector b = g.vector(40);
        SolverConfig        cfg = SolverConfig::for_rank(r, 1e-8, g.next(), 5);

        const auto exact = tsvd_solve(A, b, 1e-8);
        const auto rs    = randomized_tsvd_solve(from_dense(A), b, cfg);
        const auto rq    = randomized_tqr_solve(from_dense(A), b, cfg);
        CHECK(rs.rank_used == r);
        CHECK(rs.sketch_size == r + 5);
        CHECK(rs.residual_norm <= exact.residual_norm + 1e-10 * b.norm());
        CHECK(rq.residual_norm <= exact.residual_norm + 1e-10 * b.norm());
    }
}

TEST_CASE("randomized solvers are deterministic in the seed")
{
    Gen                  g(33);
    const LinearOperator A = from_dense(g.with_spectrum(30, 20, geometric(20, 0.3)));
    const ComplexVector  b = g.vector(30);
    SolverConfig         c1 = SolverConfig::for_rank(6, 1e-6, 42);

    CHECK(randomized_tsvd_solve(A, b, c1).x == randomized_tsvd_solve(A, b, c1).x);
    CHECK(randomized_tqr_solve(A, b, c1).x == randomized_tqr_solve(A, b, c1).x);

    SolverConfig c2 = c1;
    c2.sketch_size  = 8;
    c2.seed         = 43;
    CHECK(randomized_tsvd_solve(A, b, c1).x != randomized_tsvd_solve(A, b, c2).x);
}

TEST_CASE("randomized solvers return zero when everything is truncated")
{
    Gen                  g(34);
    const LinearOperator A = from_dense(1e-9 * g.matrix(10, 6));
    const ComplexVector  b = g.vector(10);
    const SolverConfig   c = SolverConfig::for_rank(2, 1.0, 1);
    for (const auto& rep : {randomized_tsvd_solve(A, b, c), randomized_tqr_solve(A, b, c)}) {
        CHECK(rep.rank_used == 0);
        CHECK(rep.x.norm() == 0.0);
    }
}

TEST_CASE("adaptive sketching widens until the rank fits")
{
    Gen                  g(35);
    const Index          r = 30;
    const LinearOperator A = from_dense(g.matrix(80, r) * g.matrix(r, 60));
    const ComplexVector  b = g.vector(80);

    SolverConfig cfg = SolverConfig::for_rank(5, 1e-8, 9, 5);
    const auto   fixed = randomized_tsvd_solve(A, b, cfg);
    CHECK(fixed.sketch_size == 10);
    CHECK(fixed.rank_used == 10);

    cfg.adaptive = true;
    for (const auto& rep : {randomized_tsvd_solve(A, b, cfg), randomized_tqr_solve(A, b, cfg)}) {
        CHECK(rep.rank_used == r);
        CHECK(rep.sketch_size >= r + 5);
        CHECK(rep.sketch_size <= 60);
        CHECK(rep.residual_norm <= tsvd_solve(materialize(A), b, 1e-8).residual_norm + 1e-9 * b.norm());
    }
}

TEST_CASE("truncated pivoted QR")
{
    Gen                 g(36);
    const ComplexMatrix A = g.matrix(12, 7);
    const ComplexVector b = g.vector(12);
    const auto          full = tqr_solve(A, b, 7);
    CHECK((full.x - direct_lsq(A, b).x).norm() <= 1e-10 * full.x.norm());

    // the kept columns are exactly the leading pivots
    const auto        qr = pivoted_qr(A);
    const auto        r3 = tqr_solve(A, b, 3);
    std::vector<bool> kept(7, false);
    for (Index j = 0; j < 3; ++j)
        kept[static_cast<std::size_t>(qr.perm[static_cast<std::size_t>(j)])] = true;
    for (Index j = 0; j < 7; ++j)
        if (!kept[static_cast<std::size_t>(j)])
            CHECK(r3.x[j] == Complex(0.0));

    CHECK_THROWS(tqr_solve(A, b, 0));
    CHECK_THROWS(tqr_solve(A, b, 8));
    CHECK(qr_threshold_rank(qr, 0.0) == 7);
    CHECK(qr_threshold_rank(qr, 1e9) == 0);
}

TEST_CASE("solver configuration and dispatch")
{
    const SolverConfig c = SolverConfig::for_rank(5, 1e-8, 3);
    CHECK(c.sketch_size == 25);
    CHECK(c.sketch_width(10) == 10);
    CHECK(c.sketch_width(100) == 25);
    CHECK_THROWS(SolverConfig::for_rank(5, 1e-8, 3, 1));

    for (auto s : {Step1Solver::tsvd, Step1Solver::tqr, Step1Solver::randomized_tsvd, Step1Solver::randomized_tqr})
        CHECK(step1_solver_from_string(to_string(s)) == s);
    CHECK_THROWS(step1_solver_from_string("lsqr"));

    Gen                  g(37);
    const ComplexMatrix  D = g.with_spectrum(20, 10, geometric(10, 0.1));
    const ComplexVector  b = g.vector(20);
    SolverConfig         cfg = SolverConfig::for_rank(10, 1e-5, 1, 2);
    const auto           ref = tsvd_solve(D, b, 1e-5);
    for (auto s : {Step1Solver::tsvd, Step1Solver::tqr, Step1Solver::randomized_tsvd, Step1Solver::randomized_tqr}) {
        CAPTURE(to_string(s));
        const auto rep = solve_lowrank(s, from_dense(D), b, cfg);
        CHECK(rep.residual_norm <= ref.residual_norm + 1e-4 * b.norm());
        CHECK(rep.x.allFinite());
    }
}

TEST_CASE("Gaussian pseudoinverse statistics")
{
    const auto st = mc_gaussian_props(3, 6, 400, 5);
    CHECK(st.expected_pinv_fro == doctest::Approx(std::sqrt(3.0 / 5.0)));
    CHECK(std::abs(st.mean_pinv_fro / st.expected_pinv_fro - 1.0) < 0.1);
    CHECK(st.mean_fro <= st.fro_bound);
    CHECK(st.tail_fraction <= st.tail_bound + 0.05);

    CHECK_THROWS(mc_gaussian_props(3, 3, 400, 5));
    CHECK_THROWS(mc_gaussian_props(3, 6, 50, 5));
    CHECK_THROWS(mc_gaussian_props(3, 6, 400, 5, 0.5));
}
