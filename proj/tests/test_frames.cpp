#include <doctest.h>

#include "az/frames.hpp"
#include "test_support.hpp"

using namespace az;
using az::testing::Gen;
using az::testing::max_abs;

namespace {

constexpr double pi = std::numbers::pi;

const DomainSpec half = DomainSpec::interval(-0.5, 0.5);
const DomainSpec full = DomainSpec::interval(-1.0, 1.0);

double adjoint_defect(const LinearOperator& A, Gen& g)
{
    const ComplexVector u = g.vector(A.cols()), v = g.vector(A.rows());
    return std::abs(v.dot(A.apply(u)) - A.adjoint_apply(v).dot(u)) / (u.norm() * v.norm());
}

ComplexMatrix dual_defect(const AzProblem& p)
{
    const ComplexMatrix A = materialize(p.A), Z = materialize(p.Z);
    return Z.adjoint() * A - ComplexMatrix::Identity(p.cols(), p.cols());
}

Index step1_rank(const AzProblem& p, double eps)
{
    return eps_rank(materialize(az_step1_operator(p.A, p.Z)), eps).r;
}

ComplexVector exp_samples(const AzProblem& p)
{
    return sample_function([](const Point& q) { return Complex(std::exp(q.x)); }, p.points);
}

}  // namespace

TEST_CASE("domains")
{
    const DomainSpec two = DomainSpec::from_json("[[0, 0.5], [-0.75, -0.25]]");
    CHECK(two.parts().size() == 2);
    CHECK(two.parts()[0].lo == -0.75);
    CHECK(two.measure() == doctest::Approx(1.0));
    CHECK(two.contains(-0.5));
    CHECK_FALSE(two.contains(-0.1));
    CHECK(DomainSpec::from_json(two.to_json()).parts()[1].hi == 0.5);

    CHECK_THROWS(DomainSpec::from_json("[[0, 2]]"));
    CHECK_THROWS(DomainSpec::from_json("[[0.5, 0]]"));
    CHECK_THROWS(DomainSpec::from_json("[[0, 0.5], [0.25, 0.75]]"));
    CHECK_THROWS(DomainSpec::from_json("not json"));
    CHECK_THROWS(DomainSpec::from_json("[]"));
    CHECK_THROWS(DomainSpec::named_mask("triangle"));

    const DomainSpec pd = DomainSpec::named_mask("punctured-disk");
    CHECK(pd.dimension() == 2);
    CHECK(pd.contains(0.5, 0.0));
    CHECK_FALSE(pd.contains(0.1, 0.1));
    CHECK_FALSE(pd.contains(0.7, 0.7));
}

TEST_CASE("Fourier extension: entries, sizing and errors")
{
    Gen             g(50);
    const AzProblem p = fourier_extension_1d(21, half, 2.0);
    const auto      grid = fourier_grid_1d(21, half, 2.0);
    CHECK(grid.L >= 84);
    CHECK(static_cast<double>(grid.selected.size()) >= 42.0);
    CHECK(p.rows() == static_cast<Index>(grid.selected.size()));

    const ComplexMatrix A = materialize(p.A);
    for (Index m = 0; m < p.rows(); ++m)
        for (Index i = 0; i < 21; ++i) {
            const double x = p.points[static_cast<std::size_t>(m)].x;
            CHECK(std::abs(A(m, i) - std::polar(1.0, pi * static_cast<double>(i - 10) * x)) <= 1e-12);
        }
    CHECK(max_abs(materialize(p.Z) - A / static_cast<double>(grid.L)) <= 1e-15);
    CHECK(adjoint_defect(p.A, g) <= 1e-10);
    CHECK(adjoint_defect(p.Z, g) <= 1e-10);

    CHECK_THROWS_WITH(fourier_extension_1d(20, half, 2.0), doctest::Contains("odd"));
    CHECK_THROWS_WITH(fourier_extension_1d_on_grid(21, DomainSpec::interval(0.0, 0.05), 100),
                      doctest::Contains("only"));
    CHECK_THROWS(fourier_extension_1d(21, half, 0.5));
}

TEST_CASE("Fourier extension: full grid is exact, subdomain clusters")
{
    const AzProblem f = fourier_extension_1d_on_grid(63, full, 63);
    CHECK(max_abs(dual_defect(f)) <= 1e-12);
    CHECK(step1_rank(f, 1e-12) == 0);

    const AzProblem  p = fourier_extension_1d(201, half, 2.0);
    const RealVector s = svd(materialize(p.A)).sigma;
    CHECK(std::abs(s[0] / p.scale - 1.0) <= 0.02);
    const RealVector sz = svd(materialize(p.Z)).sigma;
    CHECK(sz[0] * p.scale == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("Fourier extension 2D")
{
    Gen              g(51);
    const DomainSpec disk = DomainSpec::named_mask("disk");
    const AzProblem  p    = fourier_extension_2d_on_grid(5, disk, 16);
    const ComplexMatrix A = materialize(p.A);
    for (Index m = 0; m < p.rows(); ++m)
        for (Index i1 = 0; i1 < 5; ++i1)
            for (Index i2 = 0; i2 < 5; ++i2) {
                const Point& q = p.points[static_cast<std::size_t>(m)];
                const auto   e = std::polar(1.0, pi * (static_cast<double>(i1 - 2) * q.x + static_cast<double>(i2 - 2) * q.y));
                CHECK(std::abs(A(m, i1 * 5 + i2) - e) <= 1e-12);
            }
    CHECK(adjoint_defect(p.A, g) <= 1e-10);
    CHECK(max_abs(materialize(p.Z) - A / 256.0) <= 1e-15);

    const ComplexVector c = g.vector(25);
    CHECK((p.evaluate(c, p.points) - A * c).norm() <= 1e-12 * A.norm() * c.norm());

    const AzProblem everything = fourier_extension_2d_on_grid(7, DomainSpec::named_mask("full"), 7);
    CHECK(max_abs(dual_defect(everything)) <= 1e-12);
    CHECK(step1_rank(everything, 1e-12) == 0);

    const AzProblem sq = fourier_extension_2d(7, DomainSpec::named_mask("square"), 2.0);
    CHECK(static_cast<double>(sq.rows()) >= 2.0 * 49.0);
    CHECK_THROWS(fourier_extension_2d(7, half, 2.0));
}

TEST_CASE("Gram matrix")
{
    const ComplexMatrix I = gram_fourier(9, full);
    CHECK(max_abs(I - ComplexMatrix::Identity(9, 9)) <= 1e-14);

    const DomainSpec    two = DomainSpec::from_json("[[-0.75, -0.25], [0, 0.5]]");
    const ComplexMatrix G   = gram_fourier(50, two);
    CHECK(max_abs(G - G.adjoint()) <= 1e-15);
    for (Index i = 0; i < 50; ++i)
        CHECK(G(i, i).real() == doctest::Approx(two.measure() / 2.0));
    const RealVector ev = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(G).eigenvalues();
    CHECK(ev.minCoeff() >= -1e-12);

    Index hi = 0, lo = 0;
    for (Index i = 0; i < 50; ++i) {
        hi += ev[i] >= 0.9;
        lo += ev[i] <= 0.1;
    }
    CHECK(hi >= 18);
    CHECK(lo >= 18);
    CHECK(50 - hi - lo <= 14);
    CHECK_THROWS(gram_fourier(5, DomainSpec::named_mask("disk")));
}

TEST_CASE("Chebyshev extension")
{
    Gen g(52);
    for (auto kind : {ChebyshevKind::roots, ChebyshevKind::extremae}) {
        const AzProblem     p = chebyshev_extension(20, half, 2.0, kind);
        const ComplexMatrix A = materialize(p.A);
        RealVector          x(p.rows());
        for (Index m = 0; m < p.rows(); ++m)
            x[m] = p.points[static_cast<std::size_t>(m)].x;
        CHECK(max_abs(A - chebyshev_vandermonde(x, 20).cast<Complex>()) <= 1e-12);
        CHECK(adjoint_defect(p.A, g) <= 1e-10);
        CHECK(adjoint_defect(p.Z, g) <= 1e-10);
        CHECK(static_cast<double>(p.rows()) >= 40.0);

        const ComplexVector c = g.vector(20);
        CHECK((p.evaluate(c, p.points) - A * c).norm() <= 1e-12 * A.norm() * c.norm());

        const Index L = kind == ChebyshevKind::roots ? 32 : 33;
        const AzProblem f = chebyshev_extension_on_grid(L, full, L, kind);
        CHECK(max_abs(dual_defect(f)) <= 1e-11);
        CHECK(step1_rank(f, 1e-11) == 0);
    }

    // O(log N) growth of the plunge rank
    std::vector<Index> ranks;
    for (Index N : {51, 101, 201}) {
        const AzProblem p = chebyshev_extension(N, half, 2.0);
        ranks.push_back(step1_rank(p, p.default_eps()));
    }
    CHECK(ranks[1] - ranks[0] <= 10);
    CHECK(ranks[2] - ranks[1] <= 10);
    CHECK_THROWS(chebyshev_extension_on_grid(10, half, 8, ChebyshevKind::roots));
}

TEST_CASE("Legendre extension")
{
    Gen             g(53);
    const AzProblem p = legendre_extension(40, half, 2.0);
    CHECK(p.rows() >= 80);
    CHECK(step1_rank(p, 1e-8 * p.scale) <= 20);
    CHECK(adjoint_defect(p.A, g) <= 1e-10);

    const AzProblem f = legendre_extension_on_grid(24, full, 24);
    CHECK(max_abs(dual_defect(f)) <= 1e-10);

    const ComplexVector c = g.vector(40);
    CHECK((p.evaluate(c, p.points) - p.A.apply(c)).norm() <= 1e-11 * (1.0 + c.norm() * p.scale));
}

TEST_CASE("Fourier series on midpoints has an exact dual")
{
    Gen             g(54);
    const AzProblem p = fourier_series_lsq(11, 30);
    CHECK(max_abs(dual_defect(p)) <= 1e-13);
    const ComplexMatrix A = materialize(p.A);
    for (Index m = 0; m < 30; ++m)
        for (Index i = 0; i < 11; ++i)
            CHECK(std::abs(A(m, i) - std::polar(1.0, 2.0 * pi * static_cast<double>(i - 5) * (m + 0.5) / 30.0)) <= 1e-12);
    CHECK(adjoint_defect(p.A, g) <= 1e-10);
    CHECK_THROWS(fourier_series_lsq(11, 10));
}

TEST_CASE("weighted sum frame")
{
    Gen             g(55);
    const AzProblem base = chebyshev_extension_on_grid(16, full, 32, ChebyshevKind::roots);
    const auto      one  = [](const Point&) { return 1.0; };
    const auto      absx = [](const Point& q) { return std::abs(q.x); };

    const AzProblem   fr = weighted_sum_frame(base, one, absx);
    CHECK(fr.rows() == 32);
    CHECK(fr.cols() == 32);
    CHECK(adjoint_defect(fr.A, g) <= 1e-10);
    CHECK(adjoint_defect(fr.Z, g) <= 1e-10);

    // w2 = 0 reduces to the base problem padded with zeros
    const AzProblem     padded = weighted_sum_frame(base, one, [](const Point&) { return 0.0; });
    const ComplexMatrix ZA     = materialize(padded.Z).adjoint() * materialize(padded.A);
    const ComplexMatrix base_za = materialize(base.Z).adjoint() * materialize(base.A);
    CHECK(max_abs(ZA.topLeftCorner(16, 16) - base_za) <= 1e-13);
    CHECK(max_abs(ZA.rightCols(16)) == 0.0);
    CHECK(max_abs(ZA.bottomRows(16)) == 0.0);

    const auto zero_w = [](const Point&) { return 0.0; };
    CHECK_THROWS_WITH(weighted_sum_frame(base, zero_w, zero_w), doctest::Contains("vanishes"));

    // frame of frames: Chebyshev extension base on a subinterval
    const auto f = [](const Point& q) {
        return Complex(std::cos(2 * pi * q.x) + std::abs(q.x) * std::sin(1 + 2 * pi * q.x));
    };
    const AzProblem     sub = weighted_sum_frame(chebyshev_extension(32, half, 2.0), one, absx);
    const ComplexVector b   = sample_function(f, sub.points);
    const AzReport      rep = az_solve(sub, b, Step1Solver::tsvd, SolverConfig::for_rank(0, sub.default_eps()));
    const SolveReport   ora = tsvd_solve(materialize(sub.A), b, sub.default_eps());
    CHECK(rep.residual_norm <= 10.0 * ora.residual_norm + 1e-12 * b.norm());
    CHECK(eval_error(sub, rep.x, f, error_grid(sub, half)).max_err <= 1e-6);
}

TEST_CASE("sampling and errors")
{
    const AzProblem p  = fourier_extension_1d(31, half, 2.0);
    const auto      pts = error_grid(p, half);
    CHECK(static_cast<Index>(pts.size()) >= 4 * p.rows());
    for (const auto& q : pts)
        CHECK(half.contains(q.x));

    // in-span reproduction
    const auto     phi0 = [](const Point&) { return Complex(1.0); };
    const AzReport r0   = az_solve(p, sample_function(phi0, p.points), Step1Solver::tsvd,
                                   SolverConfig::for_rank(0, 1e-14 * p.scale));
    CHECK(eval_error(p, r0.x, phi0, pts).max_err <= 1e-12);

    // Gibbs overshoot of the plain Fourier fit of a sawtooth near its jump
    const AzProblem     s   = fourier_series_lsq(121, 242);
    const auto          saw = [](const Point& q) { return Complex(q.x - std::round(q.x)); };
    const ComplexVector x   = s.Z.adjoint_apply(sample_function(saw, s.points));
    std::vector<Point>  near;
    for (int i = 0; i <= 200; ++i) {
        const double t = 0.45 + 0.1 * i / 200.0;
        if (std::abs(t - 0.5) > 1e-3)
            near.push_back({t, 0.0});
    }
    CHECK(eval_error(s, x, saw, near).max_err >= 0.05);

    CHECK_THROWS_AS(eval_error(p, ComplexVector::Zero(3), phi0, pts), ShapeError);
}

TEST_CASE("approximation accuracy against the dense oracle")
{
    const AzProblem     p = fourier_extension_1d(201, half, 2.0);
    const ComplexVector b = exp_samples(p);
    const AzReport rep = az_solve(p, b, Step1Solver::randomized_tsvd, [&] {
        auto c     = SolverConfig::for_rank(40, p.default_eps(), 3);
        c.adaptive = true;
        return c;
    }());
    const SolveReport ora = tsvd_solve(materialize(p.A), b, p.default_eps());
    CHECK((b - p.A.apply(rep.x)).cwiseAbs().maxCoeff() <= 1e-8 * b.cwiseAbs().maxCoeff());
    CHECK((p.A.apply(rep.x) - p.A.apply(ora.x)).norm() <= 1e-8 * b.norm());
    CHECK(eval_error(p, rep.x, [](const Point& q) { return Complex(std::exp(q.x)); }, error_grid(p, half)).max_err <=
          1e-8);
}

TEST_CASE("restricting the domain does not lower the plunge rank")
{
    const Index  L   = 244;
    const double eps = 1e-10 * std::sqrt(static_cast<double>(L));
    Index        prev = 0;
    for (double h : {0.6, 0.5, 0.4}) {
        const Index r = step1_rank(fourier_extension_1d_on_grid(61, DomainSpec::interval(-h, h), L), eps);
        CHECK(r + 2 >= prev);
        prev = r;
    }
}
