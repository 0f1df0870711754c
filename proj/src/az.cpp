#include "az/az.hpp"

#include <chrono>

namespace az {

AzProblem::AzProblem(LinearOperator a, LinearOperator z, std::string label_, double scale_)
    : A(std::move(a))
    , Z(std::move(z))
    , label(std::move(label_))
    , scale(scale_)
{
    if (A.rows() != Z.rows() || A.cols() != Z.cols())
        throw ShapeError("AzProblem: A is " + shape_string(A.rows(), A.cols()) + " but Z is " +
                         shape_string(Z.rows(), Z.cols()));
}

namespace {

void check_problem(const AzProblem& p, const ComplexVector& b)
{
    if (p.A.rows() != p.Z.rows() || p.A.cols() != p.Z.cols())
        throw ShapeError("az_solve: A is " + shape_string(p.A.rows(), p.A.cols()) + " but Z is " +
                         shape_string(p.Z.rows(), p.Z.cols()));
    if (b.size() != p.A.rows())
        throw ShapeError("az_solve: right-hand side has length " + std::to_string(b.size()) + ", A has " +
                         std::to_string(p.A.rows()) + " rows");
}

// steps 2 and 3 given x1: one A apply and one Z^* apply
AzReport complete(const AzProblem& p, const ComplexVector& b, ComplexVector x1)
{
    AzReport rep;
    const ComplexVector r = b - p.A.apply(x1);
    rep.x2 = p.Z.adjoint_apply(r);
    rep.x  = x1 + rep.x2;
    rep.x1 = std::move(x1);
    return rep;
}

}  // namespace

AzReport az_solve(const AzProblem& problem, const ComplexVector& b, Step1Solver step1, const SolverConfig& config)
{
    check_problem(problem, b);
    const auto t0 = std::chrono::steady_clock::now();

    const LinearOperator step1_op = az_step1_operator(problem.A, problem.Z);
    const ComplexVector  rhs      = b - problem.A.apply(problem.Z.adjoint_apply(b));
    SolveReport          s1       = solve_lowrank(step1, step1_op, rhs, config);

    // the final residual equals the step-1 residual, so no further A apply
    AzReport rep       = complete(problem, b, std::move(s1.x));
    rep.rank_used      = s1.rank_used;
    rep.sketch_size    = s1.sketch_size;
    rep.step1_residual = s1.residual_norm;
    rep.residual_norm  = s1.residual_norm;
    rep.wall_time      = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

AzReport az_solve_with_step1_override(const AzProblem& problem, const ComplexVector& b, const ComplexVector& x1)
{
    check_problem(problem, b);
    if (x1.size() != problem.A.cols())
        throw ShapeError("az_solve_with_step1_override: x1 has length " + std::to_string(x1.size()) + ", A has " +
                         std::to_string(problem.A.cols()) + " columns");
    const auto t0  = std::chrono::steady_clock::now();
    AzReport   rep = complete(problem, b, x1);
    rep.residual_norm  = (b - problem.A.apply(rep.x)).norm();
    rep.step1_residual = rep.residual_norm;
    rep.wall_time      = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

WeightedAzProblem::WeightedAzProblem(AzProblem base_, RealVector d_, double eps_w_)
    : base(std::move(base_))
    , d(std::move(d_))
    , eps_w(eps_w_)
{
    if (d.size() != base.rows())
        throw ShapeError("WeightedAzProblem: " + std::to_string(d.size()) + " weights for " +
                         std::to_string(base.rows()) + " rows");
    for (Index i = 0; i < d.size(); ++i)
        if (!(d[i] > 0.0))
            throw Error("WeightedAzProblem: weight d_" + std::to_string(i) + " = " + std::to_string(d[i]) +
                        " is not positive");
    if (!(eps_w >= 0.0))
        throw Error("WeightedAzProblem: threshold must be nonnegative");
}

RealVector WeightedAzProblem::thresholded_inverse() const
{
    RealVector inv(d.size());
    for (Index i = 0; i < d.size(); ++i)
        inv[i] = d[i] >= eps_w ? 1.0 / d[i] : 0.0;
    return inv;
}

AzProblem WeightedAzProblem::transformed() const
{
    AzProblem p(compose(diagonal(d), base.A), compose(diagonal(thresholded_inverse()), base.Z),
                base.label + " (weighted)", base.scale * d.maxCoeff());
    p.points    = base.points;
    p.evaluate  = base.evaluate;
    p.dimension = base.dimension;
    return p;
}

AzReport az_weighted_solve(const WeightedAzProblem& problem, const ComplexVector& b, Step1Solver step1,
                           const SolverConfig& config)
{
    if (b.size() != problem.base.rows())
        throw ShapeError("az_weighted_solve: right-hand side has length " + std::to_string(b.size()) + ", A has " +
                         std::to_string(problem.base.rows()) + " rows");
    const ComplexVector wb = problem.d.cast<Complex>().cwiseProduct(b);
    return az_solve(problem.transformed(), wb, step1, config);
}

SplittingCertificate splitting_certificate(const ComplexMatrix& W, const ComplexMatrix& L1, const ComplexMatrix& E1,
                                           const ComplexMatrix& L2, const ComplexMatrix& E2, Index R)
{
    const Index M = W.rows(), N = W.cols();
    if (L1.rows() != M || L1.cols() != N || E1.rows() != M || E1.cols() != N)
        throw ShapeError("splitting_certificate: L1/E1 must match W (" + shape_string(M, N) + ")");
    if (L2.rows() != N || L2.cols() != M || E2.rows() != N || E2.cols() != M)
        throw ShapeError("splitting_certificate: L2/E2 must be " + shape_string(N, M));

    SplittingCertificate c;
    c.A                   = W + L1 + E1;
    const ComplexMatrix Zs = pseudoinverse(W) + L2 + E2;
    c.Z                   = Zs.adjoint();
    c.residual_matrix     = c.A - c.A * Zs * c.A;
    c.eps                 = std::max(E1.norm(), E2.norm());
    c.rank_limit          = 3 * R;

    const double norm_a     = two_norm(c.A);
    const double norm_i_azs = two_norm(ComplexMatrix(ComplexMatrix::Identity(M, M) - c.A * Zs));
    c.e_bound = c.eps * (1.0 + norm_i_azs + norm_a * norm_a) + c.eps * c.eps * norm_a;

    // an exact splitting (eps = 0) certifies exact rank; use a roundoff floor
    const double floor = 1e-12 * std::max(1.0, c.residual_matrix.norm() + c.A.norm());
    c.rank = eps_rank(c.residual_matrix, std::max(c.e_bound, floor));
    return c;
}

namespace {

ComplexMatrix complex_gaussian(Index m, Index n, std::uint64_t seed)
{
    ComplexMatrix G(m, n);
    G.real() = gaussian_real(m, n, seed);
    G.imag() = gaussian_real(m, n, seed ^ 0x9e3779b97f4a7c15ULL);
    return G;
}

}  // namespace

SplittingCertificate random_splitting(Index M, Index N, Index R, double eps, std::uint64_t seed)
{
    const ComplexMatrix W  = complex_gaussian(M, N, seed);
    const ComplexMatrix L1 = complex_gaussian(M, R, seed + 1) * complex_gaussian(R, N, seed + 2) / std::sqrt(double(N));
    const ComplexMatrix L2 = complex_gaussian(N, R, seed + 3) * complex_gaussian(R, M, seed + 4) / std::sqrt(double(M));

    ComplexMatrix E1 = ComplexMatrix::Zero(M, N);
    ComplexMatrix E2 = ComplexMatrix::Zero(N, M);
    if (eps > 0.0) {
        E1 = complex_gaussian(M, N, seed + 5);
        E1 *= eps / E1.norm();
        E2 = complex_gaussian(N, M, seed + 6);
        E2 *= eps / E2.norm();
    }
    return splitting_certificate(W, L1, E1, L2, E2, R);
}

}  // namespace az
