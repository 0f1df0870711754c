#pragma once

//
// The AZ algorithm:
//
//   1. solve (I - A Z^*) A x1 = (I - A Z^*) b   (low-rank system)
//   2. x2 = Z^* (b - A x1)
//   3. x  = x1 + x2
//
// and its weighted least-squares variant with A~ = W A, Z~ = W_eps^+ Z.
//

#include <functional>
#include <string>
#include <vector>

#include "az/linear_operator.hpp"
#include "az/solvers.hpp"

namespace az {

// sample point; 1D problems leave y at zero
struct Point
{
    double x = 0.0;
    double y = 0.0;
};

// values of the approximant with coefficients `coef` at the given points
using SeriesEvaluator = std::function<ComplexVector(const ComplexVector& coef, const std::vector<Point>& pts)>;

struct AzProblem
{
    LinearOperator A;
    LinearOperator Z;
    std::string    label;
    double         scale = 1.0;  // typical singular value of A, sets the default eps

    // optional metadata filled in by the frame builders
    std::vector<Point> points;     // collocation points, one per row
    SeriesEvaluator    evaluate;   // evaluates coefficient vectors anywhere
    int                dimension = 1;

    AzProblem() = default;
    AzProblem(LinearOperator a, LinearOperator z, std::string label = {}, double scale = 1.0);

    Index rows() const { return A.rows(); }
    Index cols() const { return A.cols(); }

    // 1e-10 * scale
    double default_eps() const { return 1e-10 * scale; }
};

struct AzReport : SolveReport
{
    ComplexVector x1;
    ComplexVector x2;
    double        step1_residual = 0.0;  // || (I - A Z^*)(b - A x1) ||
};

// residual_norm is the step-1 residual || (I - A Z^*)(b - A x1) ||, which
// equals || b - A x ||. Outside step 1 A and Z^* are applied twice each: once
// for the step-1 right-hand side and once in step 2.
AzReport az_solve(const AzProblem& problem, const ComplexVector& b, Step1Solver step1, const SolverConfig& config);

// skips step 1 and uses x1 as given
AzReport az_solve_with_step1_override(const AzProblem& problem, const ComplexVector& b, const ComplexVector& x1);

struct WeightedAzProblem
{
    AzProblem  base;
    RealVector d;            // positive row weights
    double     eps_w = 0.0;  // rows with d_i < eps_w are dropped from W_eps

    WeightedAzProblem(AzProblem base, RealVector d, double eps_w);

    // diagonal of W_eps^+: 1/d_i where d_i >= eps_w, else 0
    RealVector thresholded_inverse() const;

    // (W A, W_eps^+ Z)
    AzProblem transformed() const;
};

AzReport az_weighted_solve(const WeightedAzProblem& problem, const ComplexVector& b, Step1Solver step1,
                           const SolverConfig& config);

//
// Synthetic splitting A = W + L1 + E1, Z^* = W^+ + L2 + E2 with
// rank(L1), rank(L2) <= R and ||E1||_F, ||E2||_F <= eps. A - A Z^* A is
// then L + E with rank(L) <= 3R and
//   ||E||_F <= eps (1 + ||I - A Z^*||_2 + ||A||_2^2) + eps^2 ||A||_2.
//
struct SplittingCertificate
{
    ComplexMatrix A;
    ComplexMatrix Z;
    ComplexMatrix residual_matrix;   // A - A Z^* A
    double        eps         = 0.0; // max(||E1||_F, ||E2||_F)
    double        e_bound     = 0.0;
    EpsRankReport rank;              // eps_rank(A - A Z^* A, e_bound)
    Index         rank_limit  = 0;   // 3R
    bool          holds() const { return rank.r <= rank_limit; }
};

SplittingCertificate splitting_certificate(const ComplexMatrix& W, const ComplexMatrix& L1, const ComplexMatrix& E1,
                                           const ComplexMatrix& L2, const ComplexMatrix& E2, Index R);

// random W (M x N), rank-R L1 (M x N), L2 (N x M) and E1, E2 scaled to ||.||_F = eps
SplittingCertificate random_splitting(Index M, Index N, Index R, double eps, std::uint64_t seed);

}  // namespace az
