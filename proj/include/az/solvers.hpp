#pragma once

//
// Least-squares solvers for (numerically) low-rank systems: truncated SVD
// and truncated pivoted QR, each in a dense and a randomized (sketched)
// variant, plus the plain pseudoinverse solve used as a baseline.
//
// Truncation thresholds are absolute: singular values (or |R(k,k)|) >= eps
// are kept, smaller ones are discarded.
//

#include <cstdint>

#include "az/dense.hpp"
#include "az/linear_operator.hpp"

namespace az {

struct SolverConfig
{
    double        eps          = 1e-10;
    Index         sketch_size  = 0;   // R; 0 means rank_guess + oversampling
    Index         rank_guess   = 0;   // r, only used when sketch_size == 0
    Index         oversampling = 20;  // p
    std::uint64_t seed         = 0;
    bool          adaptive     = false;

    // R = r + p
    static SolverConfig for_rank(Index r, double eps, std::uint64_t seed = 0, Index p = 20);

    // effective sketch width for an N-column operator, clamped to [1, N]
    Index sketch_width(Index cols) const;
};

struct SolveReport
{
    ComplexVector x;
    double        residual_norm = 0.0;
    Index         rank_used     = 0;
    Index         sketch_size   = 0;
    double        wall_time     = 0.0;
};

// x = A^+ b
SolveReport direct_lsq(const ComplexMatrix& A, const ComplexVector& b);

SolveReport tsvd_solve(const ComplexMatrix& A, const ComplexVector& b, double eps);

SolveReport randomized_tsvd_solve(const LinearOperator& A, const ComplexVector& b, const SolverConfig& config);

// keeps the leading r pivoted columns
SolveReport tqr_solve(const ComplexMatrix& A, const ComplexVector& b, Index r);

// number of leading |R(k,k)| >= eps
Index qr_threshold_rank(const PivotedQrFactorization& qr, double eps);

SolveReport randomized_tqr_solve(const LinearOperator& A, const ComplexVector& b, const SolverConfig& config);

enum class Step1Solver { tsvd, tqr, randomized_tsvd, randomized_tqr };

const char* to_string(Step1Solver s);
Step1Solver step1_solver_from_string(const std::string& name);

// dispatches; the dense variants materialize A and tqr picks r by the eps cut
SolveReport solve_lowrank(Step1Solver solver, const LinearOperator& A, const ComplexVector& b,
                          const SolverConfig& config);

//
// Monte Carlo statistics of Gaussian matrices.
//
struct GaussianPinvStats
{
    Index  trials            = 0;
    double mean_pinv_fro     = 0.0;  // mean ||Omega^+||_F, Omega r x (r+p)
    double expected_pinv_fro = 0.0;  // sqrt(r / (p - 1))
    double tail_threshold    = 0.0;  // s sqrt(3r / (p+1))
    double tail_fraction     = 0.0;  // fraction of trials with ||Omega^+||_F >= tail_threshold
    double tail_bound        = 0.0;  // s^{-p}
    double mean_fro          = 0.0;  // mean ||Omega||_F
    double fro_bound         = 0.0;  // sqrt(r (r+p)) = ||I_r||_F ||I_{r+p}||_F
};

// trial t uses seed + t
GaussianPinvStats mc_gaussian_props(Index r, Index p, Index trials, std::uint64_t seed, double s = 2.0);

// ||b - A x||_2
double residual_norm(const ComplexMatrix& A, const ComplexVector& x, const ComplexVector& b);
double residual_norm(const LinearOperator& A, const ComplexVector& x, const ComplexVector& b);

}  // namespace az
