#include "az/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>

namespace az {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_rhs(const char* what, Index rows, const ComplexVector& b)
{
    if (b.size() != rows)
        throw ShapeError(std::string(what) + ": right-hand side has length " + std::to_string(b.size()) +
                         ", operator has " + std::to_string(rows) + " rows");
}

// number of leading singular values >= eps (sigma is nonincreasing)
Index count_retained(const RealVector& sigma, double eps)
{
    Index k = 0;
    while (k < sigma.size() && sigma[k] >= eps)
        ++k;
    return k;
}

// V_1 Sigma_1^{-1} U_1^* b over the first k triplets
ComplexVector truncated_svd_apply(const SvdFactorization& f, Index k, const ComplexVector& b)
{
    const ComplexVector c = f.U.leftCols(k).adjoint() * b;
    const ComplexVector s = c.cwiseQuotient(f.sigma.head(k).cast<Complex>());
    return f.V.leftCols(k) * s;
}

// Pi_1 R_11^{-1} Q_1^* b, length = number of columns of the factored matrix
ComplexVector truncated_qr_apply(const PivotedQrFactorization& qr, Index r, const ComplexVector& b)
{
    const Index   n = static_cast<Index>(qr.perm.size());
    ComplexVector x = ComplexVector::Zero(n);
    if (r == 0)
        return x;

    for (Index k = 0; k < r; ++k)
        if (qr.R(k, k) == Complex(0.0))
            throw FactorizationError("tqr_solve: R_11 is singular, zero diagonal at index " + std::to_string(k));

    const ComplexVector c = qr.Q.leftCols(r).adjoint() * b;
    const ComplexVector y = qr.R.topLeftCorner(r, r).triangularView<Eigen::Upper>().solve(c);
    for (Index j = 0; j < r; ++j)
        x[qr.perm[static_cast<std::size_t>(j)]] = y[j];
    return x;
}

// sketch A Omega, widening it in place when adaptivity asks for it
struct Sketch
{
    ComplexMatrix omega;
    ComplexMatrix image;
};

Sketch make_sketch(const LinearOperator& A, Index width, std::uint64_t seed)
{
    Sketch s;
    s.omega = gaussian_matrix(A.cols(), width, seed);
    s.image = A.apply(s.omega);
    return s;
}

void widen_sketch(const LinearOperator& A, Sketch& s, Index width, std::uint64_t seed)
{
    const Index old = s.omega.cols();
    // same seed: the first `old` columns coincide with the current sketch
    ComplexMatrix omega = gaussian_matrix(A.cols(), width, seed);
    ComplexMatrix image(A.rows(), width);
    image.leftCols(old)         = s.image;
    image.rightCols(width - old) = A.apply(ComplexMatrix(omega.rightCols(width - old)));
    s.omega = std::move(omega);
    s.image = std::move(image);
}

bool wants_wider(const SolverConfig& cfg, Index rank, Index width, Index cols)
{
    return cfg.adaptive && width < cols && rank > width - cfg.oversampling;
}

SolveReport finish(const LinearOperator& A, const ComplexVector& b, ComplexVector x, Index rank, Index width,
                   Clock::time_point t0)
{
    SolveReport rep;
    rep.x             = std::move(x);
    rep.rank_used     = rank;
    rep.sketch_size   = width;
    rep.wall_time     = seconds_since(t0);
    rep.residual_norm = residual_norm(A, rep.x, b);
    return rep;
}

SolveReport finish(const ComplexMatrix& A, const ComplexVector& b, ComplexVector x, Index rank,
                   Clock::time_point t0)
{
    SolveReport rep;
    rep.x             = std::move(x);
    rep.rank_used     = rank;
    rep.sketch_size   = 0;
    rep.wall_time     = seconds_since(t0);
    rep.residual_norm = residual_norm(A, rep.x, b);
    return rep;
}

}  // namespace

SolverConfig SolverConfig::for_rank(Index r, double eps, std::uint64_t seed, Index p)
{
    if (p < 2)
        throw Error("SolverConfig: oversampling p must be at least 2");
    SolverConfig c;
    c.eps          = eps;
    c.rank_guess   = r;
    c.oversampling = p;
    c.sketch_size  = r + p;
    c.seed         = seed;
    return c;
}

Index SolverConfig::sketch_width(Index cols) const
{
    const Index R = sketch_size > 0 ? sketch_size : rank_guess + oversampling;
    return std::clamp<Index>(R, 1, std::max<Index>(cols, 1));
}

double residual_norm(const ComplexMatrix& A, const ComplexVector& x, const ComplexVector& b)
{
    return (b - A * x).norm();
}

double residual_norm(const LinearOperator& A, const ComplexVector& x, const ComplexVector& b)
{
    return (b - A.apply(x)).norm();
}

SolveReport direct_lsq(const ComplexMatrix& A, const ComplexVector& b)
{
    check_rhs("direct_lsq", A.rows(), b);
    if (A.rows() < A.cols())
        throw ShapeError("direct_lsq: expects M >= N, got " + shape_string(A.rows(), A.cols()));

    const auto t0 = Clock::now();
    const auto f  = svd(A);
    const double cutoff = static_cast<double>(std::max(A.rows(), A.cols())) *
                          std::numeric_limits<double>::epsilon() * f.sigma[0];
    Index k = 0;
    while (k < f.sigma.size() && f.sigma[k] > cutoff)
        ++k;
    return finish(A, b, truncated_svd_apply(f, k, b), k, t0);
}

SolveReport tsvd_solve(const ComplexMatrix& A, const ComplexVector& b, double eps)
{
    check_rhs("tsvd_solve", A.rows(), b);
    if (!(eps > 0.0))
        throw Error("tsvd_solve: eps must be positive");

    const auto  t0 = Clock::now();
    const auto  f  = svd(A);
    const Index k  = count_retained(f.sigma, eps);
    return finish(A, b, truncated_svd_apply(f, k, b), k, t0);
}

SolveReport randomized_tsvd_solve(const LinearOperator& A, const ComplexVector& b, const SolverConfig& config)
{
    check_rhs("randomized_tsvd_solve", A.rows(), b);
    if (!(config.eps > 0.0))
        throw Error("randomized_tsvd_solve: eps must be positive");

    const auto t0    = Clock::now();
    Index      width = config.sketch_width(A.cols());
    Sketch     sk    = make_sketch(A, width, config.seed);

    for (;;) {
        const auto  f = svd(sk.image);
        const Index k = count_retained(f.sigma, config.eps);
        if (wants_wider(config, k, width, A.cols())) {
            width = std::min(2 * width, A.cols());
            widen_sketch(A, sk, width, config.seed);
            continue;
        }
        ComplexVector x = ComplexVector::Zero(A.cols());
        if (k > 0)
            x = sk.omega * truncated_svd_apply(f, k, b);
        return finish(A, b, std::move(x), k, width, t0);
    }
}

Index qr_threshold_rank(const PivotedQrFactorization& qr, double eps)
{
    return count_retained(qr.diagonal_magnitudes(), eps);
}

SolveReport tqr_solve(const ComplexMatrix& A, const ComplexVector& b, Index r)
{
    check_rhs("tqr_solve", A.rows(), b);
    if (r < 1 || r > std::min(A.rows(), A.cols()))
        throw Error("tqr_solve: rank " + std::to_string(r) + " outside [1, " +
                    std::to_string(std::min(A.rows(), A.cols())) + "]");

    const auto t0 = Clock::now();
    const auto qr = pivoted_qr(A);
    return finish(A, b, truncated_qr_apply(qr, r, b), r, t0);
}

SolveReport randomized_tqr_solve(const LinearOperator& A, const ComplexVector& b, const SolverConfig& config)
{
    check_rhs("randomized_tqr_solve", A.rows(), b);
    if (!(config.eps > 0.0))
        throw Error("randomized_tqr_solve: eps must be positive");

    const auto t0    = Clock::now();
    Index      width = config.sketch_width(A.cols());
    Sketch     sk    = make_sketch(A, width, config.seed);

    for (;;) {
        const auto  qr = pivoted_qr(sk.image);
        const Index k  = qr_threshold_rank(qr, config.eps);
        if (wants_wider(config, k, width, A.cols())) {
            width = std::min(2 * width, A.cols());
            widen_sketch(A, sk, width, config.seed);
            continue;
        }
        ComplexVector x = ComplexVector::Zero(A.cols());
        if (k > 0)
            x = sk.omega * truncated_qr_apply(qr, k, b);
        return finish(A, b, std::move(x), k, width, t0);
    }
}

const char* to_string(Step1Solver s)
{
    switch (s) {
    case Step1Solver::tsvd: return "tsvd";
    case Step1Solver::tqr: return "tqr";
    case Step1Solver::randomized_tsvd: return "rand-svd";
    case Step1Solver::randomized_tqr: return "rand-qr";
    }
    return "?";
}

Step1Solver step1_solver_from_string(const std::string& name)
{
    for (auto s : {Step1Solver::tsvd, Step1Solver::tqr, Step1Solver::randomized_tsvd, Step1Solver::randomized_tqr})
        if (name == to_string(s))
            return s;
    throw Error("unknown step-1 solver '" + name + "' (expected tsvd, tqr, rand-svd or rand-qr)");
}

SolveReport solve_lowrank(Step1Solver solver, const LinearOperator& A, const ComplexVector& b,
                          const SolverConfig& config)
{
    switch (solver) {
    case Step1Solver::randomized_tsvd: return randomized_tsvd_solve(A, b, config);
    case Step1Solver::randomized_tqr: return randomized_tqr_solve(A, b, config);
    case Step1Solver::tsvd: {
        const auto t0  = Clock::now();
        auto       rep = tsvd_solve(materialize(A), b, config.eps);
        rep.wall_time  = seconds_since(t0);
        return rep;
    }
    case Step1Solver::tqr: {
        const auto          t0 = Clock::now();
        const ComplexMatrix M  = materialize(A);
        const auto          qr = pivoted_qr(M);
        const Index         r  = qr_threshold_rank(qr, config.eps);
        return finish(M, b, truncated_qr_apply(qr, r, b), r, t0);
    }
    }
    throw Error("solve_lowrank: unknown solver");
}

GaussianPinvStats mc_gaussian_props(Index r, Index p, Index trials, std::uint64_t seed, double s)
{
    if (r < 1)
        throw Error("mc_gaussian_props: r must be positive");
    if (p < 4)
        throw Error("mc_gaussian_props: requires p >= 4");
    if (trials < 100)
        throw Error("mc_gaussian_props: requires at least 100 trials");
    if (s < 1.0)
        throw Error("mc_gaussian_props: requires s >= 1");

    const double dr = static_cast<double>(r);
    const double dp = static_cast<double>(p);

    GaussianPinvStats st;
    st.trials            = trials;
    st.expected_pinv_fro = std::sqrt(dr / (dp - 1.0));
    st.tail_threshold    = s * std::sqrt(3.0 * dr / (dp + 1.0));
    st.tail_bound        = std::pow(s, -dp);
    st.fro_bound         = std::sqrt(dr * (dr + dp));

    double sum_pinv = 0.0, sum_fro = 0.0;
    Index  hits     = 0;
    for (Index t = 0; t < trials; ++t) {
        const RealMatrix omega = gaussian_real(r, r + p, seed + static_cast<std::uint64_t>(t));
        const RealVector sv    = Eigen::JacobiSVD<RealMatrix>(omega).singularValues();
        const double     pinv  = std::sqrt(sv.cwiseInverse().squaredNorm());
        sum_pinv += pinv;
        sum_fro += omega.norm();
        if (pinv >= st.tail_threshold)
            ++hits;
    }
    st.mean_pinv_fro = sum_pinv / static_cast<double>(trials);
    st.mean_fro      = sum_fro / static_cast<double>(trials);
    st.tail_fraction = static_cast<double>(hits) / static_cast<double>(trials);
    return st;
}

}  // namespace az
