#include "az/dense.hpp"

#include <cmath>
#include <iomanip>
#include <iterator>
#include <istream>
#include <limits>
#include <locale>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace az {

std::string shape_string(Index rows, Index cols)
{
    return std::to_string(rows) + "x" + std::to_string(cols);
}

namespace {

void require_factorizable(const ComplexMatrix& A, const char* what)
{
    if (A.rows() == 0 || A.cols() == 0)
        throw ShapeError(std::string(what) + ": empty matrix " + shape_string(A.rows(), A.cols()));
    if (!A.allFinite())
        throw FactorizationError(std::string(what) + ": non-finite entries in " +
                                 shape_string(A.rows(), A.cols()) + " matrix");
}

}  // namespace

ComplexMatrix SvdFactorization::reconstruct() const
{
    return U * sigma.cast<Complex>().asDiagonal() * V.adjoint();
}

SvdFactorization svd(const ComplexMatrix& A)
{
    require_factorizable(A, "svd");

    Eigen::BDCSVD<ComplexMatrix> dec(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success)
        throw FactorizationError("svd: no convergence for " + shape_string(A.rows(), A.cols()) +
                                 " matrix");

    SvdFactorization f{dec.matrixU(), dec.singularValues(), dec.matrixV()};
    if (!f.sigma.allFinite())
        throw FactorizationError("svd: non-finite singular values for " +
                                 shape_string(A.rows(), A.cols()) + " matrix");
    return f;
}

ComplexMatrix PivotedQrFactorization::permuted(const ComplexMatrix& A) const
{
    ComplexMatrix AP(A.rows(), static_cast<Index>(perm.size()));
    for (std::size_t j = 0; j < perm.size(); ++j)
        AP.col(static_cast<Index>(j)) = A.col(perm[j]);
    return AP;
}

RealVector PivotedQrFactorization::diagonal_magnitudes() const
{
    const Index k = std::min(R.rows(), R.cols());
    RealVector d(k);
    for (Index i = 0; i < k; ++i)
        d[i] = std::abs(R(i, i));
    return d;
}

PivotedQrFactorization pivoted_qr(const ComplexMatrix& A)
{
    require_factorizable(A, "pivoted_qr");

    const Index m = A.rows();
    const Index n = A.cols();
    const Index k = std::min(m, n);

    Eigen::ColPivHouseholderQR<ComplexMatrix> dec(A);

    PivotedQrFactorization f;
    f.Q = dec.householderQ() * ComplexMatrix::Identity(m, k);
    f.R = dec.matrixQR().topRows(k).triangularView<Eigen::Upper>();

    const auto& idx = dec.colsPermutation().indices();
    f.perm.assign(idx.data(), idx.data() + idx.size());
    return f;
}

RealMatrix gaussian_real(Index n, Index k, std::uint64_t seed)
{
    if (n < 1 || k < 1)
        throw ShapeError("gaussian_matrix: nonpositive shape " + shape_string(n, k));

    std::mt19937_64 gen(seed);
    // 53 random bits -> [0, 1)
    auto uniform = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };

    RealMatrix G(n, k);
    double*    data  = G.data();
    const Index total = n * k;
    for (Index i = 0; i < total; i += 2) {
        const double u1    = 1.0 - uniform();
        const double u2    = uniform();
        const double rad   = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        data[i] = rad * std::cos(theta);
        if (i + 1 < total)
            data[i + 1] = rad * std::sin(theta);
    }
    return G;
}

ComplexMatrix gaussian_matrix(Index n, Index k, std::uint64_t seed)
{
    return gaussian_real(n, k, seed).cast<Complex>();
}

EpsRankReport eps_rank_from_spectrum(const RealVector& sigma, double eps)
{
    if (!(eps > 0.0))
        throw Error("eps_rank: threshold must be positive");

    EpsRankReport rep;
    rep.sigma = sigma;
    rep.eps   = eps;

    // tail[r] = sqrt(sum_{k>=r} sigma_k^2), accumulated from the small end
    const Index n = sigma.size();
    double      tail2 = 0.0;
    Index       r     = n;
    double      tail  = 0.0;
    for (Index k = n - 1; k >= 0; --k) {
        const double next = tail2 + sigma[k] * sigma[k];
        if (std::sqrt(next) > eps)
            break;
        tail2 = next;
        r     = k;
        tail  = std::sqrt(tail2);
    }
    rep.r         = r;
    rep.tail_norm = tail;
    return rep;
}

EpsRankReport eps_rank(const ComplexMatrix& A, double eps)
{
    if (!(eps > 0.0))
        throw Error("eps_rank: threshold must be positive");
    return eps_rank_from_spectrum(svd(A).sigma, eps);
}

ComplexMatrix pseudoinverse(const ComplexMatrix& A)
{
    const auto  f      = svd(A);
    const double cutoff = static_cast<double>(std::max(A.rows(), A.cols())) *
                          std::numeric_limits<double>::epsilon() *
                          (f.sigma.size() > 0 ? f.sigma[0] : 0.0);

    RealVector inv = RealVector::Zero(f.sigma.size());
    for (Index i = 0; i < f.sigma.size(); ++i)
        if (f.sigma[i] > cutoff)
            inv[i] = 1.0 / f.sigma[i];
    return f.V * inv.cast<Complex>().asDiagonal() * f.U.adjoint();
}

double two_norm(const ComplexMatrix& A)
{
    if (A.size() == 0)
        return 0.0;
    return svd(A).sigma[0];
}

void write_matrix(std::ostream& out, const ComplexMatrix& A)
{
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << A.rows() << ' ' << A.cols() << '\n';
    s << std::setprecision(17);
    for (Index i = 0; i < A.rows(); ++i)
        for (Index j = 0; j < A.cols(); ++j)
            s << A(i, j).real() << ' ' << A(i, j).imag() << '\n';
    out << s.str();
}

ComplexMatrix read_matrix(std::istream& in)
{
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::istringstream s(text);
    s.imbue(std::locale::classic());

    Index rows = 0, cols = 0;
    if (!(s >> rows >> cols) || rows < 0 || cols < 0)
        throw Error("read_matrix: malformed header");

    ComplexMatrix A(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) {
            double re = 0, im = 0;
            if (!(s >> re >> im))
                throw Error("read_matrix: truncated data at entry (" + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
            A(i, j) = {re, im};
        }
    return A;
}

}  // namespace az
