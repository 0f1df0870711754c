#pragma once

//
// Dense complex linear algebra used throughout the AZ toolkit: thin SVD,
// column-pivoted QR, Gaussian sketches, epsilon rank and the usual norms.
//

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace az {

using Complex       = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector    = Eigen::VectorXd;
using RealMatrix    = Eigen::MatrixXd;
using Index         = Eigen::Index;

// base of all errors raised by the toolkit
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class FactorizationError : public Error
{
public:
    using Error::Error;
};

class ShapeError : public Error
{
public:
    using Error::Error;
};

// "rows x cols", used in diagnostics
std::string shape_string(Index rows, Index cols);

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& m)
{
    return m.allFinite();
}

template <typename Derived>
double frobenius_norm(const Eigen::MatrixBase<Derived>& m)
{
    return m.norm();
}

//
// A = U diag(sigma) V^*, K = min(M, N), sigma nonincreasing.
//
struct SvdFactorization
{
    ComplexMatrix U;
    RealVector    sigma;
    ComplexMatrix V;

    ComplexMatrix reconstruct() const;
};

SvdFactorization svd(const ComplexMatrix& A);

//
// A P = Q R with |R(k,k)| nonincreasing. perm[j] is the column of A that
// was moved to position j.
//
struct PivotedQrFactorization
{
    ComplexMatrix    Q;  // M x K
    ComplexMatrix    R;  // K x N, upper triangular
    std::vector<Index> perm;

    // A P formed from the original matrix
    ComplexMatrix permuted(const ComplexMatrix& A) const;
    RealVector    diagonal_magnitudes() const;
};

PivotedQrFactorization pivoted_qr(const ComplexMatrix& A);

//
// Real standard-normal n x k matrix stored in the complex container.
// Stream: mt19937_64 seeded with `seed`, two 53-bit uniforms per pair of
// normals via Box-Muller (u1 in (0,1], u2 in [0,1)), filled column-major.
// A wider matrix with the same seed extends a narrower one column-wise.
//
ComplexMatrix gaussian_matrix(Index n, Index k, std::uint64_t seed);
RealMatrix    gaussian_real(Index n, Index k, std::uint64_t seed);

struct EpsRankReport
{
    RealVector sigma;
    double     eps       = 0.0;
    Index      r         = 0;
    double     tail_norm = 0.0;
};

// least r with sqrt(sum_{k>=r} sigma_k^2) <= eps
EpsRankReport eps_rank(const ComplexMatrix& A, double eps);
EpsRankReport eps_rank_from_spectrum(const RealVector& sigma, double eps);

ComplexMatrix pseudoinverse(const ComplexMatrix& A);
double        two_norm(const ComplexMatrix& A);

inline ComplexMatrix adjoint(const ComplexMatrix& A) { return A.adjoint(); }
inline ComplexMatrix matmul(const ComplexMatrix& A, const ComplexMatrix& B)
{
    if (A.cols() != B.rows())
        throw ShapeError("matmul: " + shape_string(A.rows(), A.cols()) + " times " +
                         shape_string(B.rows(), B.cols()));
    return A * B;
}
inline ComplexVector matvec(const ComplexMatrix& A, const ComplexVector& x)
{
    if (A.cols() != x.size())
        throw ShapeError("matvec: " + shape_string(A.rows(), A.cols()) + " applied to length " +
                         std::to_string(x.size()));
    return A * x;
}

//
// Text format for golden files: "rows cols" header, then one "re im" pair
// per line in row-major order, 17 significant digits, C locale.
//
void          write_matrix(std::ostream& out, const ComplexMatrix& A);
ComplexMatrix read_matrix(std::istream& in);

}  // namespace az
