#pragma once

// Seeded generators shared by the unit tests.

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "az/linear_operator.hpp"

namespace az::testing {

class Gen
{
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    Index size(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng_); }
    double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    ComplexMatrix matrix(Index m, Index n)
    {
        ComplexMatrix A(m, n);
        for (Index j = 0; j < n; ++j)
            for (Index i = 0; i < m; ++i)
                A(i, j) = Complex(uniform(), uniform());
        return A;
    }
    ComplexVector vector(Index n) { return matrix(n, 1).col(0); }

    ComplexMatrix unitary_columns(Index m, Index k)
    {
        Eigen::HouseholderQR<ComplexMatrix> qr(matrix(m, k));
        return qr.householderQ() * ComplexMatrix::Identity(m, k);
    }

    // U diag(sigma) V^* with random orthonormal U, V
    ComplexMatrix with_spectrum(Index m, Index n, const RealVector& sigma)
    {
        const Index k = sigma.size();
        return unitary_columns(m, k) * sigma.cast<Complex>().asDiagonal() * unitary_columns(n, k).adjoint();
    }

    std::uint64_t next() { return rng_(); }

private:
    std::mt19937_64 rng_;
};

inline double max_abs(const ComplexMatrix& A)
{
    return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff();
}

// wraps an operator and counts forward and adjoint applications
struct Counted
{
    std::shared_ptr<int> fwd = std::make_shared<int>(0);
    std::shared_ptr<int> adj = std::make_shared<int>(0);
    LinearOperator       op;

    explicit Counted(const LinearOperator& A)
    {
        auto f = fwd, a = adj;
        op     = LinearOperator(
            A.rows(), A.cols(),
            [A, f](const ComplexVector& x) {
                ++*f;
                return A.apply(x);
            },
            [A, a](const ComplexVector& y) {
                ++*a;
                return A.adjoint_apply(y);
            });
    }
};

}  // namespace az::testing
