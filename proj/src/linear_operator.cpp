#include "az/linear_operator.hpp"

#include <cmath>

#include "az/transforms.hpp"

namespace az {

namespace {

void check_length(const char* what, const std::string& name, Index expected, Index got)
{
    if (expected != got)
        throw ShapeError(std::string(what) + (name.empty() ? "" : " [" + name + "]") + ": expected length " +
                         std::to_string(expected) + ", got " + std::to_string(got));
}

std::string dims(const LinearOperator& A) { return shape_string(A.rows(), A.cols()); }

}  // namespace

LinearOperator::LinearOperator(Index rows, Index cols, ApplyFn apply, ApplyFn adjoint_apply,
                               double cost_hint, std::string name)
    : rows_(rows)
    , cols_(cols)
    , apply_(std::move(apply))
    , adjoint_(std::move(adjoint_apply))
    , cost_(cost_hint)
    , name_(std::move(name))
{
    if (rows < 0 || cols < 0)
        throw ShapeError("LinearOperator: negative shape " + shape_string(rows, cols));
    if (!apply_ || !adjoint_)
        throw Error("LinearOperator: both apply and adjoint_apply are required");
}

ComplexVector LinearOperator::apply(const ComplexVector& x) const
{
    check_length("apply", name_, cols_, x.size());
    ComplexVector y = apply_(x);
    check_length("apply result", name_, rows_, y.size());
    return y;
}

ComplexVector LinearOperator::adjoint_apply(const ComplexVector& y) const
{
    check_length("adjoint_apply", name_, rows_, y.size());
    ComplexVector x = adjoint_(y);
    check_length("adjoint_apply result", name_, cols_, x.size());
    return x;
}

ComplexMatrix LinearOperator::apply(const ComplexMatrix& X) const
{
    if (X.rows() != cols_)
        throw ShapeError("apply: operator " + shape_string(rows_, cols_) + " applied to block " +
                         shape_string(X.rows(), X.cols()));
    ComplexMatrix Y(rows_, X.cols());
    for (Index j = 0; j < X.cols(); ++j)
        Y.col(j) = apply(ComplexVector(X.col(j)));
    return Y;
}

ComplexMatrix LinearOperator::adjoint_apply(const ComplexMatrix& Y) const
{
    if (Y.rows() != rows_)
        throw ShapeError("adjoint_apply: operator " + shape_string(rows_, cols_) + " applied to block " +
                         shape_string(Y.rows(), Y.cols()));
    ComplexMatrix X(cols_, Y.cols());
    for (Index j = 0; j < Y.cols(); ++j)
        X.col(j) = adjoint_apply(ComplexVector(Y.col(j)));
    return X;
}

LinearOperator LinearOperator::adjoint() const
{
    return LinearOperator(cols_, rows_, adjoint_, apply_, cost_, name_.empty() ? "" : name_ + "^*");
}

LinearOperator from_dense(ComplexMatrix A)
{
    auto         M    = std::make_shared<const ComplexMatrix>(std::move(A));
    const double cost = 8.0 * static_cast<double>(M->rows()) * static_cast<double>(M->cols());
    return LinearOperator(
        M->rows(), M->cols(), [M](const ComplexVector& x) -> ComplexVector { return *M * x; },
        [M](const ComplexVector& y) -> ComplexVector { return M->adjoint() * y; }, cost, "dense");
}

ComplexMatrix materialize(const LinearOperator& op, Index max_cols)
{
    if (op.cols() > max_cols)
        throw ShapeError("materialize: operator has " + std::to_string(op.cols()) +
                         " columns, above the cap of " + std::to_string(max_cols) + "; reduce N");

    ComplexMatrix A(op.rows(), op.cols());
    ComplexVector e = ComplexVector::Zero(op.cols());
    for (Index j = 0; j < op.cols(); ++j) {
        e[j]     = 1.0;
        A.col(j) = op.apply(e);
        e[j]     = 0.0;
    }
    return A;
}

LinearOperator identity(Index n)
{
    auto id = [](const ComplexVector& x) -> ComplexVector { return x; };
    return LinearOperator(n, n, id, id, 0.0, "I");
}

LinearOperator zero(Index rows, Index cols)
{
    return LinearOperator(
        rows, cols, [rows](const ComplexVector&) -> ComplexVector { return ComplexVector::Zero(rows); },
        [cols](const ComplexVector&) -> ComplexVector { return ComplexVector::Zero(cols); }, 0.0, "0");
}

LinearOperator scale(Complex c, const LinearOperator& A)
{
    return LinearOperator(
        A.rows(), A.cols(), [A, c](const ComplexVector& x) -> ComplexVector { return c * A.apply(x); },
        [A, c](const ComplexVector& y) -> ComplexVector { return std::conj(c) * A.adjoint_apply(y); },
        A.cost_hint() + 6.0 * static_cast<double>(A.rows()), A.name());
}

LinearOperator diagonal(const ComplexVector& d)
{
    auto D = std::make_shared<const ComplexVector>(d);
    return LinearOperator(
        d.size(), d.size(), [D](const ComplexVector& x) -> ComplexVector { return D->cwiseProduct(x); },
        [D](const ComplexVector& y) -> ComplexVector { return D->conjugate().cwiseProduct(y); },
        6.0 * static_cast<double>(d.size()), "diag");
}

LinearOperator diagonal(const RealVector& d) { return diagonal(ComplexVector(d.cast<Complex>())); }

LinearOperator compose(const LinearOperator& B, const LinearOperator& A)
{
    if (B.cols() != A.rows())
        throw ShapeError("compose: " + dims(B) + " after " + dims(A));
    return LinearOperator(
        B.rows(), A.cols(), [A, B](const ComplexVector& x) -> ComplexVector { return B.apply(A.apply(x)); },
        [A, B](const ComplexVector& y) -> ComplexVector { return A.adjoint_apply(B.adjoint_apply(y)); },
        A.cost_hint() + B.cost_hint());
}

LinearOperator compose(const std::vector<LinearOperator>& chain)
{
    if (chain.empty())
        throw Error("compose: empty chain");
    LinearOperator op = chain.back();
    for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it)
        op = compose(*it, op);
    return op;
}

LinearOperator add(const LinearOperator& A, const LinearOperator& B)
{
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw ShapeError("add: " + dims(A) + " and " + dims(B));
    return LinearOperator(
        A.rows(), A.cols(), [A, B](const ComplexVector& x) -> ComplexVector { return A.apply(x) + B.apply(x); },
        [A, B](const ComplexVector& y) -> ComplexVector { return A.adjoint_apply(y) + B.adjoint_apply(y); },
        A.cost_hint() + B.cost_hint());
}

LinearOperator subtract(const LinearOperator& A, const LinearOperator& B)
{
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw ShapeError("subtract: " + dims(A) + " and " + dims(B));
    return LinearOperator(
        A.rows(), A.cols(), [A, B](const ComplexVector& x) -> ComplexVector { return A.apply(x) - B.apply(x); },
        [A, B](const ComplexVector& y) -> ComplexVector { return A.adjoint_apply(y) - B.adjoint_apply(y); },
        A.cost_hint() + B.cost_hint());
}

LinearOperator hstack(const LinearOperator& A1, const LinearOperator& A2)
{
    if (A1.rows() != A2.rows())
        throw ShapeError("hstack: row mismatch " + dims(A1) + " and " + dims(A2));
    const Index n1 = A1.cols();
    const Index n2 = A2.cols();
    return LinearOperator(
        A1.rows(), n1 + n2,
        [A1, A2, n1, n2](const ComplexVector& x) -> ComplexVector {
            return A1.apply(ComplexVector(x.head(n1))) + A2.apply(ComplexVector(x.tail(n2)));
        },
        [A1, A2, n1, n2](const ComplexVector& y) -> ComplexVector {
            ComplexVector x(n1 + n2);
            x.head(n1) = A1.adjoint_apply(y);
            x.tail(n2) = A2.adjoint_apply(y);
            return x;
        },
        A1.cost_hint() + A2.cost_hint());
}

namespace {

void check_indices(const char* what, const std::vector<Index>& idx, Index n)
{
    for (Index i : idx)
        if (i < 0 || i >= n)
            throw ShapeError(std::string(what) + ": index " + std::to_string(i) + " outside [0, " +
                             std::to_string(n) + ")");
}

}  // namespace

LinearOperator restriction(std::vector<Index> rows, Index n)
{
    check_indices("restriction", rows, n);
    auto        idx = std::make_shared<const std::vector<Index>>(std::move(rows));
    const Index m   = static_cast<Index>(idx->size());
    return LinearOperator(
        m, n,
        [idx, m](const ComplexVector& x) -> ComplexVector {
            ComplexVector y(m);
            for (Index i = 0; i < m; ++i)
                y[i] = x[(*idx)[static_cast<std::size_t>(i)]];
            return y;
        },
        [idx, m, n](const ComplexVector& y) -> ComplexVector {
            ComplexVector x = ComplexVector::Zero(n);
            for (Index i = 0; i < m; ++i)
                x[(*idx)[static_cast<std::size_t>(i)]] += y[i];
            return x;
        },
        static_cast<double>(m), "restriction");
}

LinearOperator extension(std::vector<Index> cols, Index n)
{
    return restriction(std::move(cols), n).adjoint();
}

LinearOperator dft_operator(Index L)
{
    auto         plan = std::make_shared<const FftPlan>(L);
    const double cost = 5.0 * static_cast<double>(L) * std::log2(std::max<double>(2.0, static_cast<double>(L)));
    return LinearOperator(
        L, L, [plan](const ComplexVector& x) -> ComplexVector { return plan->forward(x); },
        [plan](const ComplexVector& y) -> ComplexVector { return plan->backward(y); }, cost, "dft");
}

LinearOperator az_step1_operator(const LinearOperator& A, const LinearOperator& Z)
{
    if (A.rows() != Z.rows() || A.cols() != Z.cols())
        throw ShapeError("az_step1_operator: A is " + dims(A) + " but Z is " + dims(Z));
    return LinearOperator(
        A.rows(), A.cols(),
        [A, Z](const ComplexVector& x) -> ComplexVector {
            ComplexVector ax = A.apply(x);
            return ax - A.apply(Z.adjoint_apply(ax));
        },
        // (A - A Z^* A)^* = A^* - A^* Z A^*
        [A, Z](const ComplexVector& y) -> ComplexVector {
            ComplexVector ay = A.adjoint_apply(y);
            return ay - A.adjoint_apply(Z.apply(ay));
        },
        2.0 * A.cost_hint() + Z.cost_hint() + 2.0 * static_cast<double>(A.rows()), "A - A Z^* A");
}

}  // namespace az
