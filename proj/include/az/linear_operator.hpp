#pragma once

//
// Matrix-free linear operators. Every operator carries both apply and
// adjoint_apply; combinators build new operators without materializing.
//

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "az/dense.hpp"

namespace az {

class LinearOperator
{
public:
    using ApplyFn = std::function<ComplexVector(const ComplexVector&)>;

    LinearOperator() = default;
    LinearOperator(Index rows, Index cols, ApplyFn apply, ApplyFn adjoint_apply,
                   double cost_hint = 0.0, std::string name = {});

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }

    // advisory flop estimate for one apply, used only for reporting
    double cost_hint() const { return cost_; }
    const std::string& name() const { return name_; }

    ComplexVector apply(const ComplexVector& x) const;
    ComplexVector adjoint_apply(const ComplexVector& y) const;

    // column-by-column application to a block
    ComplexMatrix apply(const ComplexMatrix& X) const;
    ComplexMatrix adjoint_apply(const ComplexMatrix& Y) const;

    ComplexVector operator*(const ComplexVector& x) const { return apply(x); }

    LinearOperator adjoint() const;

private:
    Index       rows_ = 0;
    Index       cols_ = 0;
    ApplyFn     apply_;
    ApplyFn     adjoint_;
    double      cost_ = 0.0;
    std::string name_;
};

LinearOperator from_dense(ComplexMatrix A);

inline constexpr Index default_materialize_cap = 4096;

// probes with the basis vectors e_0..e_{N-1}
ComplexMatrix materialize(const LinearOperator& op, Index max_cols = default_materialize_cap);

LinearOperator identity(Index n);
LinearOperator zero(Index rows, Index cols);
LinearOperator scale(Complex c, const LinearOperator& A);
LinearOperator diagonal(const ComplexVector& d);
LinearOperator diagonal(const RealVector& d);

// B A
LinearOperator compose(const LinearOperator& B, const LinearOperator& A);
// left to right: compose({C, B, A}) = C B A
LinearOperator compose(const std::vector<LinearOperator>& chain);

LinearOperator add(const LinearOperator& A, const LinearOperator& B);
LinearOperator subtract(const LinearOperator& A, const LinearOperator& B);

// [A1 A2]
LinearOperator hstack(const LinearOperator& A1, const LinearOperator& A2);

// picks entries `rows` out of a length-n vector; adjoint scatters back
LinearOperator restriction(std::vector<Index> rows, Index n);
// zero-padding from |cols| entries into positions `cols` of a length-n vector
LinearOperator extension(std::vector<Index> cols, Index n);

// unnormalized forward DFT of length L, e^{-2 pi i k l / L}
LinearOperator dft_operator(Index L);

// (I - A Z^*) A = A - A Z^* A: two applies of A, one of Z^*
LinearOperator az_step1_operator(const LinearOperator& A, const LinearOperator& Z);

}  // namespace az
