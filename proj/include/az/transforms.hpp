#pragma once

//
// Fast transforms and quadrature: arbitrary-length DFT (radix-2 with a
// Bluestein fallback), Chebyshev cosine sums at roots/extremae, Legendre
// recurrences and Gauss-Legendre rules.
//

#include <memory>
#include <vector>

#include "az/dense.hpp"

namespace az {

//
// Precomputed DFT of fixed length. forward uses e^{-2 pi i k l / L} without
// scaling; inverse carries the 1/L. Plans are immutable and may be shared
// between threads.
//
class FftPlan
{
public:
    explicit FftPlan(Index length);

    Index size() const { return length_; }

    ComplexVector forward(const ComplexVector& v) const;
    ComplexVector inverse(const ComplexVector& v) const;

    // sum_k v_k e^{+2 pi i k l / L}, i.e. L * inverse(v)
    ComplexVector backward(const ComplexVector& v) const;

private:
    void transform(Complex* data, bool conj_sign) const;
    void radix2(Complex* data, Index n, const std::vector<Complex>& twiddle, bool conj_sign) const;

    Index length_;
    bool  pow2_;

    // radix-2 twiddles for the working length (L itself or the Bluestein size)
    Index                work_;
    std::vector<Complex> twiddle_;

    // Bluestein: chirp w_k = e^{-i pi k^2 / L} and the transformed filter
    std::vector<Complex> chirp_;
    std::vector<Complex> filter_hat_;
};

ComplexVector dft(const ComplexVector& v);
ComplexVector idft(const ComplexVector& v);

// dense O(L^2) definition, used as a test oracle
ComplexMatrix dft_matrix(Index length);

//
// Legendre polynomials P_0..P_n at the points x by the three-term
// recurrence. Result is x.size() x (n+1).
//
RealMatrix legendre_eval(Index n, const RealVector& x);

struct QuadratureRule
{
    RealVector nodes;    // strictly increasing in (-1, 1)
    RealVector weights;
};

QuadratureRule gauss_legendre(Index L);

// ||P_i||^2 on [-1,1]
inline double legendre_norm_squared(Index i) { return 2.0 / (2.0 * static_cast<double>(i) + 1.0); }

enum class ChebyshevKind { roots, extremae };

//
// Nodes in the order used by the cosine transforms (decreasing in x):
//   roots:    x_l = cos(pi (l + 1/2) / L)
//   extremae: x_l = cos(pi l / (L - 1)),  L >= 2
//
RealVector chebyshev_nodes(Index L, ChebyshevKind kind);

//
// Cosine sums between Chebyshev coefficients and values on one of the two
// node sets, via DFTs of length 2L (roots) or 2(L-1) (extremae).
//
class ChebyshevGrid
{
public:
    ChebyshevGrid(Index L, ChebyshevKind kind);

    Index         size() const { return L_; }
    ChebyshevKind kind() const { return kind_; }
    const RealVector& nodes() const { return nodes_; }

    // v_l = sum_{k<N} c_k T_k(x_l), N = c.size() <= L
    ComplexVector evaluate(const ComplexVector& c) const;
    // a_k = sum_l v_l T_k(x_l), k < N  (transpose of evaluate)
    ComplexVector evaluate_transpose(const ComplexVector& v, Index N) const;

    //
    // Discrete orthogonality sum_l w_l T_i(x_l) T_j(x_l) = h_i delta_ij:
    //   roots:    w_l = 1,                  h_0 = L,     h_i = L/2
    //   extremae: w_l = 1/2 at both ends,   h_0 = h_{L-1} = L-1, else (L-1)/2
    //
    const RealVector& node_weights() const { return weights_; }
    double            norm(Index i) const;

    // values at the L nodes -> L coefficients
    ComplexVector transform(const ComplexVector& values) const;

private:
    Index         L_;
    ChebyshevKind kind_;
    Index         half_;   // K: angles are pi (l + delta) / K
    double        delta_;
    RealVector    nodes_;
    RealVector    weights_;
    std::shared_ptr<const FftPlan> plan_;
};

// values at the L roots -> coefficients c_0..c_{L-1}
ComplexVector chebyshev_transform(const ComplexVector& values_at_roots);

// dense T_k(x_l), x.size() x n
RealMatrix chebyshev_vandermonde(const RealVector& x, Index n);

}  // namespace az
