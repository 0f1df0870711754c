#pragma once

//
// Builders for (A, Z) pairs coming from frame approximation: Fourier,
// Chebyshev and Legendre extension, weighted sum frames and weighted
// least squares, together with function sampling and error measurement.
//
// Conventions
//   periodic grid       x_l = -1 + 2 l / L, l = 0..L-1 (left end included)
//   Fourier basis       e^{i pi n x}, n in {-(N-1)/2, ..., (N-1)/2}, N odd;
//                       A is a submatrix of the L x L DFT-type matrix, Z = A / L
//   2D                  row-major (l1, l2) with x from l1, y from l2;
//                       coefficients row-major (n1, n2); Z = A / L^2
//   Chebyshev/Legendre  A(m, k) = p_k(x_m), rows are points
//

#include <functional>
#include <string>
#include <vector>

#include "az/az.hpp"
#include "az/transforms.hpp"

namespace az {

struct Interval
{
    double lo = -1.0;
    double hi = 1.0;
};

//
// Either a union of closed intervals in [-1, 1] or a named predicate on
// [-1, 1]^2.
//
class DomainSpec
{
public:
    using Mask = std::function<bool(double, double)>;

    static DomainSpec interval(double lo, double hi);
    static DomainSpec intervals(std::vector<Interval> parts);
    static DomainSpec mask(std::string name, Mask inside, double area_ratio);

    // disk (r = 0.8), punctured-disk (0.2 < r < 0.8), square ([-1/2, 1/2]^2), full
    static DomainSpec named_mask(const std::string& name);

    // parses "[[lo, hi], ...]"
    static DomainSpec from_json(const std::string& text);
    std::string       to_json() const;

    int dimension() const { return dim_; }
    const std::vector<Interval>& parts() const { return parts_; }
    const std::string& name() const { return name_; }

    bool contains(double x, double y = 0.0) const;

    // total length in 1D, fraction of [-1,1]^2 in 2D
    double measure() const;

private:
    DomainSpec() = default;

    int                   dim_ = 1;
    std::vector<Interval> parts_;
    std::string           name_;
    Mask                  inside_;
    double                area_ratio_ = 1.0;
};

using ScalarFunction = std::function<Complex(const Point&)>;
using WeightFunction = std::function<double(const Point&)>;

struct ExtensionGrid
{
    Index              L = 0;
    std::vector<Index> selected;     // grid indices inside the domain, increasing
    Index              N = 0;
    std::vector<Index> frequencies;  // I_N
};

// smallest L >= ceil(2 * oversampling * N) with at least oversampling * N
// selected points; `count(L)` returns the number of points inside
Index choose_grid_size(Index N, double oversampling, const std::function<Index(Index)>& count, Index L_max = 1 << 24);

ExtensionGrid fourier_grid_1d(Index N, const DomainSpec& domain, double oversampling);

AzProblem fourier_extension_1d(Index N, const DomainSpec& domain, double oversampling = 2.0);
AzProblem fourier_extension_1d_on_grid(Index N, const DomainSpec& domain, Index L);

AzProblem fourier_extension_2d(Index n_per_dim, const DomainSpec& mask, double oversampling = 2.0);
AzProblem fourier_extension_2d_on_grid(Index n_per_dim, const DomainSpec& mask, Index L);

// G(n, m) = <phi_n, phi_m>_{L2(Omega)} with phi_n = 2^{-1/2} e^{i pi n x};
// indices n = -floor(N/2), ..., N - 1 - floor(N/2)
ComplexMatrix gram_fourier(Index N, const DomainSpec& domain);

AzProblem chebyshev_extension(Index N, const DomainSpec& domain, double oversampling = 2.0,
                              ChebyshevKind kind = ChebyshevKind::roots);
AzProblem chebyshev_extension_on_grid(Index N, const DomainSpec& domain, Index L, ChebyshevKind kind);

// dense; Z is the matching block of W F D
AzProblem legendre_extension(Index N, const DomainSpec& domain, double oversampling = 2.0);
AzProblem legendre_extension_on_grid(Index N, const DomainSpec& domain, Index L);

// Fourier series e^{2 pi i n x} on [0, 1) sampled at x_m = (m + 1/2) / M;
// Z = A / M solves the unweighted problem exactly (Z^* A = I)
AzProblem fourier_series_lsq(Index N, Index M);

// A = [W1 A_Phi  W2 A_Phi],  Z = [W^+ W1 Z_Phi  W^+ W2 Z_Phi],
// W = diag(|w1|^2 + |w2|^2) evaluated at the base problem's points
AzProblem weighted_sum_frame(const AzProblem& base, const WeightFunction& w1, const WeightFunction& w2);

WeightedAzProblem weighted_lsq(const AzProblem& base, RealVector d, double eps_w);

// x = argmin ||diag(d) (A x - b)||, minimum norm, from the materialized A
ComplexVector weighted_oracle(const AzProblem& base, const RealVector& d, const ComplexVector& b);

ComplexVector sample_function(const ScalarFunction& f, const std::vector<Point>& points);

struct ApproximationError
{
    double max_err = 0.0;
    double l2_err  = 0.0;  // root mean square over the evaluation points
};

// evaluation points `refinement` times finer than the collocation grid,
// restricted to the domain
std::vector<Point> error_grid(const AzProblem& problem, const DomainSpec& domain, int refinement = 4);

ApproximationError eval_error(const AzProblem& problem, const ComplexVector& x, const ScalarFunction& f,
                              const std::vector<Point>& points);

}  // namespace az
