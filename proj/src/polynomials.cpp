#include "az/transforms.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace az {

RealMatrix legendre_eval(Index n, const RealVector& x)
{
    if (n < 0)
        throw Error("legendre_eval: negative degree");

    RealMatrix P(x.size(), n + 1);
    P.col(0).setOnes();
    if (n >= 1)
        P.col(1) = x;
    for (Index k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        P.col(k + 1) = ((2.0 * kk + 1.0) * x.cwiseProduct(P.col(k)) - kk * P.col(k - 1)) / (kk + 1.0);
    }
    return P;
}

namespace {

// P_L(x) and P_{L-1}(x)
std::pair<double, double> legendre_pair(Index L, double x)
{
    double p0 = 1.0, p1 = x;
    if (L == 0)
        return {1.0, 0.0};
    for (Index k = 1; k < L; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk + 1.0) * x * p1 - kk * p0) / (kk + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return {p1, p0};
}

}  // namespace

QuadratureRule gauss_legendre(Index L)
{
    if (L < 1)
        throw Error("gauss_legendre: need at least one node");

    QuadratureRule q{RealVector(L), RealVector(L)};
    const double   dL = static_cast<double>(L);

    // positive roots by Newton, mirrored onto the negative half
    for (Index i = 0; i < (L + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dL + 0.5));
        if (L % 2 == 1 && i == L / 2)
            x = 0.0;

        bool   converged = false;
        double dp        = 0.0;
        for (int it = 0; it < 100; ++it) {
            const auto [p, pm1] = legendre_pair(L, x);
            dp = dL * (x * p - pm1) / (x * x - 1.0);
            const double step = p / dp;
            x -= step;
            if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw Error("gauss_legendre: Newton iteration did not converge for root index " +
                        std::to_string(i) + " of L=" + std::to_string(L));

        const auto [p, pm1] = legendre_pair(L, x);
        dp = dL * (x * p - pm1) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);

        q.nodes[L - 1 - i]   = x;
        q.weights[L - 1 - i] = w;
        q.nodes[i]           = -x;
        q.weights[i]         = w;
    }
    if (L % 2 == 1)
        q.nodes[L / 2] = 0.0;
    return q;
}

RealVector chebyshev_nodes(Index L, ChebyshevKind kind)
{
    if (L < 1 || (kind == ChebyshevKind::extremae && L < 2))
        throw Error("chebyshev_nodes: too few nodes (" + std::to_string(L) + ")");

    RealVector x(L);
    for (Index l = 0; l < L; ++l) {
        // sin form is symmetric and exact at the midpoint
        const double t = kind == ChebyshevKind::roots
                           ? (static_cast<double>(L) - 1.0 - 2.0 * static_cast<double>(l)) / (2.0 * static_cast<double>(L))
                           : (static_cast<double>(L) - 1.0 - 2.0 * static_cast<double>(l)) / (2.0 * static_cast<double>(L - 1));
        x[l] = std::sin(std::numbers::pi * t);
    }
    return x;
}

RealMatrix chebyshev_vandermonde(const RealVector& x, Index n)
{
    RealMatrix T(x.size(), n);
    if (n >= 1)
        T.col(0).setOnes();
    if (n >= 2)
        T.col(1) = x;
    for (Index k = 2; k < n; ++k)
        T.col(k) = 2.0 * x.cwiseProduct(T.col(k - 1)) - T.col(k - 2);
    return T;
}

ChebyshevGrid::ChebyshevGrid(Index L, ChebyshevKind kind)
    : L_(L)
    , kind_(kind)
    , half_(kind == ChebyshevKind::roots ? L : L - 1)
    , delta_(kind == ChebyshevKind::roots ? 0.5 : 0.0)
    , nodes_(chebyshev_nodes(L, kind))
    , weights_(RealVector::Ones(L))
    , plan_(std::make_shared<const FftPlan>(2 * (kind == ChebyshevKind::roots ? L : L - 1)))
{
    if (kind == ChebyshevKind::extremae) {
        weights_[0]     = 0.5;
        weights_[L - 1] = 0.5;
    }
}

double ChebyshevGrid::norm(Index i) const
{
    const double K = static_cast<double>(half_);
    if (i == 0 || (kind_ == ChebyshevKind::extremae && i == L_ - 1))
        return K;
    return K / 2.0;
}

ComplexVector ChebyshevGrid::evaluate(const ComplexVector& c) const
{
    const Index N = c.size();
    if (N > L_)
        throw ShapeError("ChebyshevGrid::evaluate: " + std::to_string(N) + " coefficients on " +
                         std::to_string(L_) + " nodes");

    const Index  twoK = 2 * half_;
    const double K    = static_cast<double>(half_);
    ComplexVector plus  = ComplexVector::Zero(twoK);
    ComplexVector minus = ComplexVector::Zero(twoK);
    for (Index k = 0; k < N; ++k) {
        const Complex phase = std::polar(1.0, std::numbers::pi * static_cast<double>(k) * delta_ / K);
        plus[k]  = c[k] * phase;
        minus[k] = c[k] * std::conj(phase);
    }
    const ComplexVector sp = plan_->backward(plus);
    const ComplexVector sm = plan_->forward(minus);
    return 0.5 * (sp.head(L_) + sm.head(L_));
}

ComplexVector ChebyshevGrid::evaluate_transpose(const ComplexVector& v, Index N) const
{
    if (v.size() != L_)
        throw ShapeError("ChebyshevGrid::evaluate_transpose: expected " + std::to_string(L_) +
                         " values, got " + std::to_string(v.size()));
    if (N > L_)
        throw ShapeError("ChebyshevGrid::evaluate_transpose: N exceeds node count");

    const Index  twoK = 2 * half_;
    const double K    = static_cast<double>(half_);
    ComplexVector pad = ComplexVector::Zero(twoK);
    pad.head(L_)      = v;
    const ComplexVector sp = plan_->backward(pad);
    const ComplexVector sm = plan_->forward(pad);

    ComplexVector a(N);
    for (Index k = 0; k < N; ++k) {
        const Complex phase = std::polar(1.0, std::numbers::pi * static_cast<double>(k) * delta_ / K);
        a[k] = 0.5 * (phase * sp[k] + std::conj(phase) * sm[k]);
    }
    return a;
}

ComplexVector ChebyshevGrid::transform(const ComplexVector& values) const
{
    ComplexVector a = evaluate_transpose(values.cwiseProduct(weights_.cast<Complex>()), L_);
    for (Index k = 0; k < L_; ++k)
        a[k] /= norm(k);
    return a;
}

ComplexVector chebyshev_transform(const ComplexVector& values_at_roots)
{
    return ChebyshevGrid(values_at_roots.size(), ChebyshevKind::roots).transform(values_at_roots);
}

}  // namespace az
