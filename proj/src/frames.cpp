#include "az/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace az {

namespace {

constexpr double pi = std::numbers::pi;

// grid points closer than this to an interval end count as inside
constexpr double boundary_slack = 1e-12;

}  // namespace

// ---------------------------------------------------------------- domains

DomainSpec DomainSpec::interval(double lo, double hi)
{
    return intervals({Interval{lo, hi}});
}

DomainSpec DomainSpec::intervals(std::vector<Interval> parts)
{
    if (parts.empty())
        throw Error("DomainSpec: at least one interval is required");
    std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& p = parts[i];
        if (!(p.lo < p.hi) || p.lo < -1.0 || p.hi > 1.0)
            throw Error("DomainSpec: interval [" + std::to_string(p.lo) + ", " + std::to_string(p.hi) +
                        "] is not a proper subinterval of [-1, 1]");
        if (i > 0 && p.lo <= parts[i - 1].hi)
            throw Error("DomainSpec: intervals overlap near " + std::to_string(p.lo));
    }
    DomainSpec d;
    d.dim_   = 1;
    d.parts_ = std::move(parts);
    d.name_  = "intervals";
    return d;
}

DomainSpec DomainSpec::mask(std::string name, Mask inside, double area_ratio)
{
    if (!inside)
        throw Error("DomainSpec: empty mask predicate");
    DomainSpec d;
    d.dim_        = 2;
    d.name_       = std::move(name);
    d.inside_     = std::move(inside);
    d.area_ratio_ = area_ratio;
    return d;
}

DomainSpec DomainSpec::named_mask(const std::string& name)
{
    if (name == "disk")
        return mask(name, [](double x, double y) { return x * x + y * y <= 0.64; }, pi * 0.64 / 4.0);
    if (name == "punctured-disk")
        return mask(name,
                    [](double x, double y) {
                        const double r2 = x * x + y * y;
                        return r2 <= 0.64 && r2 >= 0.04;
                    },
                    pi * (0.64 - 0.04) / 4.0);
    if (name == "square")
        return mask(name, [](double x, double y) { return std::abs(x) <= 0.5 && std::abs(y) <= 0.5; }, 0.25);
    if (name == "full")
        return mask(name, [](double, double) { return true; }, 1.0);
    throw Error("unknown mask '" + name + "' (expected disk, punctured-disk, square or full)");
}

DomainSpec DomainSpec::from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error("domain: invalid JSON: " + std::string(e.what()));
    }
    if (!j.is_array() || j.empty())
        throw Error("domain: expected a nonempty list of [lo, hi] pairs");
    std::vector<Interval> parts;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw Error("domain: each entry must be a [lo, hi] pair of numbers");
        parts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return intervals(std::move(parts));
}

std::string DomainSpec::to_json() const
{
    if (dim_ == 2)
        return nlohmann::json(name_).dump();
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : parts_)
        j.push_back({p.lo, p.hi});
    return j.dump();
}

bool DomainSpec::contains(double x, double y) const
{
    if (dim_ == 2)
        return inside_(x, y);
    for (const auto& p : parts_)
        if (x >= p.lo - boundary_slack && x <= p.hi + boundary_slack)
            return true;
    return false;
}

double DomainSpec::measure() const
{
    if (dim_ == 2)
        return area_ratio_;
    double m = 0.0;
    for (const auto& p : parts_)
        m += p.hi - p.lo;
    return m;
}

// ---------------------------------------------------------------- helpers

namespace {

void require_1d(const DomainSpec& d, const char* what)
{
    if (d.dimension() != 1)
        throw Error(std::string(what) + ": needs a 1D interval domain");
}

void require_odd(Index N, const char* what)
{
    if (N < 1 || N % 2 == 0)
        throw Error(std::string(what) + ": N must be odd and positive, got " + std::to_string(N));
}

std::vector<Index> symmetric_frequencies(Index N)
{
    std::vector<Index> f(static_cast<std::size_t>(N));
    const Index        K = N / 2;
    for (Index i = 0; i < N; ++i)
        f[static_cast<std::size_t>(i)] = i - K;
    return f;
}

Index wrap(Index n, Index L)
{
    return ((n % L) + L) % L;
}

double periodic_node(Index l, Index L)
{
    return -1.0 + 2.0 * static_cast<double>(l) / static_cast<double>(L);
}

std::vector<Index> select_1d(const RealVector& nodes, const DomainSpec& domain)
{
    std::vector<Index> s;
    for (Index l = 0; l < nodes.size(); ++l)
        if (domain.contains(nodes[l]))
            s.push_back(l);
    return s;
}

std::vector<Point> points_1d(const RealVector& nodes, const std::vector<Index>& selected)
{
    std::vector<Point> pts;
    pts.reserve(selected.size());
    for (Index l : selected)
        pts.push_back({nodes[l], 0.0});
    return pts;
}

RealVector periodic_nodes(Index L)
{
    RealVector x(L);
    for (Index l = 0; l < L; ++l)
        x[l] = periodic_node(l, L);
    return x;
}

void require_enough_points(Index M, Index N, const char* what)
{
    if (M < N)
        throw Error(std::string(what) + ": only " + std::to_string(M) + " grid points in the domain for " +
                    std::to_string(N) + " basis functions");
}

// sum_n c_n e^{i factor n x}
SeriesEvaluator exponential_evaluator_1d(std::vector<Index> freqs, double factor)
{
    return [freqs = std::move(freqs), factor](const ComplexVector& c, const std::vector<Point>& pts) {
        ComplexVector v(static_cast<Index>(pts.size()));
        for (std::size_t m = 0; m < pts.size(); ++m) {
            Complex s = 0.0;
            for (std::size_t i = 0; i < freqs.size(); ++i)
                s += c[static_cast<Index>(i)] * std::polar(1.0, factor * static_cast<double>(freqs[i]) * pts[m].x);
            v[static_cast<Index>(m)] = s;
        }
        return v;
    };
}

}  // namespace

Index choose_grid_size(Index N, double oversampling, const std::function<Index(Index)>& count, Index L_max)
{
    if (!(oversampling >= 1.0))
        throw Error("grid selection: oversampling must be at least 1");
    const double need = oversampling * static_cast<double>(N);
    for (Index L = std::max<Index>(1, static_cast<Index>(std::ceil(2.0 * need))); L <= L_max; ++L)
        if (static_cast<double>(count(L)) >= need)
            return L;
    throw Error("grid selection: no grid up to " + std::to_string(L_max) + " puts " + std::to_string(need) +
                " points in the domain");
}

// ---------------------------------------------------------------- Fourier 1D

ExtensionGrid fourier_grid_1d(Index N, const DomainSpec& domain, double oversampling)
{
    require_1d(domain, "fourier_extension_1d");
    require_odd(N, "fourier_extension_1d");
    const Index L = choose_grid_size(N, oversampling, [&](Index L) {
        Index c = 0;
        for (Index l = 0; l < L; ++l)
            c += domain.contains(periodic_node(l, L));
        return c;
    });
    ExtensionGrid g;
    g.L           = L;
    g.N           = N;
    g.selected    = select_1d(periodic_nodes(L), domain);
    g.frequencies = symmetric_frequencies(N);
    return g;
}

AzProblem fourier_extension_1d(Index N, const DomainSpec& domain, double oversampling)
{
    return fourier_extension_1d_on_grid(N, domain, fourier_grid_1d(N, domain, oversampling).L);
}

AzProblem fourier_extension_1d_on_grid(Index N, const DomainSpec& domain, Index L)
{
    require_1d(domain, "fourier_extension_1d");
    require_odd(N, "fourier_extension_1d");
    if (L < N)
        throw Error("fourier_extension_1d: grid size " + std::to_string(L) + " is smaller than N = " +
                    std::to_string(N));

    const RealVector         nodes    = periodic_nodes(L);
    const std::vector<Index> selected = select_1d(nodes, domain);
    const auto               freqs    = symmetric_frequencies(N);
    require_enough_points(static_cast<Index>(selected.size()), N, "fourier_extension_1d");

    // e^{i pi n x_l} = (-1)^n e^{2 pi i n l / L}
    std::vector<Index> bins;
    RealVector         phase(N);
    for (Index i = 0; i < N; ++i) {
        const Index n = freqs[static_cast<std::size_t>(i)];
        bins.push_back(wrap(n, L));
        phase[i] = (n % 2 == 0) ? 1.0 : -1.0;
    }
    // A = R_Omega F^* E P
    const LinearOperator A = compose({restriction(selected, L), dft_operator(L).adjoint(), extension(bins, L),
                                      diagonal(phase)});
    const LinearOperator Z = scale(Complex(1.0 / static_cast<double>(L)), A);

    AzProblem p(A, Z, "fourier1d", std::sqrt(static_cast<double>(L)));
    p.points    = points_1d(nodes, selected);
    p.evaluate  = exponential_evaluator_1d(freqs, pi);
    p.dimension = 1;
    return p;
}

// ---------------------------------------------------------------- Fourier 2D

namespace {

// applies a length-L transform along both axes of a row-major L x L array
void transform_2d(const FftPlan& plan, ComplexVector& a, bool forward)
{
    const Index   L = plan.size();
    ComplexVector line(L);
    for (Index r = 0; r < L; ++r) {
        line = a.segment(r * L, L);
        a.segment(r * L, L) = forward ? plan.forward(line) : plan.backward(line);
    }
    for (Index c = 0; c < L; ++c) {
        for (Index r = 0; r < L; ++r)
            line[r] = a[r * L + c];
        line = forward ? plan.forward(line) : plan.backward(line);
        for (Index r = 0; r < L; ++r)
            a[r * L + c] = line[r];
    }
}

std::vector<Index> select_2d(Index L, const DomainSpec& mask)
{
    std::vector<Index> s;
    for (Index l1 = 0; l1 < L; ++l1)
        for (Index l2 = 0; l2 < L; ++l2)
            if (mask.contains(periodic_node(l1, L), periodic_node(l2, L)))
                s.push_back(l1 * L + l2);
    return s;
}

}  // namespace

AzProblem fourier_extension_2d(Index n_per_dim, const DomainSpec& mask, double oversampling)
{
    if (mask.dimension() != 2)
        throw Error("fourier_extension_2d: needs a 2D mask");
    require_odd(n_per_dim, "fourier_extension_2d");
    const Index  N    = n_per_dim * n_per_dim;
    const double need = oversampling * static_cast<double>(N);
    if (!(oversampling >= 1.0))
        throw Error("fourier_extension_2d: oversampling must be at least 1");
    for (Index L = static_cast<Index>(std::ceil(2.0 * oversampling * static_cast<double>(n_per_dim)));
         L <= 1 << 14; ++L)
        if (static_cast<double>(select_2d(L, mask).size()) >= need)
            return fourier_extension_2d_on_grid(n_per_dim, mask, L);
    throw Error("fourier_extension_2d: mask '" + mask.name() + "' is too small");
}

AzProblem fourier_extension_2d_on_grid(Index n_per_dim, const DomainSpec& mask, Index L)
{
    if (mask.dimension() != 2)
        throw Error("fourier_extension_2d: needs a 2D mask");
    require_odd(n_per_dim, "fourier_extension_2d");
    if (L < n_per_dim)
        throw Error("fourier_extension_2d: grid size " + std::to_string(L) + " is smaller than n = " +
                    std::to_string(n_per_dim));

    const Index              n        = n_per_dim;
    const Index              N        = n * n;
    const std::vector<Index> selected = select_2d(L, mask);
    const Index              M        = static_cast<Index>(selected.size());
    require_enough_points(M, N, "fourier_extension_2d");

    const auto          freqs = symmetric_frequencies(n);
    std::vector<Index>  bins(static_cast<std::size_t>(N));
    std::vector<double> phase(static_cast<std::size_t>(N));
    for (Index i1 = 0; i1 < n; ++i1)
        for (Index i2 = 0; i2 < n; ++i2) {
            const Index n1 = freqs[static_cast<std::size_t>(i1)], n2 = freqs[static_cast<std::size_t>(i2)];
            const auto  k  = static_cast<std::size_t>(i1 * n + i2);
            bins[k]  = wrap(n1, L) * L + wrap(n2, L);
            phase[k] = ((n1 + n2) % 2 == 0) ? 1.0 : -1.0;
        }

    auto plan = std::make_shared<const FftPlan>(L);

    auto apply = [plan, bins, phase, selected, L, N](const ComplexVector& c) {
        ComplexVector grid = ComplexVector::Zero(L * L);
        for (Index k = 0; k < N; ++k)
            grid[bins[static_cast<std::size_t>(k)]] += phase[static_cast<std::size_t>(k)] * c[k];
        transform_2d(*plan, grid, false);
        ComplexVector out(static_cast<Index>(selected.size()));
        for (std::size_t m = 0; m < selected.size(); ++m)
            out[static_cast<Index>(m)] = grid[selected[m]];
        return out;
    };
    auto adjoint = [plan, bins, phase, selected, L, N](const ComplexVector& v) {
        ComplexVector grid = ComplexVector::Zero(L * L);
        for (std::size_t m = 0; m < selected.size(); ++m)
            grid[selected[m]] = v[static_cast<Index>(m)];
        transform_2d(*plan, grid, true);
        ComplexVector out(N);
        for (Index k = 0; k < N; ++k)
            out[k] = phase[static_cast<std::size_t>(k)] * grid[bins[static_cast<std::size_t>(k)]];
        return out;
    };

    const double   L2   = static_cast<double>(L) * static_cast<double>(L);
    const double   cost = 10.0 * L2 * std::log2(std::max<double>(2.0, static_cast<double>(L)));
    LinearOperator A(M, N, apply, adjoint, cost, "fourier2d");
    LinearOperator Z = scale(Complex(1.0 / L2), A);

    AzProblem p(A, Z, "fourier2d", static_cast<double>(L));
    p.dimension = 2;
    p.points.reserve(selected.size());
    for (Index s : selected)
        p.points.push_back({periodic_node(s / L, L), periodic_node(s % L, L)});
    p.evaluate = [freqs, n](const ComplexVector& c, const std::vector<Point>& pts) {
        ComplexVector v(static_cast<Index>(pts.size()));
        ComplexVector ex(n), ey(n);
        for (std::size_t m = 0; m < pts.size(); ++m) {
            for (Index i = 0; i < n; ++i) {
                const double f = pi * static_cast<double>(freqs[static_cast<std::size_t>(i)]);
                ex[i]          = std::polar(1.0, f * pts[m].x);
                ey[i]          = std::polar(1.0, f * pts[m].y);
            }
            Complex s = 0.0;
            for (Index i1 = 0; i1 < n; ++i1)
                s += ex[i1] * (c.segment(i1 * n, n).transpose() * ey)(0);
            v[static_cast<Index>(m)] = s;
        }
        return v;
    };
    return p;
}

// ---------------------------------------------------------------- Gram

ComplexMatrix gram_fourier(Index N, const DomainSpec& domain)
{
    require_1d(domain, "gram_fourier");
    if (N < 1)
        throw Error("gram_fourier: N must be positive");

    // only n - m matters: fill the 2N-1 distinct values once
    std::vector<Complex> g(static_cast<std::size_t>(2 * N - 1));
    for (Index k = -(N - 1); k <= N - 1; ++k) {
        Complex v = 0.0;
        for (const auto& part : domain.parts()) {
            if (k == 0) {
                v += part.hi - part.lo;
            } else {
                const double w = pi * static_cast<double>(k);
                v += (std::polar(1.0, w * part.hi) - std::polar(1.0, w * part.lo)) / Complex(0.0, w);
            }
        }
        g[static_cast<std::size_t>(k + N - 1)] = 0.5 * v;
    }
    ComplexMatrix G(N, N);
    for (Index i = 0; i < N; ++i)
        for (Index j = 0; j < N; ++j)
            G(i, j) = g[static_cast<std::size_t>(i - j + N - 1)];
    return G;
}

// ---------------------------------------------------------------- Chebyshev

namespace {

Index chebyshev_count(Index L, ChebyshevKind kind, const DomainSpec& domain)
{
    if (kind == ChebyshevKind::extremae && L < 2)
        return 0;
    const RealVector x = chebyshev_nodes(L, kind);
    Index            c = 0;
    for (Index l = 0; l < L; ++l)
        c += domain.contains(x[l]);
    return c;
}

SeriesEvaluator chebyshev_evaluator(Index N)
{
    return [N](const ComplexVector& c, const std::vector<Point>& pts) {
        ComplexVector v(static_cast<Index>(pts.size()));
        for (std::size_t m = 0; m < pts.size(); ++m) {
            // Clenshaw
            const double x  = pts[m].x;
            Complex      b1 = 0.0, b2 = 0.0;
            for (Index k = N - 1; k >= 1; --k) {
                const Complex b0 = c[k] + 2.0 * x * b1 - b2;
                b2               = b1;
                b1               = b0;
            }
            v[static_cast<Index>(m)] = c[0] + x * b1 - b2;
        }
        return v;
    };
}

}  // namespace

AzProblem chebyshev_extension(Index N, const DomainSpec& domain, double oversampling, ChebyshevKind kind)
{
    require_1d(domain, "chebyshev_extension");
    if (N < 1)
        throw Error("chebyshev_extension: N must be positive");
    const Index L =
        choose_grid_size(N, oversampling, [&](Index L) { return chebyshev_count(L, kind, domain); });
    return chebyshev_extension_on_grid(N, domain, L, kind);
}

AzProblem chebyshev_extension_on_grid(Index N, const DomainSpec& domain, Index L, ChebyshevKind kind)
{
    require_1d(domain, "chebyshev_extension");
    if (N < 1 || L < N)
        throw Error("chebyshev_extension: need 1 <= N <= L, got N = " + std::to_string(N) + ", L = " +
                    std::to_string(L));

    auto grid = std::make_shared<const ChebyshevGrid>(L, kind);
    const std::vector<Index> selected = select_1d(grid->nodes(), domain);
    require_enough_points(static_cast<Index>(selected.size()), N, "chebyshev_extension");

    RealVector inv_norm(N);
    for (Index k = 0; k < N; ++k)
        inv_norm[k] = 1.0 / grid->norm(k);

    const LinearOperator F(
        L, N, [grid](const ComplexVector& c) { return grid->evaluate(c); },
        [grid, N](const ComplexVector& v) { return grid->evaluate_transpose(v, N); },
        10.0 * static_cast<double>(L) * std::log2(std::max<double>(2.0, static_cast<double>(L))),
        "chebyshev");

    const LinearOperator R = restriction(selected, L);
    const LinearOperator A = compose(R, F);
    const LinearOperator Z = compose({R, diagonal(grid->node_weights()), F, diagonal(inv_norm)});

    AzProblem p(A, Z, kind == ChebyshevKind::roots ? "chebyshev" : "chebyshev-extremae",
                std::sqrt(0.5 * static_cast<double>(L)));
    p.points    = points_1d(grid->nodes(), selected);
    p.evaluate  = chebyshev_evaluator(N);
    p.dimension = 1;
    return p;
}

// ---------------------------------------------------------------- Legendre

AzProblem legendre_extension(Index N, const DomainSpec& domain, double oversampling)
{
    require_1d(domain, "legendre_extension");
    if (N < 1)
        throw Error("legendre_extension: N must be positive");
    const Index L = choose_grid_size(N, oversampling, [&](Index L) {
        return static_cast<Index>(select_1d(gauss_legendre(L).nodes, domain).size());
    });
    return legendre_extension_on_grid(N, domain, L);
}

AzProblem legendre_extension_on_grid(Index N, const DomainSpec& domain, Index L)
{
    require_1d(domain, "legendre_extension");
    if (N < 1 || L < N)
        throw Error("legendre_extension: need 1 <= N <= L, got N = " + std::to_string(N) + ", L = " +
                    std::to_string(L));

    const QuadratureRule     rule     = gauss_legendre(L);
    const std::vector<Index> selected = select_1d(rule.nodes, domain);
    const Index              M        = static_cast<Index>(selected.size());
    require_enough_points(M, N, "legendre_extension");

    const RealMatrix P = legendre_eval(N - 1, rule.nodes);
    ComplexMatrix    A(M, N), Z(M, N);
    for (Index m = 0; m < M; ++m) {
        const Index l = selected[static_cast<std::size_t>(m)];
        for (Index j = 0; j < N; ++j) {
            A(m, j) = P(l, j);
            Z(m, j) = rule.weights[l] * P(l, j) / legendre_norm_squared(j);
        }
    }
    double scale = 0.0;
    for (Index j = 0; j < N; ++j)
        scale = std::max(scale, A.col(j).norm());

    AzProblem p(from_dense(std::move(A)), from_dense(std::move(Z)), "legendre", scale);
    p.points    = points_1d(rule.nodes, selected);
    p.dimension = 1;
    p.evaluate  = [N](const ComplexVector& c, const std::vector<Point>& pts) {
        RealVector x(static_cast<Index>(pts.size()));
        for (std::size_t m = 0; m < pts.size(); ++m)
            x[static_cast<Index>(m)] = pts[m].x;
        return ComplexVector(legendre_eval(N - 1, x).cast<Complex>() * c);
    };
    return p;
}

// ---------------------------------------------------------------- periodic LSQ

AzProblem fourier_series_lsq(Index N, Index M)
{
    require_odd(N, "fourier_series_lsq");
    if (M < N)
        throw Error("fourier_series_lsq: need M >= N, got M = " + std::to_string(M) + ", N = " + std::to_string(N));

    const auto         freqs = symmetric_frequencies(N);
    std::vector<Index> bins;
    ComplexVector      phase(N);
    for (Index i = 0; i < N; ++i) {
        const Index n = freqs[static_cast<std::size_t>(i)];
        bins.push_back(wrap(n, M));
        // e^{2 pi i n (m + 1/2) / M} = e^{i pi n / M} e^{2 pi i n m / M}
        phase[i] = std::polar(1.0, pi * static_cast<double>(n) / static_cast<double>(M));
    }
    const LinearOperator A = compose({dft_operator(M).adjoint(), extension(bins, M), diagonal(phase)});
    const LinearOperator Z = scale(Complex(1.0 / static_cast<double>(M)), A);

    AzProblem p(A, Z, "fourier-series", std::sqrt(static_cast<double>(M)));
    for (Index m = 0; m < M; ++m)
        p.points.push_back({(static_cast<double>(m) + 0.5) / static_cast<double>(M), 0.0});
    p.evaluate  = exponential_evaluator_1d(freqs, 2.0 * pi);
    p.dimension = 1;
    return p;
}

// ---------------------------------------------------------------- weighted frames

AzProblem weighted_sum_frame(const AzProblem& base, const WeightFunction& w1, const WeightFunction& w2)
{
    if (base.points.size() != static_cast<std::size_t>(base.rows()))
        throw Error("weighted_sum_frame: base problem carries no collocation points");
    const Index M = base.rows();
    RealVector  d1(M), d2(M), dw1(M), dw2(M);
    for (Index m = 0; m < M; ++m) {
        const Point& pt = base.points[static_cast<std::size_t>(m)];
        d1[m]           = w1(pt);
        d2[m]           = w2(pt);
        const double w  = d1[m] * d1[m] + d2[m] * d2[m];
        if (!(w > 0.0))
            throw Error("weighted_sum_frame: |w1|^2 + |w2|^2 vanishes at x = " + std::to_string(pt.x));
        dw1[m] = d1[m] / w;
        dw2[m] = d2[m] / w;
    }

    const LinearOperator A = hstack(compose(diagonal(d1), base.A), compose(diagonal(d2), base.A));
    const LinearOperator Z = hstack(compose(diagonal(dw1), base.Z), compose(diagonal(dw2), base.Z));

    AzProblem p(A, Z, base.label + "-sumframe", base.scale * std::max(d1.cwiseAbs().maxCoeff(), d2.cwiseAbs().maxCoeff()));
    p.points    = base.points;
    p.dimension = base.dimension;
    if (base.evaluate) {
        const Index n = base.cols();
        p.evaluate    = [eval = base.evaluate, w1, w2, n](const ComplexVector& c, const std::vector<Point>& pts) {
            const ComplexVector v1 = eval(c.head(n), pts);
            const ComplexVector v2 = eval(c.tail(n), pts);
            ComplexVector       v(v1.size());
            for (std::size_t m = 0; m < pts.size(); ++m) {
                const auto i = static_cast<Index>(m);
                v[i]         = w1(pts[m]) * v1[i] + w2(pts[m]) * v2[i];
            }
            return v;
        };
    }
    return p;
}

WeightedAzProblem weighted_lsq(const AzProblem& base, RealVector d, double eps_w)
{
    return WeightedAzProblem(base, std::move(d), eps_w);
}

ComplexVector weighted_oracle(const AzProblem& base, const RealVector& d, const ComplexVector& b)
{
    if (d.size() != base.rows() || b.size() != base.rows())
        throw ShapeError("weighted_oracle: weights and right-hand side must have " + std::to_string(base.rows()) +
                         " entries");
    const ComplexMatrix WA = d.cast<Complex>().asDiagonal() * materialize(base.A);
    return direct_lsq(WA, d.cast<Complex>().cwiseProduct(b)).x;
}

// ---------------------------------------------------------------- sampling and errors

ComplexVector sample_function(const ScalarFunction& f, const std::vector<Point>& points)
{
    ComplexVector v(static_cast<Index>(points.size()));
    for (std::size_t m = 0; m < points.size(); ++m)
        v[static_cast<Index>(m)] = f(points[m]);
    return v;
}

std::vector<Point> error_grid(const AzProblem& problem, const DomainSpec& domain, int refinement)
{
    if (refinement < 1)
        throw Error("error_grid: refinement must be positive");
    const auto         M = static_cast<Index>(problem.points.size());
    std::vector<Point> pts;

    if (domain.dimension() == 2) {
        // tensor grid over [-1, 1)^2 with `refinement` times the collocation density
        const double frac = std::max(domain.measure(), 1e-3);
        const auto   L    = static_cast<Index>(std::ceil(std::sqrt(static_cast<double>(M) / frac)));
        const Index  K    = refinement * std::max<Index>(L, 2);
        for (Index i = 0; i < K; ++i)
            for (Index j = 0; j < K; ++j) {
                const double x = periodic_node(i, K), y = periodic_node(j, K);
                if (domain.contains(x, y))
                    pts.push_back({x, y});
            }
        return pts;
    }

    const double total = domain.measure();
    const Index  K     = refinement * std::max<Index>(M, 2);
    for (const auto& part : domain.parts()) {
        const auto n = std::max<Index>(2, static_cast<Index>(std::ceil(static_cast<double>(K) * (part.hi - part.lo) / total)));
        for (Index i = 0; i < n; ++i)
            pts.push_back({part.lo + (part.hi - part.lo) * static_cast<double>(i) / static_cast<double>(n - 1), 0.0});
    }
    return pts;
}

ApproximationError eval_error(const AzProblem& problem, const ComplexVector& x, const ScalarFunction& f,
                              const std::vector<Point>& points)
{
    if (!problem.evaluate)
        throw Error("eval_error: problem '" + problem.label + "' has no series evaluator");
    if (x.size() != problem.cols())
        throw ShapeError("eval_error: coefficient vector has length " + std::to_string(x.size()) + ", expected " +
                         std::to_string(problem.cols()));
    if (points.empty())
        throw Error("eval_error: no evaluation points");

    const ComplexVector approx = problem.evaluate(x, points);
    ApproximationError  e;
    double              sum = 0.0;
    for (std::size_t m = 0; m < points.size(); ++m) {
        const double d = std::abs(approx[static_cast<Index>(m)] - f(points[m]));
        e.max_err      = std::max(e.max_err, d);
        sum += d * d;
    }
    e.l2_err = std::sqrt(sum / static_cast<double>(points.size()));
    return e;
}

}  // namespace az
