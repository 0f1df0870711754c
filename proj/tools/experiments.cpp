#include "experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

namespace az::cli {

namespace {

constexpr double pi = std::numbers::pi;

const std::set<std::string> problems = {"fourier1d", "fourier2d", "gram",    "chebyshev",
                                        "legendre",  "sumframe",  "weighted"};

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string default_domain(const std::string& problem)
{
    if (problem == "gram")
        return "[[-0.75, -0.25], [0, 0.5]]";
    if (problem == "sumframe")
        return "[[-1, 1]]";
    return "[[-0.5, 0.5]]";
}

std::string default_function(const std::string& problem)
{
    if (problem == "sumframe")
        return "singular";
    if (problem == "weighted")
        return "sawtooth";
    return "exp";
}

bool is_odd_problem(const std::string& problem)
{
    return problem == "fourier1d" || problem == "fourier2d" || problem == "weighted";
}

// Gibbs setup: Fourier series on [0, 1), M = 2N midpoints
constexpr Index gibbs_oversampling = 2;

RealVector gibbs_weights(const AzProblem& p)
{
    RealVector d(p.rows());
    for (Index m = 0; m < p.rows(); ++m) {
        const double t = p.points[static_cast<std::size_t>(m)].x - 0.5;
        d[m]           = t * t;
    }
    return d;
}

double eps_for(const Options& opt, const AzProblem& p)
{
    return opt.eps > 0.0 ? opt.eps : p.default_eps();
}

SolverConfig config_for(const Options& opt, const AzProblem& p)
{
    SolverConfig cfg = SolverConfig::for_rank(opt.rank, eps_for(opt, p), opt.seed);
    cfg.adaptive     = true;
    return cfg;
}

std::vector<double> sorted_singular_values(const ComplexMatrix& A)
{
    const RealVector s = svd(A).sigma;
    return {s.data(), s.data() + s.size()};
}

}  // namespace

// ---------------------------------------------------------------- validation

void validate(const std::string& subcommand, const Options& opt)
{
    if (!problems.count(opt.problem))
        throw Error("unknown problem '" + opt.problem +
                    "' (expected fourier1d, fourier2d, gram, chebyshev, legendre, sumframe or weighted)");
    if (opt.n_list.empty())
        throw Error("no N given (use --n or --n-list)");
    for (Index n : opt.n_list) {
        if (n < 1)
            throw Error("N must be positive, got " + std::to_string(n));
        if (is_odd_problem(opt.problem) && n % 2 == 0)
            throw Error(opt.problem + " needs odd N, got " + std::to_string(n));
    }
    if (!(opt.oversampling >= 1.0))
        throw Error("--oversampling must be at least 1");
    if (opt.eps < 0.0)
        throw Error("--eps must be positive");
    if (opt.rank < 1)
        throw Error("--rank must be positive");
    if (opt.nodes != "roots" && opt.nodes != "extremae")
        throw Error("--nodes must be roots or extremae");
    if (!opt.domain.empty() && opt.problem == "fourier2d")
        throw Error("--domain does not apply to fourier2d (use --mask)");
    if (!opt.domain.empty() && opt.problem == "weighted")
        throw Error("--domain does not apply to weighted (fixed to [0, 1])");
    if (opt.problem == "fourier2d")
        DomainSpec::named_mask(opt.mask);
    else if (!opt.domain.empty())
        DomainSpec::from_json(opt.domain);
    if (!opt.function.empty())
        function_by_name(opt.function, opt.problem == "fourier2d" ? 2 : 1);

    if (subcommand == "singvals" && opt.n_list.size() != 1)
        throw Error("singvals takes a single --n");
    if (subcommand == "rankgrowth" && opt.problem == "gram")
        throw Error("rankgrowth needs an (A, Z) problem; gram has none");
    if (subcommand == "approx" && opt.problem == "gram")
        throw Error("approx needs an (A, Z) problem; gram has none");
    if (subcommand == "approx" && opt.solver != "direct")
        step1_solver_from_string(opt.solver);
    if (subcommand == "timing") {
        if (opt.problem != "fourier1d")
            throw Error("timing runs on fourier1d only");
        if (opt.solver != "az-rand-svd" && opt.solver != "direct")
            throw Error("timing solver must be az-rand-svd or direct");
    }
    if (subcommand == "weighted") {
        if (opt.problem != "weighted")
            throw Error("the weighted subcommand needs --problem weighted");
        if (opt.eps_w_list.empty())
            throw Error("no thresholds given (use --eps-w-list)");
        for (double e : opt.eps_w_list)
            if (!(e >= 0.0))
                throw Error("--eps-w-list entries must be nonnegative");
        if (opt.n_list.size() != 1)
            throw Error("weighted takes a single --n");
    }
}

// ---------------------------------------------------------------- tables

const Cell& Table::at(std::size_t row, const std::string& column) const
{
    const auto it = std::find(columns.begin(), columns.end(), column);
    if (it == columns.end())
        throw Error("table has no column '" + column + "'");
    return rows.at(row).at(static_cast<std::size_t>(it - columns.begin()));
}

double Table::number(std::size_t row, const std::string& column) const
{
    const Cell& c = at(row, column);
    if (const auto* i = std::get_if<std::int64_t>(&c))
        return static_cast<double>(*i);
    if (const auto* d = std::get_if<double>(&c))
        return *d;
    throw Error("column '" + column + "' is not numeric");
}

std::string to_csv(const Table& t)
{
    std::string out;
    for (std::size_t j = 0; j < t.columns.size(); ++j)
        out += (j ? "," : "") + t.columns[j];
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j)
                out += ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::string>)
                        out += v;
                    else if constexpr (std::is_same_v<T, double>)
                        out += format_double(v);
                    else
                        out += std::to_string(v);
                },
                row[j]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json rec = nlohmann::json::object();
        for (std::size_t j = 0; j < row.size(); ++j)
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        rec[t.columns[j]] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
                    else
                        rec[t.columns[j]] = v;
                },
                row[j]);
        arr.push_back(std::move(rec));
    }
    return arr.dump(2) + "\n";
}

void write_atomic(const std::string& path, const std::string& content)
{
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot open " + tmp + " for writing");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw Error("write to " + tmp + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot rename " + tmp + " to " + path + ": " + ec.message());
    }
}

// ---------------------------------------------------------------- problems

ScalarFunction function_by_name(const std::string& name, int dimension)
{
    if (name == "exp") {
        if (dimension == 2)
            return [](const Point& p) { return Complex(std::exp(p.x + p.y)); };
        return [](const Point& p) { return Complex(std::exp(p.x)); };
    }
    if (name == "phi0")
        return [](const Point&) { return Complex(1.0); };
    if (name == "singular")
        return [](const Point& p) {
            return Complex(std::cos(2.0 * pi * p.x) + std::abs(p.x) * std::sin(1.0 + 2.0 * pi * p.x));
        };
    if (name == "sawtooth")
        return [](const Point& p) { return Complex(p.x - std::round(p.x)); };
    throw Error("unknown function '" + name + "' (expected exp, phi0, singular or sawtooth)");
}

BuiltProblem build_problem(const Options& opt, Index n)
{
    const std::string& pr   = opt.problem;
    const int          dim  = pr == "fourier2d" ? 2 : 1;
    const std::string  fnm  = opt.function.empty() ? default_function(pr) : opt.function;
    ScalarFunction     f    = function_by_name(fnm, dim);

    if (pr == "fourier2d") {
        DomainSpec mask = DomainSpec::named_mask(opt.mask);
        return {fourier_extension_2d(n, mask, opt.oversampling), mask, f};
    }
    if (pr == "weighted")
        return {fourier_series_lsq(n, gibbs_oversampling * n), DomainSpec::interval(0.0, 1.0), f};

    DomainSpec dom = DomainSpec::from_json(opt.domain.empty() ? default_domain(pr) : opt.domain);
    const auto kind = opt.nodes == "extremae" ? ChebyshevKind::extremae : ChebyshevKind::roots;
    if (pr == "fourier1d")
        return {fourier_extension_1d(n, dom, opt.oversampling), dom, f};
    if (pr == "chebyshev")
        return {chebyshev_extension(n, dom, opt.oversampling, kind), dom, f};
    if (pr == "legendre")
        return {legendre_extension(n, dom, opt.oversampling), dom, f};
    if (pr == "sumframe") {
        AzProblem base = chebyshev_extension(n, dom, opt.oversampling, kind);
        AzProblem fr   = weighted_sum_frame(
            base, [](const Point&) { return 1.0; }, [](const Point& p) { return std::abs(p.x); });
        return {fr, dom, f};
    }
    throw Error("problem '" + pr + "' has no (A, Z) pair");
}

std::string checksum(const ComplexVector& x)
{
    std::uint64_t h     = 1469598103934665603ULL;
    const auto*   bytes = reinterpret_cast<const unsigned char*>(x.data());
    for (std::size_t i = 0; i < static_cast<std::size_t>(x.size()) * sizeof(Complex); ++i) {
        h ^= bytes[i];
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw Error("loglog_slope: need at least two matching points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

// ---------------------------------------------------------------- subcommands

Table cmd_singvals(const Options& opt)
{
    validate("singvals", opt);
    const Index n = opt.n_list.front();
    Table       t;

    if (opt.problem == "gram") {
        const DomainSpec dom = DomainSpec::from_json(opt.domain.empty() ? default_domain("gram") : opt.domain);
        const auto       s   = sorted_singular_values(gram_fourier(n, dom));
        t.columns            = {"index", "sigma_G"};
        for (std::size_t i = 0; i < s.size(); ++i)
            t.rows.push_back({static_cast<std::int64_t>(i), s[i]});
        return t;
    }

    const BuiltProblem  b  = build_problem(opt, n);
    const ComplexMatrix A  = materialize(b.problem.A);
    const ComplexMatrix Z  = materialize(b.problem.Z);
    const auto          sa = sorted_singular_values(A);
    const auto          sz = sorted_singular_values(Z);
    const auto          se = sorted_singular_values(A - A * (Z.adjoint() * A));

    t.columns = {"index", "sigma_A", "sigma_Zs", "sigma_step1"};
    for (std::size_t i = 0; i < sa.size(); ++i)
        t.rows.push_back({static_cast<std::int64_t>(i), sa[i], sz[i], se[i]});
    return t;
}

Table cmd_rankgrowth(const Options& opt)
{
    validate("rankgrowth", opt);
    Table t;
    t.columns = {"N", "M", "eps", "rank"};
    for (Index n : opt.n_list) {
        const BuiltProblem  b   = build_problem(opt, n);
        const double        eps = eps_for(opt, b.problem);
        const ComplexMatrix S   = materialize(az_step1_operator(b.problem.A, b.problem.Z));
        t.rows.push_back({static_cast<std::int64_t>(b.problem.cols()), static_cast<std::int64_t>(b.problem.rows()),
                          eps, static_cast<std::int64_t>(eps_rank(S, eps).r)});
    }
    return t;
}

Table cmd_timing(const Options& opt)
{
    validate("timing", opt);
    using Clock = std::chrono::steady_clock;
    const bool direct = opt.solver == "direct";

    Table t;
    t.columns = {"N", "seconds", "rank", "exponent", "checksum"};
    double prev_n = 0.0, prev_s = 0.0;
    for (Index n : opt.n_list) {
        const BuiltProblem  b  = build_problem(opt, n);
        const ComplexVector rhs = sample_function(b.f, b.problem.points);

        auto run = [&]() {
            if (direct)
                return direct_lsq(materialize(b.problem.A, std::numeric_limits<Index>::max()), rhs);
            return static_cast<SolveReport>(
                az_solve(b.problem, rhs, Step1Solver::randomized_tsvd, config_for(opt, b.problem)));
        };

        run();  // warmup
        std::vector<double> secs;
        std::string         sum;
        Index               rank = 0;
        for (int k = 0; k < 3; ++k) {
            const auto        t0  = Clock::now();
            const SolveReport rep = run();
            secs.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
            const std::string c = checksum(rep.x);
            if (k > 0 && c != sum)
                throw Error("timing: repeated runs at N = " + std::to_string(n) + " gave different solutions");
            sum  = c;
            rank = rep.rank_used;
        }
        std::sort(secs.begin(), secs.end());
        const double median   = secs[1];
        const double exponent = prev_n > 0.0 ? std::log(median / prev_s) / std::log(static_cast<double>(n) / prev_n)
                                             : std::numeric_limits<double>::quiet_NaN();
        t.rows.push_back({static_cast<std::int64_t>(n), median, static_cast<std::int64_t>(rank), exponent, sum});
        prev_n = static_cast<double>(n);
        prev_s = median;
    }
    return t;
}

Table cmd_approx(const Options& opt)
{
    validate("approx", opt);
    Table t;
    t.columns = {"problem", "N", "M", "solver", "eps", "rank_used", "residual", "max_err", "l2_err", "checksum"};
    for (Index n : opt.n_list) {
        const BuiltProblem  b   = build_problem(opt, n);
        const ComplexVector rhs = sample_function(b.f, b.problem.points);
        const double        eps = eps_for(opt, b.problem);

        SolveReport rep;
        if (opt.solver == "direct")
            rep = direct_lsq(materialize(b.problem.A), rhs);
        else
            rep = az_solve(b.problem, rhs, step1_solver_from_string(opt.solver), config_for(opt, b.problem));

        const auto err = eval_error(b.problem, rep.x, b.f, error_grid(b.problem, b.domain));
        t.rows.push_back({opt.problem, static_cast<std::int64_t>(b.problem.cols()),
                          static_cast<std::int64_t>(b.problem.rows()), opt.solver, eps,
                          static_cast<std::int64_t>(rep.rank_used), rep.residual_norm, err.max_err, err.l2_err,
                          checksum(rep.x)});
    }
    return t;
}

Table cmd_weighted(const Options& opt)
{
    validate("weighted", opt);
    const BuiltProblem  b   = build_problem(opt, opt.n_list.front());
    const AzProblem&    p   = b.problem;
    const RealVector    d   = gibbs_weights(p);
    const ComplexVector rhs = sample_function(b.f, p.points);

    const ComplexVector x_weighted   = weighted_oracle(p, d, rhs);
    const ComplexVector x_unweighted = p.Z.adjoint_apply(rhs);
    const auto          grid         = error_grid(p, b.domain);

    Table t;
    t.columns = {"eps_w", "rank", "dist_weighted", "dist_unweighted", "max_err"};
    for (double eps_w : opt.eps_w_list) {
        const WeightedAzProblem wp(p, d, eps_w);
        const AzProblem         tp  = wp.transformed();
        SolverConfig            cfg = SolverConfig::for_rank(opt.rank, eps_for(opt, tp), opt.seed);
        const Step1Solver       s1  = opt.solver == "direct" ? Step1Solver::tsvd : step1_solver_from_string(opt.solver);
        cfg.adaptive                = true;
        const AzReport rep          = az_weighted_solve(wp, rhs, s1, cfg);
        t.rows.push_back({eps_w, static_cast<std::int64_t>(rep.rank_used), (rep.x - x_weighted).norm(),
                          (rep.x - x_unweighted).norm(), eval_error(p, rep.x, b.f, grid).max_err});
    }
    return t;
}

}  // namespace az::cli
