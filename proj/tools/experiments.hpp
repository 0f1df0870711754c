#pragma once

//
// Experiment drivers behind the azcli subcommands. Each returns a Table
// that the front end writes as CSV or JSON.
//

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "az/frames.hpp"

namespace az::cli {

struct Options
{
    std::string         problem = "fourier1d";
    std::vector<Index>  n_list;              // --n or --n-list
    std::string         domain;              // JSON interval list, empty = problem default
    std::string         mask = "punctured-disk";
    std::string         nodes = "roots";     // chebyshev node kind
    std::string         solver = "rand-svd";
    std::string         function;            // empty = problem default
    double              eps = 0.0;           // 0 = 1e-10 * scale
    std::vector<double> eps_w_list;
    double              oversampling = 2.0;
    Index               rank = 40;           // initial rank guess for sketches
    std::uint64_t       seed = 0;
};

// rejects unknown selectors and builder precondition violations
void validate(const std::string& subcommand, const Options& opt);

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table
{
    std::vector<std::string>       columns;
    std::vector<std::vector<Cell>> rows;

    const Cell& at(std::size_t row, const std::string& column) const;
    double      number(std::size_t row, const std::string& column) const;
};

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

// writes to a temporary sibling, then renames
void write_atomic(const std::string& path, const std::string& content);

struct BuiltProblem
{
    AzProblem      problem;
    DomainSpec     domain;
    ScalarFunction f;
};

BuiltProblem build_problem(const Options& opt, Index n);

ScalarFunction function_by_name(const std::string& name, int dimension);

// hex FNV-1a over the raw bytes of x
std::string checksum(const ComplexVector& x);

// rows (index, sigma_A, sigma_Zs, sigma_step1); gram gives (index, sigma_G)
Table cmd_singvals(const Options& opt);

// rows (N, M, eps, rank)
Table cmd_rankgrowth(const Options& opt);

// rows (N, seconds, rank, exponent, checksum); solver az-rand-svd or direct
Table cmd_timing(const Options& opt);

// one row per N (problem, N, M, solver, eps, rank_used, residual, max_err, l2_err, checksum)
Table cmd_approx(const Options& opt);

// one row per eps_w (eps_w, rank, dist_weighted, dist_unweighted, max_err)
Table cmd_weighted(const Options& opt);

// least-squares slope of log(y) against log(x)
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace az::cli
