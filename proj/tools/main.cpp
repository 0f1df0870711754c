#include <cstdio>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "experiments.hpp"

using namespace az;

namespace {

void add_common(CLI::App* sub, cli::Options& o, std::vector<Index>& n_single, std::string& format, std::string& out)
{
    sub->add_option("--problem", o.problem, "fourier1d | fourier2d | gram | chebyshev | legendre | sumframe | weighted");
    sub->add_option("--n", n_single, "basis size (per dimension for fourier2d)");
    sub->add_option("--n-list", o.n_list, "list of basis sizes")->delimiter(',');
    sub->add_option("--domain", o.domain, "JSON interval list, e.g. [[-0.5,0.5]]");
    sub->add_option("--mask", o.mask, "2D mask: disk | punctured-disk | square");
    sub->add_option("--nodes", o.nodes, "Chebyshev nodes: roots | extremae");
    sub->add_option("--solver", o.solver, "tsvd | tqr | rand-svd | rand-qr | direct | az-rand-svd");
    sub->add_option("--function", o.function, "exp | phi0 | singular | sawtooth");
    sub->add_option("--eps", o.eps, "absolute step-1 threshold (default 1e-10 * scale)");
    sub->add_option("--eps-w-list", o.eps_w_list, "weight thresholds")->delimiter(',');
    sub->add_option("--oversampling", o.oversampling, "points per basis function");
    sub->add_option("--rank", o.rank, "initial rank guess for randomized solvers");
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"AZ algorithm experiments"};
    app.require_subcommand(1);

    cli::Options       opt;
    std::vector<Index> n_single;
    std::string        format = "csv";
    std::string        out;

    using Command = cli::Table (*)(const cli::Options&);
    const std::map<std::string, std::pair<std::string, Command>> commands = {
        {"singvals", {"spectra of A, Z^* and A - A Z^* A", cli::cmd_singvals}},
        {"rankgrowth", {"eps-rank of A - A Z^* A over N", cli::cmd_rankgrowth}},
        {"timing", {"median wall time over N", cli::cmd_timing}},
        {"approx", {"approximation error report", cli::cmd_approx}},
        {"weighted", {"weighted AZ threshold sweep", cli::cmd_weighted}},
    };
    for (const auto& [name, cmd] : commands)
        add_common(app.add_subcommand(name, cmd.first), opt, n_single, format, out);

    CLI11_PARSE(app, argc, argv);

    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "timing" && opt.solver == "rand-svd")
        opt.solver = "az-rand-svd";
    if (name == "weighted" && opt.problem == "fourier1d")
        opt.problem = "weighted";
    opt.n_list.insert(opt.n_list.begin(), n_single.begin(), n_single.end());

    try {
        const cli::Table  t    = commands.at(name).second(opt);
        const std::string text = format == "json" ? cli::to_json(t) : cli::to_csv(t);
        if (out.empty())
            std::cout << text;
        else
            cli::write_atomic(out, text);
    } catch (const std::exception& e) {
        std::cerr << "azcli " << name << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}
