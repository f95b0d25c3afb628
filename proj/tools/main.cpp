// fewcoef: evaluate L-functions from few known Dirichlet coefficients.
#include "fewcoef/cli/commands.hpp"
#include "fewcoef/numerics/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>

namespace {

struct Flags {
    std::string instance = "zeta";
    std::string s = "1/2";
    int digits = 30;
    std::string beta, beta_range;
    std::string gauss_c = "0", center = "0";
    long cutoff = 0, symbol_cut = 1000, known_through = -1;
    std::string grouping, free, symbols, show;
    std::string hecke_table, coeffs, cache_dir, out;
    bool curve = false;
};

void add_common(CLI::App* app, Flags& f) {
    app->add_option("--instance", f.instance, "builtin label or functional-equation file");
    app->add_option("--s", f.s, "point, e.g. 1/2+10i");
    app->add_option("--digits", f.digits, "target decimal digits");
    app->add_option("--beta", f.beta, "comma-separated beta values (p/q or decimal)");
    app->add_option("--beta-range", f.beta_range, "a:step:b, inclusive");
    app->add_option("--gauss-c", f.gauss_c, "c in exp(-i beta s + c (s - i t0)^2)");
    app->add_option("--center", f.center, "t0 in the test function");
    app->add_option("--cutoff", f.cutoff, "last Dirichlet index");
    app->add_option("--symbol-cut", f.symbol_cut, "unknowns at or above this only enter the error");
    app->add_option("--known-through", f.known_through, "primes with known data");
    app->add_option("--grouping", f.grouping, "index or symbol");
    app->add_option("--free", f.free, "comma-separated symbols kept as parameters (ls)");
    app->add_option("--symbols", f.symbols, "comma-separated symbols to recover");
    app->add_option("--show", f.show, "indices n whose coefficients eval prints");
    app->add_option("--hecke-table", f.hecke_table, "Hecke eigenvalue table");
    app->add_option("--coeffs", f.coeffs, "known coefficients 'n value' for a functional-equation file");
    app->add_option("--cache-dir", f.cache_dir, "evaluation cache directory");
    app->add_option("--out", f.out, "output file (default stdout)");
    app->add_flag("--curve", f.curve, "error against number of evaluations (ls, lp)");
}

fewcoef::cli::RunConfig to_config(const Flags& f) {
    using namespace fewcoef::cli;
    RunConfig c;
    c.instance = f.instance;
    std::tie(c.s_re, c.s_im) = parse_complex(f.s);
    c.digits = f.digits;
    if (!f.beta.empty() && !f.beta_range.empty()) throw fewcoef::InputError("give --beta or --beta-range, not both");
    c.betas = f.beta_range.empty() ? parse_list(f.beta) : parse_range(f.beta_range);
    c.gauss_c = parse_rational(f.gauss_c);
    c.center = parse_rational(f.center);
    c.cutoff = f.cutoff;
    c.symbol_cut = f.symbol_cut;
    c.known_through = f.known_through;
    if (!f.grouping.empty()) c.grouping = parse_grouping(f.grouping);
    for (long q : parse_index_list(f.free)) c.free.push_back(q);
    for (long q : parse_index_list(f.symbols)) c.symbols.push_back(q);
    if (!f.show.empty()) c.show = parse_index_list(f.show);
    c.hecke_table = f.hecke_table;
    c.coeff_file = f.coeffs;
    c.cache_dir = f.cache_dir;
    c.out = f.out;
    c.curve = f.curve;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    using Command = std::function<void(const fewcoef::cli::RunConfig&, std::ostream&)>;
    const std::map<std::string, std::pair<Command, std::string>> commands = {
        {"eval", {fewcoef::cli::cmd_eval, "one evaluation per beta with its unknown terms"}},
        {"scan", {fewcoef::cli::cmd_scan, "CSV of value and error over a beta grid"}},
        {"ls", {fewcoef::cli::cmd_ls, "least-squares combination of evaluations"}},
        {"lp", {fewcoef::cli::cmd_lp, "linear-programming interval for the value"}},
        {"recover", {fewcoef::cli::cmd_recover, "intervals for unknown coefficients"}},
        {"satake", {fewcoef::cli::cmd_satake, "Satake parameters and local factors"}},
        {"forms", {fewcoef::cli::cmd_forms, "tau(n) and weight 24 eigenform data"}},
    };

    CLI::App app{std::string("fewcoef ") + fewcoef::cli::kVersion + ": L-function values from few coefficients"};
    app.require_subcommand(1);
    app.set_version_flag("--version", fewcoef::cli::kVersion);
    Flags flags;
    std::string chosen;
    for (const auto& [name, entry] : commands) {
        auto* sub = app.add_subcommand(name, entry.second);
        add_common(sub, flags);
        sub->callback([&chosen, name = name] { chosen = name; });
    }
    CLI11_PARSE(app, argc, argv);

    try {
        auto cfg = to_config(flags);
        const auto& run = commands.at(chosen).first;
        if (cfg.out.empty()) {
            run(cfg, std::cout);
        } else {
            std::ofstream out(cfg.out);
            if (!out) throw fewcoef::InputError("cannot write '" + cfg.out + "'");
            run(cfg, out);
        }
    } catch (const fewcoef::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
