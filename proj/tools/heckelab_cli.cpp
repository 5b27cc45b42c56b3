// heckelab: numerical verification lab for automorphic integrals with
// rational period functions on Hecke groups.
//
// Subcommands: verify-fe, verify-first, verify-second, residues, kernels,
// selfcheck.  Exit 0 when every residual is within tolerance, 2 on a
// tolerance breach, 1 on error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "heckelab/report.hpp"
#include "heckelab/selfcheck.hpp"
#include "heckelab/version.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir = ".";
    double tol = -1.0;
    long max_terms = -1;
    long long seed = -1;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool needs_config) {
    auto* c = cmd->add_option("--config", f.config_path, "path to the JSON run configuration");
    if (needs_config) c->required();
    cmd->add_option("--out", f.out_dir, "output directory for CSV/JSON reports");
    cmd->add_option("--tol", f.tol, "tolerance override");
    cmd->add_option("--max-terms", f.max_terms, "series budget override");
    cmd->add_option("--seed", f.seed, "seed override for randomized checks");
    cmd->add_option("--threads", f.threads, "grid fan-out thread count");
}

int run_with_config(const CommonFlags& f, const std::string& expected_type) {
    auto cfg = heckelab::parse_config_file(f.config_path);
    if (cfg.check.type != expected_type)
        throw heckelab::config_error("config check.type is \"" + cfg.check.type +
                                     "\" but the subcommand expects \"" + expected_type + "\"");
    heckelab::RunOptions opt;
    opt.out_dir = f.out_dir;
    if (f.tol > 0.0) opt.tol_override = f.tol;
    if (f.max_terms > 0) opt.max_terms_override = f.max_terms;
    if (f.seed >= 0) opt.seed_override = static_cast<std::uint64_t>(f.seed);
    opt.threads = f.threads;
    auto outcome = heckelab::run_config(cfg, opt);
    for (const auto& line : outcome.lines) std::cout << line << '\n';
    std::cout << "csv: " << outcome.csv_path << "\njson: " << outcome.json_path << '\n';
    return outcome.exit_code;
}

int run_selfcheck_cmd(long long seed) {
    auto results = heckelab::run_selfcheck(seed >= 0 ? static_cast<std::uint64_t>(seed) : 12345);
    int bad = 0;
    for (const auto& r : results) {
        std::printf("%-42s residual %.3e  tol %.1e  %s\n", r.name.c_str(), r.residual, r.tol,
                    r.pass ? "PASS" : "FAIL");
        if (!r.pass) ++bad;
    }
    std::printf("selfcheck: %zu checks, %d failed\n", results.size(), bad);
    return bad == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"automorphic-integral verification lab"};
    app.set_version_flag("--version", heckelab::heckelab_version());
    app.require_subcommand(1);

    CommonFlags fe, first, second, residues, kernels, self;
    auto* c_fe = app.add_subcommand("verify-fe", "functional-equation residual on a grid");
    add_common(c_fe, fe, true);
    auto* c_first = app.add_subcommand("verify-first", "Riesz-sum / Bessel-series identity");
    add_common(c_first, first, true);
    auto* c_second = app.add_subcommand("verify-second", "exponential-sum / Tricomi identity");
    add_common(c_second, second, true);
    auto* c_res = app.add_subcommand("residues", "closed-form residues vs contour oracle");
    add_common(c_res, residues, true);
    auto* c_ker = app.add_subcommand("kernels", "proof-kernel closed forms vs quadrature");
    add_common(c_ker, kernels, true);
    auto* c_self = app.add_subcommand("selfcheck", "run every module's invariant suite");
    add_common(c_self, self, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_fe->parsed()) return run_with_config(fe, "fe");
        if (c_first->parsed()) return run_with_config(first, "first");
        if (c_second->parsed()) return run_with_config(second, "second");
        if (c_res->parsed()) return run_with_config(residues, "residues");
        if (c_ker->parsed()) return run_with_config(kernels, "kernels");
        if (c_self->parsed()) return run_selfcheck_cmd(self.seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
