#include "heckelab/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <thread>

#include "heckelab/version.hpp"

namespace heckelab {

using nlohmann::json;

std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "");
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "");
        out << '\n';
    }
}

namespace {

// index-parallel map keeping deterministic output order
template <typename F>
void parallel_for(std::size_t n, int threads, F&& body) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    for (std::size_t t = 0; t < nt; ++t)
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += nt) body(i);
        });
    for (auto& th : pool) th.join();
}

struct Emitter {
    json sidecar;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

RunOutcome finish(const RunConfig& cfg, const RunOptions& opt, Emitter& em,
                  const std::string& stem, bool breach, std::vector<std::string> lines) {
    std::filesystem::create_directories(opt.out_dir);
    RunOutcome out;
    out.lines = std::move(lines);
    out.csv_path = (std::filesystem::path(opt.out_dir) / (stem + ".csv")).string();
    out.json_path = (std::filesystem::path(opt.out_dir) / (stem + ".json")).string();
    write_csv(out.csv_path, em.header, em.rows);

    em.sidecar["version"] = heckelab_version();
    em.sidecar["config"] = json::parse(cfg.echo);
    em.sidecar["seed"] = cfg.seed;
    std::ofstream js(out.json_path);
    if (!js) throw io_error("cannot open " + out.json_path);
    js << em.sidecar.dump(2) << '\n';
    out.exit_code = breach ? 2 : 0;
    return out;
}

RunOutcome run_fe(const RunConfig& cfg, const RunOptions& opt, double tol) {
    const auto& L = cfg.L;
    const double twok = 2.0 * L.group.k;
    auto poles = all_singular_points(L);
    struct Row {
        double sigma, t;
        cd phi_s, phi_m, r;
        double residual = -1.0;
        bool skipped = false;
    };
    std::vector<Row> grid;
    for (double sg : cfg.check.sigma)
        for (double tt : cfg.check.t) grid.push_back({sg, tt, 0.0, 0.0, 0.0, -1.0, false});

    parallel_for(grid.size(), opt.threads, [&](std::size_t i) {
        Row& row = grid[i];
        cd s(row.sigma, row.t);
        cd sm(twok - row.sigma, -row.t);
        for (double p : poles)
            if (std::abs(s - p) < L.config.pole_exclusion_radius ||
                std::abs(sm - p) < L.config.pole_exclusion_radius) {
                row.skipped = true;
                return;
            }
        row.phi_s = phi_continued(L, s, cfg.budget);
        row.phi_m = phi_continued(L, twok - s, cfg.budget);
        row.r = L.rpf.pole_blocks.empty() ? cd(0.0) : R_of(L, s);
        row.residual = std::abs(row.phi_m - L.i2k() * row.phi_s - row.r) /
                       (1.0 + std::abs(row.phi_s));
    });

    Emitter em;
    em.header = {"sigma", "t",    "phi_s_re", "phi_s_im", "phi_2ks_re",
                 "phi_2ks_im", "R_re", "R_im",     "residual", "skipped"};
    bool breach = false;
    double worst = 0.0;
    int used = 0;
    for (const auto& row : grid) {
        em.rows.push_back({format_sci(row.sigma), format_sci(row.t),
                           format_sci(row.phi_s.real()), format_sci(row.phi_s.imag()),
                           format_sci(row.phi_m.real()), format_sci(row.phi_m.imag()),
                           format_sci(row.r.real()), format_sci(row.r.imag()),
                           format_sci(row.residual), row.skipped ? "1" : "0"});
        if (!row.skipped) {
            ++used;
            worst = std::max(worst, row.residual);
            if (row.residual > tol) breach = true;
        }
    }
    em.sidecar["summary"] = {{"worst_residual", worst}, {"tol", tol}, {"points", used}};
    std::vector<std::string> lines{"verify-fe: worst residual " + format_sci(worst) + " over " +
                                   std::to_string(used) + " grid points (tol " +
                                   format_sci(tol) + ")"};
    return finish(cfg, opt, em, "verify_fe", breach, std::move(lines));
}

RunOutcome run_identity(const RunConfig& cfg, const RunOptions& opt, double tol) {
    const bool first = cfg.check.type == "first";
    IdentityRequest req;
    req.which = first ? IdentityKind::First : IdentityKind::Second;
    req.rho = cfg.check.rho;
    req.truncation = cfg.budget;
    req.truncation.rel_tol = std::min(cfg.budget.rel_tol, tol);
    req.bessel_cap = cfg.check.bessel_cap;
    req.flip_lambda4_i = cfg.check.flip_lambda4_i;
    req.grid = cfg.check.grid;
    req.validate(cfg.L);

    std::vector<IdentityReport> reports(req.grid.size());
    parallel_for(req.grid.size(), opt.threads, [&](std::size_t i) {
        IdentityRequest one = req;
        one.grid = {req.grid[i]};
        reports[i] = identity_report(cfg.L, one).at(0);
    });

    Emitter em;
    if (first)
        em.header = {"x",     "lhs_re", "lhs_im", "L1_re", "L1_im", "L2_re", "L2_im",
                     "L3_re", "L3_im",  "L4_re",  "L4_im", "L5_re", "L5_im", "rhs_re",
                     "rhs_im", "abs_err", "rel_err", "bessel_terms_used"};
    else
        em.header = {"y",           "lhs_re",       "lhs_im",       "a0term_re",
                     "a0term_im",   "resolvent_re", "resolvent_im", "psi1_re",
                     "psi1_im",     "psi2_re",      "psi2_im",      "gammapair_re",
                     "gammapair_im", "extra_re",    "extra_im",     "rhs_re",
                     "rhs_im",      "abs_err",      "rel_err",      "terms_used"};

    bool breach = false;
    double worst = 0.0;
    json diag = json::array();
    for (const auto& r : reports) {
        std::vector<std::string> row{format_sci(r.point), format_sci(r.lhs.real()),
                                     format_sci(r.lhs.imag())};
        for (const auto& [name, v] : r.rhs_terms) {
            (void)name;
            row.push_back(format_sci(v.real()));
            row.push_back(format_sci(v.imag()));
        }
        row.push_back(format_sci(r.rhs_total.real()));
        row.push_back(format_sci(r.rhs_total.imag()));
        row.push_back(format_sci(r.abs_err));
        row.push_back(format_sci(r.rel_err));
        row.push_back(std::to_string(r.terms_used));
        em.rows.push_back(std::move(row));

        json d{{"point", r.point}, {"warnings", r.warnings}};
        if (!r.error.empty()) d["error"] = r.error;
        diag.push_back(d);
        if (!r.error.empty() || r.rel_err > tol) breach = true;
        worst = std::max(worst, r.rel_err);
    }
    em.sidecar["summary"] = {{"worst_rel_err", worst}, {"tol", tol}};
    em.sidecar["diagnostics"] = diag;
    std::vector<std::string> lines{std::string(first ? "verify-first" : "verify-second") +
                                   ": worst rel_err " + format_sci(worst) + " (tol " +
                                   format_sci(tol) + ")"};
    for (const auto& r : reports)
        if (!r.error.empty())
            lines.push_back("  point " + format_sci(r.point) + " error: " + r.error);
    return finish(cfg, opt, em, first ? "verify_first" : "verify_second", breach,
                  std::move(lines));
}

RunOutcome run_residues(const RunConfig& cfg, const RunOptions& opt, double tol) {
    const auto& L = cfg.L;
    auto pts = all_singular_points(L);
    struct Row {
        double s0;
        cd closed, oracle;
        double diff;
    };
    std::vector<Row> rows(pts.size());
    parallel_for(pts.size(), opt.threads, [&](std::size_t i) {
        cd closed = residue_at(L, pts[i]);
        cd oracle = contour_residue_oracle(L, cd(pts[i], 0.0), cfg.check.radius,
                                           cfg.check.points, cfg.budget);
        rows[i] = {pts[i], closed, oracle, std::abs(closed - oracle)};
    });

    Emitter em;
    em.header = {"s0", "closed_re", "closed_im", "oracle_re", "oracle_im", "abs_diff"};
    bool breach = false;
    double worst = 0.0;
    for (const auto& r : rows) {
        em.rows.push_back({format_sci(r.s0), format_sci(r.closed.real()),
                           format_sci(r.closed.imag()), format_sci(r.oracle.real()),
                           format_sci(r.oracle.imag()), format_sci(r.diff)});
        worst = std::max(worst, r.diff);
        if (r.diff > tol) breach = true;
    }
    json sets;
    for (auto [name, which] : {std::pair{"S0", PoleSet::S0}, {"SE0", PoleSet::SE0},
                               {"SH", PoleSet::SH}, {"SB", PoleSet::SB}}) {
        cd v = residue_sum(L, which);
        sets[name] = {v.real(), v.imag()};
    }
    em.sidecar["residue_set_sums"] = sets;
    em.sidecar["summary"] = {{"worst_abs_diff", worst}, {"tol", tol}};
    std::vector<std::string> lines{"residues: worst |closed - oracle| " + format_sci(worst) +
                                   " over " + std::to_string(rows.size()) + " poles (tol " +
                                   format_sci(tol) + ")"};
    return finish(cfg, opt, em, "residues", breach, std::move(lines));
}

RunOutcome run_kernels(const RunConfig& cfg, const RunOptions& opt, double tol) {
    std::vector<KernelCheck> checks(cfg.check.kernels.size());
    parallel_for(cfg.check.kernels.size(), opt.threads, [&](std::size_t i) {
        const auto& ks = cfg.check.kernels[i];
        checks[i] = verify_proof_kernel(cfg.L, ks.name, ks.params, cfg.budget);
    });

    Emitter em;
    em.header = {"kernel", "r",      "alpha",  "rho",    "y",      "x",
                 "closed_re", "closed_im", "quad_re", "quad_im", "rel_err"};
    bool breach = false;
    double worst = 0.0;
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& ks = cfg.check.kernels[i];
        const auto& c = checks[i];
        em.rows.push_back({c.name, std::to_string(ks.params.r), format_sci(ks.params.alpha),
                           std::to_string(ks.params.rho), format_sci(ks.params.y),
                           format_sci(ks.params.x), format_sci(c.closed_form.real()),
                           format_sci(c.closed_form.imag()), format_sci(c.quadrature.real()),
                           format_sci(c.quadrature.imag()), format_sci(c.rel_err)});
        worst = std::max(worst, c.rel_err);
        if (c.rel_err > tol) breach = true;
        lines.push_back("kernel " + c.name + ": rel discrepancy " + format_sci(c.rel_err));
    }
    em.sidecar["summary"] = {{"worst_rel_err", worst}, {"tol", tol}};
    return finish(cfg, opt, em, "kernels", breach, std::move(lines));
}

} // namespace

RunOutcome run_config(const RunConfig& cfg, const RunOptions& opt) {
    double tol = opt.tol_override.value_or(cfg.check.tol);
    RunConfig working = cfg;
    if (opt.max_terms_override) working.budget.max_terms = static_cast<int>(*opt.max_terms_override);
    if (opt.seed_override) working.seed = *opt.seed_override;

    if (cfg.check.type == "fe") return run_fe(working, opt, tol);
    if (cfg.check.type == "first" || cfg.check.type == "second")
        return run_identity(working, opt, tol);
    if (cfg.check.type == "residues") return run_residues(working, opt, tol);
    if (cfg.check.type == "kernels") return run_kernels(working, opt, tol);
    throw config_error("run_config: unsupported check type " + cfg.check.type);
}

} // namespace heckelab
