#include "heckelab/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace heckelab {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::vector<std::string>& allowed,
                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed)
            if (it.key() == k) ok = true;
        if (!ok)
            throw config_error("unknown key \"" + it.key() + "\" in " + where +
                               " (strict mode)");
    }
}

cd parse_complex(const json& j, const std::string& where) {
    if (j.is_number()) return cd(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cd(j[0].get<double>(), j[1].get<double>());
    throw config_error(where + ": complex values are numbers or [re, im] pairs");
}

HeckeGroup parse_group(const json& j) {
    check_keys(j, {"p", "lambda", "weight"}, "group");
    if (!j.contains("weight")) throw config_error("group.weight is required");
    int weight = j.at("weight").get<int>();
    if (weight < 2 || weight % 2 != 0)
        throw config_error("group.weight must be a positive even integer (2k)");
    int k = weight / 2;
    if (j.contains("p")) {
        const auto& pj = j.at("p");
        if (pj.is_string()) {
            if (pj.get<std::string>() != "infinity")
                throw config_error("group.p must be an integer >= 3 or \"infinity\"");
            if (j.contains("lambda") && std::abs(j.at("lambda").get<double>() - 2.0) > 1e-14)
                throw config_error("group.lambda must equal 2 when p = infinity");
            return make_group_infinity(k);
        }
        int p = pj.get<int>();
        if (p < 3) throw config_error("group.p must be >= 3 (violates HeckeGroup.p)");
        HeckeGroup g = make_group(p, k);
        if (j.contains("lambda") && std::abs(j.at("lambda").get<double>() - g.lambda) > 1e-14)
            throw config_error("group.lambda inconsistent with 2cos(pi/p)");
        return g;
    }
    if (!j.contains("lambda"))
        throw config_error("group requires either p or lambda");
    return make_group_lambda(j.at("lambda").get<double>(), k);
}

CoefficientSeries parse_coefficients(const json& j) {
    if (!j.contains("kind")) throw config_error("coefficients.kind is required");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "eisenstein") {
        check_keys(j, {"kind", "weight", "mmax"}, "coefficients");
        std::size_t mmax = j.value("mmax", std::size_t(20000));
        if (mmax > 8000000) throw config_error("coefficients.mmax too large (max 8e6)");
        return coeffs_eisenstein(j.at("weight").get<int>(), mmax);
    }
    if (kind == "delta") {
        check_keys(j, {"kind", "mmax"}, "coefficients");
        std::size_t mmax = j.value("mmax", std::size_t(20000));
        if (mmax > 400000) throw config_error("coefficients.mmax too large for delta (max 4e5)");
        return coeffs_delta(mmax);
    }
    if (kind == "list") {
        check_keys(j, {"kind", "a0", "a", "beta"}, "coefficients");
        cd a0 = j.contains("a0") ? parse_complex(j.at("a0"), "coefficients.a0") : cd(0.0);
        std::vector<cd> a;
        if (j.contains("a"))
            for (const auto& e : j.at("a")) a.push_back(parse_complex(e, "coefficients.a"));
        if (!j.contains("beta")) throw config_error("coefficients.beta is required for lists");
        double beta = j.at("beta").get<double>();
        if (!(beta > 0.0))
            throw config_error("coefficients.beta must be positive (violates CoefficientSeries.beta)");
        return coeffs_list(a0, std::move(a), beta);
    }
    throw config_error("coefficients.kind must be eisenstein, delta, or list");
}

RationalPeriodFunction parse_rpf(const json& j, const HeckeGroup& g) {
    check_keys(j, {"zero_terms", "poles"}, "rpf");
    std::vector<ZeroPoleTerm> zt;
    if (j.contains("zero_terms"))
        for (const auto& e : j.at("zero_terms")) {
            check_keys(e, {"r", "c"}, "rpf.zero_terms[]");
            zt.push_back({e.at("r").get<int>(), parse_complex(e.at("c"), "rpf.zero_terms.c")});
        }
    std::vector<PoleBlock> pb;
    if (j.contains("poles"))
        for (const auto& e : j.at("poles")) {
            check_keys(e, {"alpha", "c"}, "rpf.poles[]");
            PoleBlock b;
            b.alpha = e.at("alpha").get<double>();
            if (b.alpha == 0.0)
                throw config_error("validation: PoleBlock.alpha must be nonzero");
            for (const auto& c : e.at("c"))
                b.coeffs.push_back(parse_complex(c, "rpf.poles.c"));
            pb.push_back(std::move(b));
        }
    return make_rpf(std::move(zt), std::move(pb), g);
}

CheckSpec parse_check(const json& j) {
    if (!j.contains("type")) throw config_error("check.type is required");
    CheckSpec c;
    c.type = j.at("type").get<std::string>();
    if (c.type == "fe") {
        check_keys(j, {"type", "sigma", "t", "tol"}, "check");
        for (const auto& v : j.at("sigma")) c.sigma.push_back(v.get<double>());
        for (const auto& v : j.at("t")) c.t.push_back(v.get<double>());
        c.tol = j.value("tol", 1e-8);
    } else if (c.type == "first" || c.type == "second") {
        check_keys(j, {"type", "rho", "grid", "tol", "bessel_cap", "flip_lambda4_i"}, "check");
        c.rho = j.at("rho").get<int>();
        for (const auto& v : j.at("grid")) c.grid.push_back(v.get<double>());
        c.tol = j.value("tol", c.type == "first" ? 1e-6 : 1e-8);
        c.bessel_cap = j.value("bessel_cap", 100000L);
        c.flip_lambda4_i = j.value("flip_lambda4_i", false);
    } else if (c.type == "residues") {
        check_keys(j, {"type", "tol", "radius", "points"}, "check");
        c.tol = j.value("tol", 1e-7);
        c.radius = j.value("radius", 0.4);
        c.points = j.value("points", 64);
    } else if (c.type == "kernels") {
        check_keys(j, {"type", "tol", "checks"}, "check");
        c.tol = j.value("tol", 1e-6);
        for (const auto& e : j.at("checks")) {
            check_keys(e, {"name", "r", "alpha", "rho", "y", "x", "theta"}, "check.checks[]");
            KernelSpec ks;
            ks.name = e.at("name").get<std::string>();
            ks.params.r = e.value("r", 1);
            ks.params.alpha = e.value("alpha", 1.0);
            ks.params.rho = e.value("rho", 1);
            ks.params.y = e.value("y", 2.0);
            ks.params.x = e.value("x", 2.0);
            ks.params.theta = e.value("theta", 1.0);
            c.kernels.push_back(std::move(ks));
        }
    } else {
        throw config_error("check.type must be fe, first, second, residues, or kernels");
    }
    return c;
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("JSON parse error: ") + e.what());
    }
    check_keys(doc, {"group", "coefficients", "rpf", "check", "budget", "continuation", "seed"},
               "document root");
    if (!doc.contains("group")) throw config_error("group section is required");
    if (!doc.contains("coefficients")) throw config_error("coefficients section is required");
    if (!doc.contains("check")) throw config_error("check section is required");

    HeckeGroup g = parse_group(doc.at("group"));
    CoefficientSeries series = parse_coefficients(doc.at("coefficients"));
    RationalPeriodFunction q =
        doc.contains("rpf") ? parse_rpf(doc.at("rpf"), g) : make_rpf({}, {}, g);

    RunConfig cfg;
    if (doc.contains("budget")) {
        const auto& b = doc.at("budget");
        check_keys(b, {"max_terms", "rel_tol", "abs_floor"}, "budget");
        cfg.budget.max_terms = b.value("max_terms", cfg.budget.max_terms);
        cfg.budget.rel_tol = b.value("rel_tol", cfg.budget.rel_tol);
        cfg.budget.abs_floor = b.value("abs_floor", cfg.budget.abs_floor);
        cfg.budget.validate();
    }

    ContinuationConfig cc = default_config(g, series, q);
    if (doc.contains("continuation")) {
        const auto& c = doc.at("continuation");
        check_keys(c, {"delta", "quad_abs_tol", "quad_y_max", "pole_exclusion", "exact_i2k"},
                   "continuation");
        cc.delta_strip = c.value("delta", cc.delta_strip);
        cc.quad_abs_tol = c.value("quad_abs_tol", cc.quad_abs_tol);
        cc.quad_y_max = c.value("quad_y_max", cc.quad_y_max);
        cc.pole_exclusion_radius = c.value("pole_exclusion", cc.pole_exclusion_radius);
        cc.exact_i2k = c.value("exact_i2k", cc.exact_i2k);
    }
    cfg.L = make_completed(g, std::move(series), std::move(q), cc);
    cfg.check = parse_check(doc.at("check"));
    cfg.seed = doc.value("seed", std::uint64_t(12345));

    // identity preconditions are refused at parse time, naming the inequality
    if (cfg.check.type == "first" || cfg.check.type == "second") {
        IdentityRequest req;
        req.which = cfg.check.type == "first" ? IdentityKind::First : IdentityKind::Second;
        req.rho = cfg.check.rho;
        req.grid = cfg.check.grid;
        req.truncation = cfg.budget;
        req.validate(cfg.L);
    }
    cfg.echo = doc.dump(2);
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace heckelab
