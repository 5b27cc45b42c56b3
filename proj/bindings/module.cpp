// Python bindings exposing the main operations: special functions, group /
// RPF / coefficient constructors, the completed-series continuation, and
// both arithmetical identities.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heckelab/identities.hpp"
#include "heckelab/specialfn.hpp"
#include "heckelab/selfcheck.hpp"
#include "heckelab/version.hpp"

namespace py = pybind11;
using namespace heckelab;

namespace {

RationalPeriodFunction rpf_from_lists(const std::vector<std::pair<int, cd>>& zero_terms,
                                      const std::vector<std::pair<double, std::vector<cd>>>& poles,
                                      const HeckeGroup& g) {
    std::vector<ZeroPoleTerm> zt;
    for (const auto& [r, c] : zero_terms) zt.push_back({r, c});
    std::vector<PoleBlock> pb;
    for (const auto& [alpha, cs] : poles) pb.push_back({alpha, cs});
    return make_rpf(std::move(zt), std::move(pb), g);
}

PoleSet pole_set_of(const std::string& name) {
    if (name == "S0") return PoleSet::S0;
    if (name == "SE0") return PoleSet::SE0;
    if (name == "SH") return PoleSet::SH;
    if (name == "SB") return PoleSet::SB;
    throw domain_error("pole set must be one of S0, SE0, SH, SB");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "automorphic-integral verification lab (C++ core)";
    m.attr("__version__") = heckelab_version();

    py::register_exception<error>(m, "HeckelabError");

    // special functions
    m.def("gamma", [](cd z) { return sf::gamma(z); });
    m.def("beta_fn", [](cd a, cd b) { return sf::beta_fn(a, b); });
    m.def("bessel_j", [](double nu, double t) { return sf::bessel_j(nu, t); });
    m.def("hyp1f1", [](cd a, cd b, cd z) { return sf::hyp1f1(a, b, z); });
    m.def("hyp2f1", [](cd a, cd b, cd c, cd z) { return sf::hyp2f1(a, b, c, z); });
    m.def("tricomi_u", [](cd a, cd b, cd z) { return sf::tricomi_u(a, b, z); });
    m.def("lambda_of", [](py::object p) {
        if (py::isinstance<py::str>(p)) {
            if (p.cast<std::string>() != "infinity")
                throw domain_error("lambda_of: p must be an integer >= 3 or 'infinity'");
            return lambda_of_infinity();
        }
        return lambda_of(p.cast<int>());
    });

    py::class_<HeckeGroup>(m, "HeckeGroup")
        .def_readonly("lambda_", &HeckeGroup::lambda)
        .def_readonly("k", &HeckeGroup::k)
        .def_property_readonly("weight", &HeckeGroup::weight);
    m.def("make_group", [](int p, int k) { return make_group(p, k); });
    m.def("make_group_infinity", &make_group_infinity);
    m.def("make_group_lambda", &make_group_lambda);

    py::class_<CoefficientSeries>(m, "CoefficientSeries")
        .def_readonly("a0", &CoefficientSeries::a0)
        .def_readonly("beta", &CoefficientSeries::beta)
        .def_readonly("label", &CoefficientSeries::label)
        .def_property_readonly("mmax", &CoefficientSeries::mmax)
        .def("a", &CoefficientSeries::a);
    m.def("coeffs_eisenstein", &coeffs_eisenstein);
    m.def("coeffs_delta", &coeffs_delta);
    m.def("coeffs_list", [](cd a0, std::vector<cd> a, double beta) {
        return coeffs_list(a0, std::move(a), beta);
    });

    py::class_<RationalPeriodFunction>(m, "RationalPeriodFunction")
        .def_readonly("warnings", &RationalPeriodFunction::warnings);
    m.def("make_rpf", &rpf_from_lists, py::arg("zero_terms"), py::arg("poles"), py::arg("group"));
    m.def("trivial_rpf", &trivial_rpf);
    m.def("eval_rpf", [](const RationalPeriodFunction& q, const HeckeGroup& g, cd z) {
        return eval_rpf(q, g, z);
    });
    m.def("check_T_relation", &check_T_relation);
    m.def("check_cocycle_relation", [](const RationalPeriodFunction& q, const HeckeGroup& g) {
        return check_cocycle_relation(q, g);
    });

    m.def("eval_F", [](const CoefficientSeries& s, const HeckeGroup& g, cd z) {
        return eval_F(s, g, z);
    });
    m.def("check_modular_relation",
          [](const CoefficientSeries& s, const RationalPeriodFunction& q, const HeckeGroup& g,
             const std::vector<cd>& samples) {
              return check_modular_relation(s, q, g, samples);
          });

    py::class_<CompletedL>(m, "CompletedL")
        .def_property_readonly("delta",
                               [](const CompletedL& L) { return L.config.delta_strip; });
    m.def("make_completed",
          [](const HeckeGroup& g, const CoefficientSeries& s, const RationalPeriodFunction& q) {
              return make_completed(g, s, q);
          });
    m.def("phi_dirichlet", [](const CompletedL& L, cd s) { return phi_dirichlet(L, s); });
    m.def("phi_continued", [](const CompletedL& L, cd s) { return phi_continued(L, s); });
    m.def("fe_residual", [](const CompletedL& L, cd s) { return fe_residual(L, s); });
    m.def("R_of", &R_of);
    m.def("residue_sum",
          [](const CompletedL& L, const std::string& which) {
              return residue_sum(L, pole_set_of(which));
          });
    m.def("contour_residue_oracle", [](const CompletedL& L, cd s0, double radius, int n) {
        return contour_residue_oracle(L, s0, radius, n);
    });

    m.def("riesz_lhs", &riesz_lhs);
    m.def("first_rhs_terms", [](const CompletedL& L, double x, int rho) {
        auto t = first_rhs_terms(L, x, rho);
        py::dict d;
        d["L1"] = t.L1;
        d["L2"] = t.L2;
        d["L3"] = t.L3;
        d["L4"] = t.L4;
        d["L5"] = t.L5;
        d["total"] = t.total();
        d["bessel_terms_used"] = t.bessel_terms_used;
        return d;
    });
    m.def("second_lhs", &second_lhs);
    m.def("second_rhs_terms", [](const CompletedL& L, double y, int rho) {
        auto t = second_rhs_terms(L, y, rho);
        py::dict d;
        d["a0term"] = t.a0term;
        d["resolvent"] = t.resolvent;
        d["psi1"] = t.psi1;
        d["psi2"] = t.psi2;
        d["gammapair"] = t.gammapair;
        d["extra"] = t.extra;
        d["total"] = t.total();
        d["terms_used"] = t.terms_used;
        return d;
    });
    m.def("perron_oracle",
          [](const CompletedL& L, double x, int rho, double sigma, double T) {
              auto r = perron_oracle(L, x, rho, sigma, T);
              return py::make_tuple(r.value, r.trunc_estimate);
          });
    m.def("verify_proof_kernel",
          [](const CompletedL& L, const std::string& sel, int r, double alpha, int rho,
             double y, double x) {
              KernelParams p;
              p.r = r;
              p.alpha = alpha;
              p.rho = rho;
              p.y = y;
              p.x = x;
              auto c = verify_proof_kernel(L, sel, p);
              py::dict d;
              d["name"] = c.name;
              d["closed_form"] = c.closed_form;
              d["quadrature"] = c.quadrature;
              d["rel_err"] = c.rel_err;
              return d;
          },
          py::arg("L"), py::arg("selector"), py::arg("r") = 1, py::arg("alpha") = 1.0,
          py::arg("rho") = 1, py::arg("y") = 2.0, py::arg("x") = 2.0);

    m.def("run_selfcheck", [](std::uint64_t seed) {
        py::list out;
        for (const auto& r : run_selfcheck(seed)) {
            py::dict d;
            d["name"] = r.name;
            d["residual"] = r.residual;
            d["tol"] = r.tol;
            d["pass"] = r.pass;
            out.append(d);
        }
        return out;
    });
}
