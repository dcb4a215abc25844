#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "snls/catalog.hpp"
#include "snls/errors.hpp"
#include "snls/field.hpp"
#include "snls/gkm.hpp"
#include "snls/levy.hpp"
#include "snls/solver.hpp"
#include "snls/ssfm.hpp"
#include "snls/stability.hpp"
#include "snls/verify.hpp"

namespace py = pybind11;
using cd = std::complex<double>;

namespace {

snls::CaseParams case_params(cd H, cd b0, std::optional<cd> b1, std::optional<cd> k) {
    return snls::CaseParams{H, b0, b1, k};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rational travelling waves of the NLS with Levy phase noise";

    py::register_exception<snls::DegenerateModelError>(m, "DegenerateModelError", PyExc_ValueError);
    py::register_exception<snls::PoleError>(m, "PoleError", PyExc_ArithmeticError);
    py::register_exception<snls::UnreliableQuadratureError>(m, "UnreliableQuadratureError", PyExc_RuntimeError);
    py::register_exception<snls::StepSizeError>(m, "StepSizeError", PyExc_RuntimeError);
    py::register_exception<snls::FormatError>(m, "FormatError", PyExc_ValueError);

    py::class_<snls::ModelParams>(m, "ModelParams")
        .def(py::init([](double alpha, double upsilon, double rho, double sigma) {
                 return snls::ModelParams{alpha, upsilon, rho, sigma};
             }),
             py::arg("alpha") = 0.0, py::arg("upsilon") = 0.0, py::arg("rho") = 0.0, py::arg("sigma") = 0.0)
        .def_readwrite("alpha", &snls::ModelParams::alpha)
        .def_readwrite("upsilon", &snls::ModelParams::upsilon)
        .def_readwrite("rho", &snls::ModelParams::rho)
        .def_readwrite("sigma", &snls::ModelParams::sigma)
        .def_property_readonly("H", &snls::ModelParams::H);

    py::class_<snls::CoefficientSet>(m, "CoefficientSet")
        .def(py::init([](cd k, std::vector<cd> a, std::vector<cd> b) {
                 snls::CoefficientSet cs;
                 cs.k = k;
                 cs.a = std::move(a);
                 cs.b = std::move(b);
                 cs.validate();
                 return cs;
             }),
             py::arg("k"), py::arg("a"), py::arg("b"))
        .def_readwrite("k", &snls::CoefficientSet::k)
        .def_readwrite("a", &snls::CoefficientSet::a)
        .def_readwrite("b", &snls::CoefficientSet::b)
        .def_readonly("residual", &snls::CoefficientSet::residual)
        .def_readonly("family_tag", &snls::CoefficientSet::family_tag)
        .def("gauge_normalized", &snls::CoefficientSet::gauge_normalized, py::arg("index") = 0)
        .def("with_residual", &snls::CoefficientSet::with_residual, py::arg("H"))
        .def("__repr__", [](const snls::CoefficientSet& cs) {
            return "<CoefficientSet " + (cs.family_tag.empty() ? snls::coefficient_digest(cs) : cs.family_tag) + ">";
        });

    m.def("generate_system", [](unsigned m_deg, unsigned n_deg) {
        std::vector<std::string> rows;
        for (const auto& e : snls::generate_system({m_deg, n_deg})) rows.push_back(e.to_string());
        return rows;
    }, py::arg("m") = 1, py::arg("n") = 2, "Canonical text of each Psi-power equation, Psi^0 first.");

    m.def("compute_balance", &snls::compute_balance, py::arg("deriv_order"), py::arg("nonlin_degree"), py::arg("m"));

    m.def("make_case", [](int id, cd H, cd b0, std::optional<cd> b1, std::optional<cd> k) {
        return snls::make_case(id, case_params(H, b0, b1, k));
    }, py::arg("case_id"), py::arg("H") = cd{1.0}, py::arg("B0") = cd{1.0}, py::arg("B1") = py::none(),
          py::arg("k") = py::none());

    m.def("solve", [](cd H, unsigned starts, std::uint64_t rng_seed, unsigned m_deg) {
        snls::SolveOptions opt;
        opt.H = H;
        opt.starts = starts;
        opt.rng_seed = rng_seed;
        py::gil_scoped_release release;
        return snls::solve_system(snls::AnsatzShape{m_deg, m_deg + 1}, opt).roots;
    }, py::arg("H"), py::arg("starts") = 200, py::arg("rng_seed"), py::arg("m") = 1);

    m.def("coefficient_distance", &snls::coefficient_distance);

    m.def("verify_case", [](int id, cd H, cd b0, std::optional<cd> b1, std::optional<cd> k) {
        const snls::VerificationReport r = snls::verify_case(id, case_params(H, b0, b1, k));
        py::dict d;
        d["label"] = r.label;
        d["system_residual"] = r.system_residual;
        d["ode_residual_u3"] = r.ode_residual_u3;
        d["ode_residual_mod"] = r.ode_residual_mod;
        d["pde_residual_u3"] = r.pde_residual_u3;
        d["pde_residual_mod"] = r.pde_residual_mod;
        d["flags"] = r.flags;
        d["flagged"] = r.flagged;
        d["passed"] = r.passed;
        return d;
    }, py::arg("case_id"), py::arg("H") = cd{1.0}, py::arg("B0") = cd{1.0}, py::arg("B1") = py::none(),
          py::arg("k") = py::none());

    py::class_<snls::LevyPath>(m, "LevyPath")
        .def_static("drift_only", &snls::LevyPath::drift_only, py::arg("drift"), py::arg("horizon"))
        .def("__call__", &snls::LevyPath::evaluate, py::arg("t"))
        .def("evaluate", &snls::LevyPath::evaluate, py::arg("t"))
        .def("left_limit", &snls::LevyPath::left_limit, py::arg("t"))
        .def_property_readonly("horizon", &snls::LevyPath::horizon)
        .def_property_readonly("seed", &snls::LevyPath::seed)
        .def_property_readonly("jump_times", &snls::LevyPath::jump_times)
        .def_property_readonly("jump_sizes", &snls::LevyPath::jump_sizes);

    m.def("sample_path", [](double drift, double diffusion, double rate, double jump_size, double horizon, double step,
                            std::uint64_t seed) {
        snls::LevySpec spec;
        spec.drift = drift;
        spec.diffusion = diffusion;
        spec.jump_rate = rate;
        spec.jump_law = snls::ConstantJumps{jump_size};
        spec.horizon = horizon;
        return snls::sample_path(spec, step, seed);
    }, py::arg("drift") = 0.0, py::arg("diffusion") = 0.0, py::arg("rate") = 0.0, py::arg("jump_size") = 1.0,
          py::arg("horizon") = 1.0, py::arg("step") = 0.01, py::arg("seed"));

    m.def("eval_u", [](const snls::CoefficientSet& cs, cd xi, cd a_const) { return snls::eval_u(cs, a_const, xi); },
          py::arg("cs"), py::arg("xi"), py::arg("A") = cd{1.0});

    m.def("eval_psi", [](const snls::CoefficientSet& cs, const snls::ModelParams& p, const snls::LevyPath& path, double x,
                         double t, cd a_const) {
        return snls::eval_psi(cs, snls::WaveFrame::from(cs, p, a_const), path, x, t);
    }, py::arg("cs"), py::arg("params"), py::arg("path"), py::arg("x"), py::arg("t"), py::arg("A") = cd{1.0});

    m.def("momentum", [](const snls::CoefficientSet& cs, const snls::ModelParams& p, cd a_const, const std::string& convention,
                         double t) {
        snls::StabilityConfig cfg;
        cfg.integrand_convention = snls::parse_convention(convention);
        return snls::momentum(cs, snls::WaveFrame::from(cs, p, a_const), cfg, t).Q;
    }, py::arg("cs"), py::arg("params"), py::arg("A") = cd{1.0}, py::arg("convention") = "modulus", py::arg("t") = 0.0);

    m.def("evolve", [](const std::vector<cd>& initial, const snls::ModelParams& p, const snls::LevyPath& path,
                       double length, double dt, double t_end) {
        snls::SimGrid g;
        g.domain_length = length;
        g.n_modes = initial.size();
        g.dt = dt;
        g.t_end = t_end;
        py::gil_scoped_release release;
        return snls::evolve(initial, p, path, g);
    }, py::arg("initial"), py::arg("params"), py::arg("path"), py::arg("length"), py::arg("dt"), py::arg("t_end"));
}
