#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "config.hpp"
#include "experiments.hpp"
#include "fast_energy.hpp"
#include "minimize.hpp"

namespace py = pybind11;
using namespace nle;

PYBIND11_MODULE(_nle, m) {
    m.doc() = "nonlocal phase-transition energy toolkit";

    py::enum_<Family>(m, "Family")
        .value("pLaplacian", Family::pLaplacian)
        .value("meanCurvature", Family::meanCurvature)
        .value("custom", Family::custom);

    py::class_<KernelParams>(m, "KernelParams")
        .def_static("p_laplacian", &KernelParams::p_laplacian, py::arg("n"),
                    py::arg("s"), py::arg("p"))
        .def_static("mean_curvature", &KernelParams::mean_curvature,
                    py::arg("n"), py::arg("s"))
        .def_readonly("family", &KernelParams::family)
        .def_readonly("n", &KernelParams::n)
        .def_readonly("s", &KernelParams::s)
        .def_readonly("p", &KernelParams::p)
        .def_readonly("c_star", &KernelParams::c_star)
        .def_readonly("c_upper", &KernelParams::c_upper)
        .def_readonly("c1", &KernelParams::c1)
        .def_readonly("c2", &KernelParams::c2)
        .def_readonly("c3", &KernelParams::c3)
        .def("validate", &KernelParams::validate);

    m.def("eval_F", [](const KernelParams& k, double t, std::vector<double> x) {
        return eval_F(k, t, x);
    });
    m.def("eval_dF_dt",
          [](const KernelParams& k, double t, std::vector<double> x) {
              return eval_dF_dt(k, t, x);
          });

    py::class_<AuditItem>(m, "AuditItem")
        .def_readonly("id", &AuditItem::id)
        .def_readonly("pass_", &AuditItem::pass)
        .def_readonly("margin", &AuditItem::margin);

    py::class_<AuditReport>(m, "AuditReport")
        .def_readonly("items", &AuditReport::items)
        .def("all_pass", &AuditReport::all_pass)
        .def("text", &AuditReport::text)
        .def("key_values", &AuditReport::key_values);

    m.def("audit_assumptions",
          [](const KernelParams& k, int samples, uint64_t seed) {
              return audit_assumptions(k, samples, seed);
          },
          py::arg("kernel"), py::arg("samples") = 10000, py::arg("seed") = 1);

    py::class_<Potential>(m, "Potential")
        .def_static("double_well", &Potential::double_well)
        .def_static("none", &Potential::none);
    m.def("eval_W", [](const Potential& p, double u) { return eval_W(p, u); });
    m.def("eval_dW", [](const Potential& p, double u) { return eval_dW(p, u); });

    py::class_<Domain>(m, "Domain")
        .def(py::init([](int n, double R, double R_box, double h) {
                 Domain d{n, R, R_box, h};
                 d.validate();
                 return d;
             }),
             py::arg("n"), py::arg("R"), py::arg("R_box"), py::arg("h"))
        .def_readonly("n", &Domain::n)
        .def_readonly("R", &Domain::R)
        .def_readonly("R_box", &Domain::R_box)
        .def_readonly("h", &Domain::h)
        .def("cells_per_axis", &Domain::cells_per_axis);

    py::class_<GridFunction>(m, "GridFunction")
        .def_readonly("dom", &GridFunction::dom)
        .def_readwrite("values", &GridFunction::values)
        .def("serialize", &GridFunction::serialize)
        .def_static("deserialize", &GridFunction::deserialize)
        .def("interior", &GridFunction::interior)
        .def("node", &GridFunction::node);

    m.def("ramp_state",
          [](const Domain& dom, double ox, double oy) {
              std::array<double, 2> om = {ox, oy};
              return sample_profile(dom, Profile::make_ramp(om),
                                    FarField::ramp(om));
          },
          py::arg("dom"), py::arg("omega_x") = 1.0, py::arg("omega_y") = 0.0);
    m.def("layer_state",
          [](const Domain& dom, double width, double ox, double oy) {
              std::array<double, 2> om = {ox, oy};
              FarField f;
              f.kind = FarFieldKind::profile1d;
              f.omega = om;
              f.profile = FarProfile::tanh_layer;
              f.width = width;
              return sample_profile(dom, Profile::make_layer_tanh(om, width), f);
          },
          py::arg("dom"), py::arg("width") = 1.0, py::arg("omega_x") = 1.0,
          py::arg("omega_y") = 0.0);
    m.def("constant_state", [](const Domain& dom, double c) {
        return sample_profile(dom, Profile::make_constant(c),
                              FarField::constant(c));
    });

    py::enum_<TailPolicy>(m, "TailPolicy")
        .value("analytic_constant", TailPolicy::analytic_constant)
        .value("quadrature_1d", TailPolicy::quadrature_1d)
        .value("none", TailPolicy::none);

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init<>())
        .def_readwrite("tail", &QuadratureConfig::tail);

    py::class_<EnergyBreakdown>(m, "EnergyBreakdown")
        .def_readonly("interior_interior", &EnergyBreakdown::interior_interior)
        .def_readonly("interior_exterior", &EnergyBreakdown::interior_exterior)
        .def_readonly("potential", &EnergyBreakdown::potential)
        .def_readonly("total", &EnergyBreakdown::total);

    m.def("total_energy",
          [](const GridFunction& u, const KernelParams& k, const Potential& pot,
             const QuadratureConfig& q) { return total_energy(u, k, pot, q); },
          py::arg("u"), py::arg("kernel"), py::arg("potential"),
          py::arg("quad") = QuadratureConfig{});
    m.def("gradient",
          [](const GridFunction& u, const KernelParams& k, const Potential& pot,
             const QuadratureConfig& q) { return gradient(u, k, pot, q); },
          py::arg("u"), py::arg("kernel"), py::arg("potential"),
          py::arg("quad") = QuadratureConfig{});

    py::enum_<SolveStatus>(m, "SolveStatus")
        .value("converged", SolveStatus::converged)
        .value("max_iters", SolveStatus::max_iters)
        .value("stalled", SolveStatus::stalled);

    py::class_<MinimizeConfig>(m, "MinimizeConfig")
        .def(py::init<>())
        .def_readwrite("max_iters", &MinimizeConfig::max_iters)
        .def_readwrite("grad_tol", &MinimizeConfig::grad_tol)
        .def_readwrite("step0", &MinimizeConfig::step0);

    py::class_<MinimizeResult>(m, "MinimizeResult")
        .def_readonly("u", &MinimizeResult::u)
        .def_readonly("status", &MinimizeResult::status)
        .def_readonly("energy", &MinimizeResult::energy)
        .def_readonly("evals", &MinimizeResult::evals)
        .def("iterations",
             [](const MinimizeResult& r) { return r.trace.size(); });

    m.def("minimize",
          [](const GridFunction& u0, const KernelParams& k, const Potential& pot,
             const MinimizeConfig& cfg, const QuadratureConfig& q) {
              return minimize(u0, k, pot, cfg, q);
          },
          py::arg("u0"), py::arg("kernel"), py::arg("potential"),
          py::arg("config") = MinimizeConfig{},
          py::arg("quad") = QuadratureConfig{});

    m.def("submodularity_gap",
          [](const GridFunction& u, const GridFunction& v, const KernelParams& k,
             const Potential& pot) {
              return submodularity_gap(u, v, k, pot);
          });

    py::class_<ExperimentReport>(m, "ExperimentReport")
        .def_readonly("R_list", &ExperimentReport::R_list)
        .def_readonly("measured", &ExperimentReport::measured)
        .def_readonly("fitted_exponent", &ExperimentReport::fitted_exponent)
        .def_readonly("predicted_exponent", &ExperimentReport::predicted_exponent)
        .def_readonly("resid_reduction", &ExperimentReport::resid_reduction)
        .def_readonly("pass_", &ExperimentReport::pass)
        .def_readonly("incomplete", &ExperimentReport::incomplete)
        .def("csv", &ExperimentReport::csv)
        .def("verdict", &ExperimentReport::verdict);

    m.def("scaling_experiment",
          [](const KernelParams& k, const Potential& pot,
             std::vector<double> R_list, const QuadratureConfig& q) {
              ScalingOptions opts;
              opts.quad = q;
              return scaling_experiment(k, pot, R_list, opts);
          },
          py::arg("kernel"), py::arg("potential"), py::arg("R_list"),
          py::arg("quad") = QuadratureConfig{});
    m.def("tail_estimate_check",
          [](double s, double p, int n, std::vector<double> R_list) {
              return tail_estimate_check(s, p, n, R_list);
          });

    py::class_<SymmetryResult>(m, "SymmetryResult")
        .def_readonly("theta", &SymmetryResult::theta)
        .def_readonly("residual", &SymmetryResult::residual)
        .def_readonly("t_centers", &SymmetryResult::t_centers)
        .def_readonly("u0", &SymmetryResult::u0);
    m.def("symmetry_diagnostic", &symmetry_diagnostic);
}
