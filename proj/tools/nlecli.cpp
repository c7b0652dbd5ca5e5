#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "energy.hpp"
#include "experiments.hpp"
#include "grid.hpp"
#include "kernels.hpp"
#include "minimize.hpp"
#include "potentials.hpp"
#include "util.hpp"

namespace fs = std::filesystem;
using namespace nle;

namespace {

struct Cli {
    std::string command;
    std::string config_path, out_dir = ".", in_path;
    uint64_t seed = 1;
    int threads = 1;
    // per-parameter overrides; empty / negative means "not given"
    std::string family, potential, rule, tail, summation;
    double s = -1, p = -1, R = -1, R_box = -1, h = -1, h_div = -1,
           box_factor = -1, grad_tol = -99;
    int n = -1, samples = -1, max_iters = -1;
    std::string R_list;
    ConfigFile cfg;
};

// precedence: flag > config > default
double pick(double flag, const ConfigFile& c, const std::string& b,
            const std::string& k, double dflt, double unset = -1) {
    if (flag != unset) return flag;
    return c.get_num(b, k, dflt);
}

int pick_int(int flag, const ConfigFile& c, const std::string& b,
             const std::string& k, int dflt) {
    if (flag != -1) return flag;
    return c.get_int(b, k, dflt);
}

std::string pick_str(const std::string& flag, const ConfigFile& c,
                     const std::string& b, const std::string& k,
                     const std::string& dflt) {
    if (!flag.empty()) return flag;
    return c.get(b, k, dflt);
}

KernelParams kernel_from(const Cli& cli) {
    std::string fam = pick_str(cli.family, cli.cfg, "kernel", "family",
                               "pLaplacian");
    int n = pick_int(cli.n, cli.cfg, "kernel", "n", 1);
    double s = pick(cli.s, cli.cfg, "kernel", "s", 0.5);
    double p = pick(cli.p, cli.cfg, "kernel", "p", 2.0);
    if (fam == "pLaplacian") return KernelParams::p_laplacian(n, s, p);
    if (fam == "meanCurvature") return KernelParams::mean_curvature(n, s);
    throw std::invalid_argument("unknown kernel family: " + fam);
}

Potential potential_from(const Cli& cli) {
    std::string fam = pick_str(cli.potential, cli.cfg, "potential", "family",
                               "doubleWell");
    if (fam == "doubleWell") return Potential::double_well();
    if (fam == "zero" || fam == "none") return Potential::none();
    throw std::invalid_argument("unknown potential family: " + fam);
}

QuadratureConfig quad_from(const Cli& cli) {
    QuadratureConfig q;
    std::string tail = pick_str(cli.tail, cli.cfg, "quadrature", "tail",
                                "analytic_constant");
    if (tail == "analytic_constant") q.tail = TailPolicy::analytic_constant;
    else if (tail == "quadrature_1d") q.tail = TailPolicy::quadrature_1d;
    else if (tail == "none") q.tail = TailPolicy::none;
    else throw std::invalid_argument("unknown tail policy: " + tail);
    std::string sp = cli.cfg.get("quadrature", "self_pair", "exclude");
    if (sp == "exclude") q.self_pair = SelfPairPolicy::exclude;
    else if (sp == "midpoint_correction")
        q.self_pair = SelfPairPolicy::midpoint_correction;
    else throw std::invalid_argument("unknown self_pair policy: " + sp);
    // emitted numbers stay byte-identical run to run: fixed-order reduction
    std::string sum = pick_str(cli.summation, cli.cfg, "quadrature",
                               "summation", "fixed_order");
    if (sum == "fixed_order") q.summation = Summation::fixed_order;
    else if (sum == "compensated") q.summation = Summation::compensated;
    else throw std::invalid_argument("unknown summation policy: " + sum);
    return q;
}

MinimizeConfig solver_from(const Cli& cli) {
    MinimizeConfig mc;
    mc.max_iters = pick_int(cli.max_iters, cli.cfg, "solver", "max_iters",
                            mc.max_iters);
    mc.grad_tol = cli.grad_tol != -99
                      ? cli.grad_tol
                      : cli.cfg.get_num("solver", "grad_tol", mc.grad_tol);
    mc.step0 = cli.cfg.get_num("solver", "step0", mc.step0);
    mc.backtrack_factor =
        cli.cfg.get_num("solver", "backtrack_factor", mc.backtrack_factor);
    mc.armijo_c = cli.cfg.get_num("solver", "armijo_c", mc.armijo_c);
    mc.box_lo = cli.cfg.get_num("solver", "box_lo", mc.box_lo);
    mc.box_hi = cli.cfg.get_num("solver", "box_hi", mc.box_hi);
    mc.use_box = cli.cfg.get("solver", "use_box", "true") != "false";
    return mc;
}

std::vector<double> rlist_from(const Cli& cli,
                               const std::vector<double>& dflt) {
    if (!cli.R_list.empty()) return parse_list(cli.R_list);
    auto v = cli.cfg.get_list("experiment", "R_list");
    return v.empty() ? dflt : v;
}

GridFunction load_grid(const Cli& cli) {
    if (cli.in_path.empty())
        throw std::invalid_argument("this command needs --in GRIDFILE");
    std::ifstream in(cli.in_path);
    if (!in)
        throw std::invalid_argument("cannot open grid file: " + cli.in_path);
    std::ostringstream os;
    os << in.rdbuf();
    return GridFunction::deserialize(os.str());
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
}

int cmd_audit(const Cli& cli) {
    KernelParams k = kernel_from(cli);
    int samples = pick_int(cli.samples, cli.cfg, "experiment", "sample_count",
                           10000);
    AuditReport rep = audit_assumptions(k, samples, cli.seed);
    write_file(fs::path(cli.out_dir) / "audit.txt", rep.text());
    write_file(fs::path(cli.out_dir) / "audit_kv.txt", rep.key_values());
    int passed = 0;
    for (const auto& it : rep.items) passed += it.pass ? 1 : 0;
    std::cout << "audit: " << passed << "/" << rep.items.size() << " pass\n";
    return rep.all_pass() ? 0 : 1;
}

int cmd_energy(const Cli& cli) {
    GridFunction u = load_grid(cli);
    KernelParams k = kernel_from(cli);
    Potential pot = potential_from(cli);
    QuadratureConfig q = quad_from(cli);
    EnergyBreakdown b = total_energy(u, k, pot, q);
    std::ostringstream os;
    os << "R,h,interior_interior,interior_exterior,potential,total\n"
       << b.csv_row(u.dom.R, u.dom.h) << "\n";
    write_file(fs::path(cli.out_dir) / "energy.csv", os.str());
    std::cout << "energy: total=" << format_sig17(b.total) << "\n";
    return 0;
}

int cmd_minimize(const Cli& cli) {
    GridFunction u0 = load_grid(cli);
    KernelParams k = kernel_from(cli);
    Potential pot = potential_from(cli);
    QuadratureConfig q = quad_from(cli);
    MinimizeConfig mc = solver_from(cli);
    MinimizeResult res = minimize(u0, k, pot, mc, q);
    write_file(fs::path(cli.out_dir) / "minimized.grid", res.u.serialize());
    write_file(fs::path(cli.out_dir) / "trace.csv", trace_csv(res.trace));
    const char* st = res.status == SolveStatus::converged ? "converged"
                     : res.status == SolveStatus::stalled ? "stalled"
                                                          : "max_iters";
    std::cout << "minimize: " << st << " energy=" << format_sig17(res.energy)
              << " iters=" << res.trace.size() << "\n";
    return res.status == SolveStatus::stalled ? 1 : 0;
}

int cmd_scaling(const Cli& cli) {
    std::vector<double> Rs = rlist_from(cli, {4, 8, 16, 32});
    if (Rs.size() < 4) {
        std::cerr << "fit requires >= 4 radii\n";
        return 2;
    }
    KernelParams k = kernel_from(cli);
    Potential pot = potential_from(cli);
    ScalingOptions opts;
    opts.quad = quad_from(cli);
    opts.solver = solver_from(cli);
    std::string rule = pick_str(cli.rule, cli.cfg, "experiment", "data_rule",
                                "ramp");
    if (rule == "ramp") opts.rule = DataRule::ramp;
    else if (rule == "layer") opts.rule = DataRule::layer;
    else if (rule == "psi") opts.rule = DataRule::psi_upper;
    else throw std::invalid_argument("unknown data rule: " + rule);
    opts.h_divisor = pick(cli.h_div, cli.cfg, "domain", "h_divisor", 32.0);
    opts.box_factor = pick(cli.box_factor, cli.cfg, "domain", "box_factor", 2.0);
    ExperimentReport rep = scaling_experiment(k, pot, Rs, opts);
    write_file(fs::path(cli.out_dir) / "scaling.csv", rep.csv());
    write_file(fs::path(cli.out_dir) / "scaling_verdict.txt", rep.verdict());
    write_file(fs::path(cli.out_dir) / "scaling_fit.dat", rep.gnuplot());
    std::cout << "scaling: fitted=" << format_sig17(rep.fitted_exponent)
              << " predicted=" << format_sig17(rep.predicted_exponent) << " "
              << (rep.pass && !rep.incomplete ? "PASS" : "FAIL") << "\n";
    return rep.pass && !rep.incomplete ? 0 : 1;
}

int cmd_perturb(const Cli& cli) {
    std::vector<double> Rs = rlist_from(cli, {8, 16, 32, 64});
    int n = pick_int(cli.n, cli.cfg, "kernel", "n", 1);
    if (n != 1)
        throw std::invalid_argument("perturb: only the 1d sweep is wired up");
    double s = pick(cli.s, cli.cfg, "kernel", "s", 0.25);
    double p = pick(cli.p, cli.cfg, "kernel", "p", 2.0);
    KernelParams k = KernelParams::p_laplacian(1, s, p);
    Potential pot = potential_from(cli);
    QuadratureConfig q = quad_from(cli);
    MinimizeConfig mc = solver_from(cli);
    PerturbationReport rep = perturbation_experiment(
        default_perturb_base, standard_bump(), k, pot, Rs, mc, q);
    write_file(fs::path(cli.out_dir) / "perturb.csv", rep.csv());
    write_file(fs::path(cli.out_dir) / "perturb_verdict.txt", rep.verdict());
    std::cout << "perturb: slope=" << format_sig17(rep.slope) << " "
              << (rep.pass && !rep.incomplete ? "PASS" : "FAIL") << "\n";
    return rep.pass && !rep.incomplete ? 0 : 1;
}

int cmd_symmetry(const Cli& cli) {
    GridFunction u = load_grid(cli);
    SymmetryResult res = symmetry_diagnostic(u);
    std::ostringstream prof;
    prof << "t,u0\n";
    for (size_t i = 0; i < res.t_centers.size(); ++i)
        prof << format_sig17(res.t_centers[i]) << ","
             << format_sig17(res.u0[i]) << "\n";
    write_file(fs::path(cli.out_dir) / "symmetry_profile.csv", prof.str());
    std::ostringstream v;
    v << "experiment: symmetry\n";
    v << "theta: " << format_sig17(res.theta) << "\n";
    v << "omega: " << format_sig17(res.omega[0]) << " "
      << format_sig17(res.omega[1]) << "\n";
    v << "residual: " << format_sig17(res.residual) << "\n";
    write_file(fs::path(cli.out_dir) / "symmetry_verdict.txt", v.str());
    std::cout << "symmetry: theta=" << format_sig17(res.theta)
              << " residual=" << format_sig17(res.residual) << "\n";
    return 0;
}

int cmd_checks(const Cli& cli) {
    int samples = pick_int(cli.samples, cli.cfg, "experiment", "sample_count",
                           10000);
    std::ostringstream all;
    bool ok = true;
    for (const char* fam : {"pLaplacian", "meanCurvature"}) {
        KernelParams k = std::string(fam) == "pLaplacian"
                             ? KernelParams::p_laplacian(1, 0.5, 2.0)
                             : KernelParams::mean_curvature(1, 0.5);
        AuditReport a = audit_assumptions(k, samples, cli.seed);
        all << "== audit " << fam << " ==\n" << a.text() << "\n";
        ok = ok && a.all_pass();
        SuiteReport c = convexity_suite(k, samples, cli.seed + 1);
        all << "== convexity " << fam << " ==\n" << c.text() << "\n";
        ok = ok && c.pass;
    }
    SuiteReport ap = appendix_inequality_suite(
        pick_int(-1, cli.cfg, "experiment", "appendix_samples", 50), cli.seed + 2);
    all << "== appendix inequalities ==\n" << ap.text() << "\n";
    ok = ok && ap.pass;
    write_file(fs::path(cli.out_dir) / "checks.txt", all.str());
    std::cout << "checks: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlocal phase-transition energy toolkit"};
    app.require_subcommand(1);
    Cli cli;

    app.add_option("--config", cli.config_path, "configuration file");
    app.add_option("--out", cli.out_dir, "output directory");
    app.add_option("--seed", cli.seed, "rng seed");
    app.add_option("--threads", cli.threads, "worker cap (serial build)");
    app.add_option("--in", cli.in_path, "input grid-function file");
    app.add_option("--family", cli.family, "kernel family override");
    app.add_option("--n", cli.n, "dimension override");
    app.add_option("--s", cli.s, "s override");
    app.add_option("--p", cli.p, "p override");
    app.add_option("--potential", cli.potential, "potential family override");
    app.add_option("--R-list", cli.R_list, "comma-separated radii");
    app.add_option("--samples", cli.samples, "sample count override");
    app.add_option("--rule", cli.rule, "scaling data rule (ramp|layer|psi)");
    app.add_option("--tail", cli.tail,
                   "tail policy (analytic_constant|quadrature_1d|none)");
    app.add_option("--summation", cli.summation,
                   "summation policy (fixed_order|compensated)");
    app.add_option("--h-div", cli.h_div, "h = R / h_div for sweeps");
    app.add_option("--box-factor", cli.box_factor, "R_box = factor * R");
    app.add_option("--max-iters", cli.max_iters, "solver iteration cap");
    app.add_option("--grad-tol", cli.grad_tol, "solver gradient tolerance");

    for (const char* c : {"audit", "energy", "minimize", "scaling", "perturb",
                          "symmetry", "checks"})
        app.add_subcommand(c)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    cli.command = app.get_subcommands().front()->get_name();

    try {
        if (!cli.config_path.empty()) cli.cfg = ConfigFile::load(cli.config_path);
        fs::create_directories(cli.out_dir);
        if (cli.command == "audit") return cmd_audit(cli);
        if (cli.command == "energy") return cmd_energy(cli);
        if (cli.command == "minimize") return cmd_minimize(cli);
        if (cli.command == "scaling") return cmd_scaling(cli);
        if (cli.command == "perturb") return cmd_perturb(cli);
        if (cli.command == "symmetry") return cmd_symmetry(cli);
        if (cli.command == "checks") return cmd_checks(cli);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: unknown command\n";
    return 2;
}
