#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "oscint/free_particle.hpp"
#include "oscint/oscillatory.hpp"
#include "oscint/report_io.hpp"
#include "oscint/schrodinger.hpp"
#include "oscint/validation.hpp"

namespace {

using oscint::cplx;
using nlohmann::json;

int thread_cap() {
    if (const char* s = std::getenv("OSCINT_THREADS")) {
        const int v = std::atoi(s);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// index-sharded map; results land by index, so output order and content do
// not depend on the thread count
template <typename Fn>
void parallel_for(std::size_t count, Fn fn) {
    const int threads = std::min<std::size_t>(thread_cap(), count ? count : 1);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = static_cast<std::size_t>(w); i < count;
                 i += static_cast<std::size_t>(threads))
                fn(i);
        });
    for (std::thread& th : pool) th.join();
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config parse error: " + std::string(e.what()));
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    return j;
}

// config supplies whatever the command line left unset
template <typename T>
void merge(const json& j, const CLI::Option* opt, const char* key, T& value) {
    if (opt->count() == 0 && j.contains(key)) value = j.at(key).get<T>();
}

void write_artifact(const std::string& out, const std::string& content) {
    if (out.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot open output file: " + out);
    os << content;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// explicit solutions exist for plane waves and polynomials; everything else
// leaves the delta column empty
std::optional<double> closed_form_delta(const std::string& desc, double t, double x, cplx value) {
    if (desc == "zero") return std::abs(value);
    if (desc.rfind("exp_i:", 0) == 0) {
        const double kappa = std::stod(desc.substr(6));
        return std::abs(value - oscint::closed_form_plane_wave(t, x, kappa));
    }
    if (desc.rfind("poly:", 0) == 0) {
        cplx exact{};
        std::string rest = desc.substr(5);
        int m = 0;
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t next = rest.find(',', pos);
            if (next == std::string::npos) next = rest.size();
            exact += std::stod(rest.substr(pos, next - pos)) * oscint::closed_form_moment(t, x, m);
            ++m;
            pos = next + 1;
        }
        return std::abs(value - exact);
    }
    return std::nullopt;
}

struct IntegrateArgs {
    std::string f, method = "all", out, config;
    double a = 0.0, b = 0.0, alpha = 0.0, y0 = 0.0;
    int n = 0;
};

int run_integrate(const IntegrateArgs& args) {
    const oscint::IntegralSpec spec(args.a, args.b, args.n, args.alpha, args.y0);
    const oscint::JetFunction f = oscint::jets::parse(args.f, args.n);

    std::vector<std::string> methods;
    if (args.method == "all") methods = {"oracle", "representation", "riemann"};
    else if (args.method == "oracle" || args.method == "representation" ||
             args.method == "riemann")
        methods = {args.method};
    else
        throw std::invalid_argument("unknown method: " + args.method +
                                    " (use oracle, representation, riemann, or all)");

    std::vector<oscint::IntegrateRow> rows;
    for (const std::string& m : methods) {
        oscint::IntegrateRow row;
        row.f_descriptor = args.f;
        row.a = args.a;
        row.b = args.b;
        row.n = args.n;
        row.alpha = args.alpha;
        row.y0 = args.y0;
        if (m == "oracle") row.report = oscint::oracle_limit(f, spec);
        else if (m == "representation") row.report = oscint::representation_value(f, spec);
        else row.report = oscint::riemann_limit(f, spec);
        rows.push_back(std::move(row));
    }

    write_artifact(args.out, ends_with(args.out, ".json") ? oscint::integrate_json(rows)
                                                          : oscint::integrate_csv(rows));
    const bool all_converged = std::all_of(rows.begin(), rows.end(), [](const auto& r) {
        return r.report.converged;
    });
    return all_converged ? 0 : 2;
}

struct SolveArgs {
    std::string F, route = "auto", out, config;
    double beta = 0.0, b = 0.0;  // b == 0 selects the default split radius
    int kernel_n = 6;
    std::vector<double> t, x;
};

int run_solve_free(const SolveArgs& args) {
    for (double t : args.t)
        if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    if (args.t.empty() || args.x.empty())
        throw std::invalid_argument("grid is empty: provide --t and --x");

    oscint::PsiRoute route;
    if (args.route == "auto") route = oscint::PsiRoute::automatic;
    else if (args.route == "ghat") route = oscint::PsiRoute::ghat;
    else if (args.route == "shifted") route = oscint::PsiRoute::shifted;
    else throw std::invalid_argument("unknown route: " + args.route +
                                     " (use auto, ghat, or shifted)");

    const oscint::GreensDecomposition g = oscint::free_particle_kernel(args.kernel_n);
    const oscint::InitialCondition F(oscint::jets::parse(args.F, args.kernel_n), args.beta);
    if (args.b != 0.0)
        for (double x : args.x)
            if (!(args.b > std::abs(x)))
                throw std::invalid_argument("split radius must exceed |x| on the grid");

    std::vector<oscint::SolveRow> rows(args.t.size() * args.x.size());
    std::exception_ptr failure;
    std::mutex failure_mu;
    parallel_for(rows.size(), [&](std::size_t i) {
        try {
            const double t = args.t[i / args.x.size()];
            const double x = args.x[i % args.x.size()];
            const double b = args.b != 0.0 ? args.b : oscint::default_split_radius(x);
            oscint::SolveRow row;
            row.t = t;
            row.x = x;
            row.report = oscint::psi(g, F, t, x, b, {}, route);
            row.pde_residual = oscint::pde_residual(g, F, t, x, b);
            row.closed_form_delta = closed_form_delta(args.F, t, x, row.report.value);
            rows[i] = std::move(row);
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);

    write_artifact(args.out, oscint::solve_csv(rows));
    const bool all_converged = std::all_of(rows.begin(), rows.end(), [](const auto& r) {
        return r.report.converged;
    });
    return all_converged ? 0 : 2;
}

struct ValidateArgs {
    std::vector<std::string> suites;
    std::uint64_t seed = 0;
    std::string out, config;
};

int run_validate(const ValidateArgs& args) {
    const oscint::ValidationSummary summary = oscint::run_validation(args.suites, args.seed);
    write_artifact(args.out, summary.to_json() + "\n");
    if (!summary.all_pass) {
        for (const oscint::ValidationCase& c : summary.cases)
            if (!c.pass)
                std::cerr << "validation failure: " << c.suite << "/" << c.name
                          << " lhs=" << oscint::fmt_g17(c.lhs) << " rhs=" << oscint::fmt_g17(c.rhs)
                          << "\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oscillatory-integral evaluator and free-particle solver"};
    app.require_subcommand(1);

    IntegrateArgs ia;
    CLI::App* integrate = app.add_subcommand("integrate", "evaluate one oscillatory integral");
    auto* ia_f = integrate->add_option("--f", ia.f, "integrand descriptor (exp_i:<k>, poly:<c0,..>, gauss:<e>, lorentz, zero, shift:<x>(..), scale:<l>(..), sum(..,..))");
    auto* ia_a = integrate->add_option("--a", ia.a, "phase rate a");
    auto* ia_b = integrate->add_option("--b", ia.b, "left endpoint b > 0");
    auto* ia_n = integrate->add_option("--n", ia.n, "regularity order n");
    auto* ia_alpha = integrate->add_option("--alpha", ia.alpha, "growth exponent alpha");
    auto* ia_y0 = integrate->add_option("--y0", ia.y0, "damping center y0");
    auto* ia_method = integrate->add_option("--method", ia.method, "oracle | representation | riemann | all");
    auto* ia_out = integrate->add_option("--out", ia.out, "artifact path (.json for JSON, else CSV; default stdout)");
    integrate->add_option("--config", ia.config, "JSON file supplying unset options");

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand("solve-free", "evaluate the free-particle wave function on a grid");
    auto* sa_F = solve->add_option("--F", sa.F, "initial datum descriptor");
    auto* sa_beta = solve->add_option("--beta", sa.beta, "growth exponent of the datum");
    auto* sa_t = solve->add_option("--t", sa.t, "time grid (t > 0)")->delimiter(',');
    auto* sa_x = solve->add_option("--x", sa.x, "space grid")->delimiter(',');
    auto* sa_n = solve->add_option("--kernel-n", sa.kernel_n, "kernel regularity order (>= 4)");
    auto* sa_b = solve->add_option("--b", sa.b, "split radius (0 = |x| + 2 per point)");
    auto* sa_route = solve->add_option("--route", sa.route, "auto | ghat | shifted");
    auto* sa_out = solve->add_option("--out", sa.out, "artifact path (CSV; default stdout)");
    solve->add_option("--config", sa.config, "JSON file supplying unset options");

    ValidateArgs va;
    CLI::App* validate = app.add_subcommand("validate", "run the property suites");
    auto* va_suite = validate->add_option("--suite", va.suites, "suite filter (repeatable): coefficients, spaces, ibp, independence, bounds")->delimiter(',');
    auto* va_seed = validate->add_option("--seed", va.seed, "seed for randomized cases");
    auto* va_out = validate->add_option("--out", va.out, "artifact path (JSON; default stdout)");
    validate->add_option("--config", va.config, "JSON file supplying unset options");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (integrate->parsed()) {
            const json j = load_config(ia.config);
            merge(j, ia_f, "f", ia.f);
            merge(j, ia_a, "a", ia.a);
            merge(j, ia_b, "b", ia.b);
            merge(j, ia_n, "n", ia.n);
            merge(j, ia_alpha, "alpha", ia.alpha);
            merge(j, ia_y0, "y0", ia.y0);
            merge(j, ia_method, "method", ia.method);
            merge(j, ia_out, "out", ia.out);
            if (ia.f.empty()) throw std::invalid_argument("missing integrand: set --f");
            if (ia_a->count() == 0 && !j.contains("a"))
                throw std::invalid_argument("missing --a");
            if (ia_b->count() == 0 && !j.contains("b"))
                throw std::invalid_argument("missing --b");
            if (ia_n->count() == 0 && !j.contains("n"))
                throw std::invalid_argument("missing --n");
            return run_integrate(ia);
        }
        if (solve->parsed()) {
            const json j = load_config(sa.config);
            merge(j, sa_F, "F", sa.F);
            merge(j, sa_beta, "beta", sa.beta);
            merge(j, sa_t, "t", sa.t);
            merge(j, sa_x, "x", sa.x);
            merge(j, sa_n, "kernel_n", sa.kernel_n);
            merge(j, sa_b, "b", sa.b);
            merge(j, sa_route, "route", sa.route);
            merge(j, sa_out, "out", sa.out);
            if (sa.F.empty()) throw std::invalid_argument("missing datum: set --F");
            return run_solve_free(sa);
        }
        const json j = load_config(va.config);
        merge(j, va_suite, "suite", va.suites);
        merge(j, va_seed, "seed", va.seed);
        merge(j, va_out, "out", va.out);
        return run_validate(va);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
