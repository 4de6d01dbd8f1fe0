#include "oscint/validation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "oscint/coefficients.hpp"
#include "oscint/free_particle.hpp"
#include "oscint/oscillatory.hpp"
#include "oscint/report_io.hpp"
#include "oscint/schrodinger.hpp"
#include "oscint/spaces.hpp"

namespace oscint {

namespace {

// engine-portable uniform in [0, 1); distribution classes vary by library
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void add_case(std::vector<ValidationCase>& out, const char* suite, std::string name, double lhs,
              double rhs) {
    ValidationCase c;
    c.suite = suite;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = (rhs - lhs) / std::max(rhs, 1e-300);
    c.pass = lhs <= rhs;
    out.push_back(std::move(c));
}

JetFunction pick_catalog(std::mt19937_64& rng, int order) {
    switch (static_cast<int>(unit(rng) * 3.999)) {
        case 0: return jets::plane_wave(-3.0 + 6.0 * unit(rng), order);
        case 1: return jets::gaussian(0.1 + unit(rng), order);
        case 2: return jets::lorentzian(order);
        default:
            return jets::sum(jets::plane_wave(-2.0 + 4.0 * unit(rng), order),
                             jets::scale(cplx{unit(rng), unit(rng)}, jets::gaussian(0.5, order)));
    }
}

void suite_coefficients(std::vector<ValidationCase>& out) {
    const CoefficientTable t(12, 12);
    for (const CoefficientIdentityReport& r : check_proof_identities(t))
        add_case(out, "coefficients", r.id, r.max_rel_residual, 1e-13);
    add_case(out, "coefficients", "float_vs_exact", coefficient_table_deviation(t), 1e-14);
}

void suite_spaces(std::vector<ValidationCase>& out, std::uint64_t seed) {
    const auto reports = check_space_inequalities(seed, 50);
    int trial = 0, slot = 0;
    for (const InequalityReport& r : reports) {
        ValidationCase c;
        c.suite = "spaces";
        c.name = r.inequality_id + "_" + std::to_string(trial);
        c.lhs = r.lhs;
        c.rhs = r.rhs;
        c.margin = r.margin;
        c.pass = r.pass;  // keeps the checker's -1e-9 relative slack
        out.push_back(std::move(c));
        if (++slot == 9) {
            slot = 0;
            ++trial;
        }
    }
}

void suite_ibp(std::vector<ValidationCase>& out, std::uint64_t seed,
               const QuadratureConfig& cfg) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (int c = 0; c < 10; ++c) {
        const double a = (0.5 + 2.5 * unit(rng)) * (unit(rng) < 0.5 ? 1.0 : -1.0);
        const double b = 0.5 + 1.5 * unit(rng);
        const double y0 = -1.5 + 3.0 * unit(rng);
        const int kappa = static_cast<int>(unit(rng) * 3.999);
        const JetFunction f = pick_catalog(rng, 2);
        const IntegralSpec spec(a, b, 2, 0.0, y0);
        for (double eps : {1.0, 0.1}) {
            IdentityCheckReport r = ibp_identity_check(f, spec, eps, kappa, cfg, 1e-8);
            std::ostringstream name;
            name << "step_case" << c << "_eps" << fmt_g17(eps);
            add_case(out, "ibp", name.str(), r.residual, 1e-8 * r.scale);
        }
    }
}

void suite_independence(std::vector<ValidationCase>& out, std::uint64_t seed,
                        const QuadratureConfig& cfg) {
    std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ull);

    // the limit must not see the damping center
    for (int c = 0; c < 10; ++c) {
        const double a = (0.5 + 2.5 * unit(rng)) * (unit(rng) < 0.5 ? 1.0 : -1.0);
        const double b = 0.5 + 1.5 * unit(rng);
        const JetFunction f = jets::plane_wave(-2.0 + 4.0 * unit(rng), 3);
        EvalReport base = oracle_limit(f, IntegralSpec(a, b, 3, 0.0, 0.0), cfg);
        for (double y0 : {-1.0, 1.0, 5.0}) {
            EvalReport r = oracle_limit(f, IntegralSpec(a, b, 3, 0.0, y0), cfg);
            std::ostringstream name;
            name << "y0_case" << c << "_at" << fmt_g17(y0);
            add_case(out, "independence", name.str(), std::abs(r.value - base.value),
                     r.abs_error_estimate + base.abs_error_estimate);
        }
    }

    // the iterated formula must not see the column depth
    const JetFunction lor = jets::lorentzian(4);
    for (int n : {2, 3, 4}) {
        const IntegralSpec spec(1.0, 1.0, n, 0.0, 0.5);
        cplx prev{};
        for (int m = 0; m <= n + 2; ++m) {
            EvalReport r = ibp_formula_value(lor, spec, 0.5, m, cfg);
            if (m > 0) {
                std::ostringstream name;
                name << "column_depth_n" << n << "_m" << m;
                add_case(out, "independence", name.str(), std::abs(r.value - prev),
                         1e-9 * std::max(1.0, std::abs(r.value)));
            }
            prev = r.value;
        }
    }

    // the wave function must not see the split radius
    const GreensDecomposition g6 = free_particle_kernel(6);
    const InitialCondition pw(jets::plane_wave(1.0, 6), 0.0);
    PsiReport pb = psi(g6, pw, 0.5, 0.3, 2.3, cfg);
    PsiReport pB = psi(g6, pw, 0.5, 0.3, 4.6, cfg);
    add_case(out, "independence", "split_radius_plane_wave", std::abs(pb.value - pB.value),
             pb.abs_error_estimate + pB.abs_error_estimate);
    const GreensDecomposition g7 = free_particle_kernel(7);
    const InitialCondition quad(jets::monomial(2, 7), 2.0);
    PsiReport qb = psi(g7, quad, 0.4, -0.6, 2.6, cfg);
    PsiReport qB = psi(g7, quad, 0.4, -0.6, 5.2, cfg);
    add_case(out, "independence", "split_radius_quadratic", std::abs(qb.value - qB.value),
             qb.abs_error_estimate + qB.abs_error_estimate);
}

void suite_bounds(std::vector<ValidationCase>& out, std::uint64_t seed,
                  const QuadratureConfig& cfg) {
    std::mt19937_64 rng(seed ^ 0x94d049bb133111ebull);
    const std::vector<double> ladder = cfg.eps_ladder();
    for (int c = 0; c < 10; ++c) {
        const double a = (0.5 + 2.5 * unit(rng)) * (unit(rng) < 0.5 ? 1.0 : -1.0);
        const double b = 0.5 + 1.5 * unit(rng);
        const double y0 = -1.0 + 2.0 * unit(rng);
        const JetFunction f = pick_catalog(rng, 3);
        const IntegralSpec spec(a, b, 3, 0.0, y0);
        const double bound = theorem_bound(norm_cn_alpha(f, b, 3, 0.0), spec);
        double worst = 0.0;
        for (double eps : ladder)
            worst = std::max(worst, std::abs(regularized_integral(f, spec, eps, cfg).value));
        worst = std::max(worst, std::abs(oracle_limit(f, spec, cfg).value));
        add_case(out, "bounds", "damped_bound_case" + std::to_string(c), worst, bound);
    }

    // |a| D approaches b^{n+alpha-1}/2
    const struct {
        double b;
        int n;
        double alpha;
    } asym[] = {{1.3, 3, 0.5}, {1.0, 3, 0.0}, {0.7, 4, 1.5}};
    for (const auto& p : asym) {
        const double d = d_bound_constant(1e6, p.b, p.n, p.alpha);
        const double ratio = 1e6 * d * 2.0 / std::pow(p.b, p.n + p.alpha - 1.0);
        std::ostringstream name;
        name << "asymptote_b" << fmt_g17(p.b) << "_n" << p.n << "_alpha" << fmt_g17(p.alpha);
        add_case(out, "bounds", name.str(), std::abs(ratio - 1.0), 0.01);
    }
}

}  // namespace

const std::vector<std::string>& validation_suite_names() {
    static const std::vector<std::string> names = {"coefficients", "spaces", "ibp",
                                                   "independence", "bounds"};
    return names;
}

ValidationSummary run_validation(const std::vector<std::string>& suites, std::uint64_t seed,
                                 const QuadratureConfig& cfg) {
    cfg.validate();
    std::vector<std::string> chosen = suites.empty() ? validation_suite_names() : suites;
    for (const std::string& s : chosen)
        if (std::find(validation_suite_names().begin(), validation_suite_names().end(), s) ==
            validation_suite_names().end())
            throw std::invalid_argument("unknown suite: " + s);

    ValidationSummary summary;
    summary.seed = seed;
    for (const std::string& s : chosen) {
        if (s == "coefficients") suite_coefficients(summary.cases);
        else if (s == "spaces") suite_spaces(summary.cases, seed);
        else if (s == "ibp") suite_ibp(summary.cases, seed, cfg);
        else if (s == "independence") suite_independence(summary.cases, seed, cfg);
        else if (s == "bounds") suite_bounds(summary.cases, seed, cfg);
    }
    summary.all_pass = std::all_of(summary.cases.begin(), summary.cases.end(),
                                   [](const ValidationCase& c) { return c.pass; });
    return summary;
}

std::string ValidationSummary::to_json() const {
    std::ostringstream os;
    os << "{\"schema\":1,\"seed\":" << seed << ",\"all_pass\":" << (all_pass ? "true" : "false")
       << ",\"cases\":[";
    bool first = true;
    for (const ValidationCase& c : cases) {
        if (!first) os << ',';
        first = false;
        os << "{\"suite\":\"" << c.suite << "\",\"name\":\"" << c.name
           << "\",\"lhs\":" << fmt_g17(c.lhs) << ",\"rhs\":" << fmt_g17(c.rhs)
           << ",\"margin\":" << fmt_g17(c.margin) << ",\"pass\":" << (c.pass ? "true" : "false")
           << '}';
    }
    os << "]}";
    return os.str();
}

}  // namespace oscint
