// Acceptance battery: sixteen numbered end-to-end checks, each printing one
// PASS/FAIL line with the worst observed quantity and its allowance. With no
// arguments every criterion runs; "acceptance <k> [<k> ...]" runs a subset.
// Exit 0 when every requested criterion passes, 1 otherwise, 2 on usage.

#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oscint/coefficients.hpp"
#include "oscint/free_particle.hpp"
#include "oscint/jet.hpp"
#include "oscint/oscillatory.hpp"
#include "oscint/schrodinger.hpp"
#include "oscint/spaces.hpp"

namespace {

using oscint::cplx;
using oscint::EvalReport;
using oscint::IntegralSpec;
using oscint::JetFunction;

constexpr std::uint64_t kSeed = 42;

struct CriterionResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;  // worst observed deviation / normalized ratio
    double tol = 0.0;    // its allowance
    std::string note;
};

// engine-portable uniform in [0, 1); distribution classes vary by library
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

JetFunction pick_catalog(std::mt19937_64& rng, int order) {
    using namespace oscint::jets;
    switch (static_cast<int>(unit(rng) * 3.999)) {
        case 0: return plane_wave(-3.0 + 6.0 * unit(rng), order);
        case 1: return gaussian(0.1 + unit(rng), order);
        case 2: return lorentzian(order);
        default:
            return sum(plane_wave(-2.0 + 4.0 * unit(rng), order),
                       scale(cplx{unit(rng), unit(rng)}, gaussian(0.5, order)));
    }
}

// Free-particle split radius for the closed-form grids: b is an artifact of
// the proof and may be chosen freely; keeping a(t) b^2 = b^2/(4t) >= 25 keeps
// the boundary sums of the representation well conditioned at the largest t.
double grid_radius(double t, double x) {
    return std::max(oscint::default_split_radius(x), 10.0 * std::sqrt(t));
}

const std::array<double, 3> kGridT = {0.2, 0.5, 1.0};
const std::array<double, 3> kGridX = {-1.0, 0.0, 1.0};

CriterionResult criterion_01() {
    CriterionResult r;
    r.name = "plane-wave-closed-form";
    r.tol = 1e-6;
    const oscint::GreensDecomposition g = oscint::free_particle_kernel(6);
    const std::array<double, 4> kappas = {-2.0, 0.0, 1.0, 3.0};
    std::vector<oscint::InitialCondition> Fs;
    for (double k : kappas) Fs.emplace_back(oscint::jets::plane_wave(k, 6), 0.0);
    bool conv = true;
    for (double t : kGridT)
        for (double x : kGridX) {
            const auto reports = psi_multi(g, Fs, t, x, grid_radius(t, x));
            for (std::size_t i = 0; i < kappas.size(); ++i) {
                const cplx cf = oscint::closed_form_plane_wave(t, x, kappas[i]);
                r.worst = std::max(r.worst, std::abs(reports[i].value - cf));
                conv = conv && reports[i].converged;
            }
        }
    r.pass = conv && r.worst < r.tol;
    return r;
}

CriterionResult criterion_02() {
    CriterionResult r;
    r.name = "moment-closed-form";
    r.tol = 1e-6;
    const oscint::GreensDecomposition g = oscint::free_particle_kernel(9);
    std::vector<oscint::InitialCondition> Fs;
    for (int m = 0; m <= 5; ++m)
        Fs.emplace_back(oscint::jets::monomial(m, 9), static_cast<double>(m));
    bool conv = true;
    for (double t : kGridT)
        for (double x : kGridX) {
            const auto reports = psi_multi(g, Fs, t, x, grid_radius(t, x));
            for (int m = 0; m <= 5; ++m) {
                const cplx cf = oscint::closed_form_moment(t, x, m);
                const double rel = std::abs(reports[m].value - cf) / (1.0 + std::abs(cf));
                r.worst = std::max(r.worst, rel);
                conv = conv && reports[m].converged;
            }
        }
    r.pass = conv && r.worst < r.tol;
    r.note = "deviation normalized by 1+|g_m|";
    return r;
}

CriterionResult criterion_03() {
    CriterionResult r;
    r.name = "oscillatory-exp-closed-form";
    r.tol = 1.0;
    double worst_dev = 0.0;
    bool conv = true;
    for (double a : {-1.0, 1.0, 5.0})
        for (double b : {0.5, 1.0, 3.0})
            for (double k : {-2.0, 0.0, 1.0}) {
                const cplx cf = oscint::closed_form_oscillatory_exp(a, b, k);
                const JetFunction f = oscint::jets::plane_wave(k, 3);
                const IntegralSpec spec(a, b, 3);
                for (const EvalReport& rep :
                     {representation_value(f, spec), oracle_limit(f, spec)}) {
                    const double dev = std::abs(rep.value - cf);
                    const double allow = std::max(1e-8, 3.0 * rep.abs_error_estimate);
                    r.worst = std::max(r.worst, dev / allow);
                    worst_dev = std::max(worst_dev, dev);
                    conv = conv && rep.converged;
                }
            }
    r.pass = conv && r.worst <= r.tol;
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst absolute deviation %.2e", worst_dev);
    r.note = buf;
    return r;
}

CriterionResult criterion_04() {
    CriterionResult r;
    r.name = "coefficient-identities";
    r.tol = 1.0;
    const oscint::CoefficientTable table(12, 12);
    for (const auto& id : oscint::check_proof_identities(table))
        r.worst = std::max(r.worst, id.max_rel_residual / 1e-13);
    const double dev = oscint::coefficient_table_deviation(table);
    r.worst = std::max(r.worst, dev / 1e-14);
    r.pass = r.worst <= r.tol;
    char buf[80];
    std::snprintf(buf, sizeof buf, "identity residuals vs 1e-13, float-vs-exact %.1e vs 1e-14",
                  dev);
    r.note = buf;
    return r;
}

CriterionResult criterion_05() {
    CriterionResult r;
    r.name = "ibp-step-identity";
    r.tol = 1.0;
    std::mt19937_64 rng(kSeed ^ 0x9e3779b97f4a7c15ull);
    for (int c = 0; c < 10; ++c) {
        const double a = (0.5 + 2.5 * unit(rng)) * (unit(rng) < 0.5 ? 1.0 : -1.0);
        const double b = 0.5 + 1.5 * unit(rng);
        const double y0 = -1.5 + 3.0 * unit(rng);
        const int kappa = static_cast<int>(unit(rng) * 3.999);
        const JetFunction f = pick_catalog(rng, 2);
        const IntegralSpec spec(a, b, 2, 0.0, y0);
        for (double eps : {1.0, 0.1}) {
            const auto chk = oscint::ibp_identity_check(f, spec, eps, kappa, {}, 1e-8);
            r.worst = std::max(r.worst, chk.residual / (1e-8 * chk.scale));
        }
    }
    r.pass = r.worst <= r.tol;
    r.note = "residual normalized by 1e-8 * scale, 10 cases, eps in {1, 0.1}";
    return r;
}

CriterionResult criterion_06() {
    CriterionResult r;
    r.name = "column-depth-independence";
    r.tol = 1e-9;
    const JetFunction lor = oscint::jets::lorentzian(4);
    for (int n : {2, 3, 4}) {
        const IntegralSpec spec(1.0, 1.0, n, 0.0, 0.5);
        cplx prev{};
        for (int m = 0; m <= n + 2; ++m) {
            const EvalReport rep = oscint::ibp_formula_value(lor, spec, 0.5, m);
            if (m > 0)
                r.worst = std::max(r.worst, std::abs(rep.value - prev) /
                                                std::max(1.0, std::abs(rep.value)));
            prev = rep.value;
        }
    }
    r.pass = r.worst <= r.tol;
    return r;
}

CriterionResult criterion_07() {
    CriterionResult r;
    r.name = "damping-center-independence";
    r.tol = 1.0;
    std::mt19937_64 rng(kSeed ^ 0xd1b54a32d192ed03ull);
    for (int c = 0; c < 10; ++c) {
        const double a = (0.5 + 2.5 * unit(rng)) * (unit(rng) < 0.5 ? 1.0 : -1.0);
        const double b = 0.5 + 1.5 * unit(rng);
        const JetFunction f = oscint::jets::plane_wave(-2.0 + 4.0 * unit(rng), 3);
        const EvalReport base = oracle_limit(f, IntegralSpec(a, b, 3, 0.0, 0.0));
        for (double y0 : {-1.0, 0.0, 1.0, 5.0}) {
            const EvalReport rep = oracle_limit(f, IntegralSpec(a, b, 3, 0.0, y0));
            const double budget = rep.abs_error_estimate + base.abs_error_estimate;
            r.worst = std::max(r.worst, std::abs(rep.value - base.value) / budget);
        }
    }
    r.pass = r.worst <= r.tol;
    r.note = "distance over combined error estimates, 10 cases";
    return r;
}

CriterionResult criterion_08() {
    CriterionResult r;
    r.name = "apriori-bound-asymptotics";
    r.tol = 1.0;
    std::mt19937_64 rng(kSeed ^ 0x94d049bb133111ebull);
    const oscint::QuadratureConfig cfg{};
    const std::vector<double> ladder = cfg.eps_ladder();
    for (int c = 0; c < 10; ++c) {
        const double a = (0.5 + 2.5 * unit(rng)) * (unit(rng) < 0.5 ? 1.0 : -1.0);
        const double b = 0.5 + 1.5 * unit(rng);
        const double y0 = -1.0 + 2.0 * unit(rng);
        const JetFunction f = pick_catalog(rng, 3);
        const IntegralSpec spec(a, b, 3, 0.0, y0);
        const double bound = theorem_bound(norm_cn_alpha(f, b, 3, 0.0), spec);
        double worst_val = std::abs(oracle_limit(f, spec).value);
        for (double eps : ladder)
            worst_val = std::max(worst_val, std::abs(regularized_integral(f, spec, eps).value));
        r.worst = std::max(r.worst, worst_val / bound);
    }
    // |a| D approaches b^{n+alpha-1}/2
    double worst_asym = 0.0;
    const struct {
        double b;
        int n;
        double alpha;
    } asym[] = {{1.3, 3, 0.5}, {1.0, 3, 0.0}, {0.7, 4, 1.5}};
    for (const auto& p : asym) {
        const double d = oscint::d_bound_constant(1e6, p.b, p.n, p.alpha);
        const double ratio = 1e6 * d * 2.0 / std::pow(p.b, p.n + p.alpha - 1.0);
        worst_asym = std::max(worst_asym, std::abs(ratio - 1.0));
        r.worst = std::max(r.worst, std::abs(ratio - 1.0) / 0.01);
    }
    r.pass = r.worst <= r.tol;
    char buf[80];
    std::snprintf(buf, sizeof buf, "bound ratios and |a|D asymptote (worst off by %.2e vs 0.01)",
                  worst_asym);
    r.note = buf;
    return r;
}

CriterionResult criterion_09() {
    CriterionResult r;
    r.name = "weighted-space-inequalities";
    r.tol = 1e-9;
    double min_margin = 1e300;
    bool all = true;
    for (const oscint::InequalityReport& rep : oscint::check_space_inequalities(kSeed, 50)) {
        min_margin = std::min(min_margin, rep.margin);
        all = all && rep.pass;
    }
    r.worst = std::max(0.0, -min_margin);  // > 0 only when some inequality is violated
    r.pass = all && r.worst <= r.tol;
    r.note = "six inequality families, 50 randomized trials";
    return r;
}

CriterionResult criterion_10() {
    CriterionResult r;
    r.name = "pde-residual";
    r.tol = 1.0;
    const oscint::GreensDecomposition g = oscint::free_particle_kernel(7);
    const oscint::InitialCondition data[3] = {{oscint::jets::plane_wave(1.0, 7), 0.0},
                                              {oscint::jets::monomial(2, 7), 2.0},
                                              {oscint::jets::monomial(3, 7), 3.0}};
    for (const auto& F : data)
        for (double t : kGridT)
            for (double x : kGridX) {
                const double b = oscint::default_split_radius(x);
                const double res = pde_residual(g, F, t, x, b);
                const oscint::PsiReport p = psi(g, F, t, x, b);
                r.worst = std::max(r.worst, res / (1e-6 * (std::abs(p.value) + 1.0)));
            }
    r.pass = r.worst <= r.tol;
    r.note = "residual normalized by 1e-6 * (|psi| + 1)";
    return r;
}

CriterionResult criterion_11() {
    CriterionResult r;
    r.name = "initial-condition-ladder";
    r.tol = 1e-3;
    const oscint::GreensDecomposition g = oscint::free_particle_kernel(6);
    std::vector<double> ladder;
    for (int j = 3; j <= 10; ++j) ladder.push_back(std::ldexp(1.0, -j));
    const oscint::InitialCondition data[2] = {{oscint::jets::plane_wave(1.0, 6), 0.0},
                                              {oscint::jets::monomial(2, 6), 2.0}};
    bool shape = true;
    for (const auto& F : data)
        for (double x : {-0.5, 0.0, 0.5}) {
            const auto rep = initial_condition_check(g, F, x, ladder,
                                                     oscint::default_split_radius(x));
            shape = shape && rep.decreasing && rep.outer_vanishes;
            r.worst = std::max(r.worst, rep.deviation.back());
        }
    r.pass = shape && r.worst < r.tol;
    // the quadratic datum sits at distance exactly 2t from its initial value,
    // and 2 * 2^-10 = 1.95e-3 already exceeds the 1e-3 allowance
    r.note = "plane wave reaches 9.77e-4; the quadratic datum cannot go below 2t";
    return r;
}

CriterionResult criterion_12() {
    CriterionResult r;
    r.name = "split-radius-independence";
    r.tol = 1.0;
    const oscint::GreensDecomposition g6 = oscint::free_particle_kernel(6);
    const oscint::GreensDecomposition g9 = oscint::free_particle_kernel(9);
    std::vector<oscint::InitialCondition> waves, moments;
    for (double k : {-2.0, 0.0, 1.0, 3.0})
        waves.emplace_back(oscint::jets::plane_wave(k, 6), 0.0);
    for (int m = 0; m <= 5; ++m)
        moments.emplace_back(oscint::jets::monomial(m, 9), static_cast<double>(m));
    for (double t : kGridT)
        for (double x : kGridX) {
            const double b = oscint::default_split_radius(x);
            for (int which = 0; which < 2; ++which) {
                const auto& g = which ? g9 : g6;
                const auto& Fs = which ? moments : waves;
                const auto r1 = psi_multi(g, Fs, t, x, b);
                const auto r2 = psi_multi(g, Fs, t, x, 2.0 * b);
                for (std::size_t i = 0; i < Fs.size(); ++i) {
                    const double dist = std::abs(r1[i].value - r2[i].value);
                    const double budget =
                        r1[i].abs_error_estimate + r2[i].abs_error_estimate;
                    r.worst = std::max(r.worst, dist / budget);
                }
            }
        }
    r.pass = r.worst <= r.tol;
    r.note = "distance over combined error estimates, radii b and 2b";
    return r;
}

CriterionResult criterion_13() {
    CriterionResult r;
    r.name = "parametric-derivative";
    r.tol = 1e-4;
    oscint::ParametricFamily fam;
    fam.a = [](double s) { return s; };
    fam.da = [](double) { return 1.0; };
    fam.b = [](double) { return 1.0; };
    fam.db = [](double) { return 0.0; };
    fam.f = [](double) { return oscint::jets::constant(1.0, 4); };
    fam.df_ds = [](double) { return oscint::jets::zero(4); };
    fam.n = 4;
    const double h = 1e-3;
    auto value = [](double s) {
        return representation_value(oscint::jets::constant(1.0, 4), IntegralSpec(s, 1.0, 4))
            .value;
    };
    for (double s : {0.5, 1.0, 2.0}) {
        const cplx grad = parametric_derivative(fam, s);
        const cplx fd = (value(s + h) - value(s - h)) / (2.0 * h);
        r.worst = std::max(r.worst, std::abs(grad - fd) / std::abs(fd));
    }
    r.pass = r.worst <= r.tol;
    r.note = "against central differences with h=1e-3";
    return r;
}

CriterionResult criterion_14() {
    CriterionResult r;
    r.name = "riemann-representation-agreement";
    r.tol = 1e-6;
    const JetFunction fs[2] = {oscint::jets::plane_wave(1.0, 3), oscint::jets::lorentzian(3)};
    const IntegralSpec spec(1.0, 1.0, 3);
    bool conv = true;
    for (const JetFunction& f : fs) {
        const EvalReport rie = riemann_limit(f, spec);
        const EvalReport rep = representation_value(f, spec);
        r.worst = std::max(r.worst, std::abs(rie.value - rep.value));
        conv = conv && rie.converged && rep.converged;
    }
    r.pass = conv && r.worst <= r.tol;
    return r;
}

CriterionResult criterion_15() {
    CriterionResult r;
    r.name = "holomorphy-contour";
    r.tol = 1.0;
    auto family = [](cplx z) { return oscint::jets::plane_wave(z, 3); };
    const std::array<cplx, 3> tri = {cplx(0.8, 0.0), cplx(1.2, 0.0), cplx(1.0, 0.3)};
    const oscint::HolomorphyReport rep = holomorphy_check(family, tri, IntegralSpec(1.0, 1.0, 3));
    r.worst = rep.residual / (1e-6 * rep.perimeter * rep.max_abs_psi);
    r.pass = rep.pass && r.worst <= r.tol;
    r.note = "contour residual over 1e-6 * perimeter * max|psi|";
    return r;
}

CriterionResult criterion_16() {
    CriterionResult r;
    r.name = "data-continuity-linearity";
    r.tol = 1e-12;
    using namespace oscint::jets;
    const JetFunction f = plane_wave(1.0, 3);
    std::vector<JetFunction> fm;
    for (int m = 1; m <= 4; ++m)
        fm.push_back(sum(f, scale(1.0 / (m * m), lorentzian(3))));
    const oscint::ContinuityReport cont = continuity_check(f, fm, IntegralSpec(1.0, 1.0, 3));

    const oscint::GreensDecomposition g = oscint::free_particle_kernel(6);
    const oscint::InitialCondition F(plane_wave(1.0, 6), 0.0);
    std::vector<oscint::InitialCondition> Fm;
    for (int m = 1; m <= 4; ++m)
        Fm.emplace_back(sum(plane_wave(1.0, 6), scale(1.0 / (m * m), gaussian(0.5, 6))), 0.0);
    const oscint::DependenceReport dep = continuous_dependence_check(g, F, Fm, 0.5, 0.3, 2.5);

    // exact linearity across shared-decision batches
    const JetFunction h = lorentzian(3);
    const JetFunction fh = sum(f, h);
    const auto rb = representation_value_batch({f, h, fh}, IntegralSpec(1.0, 1.0, 3));
    const auto ob = oracle_limit_batch({f, h, fh}, IntegralSpec(1.0, 1.0, 3));
    r.worst = std::abs(rb[0].value + rb[1].value - rb[2].value) / std::abs(rb[2].value);
    r.worst = std::max(r.worst,
                       std::abs(ob[0].value + ob[1].value - ob[2].value) / std::abs(ob[2].value));
    std::vector<oscint::InitialCondition> trio;
    trio.emplace_back(plane_wave(1.0, 6), 0.0);
    trio.emplace_back(gaussian(0.5, 6), 0.0);
    trio.emplace_back(sum(plane_wave(1.0, 6), gaussian(0.5, 6)), 0.0);
    const auto pr = psi_multi(g, trio, 0.5, 0.3, 2.5);
    r.worst = std::max(r.worst,
                       std::abs(pr[0].value + pr[1].value - pr[2].value) / std::abs(pr[2].value));

    r.pass = cont.pass && dep.proportional && r.worst <= r.tol;
    r.note = "perturbation bounds, dependence trend, batch linearity";
    return r;
}

CriterionResult run_criterion(int k) {
    switch (k) {
        case 1: return criterion_01();
        case 2: return criterion_02();
        case 3: return criterion_03();
        case 4: return criterion_04();
        case 5: return criterion_05();
        case 6: return criterion_06();
        case 7: return criterion_07();
        case 8: return criterion_08();
        case 9: return criterion_09();
        case 10: return criterion_10();
        case 11: return criterion_11();
        case 12: return criterion_12();
        case 13: return criterion_13();
        case 14: return criterion_14();
        case 15: return criterion_15();
        default: return criterion_16();
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        char* end = nullptr;
        const long k = std::strtol(argv[i], &end, 10);
        if (end == argv[i] || *end != '\0' || k < 1 || k > 16) {
            std::fprintf(stderr, "usage: %s [criterion 1..16 ...]\n", argv[0]);
            return 2;
        }
        ids.push_back(static_cast<int>(k));
    }
    if (ids.empty())
        for (int k = 1; k <= 16; ++k) ids.push_back(k);

    int failures = 0;
    for (int k : ids) {
        CriterionResult r;
        try {
            r = run_criterion(k);
        } catch (const std::exception& e) {
            r.name = "criterion threw";
            r.pass = false;
            r.note = e.what();
        }
        std::printf("criterion %02d %s %-32s worst=%.3e tol=%.1e%s%s\n", k,
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.worst, r.tol,
                    r.note.empty() ? "" : "  ", r.note.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    }
    if (ids.size() > 1)
        std::printf("%zu/%zu criteria pass\n", ids.size() - failures, ids.size());
    return failures == 0 ? 0 : 1;
}
