#include "oscint/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oscint {

namespace {

constexpr double kTinyTime = 1e-4;
constexpr size_t kMaxCoreSeeds = 5000;

// phase-coherent seeds for the proper integral over [-b, b]: the phase
// a (y - x)^2 is stationary at y = x, so split where it crosses k pi
std::vector<double> core_splits(double a, double b, double x) {
    std::vector<double> splits;
    const double step = std::numbers::pi / std::abs(a);
    for (size_t k = 1; splits.size() < kMaxCoreSeeds; ++k) {
        const double d = std::sqrt(static_cast<double>(k) * step);
        const bool lo = x - d > -b, hi = x + d < b;
        if (lo) splits.push_back(x - d);
        if (hi) splits.push_back(x + d);
        if (!lo && !hi) break;
    }
    if (x > -b && x < b) splits.push_back(x);
    std::sort(splits.begin(), splits.end());
    return splits;
}

struct OuterParts {
    std::vector<cplx> plus, minus;
    std::vector<double> err_plus, err_minus;
    long panels = 0;
    bool converged = true;
};

// Both oscillatory tails for a batch of y-jet envelopes W_i * F_i, where W_i
// stands in for Gtilde or one of its differentiated replacements. The ghat
// route keeps the integrals at [b, inf) with plane-wave-twisted envelopes;
// the shifted route moves the endpoint to b -+ x and keeps the kernel phase.
OuterParts outer_parts(const std::vector<JetFunction>& prods, double a, double b, double x,
                       int n, double alpha_eff, bool shifted, const QuadratureConfig& cfg) {
    const size_t K = prods.size();
    OuterParts out;
    out.plus.resize(K);
    out.minus.resize(K);
    out.err_plus.resize(K);
    out.err_minus.resize(K);

    if (shifted) {
        std::vector<JetFunction> plus_env, minus_env;
        plus_env.reserve(K);
        minus_env.reserve(K);
        for (const auto& p : prods) {
            plus_env.push_back(jets::shift(p, x));
            minus_env.push_back(jets::reflect(jets::shift(p, x)));
        }
        const IntegralSpec spec_p(a, b - x, n, alpha_eff);
        const IntegralSpec spec_m(a, b + x, n, alpha_eff);
        const auto rp = representation_value_batch(plus_env, spec_p, cfg);
        const auto rm = representation_value_batch(minus_env, spec_m, cfg);
        for (size_t i = 0; i < K; ++i) {
            out.plus[i] = rp[i].value;
            out.err_plus[i] = rp[i].abs_error_estimate;
            out.minus[i] = rm[i].value;
            out.err_minus[i] = rm[i].abs_error_estimate;
            out.converged = out.converged && rp[i].converged && rm[i].converged;
        }
        out.panels = rp[0].diagnostics.panels + rm[0].diagnostics.panels;
        return out;
    }

    // ghat route: e^{ia(y-+x)^2} = e^{iay^2} e^{iax^2} e^{-+2iaxy}
    const cplx phase_x = std::exp(cplx(0.0, a * x * x));
    std::vector<JetFunction> env;
    env.reserve(2 * K);
    const int ord = prods.empty() ? n : prods[0].max_order();
    const JetFunction twist_p = jets::plane_wave(-2.0 * a * x, ord);
    const JetFunction twist_m = jets::plane_wave(2.0 * a * x, ord);
    for (const auto& p : prods) env.push_back(jets::product(twist_p, p));
    for (const auto& p : prods) env.push_back(jets::product(twist_m, jets::reflect(p)));
    const IntegralSpec spec(a, b, n, alpha_eff);
    const auto reps = representation_value_batch(env, spec, cfg);
    for (size_t i = 0; i < K; ++i) {
        out.plus[i] = phase_x * reps[i].value;
        out.err_plus[i] = reps[i].abs_error_estimate;
        out.minus[i] = phase_x * reps[K + i].value;
        out.err_minus[i] = reps[K + i].abs_error_estimate;
        out.converged = out.converged && reps[i].converged && reps[K + i].converged;
    }
    out.panels = reps[0].diagnostics.panels;
    return out;
}

void validate_point(const GreensDecomposition& g, double t, double x, double b) {
    g.validate();
    if (!(t > 0.0) || !(t < g.T)) throw std::invalid_argument("psi: need 0 < t < T");
    if (!(b > std::abs(x))) throw std::invalid_argument("psi: need b > |x|");
}

void validate_datum(const GreensDecomposition& g, const InitialCondition& F) {
    if (F.F.max_order() < g.n)
        throw std::invalid_argument("psi: datum has fewer derivatives than n");
    if (!(F.beta < g.n - g.alpha - 3.0))
        throw std::invalid_argument("psi: beta outside the window beta < n - alpha - 3");
}

}  // namespace

void GreensDecomposition::validate() const {
    if (!a || !da || !gtilde || !gtilde_x || !gtilde_xx || !gtilde_t)
        throw std::invalid_argument("GreensDecomposition: incomplete kernel");
    if (!(T > 0.0)) throw std::invalid_argument("GreensDecomposition: empty time horizon");
    if (n < 1 || alpha < 0.0 || !(static_cast<double>(n) > alpha + 3.0))
        throw std::invalid_argument("GreensDecomposition: need n > alpha + 3");
    // a(t) > 0, blowing up monotonically along t = 2^{-j} toward t -> 0+
    double prev = 0.0;
    const double t0 = std::min(0.5 * T, 1.0);
    for (int j = 0; j <= 20; ++j) {
        const double av = a(t0 * std::pow(2.0, -j));
        if (!(av > 0.0))
            throw std::invalid_argument("GreensDecomposition: a(t) must be positive");
        if (j > 0 && !(av >= prev))
            throw std::invalid_argument("GreensDecomposition: a(t) must grow as t -> 0+");
        prev = av;
    }
}

InitialCondition::InitialCondition(JetFunction F_, double beta_)
    : F(std::move(F_)), beta(beta_) {
    if (!F.valid()) throw std::invalid_argument("InitialCondition: invalid datum");
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument("InitialCondition: beta must be >= 0");
}

double default_split_radius(double x) { return std::abs(x) + 2.0; }

std::vector<PsiReport> psi_multi(const GreensDecomposition& g,
                                 const std::vector<InitialCondition>& Fs, double t, double x,
                                 double b, const QuadratureConfig& cfg, PsiRoute route) {
    validate_point(g, t, x, b);
    if (Fs.empty()) throw std::invalid_argument("psi_multi: empty batch");
    double beta_max = 0.0;
    for (const auto& F : Fs) {
        validate_datum(g, F);
        beta_max = std::max(beta_max, F.beta);
    }

    const double a = g.a(t);
    const JetFunction W = g.gtilde(t, x);
    const size_t K = Fs.size();
    std::vector<JetFunction> prods;
    prods.reserve(K);
    for (const auto& F : Fs) prods.push_back(jets::product(W, F.F));

    const bool shifted =
        route == PsiRoute::shifted || (route == PsiRoute::automatic && std::abs(x) > 0.6 * b);
    const OuterParts outer =
        outer_parts(prods, a, b, x, g.n, g.alpha + beta_max, shifted, cfg);

    auto integrands = [&](double y, cplx* out) {
        const double d = y - x;
        const double ph = a * d * d;
        const cplx rot(std::cos(ph), std::sin(ph));
        for (size_t i = 0; i < K; ++i) out[i] = rot * prods[i].value(y);
    };
    const ProperBatchResult core = proper_integral_batch(-b, b, static_cast<int>(K), integrands,
                                                         cfg, core_splits(a, b, x));

    std::vector<PsiReport> out(K);
    for (size_t i = 0; i < K; ++i) {
        PsiReport r;
        r.part_plus = outer.plus[i];
        r.part_minus = outer.minus[i];
        r.part_core = core.value[i];
        r.err_plus = outer.err_plus[i];
        r.err_minus = outer.err_minus[i];
        r.err_core = core.err[i];
        r.value = r.part_plus + r.part_core + r.part_minus;
        r.abs_error_estimate = r.err_plus + r.err_core + r.err_minus;
        r.panels = outer.panels + core.evals / std::max(1, cfg.panel_rule);
        r.converged = outer.converged && core.converged;
        r.tiny_time_flag = t < kTinyTime;
        out[i] = r;
    }
    return out;
}

PsiReport psi(const GreensDecomposition& g, const InitialCondition& F, double t, double x,
              double b, const QuadratureConfig& cfg, PsiRoute route) {
    return psi_multi(g, std::vector<InitialCondition>{F}, t, x, b, cfg, route)[0];
}

PsiDerivatives psi_derivatives(const GreensDecomposition& g, const InitialCondition& F, double t,
                               double x, double b, const QuadratureConfig& cfg, PsiRoute route) {
    validate_point(g, t, x, b);
    validate_datum(g, F);

    const double a = g.a(t);
    const double ap = g.da(t);
    const JetFunction W = g.gtilde(t, x);
    const JetFunction Wx = g.gtilde_x(t, x);
    const JetFunction Wxx = g.gtilde_xx(t, x);
    const JetFunction Wt = g.gtilde_t(t, x);
    const int ord = W.max_order();

    // e^{-iay^2} G_t  = e^{ia(x^2-2xy)} (ia'(y-x)^2 Gtilde + Gtilde_t)
    // e^{-iay^2} G_xx = e^{ia(x^2-2xy)} ((2ia - 4a^2(y-x)^2) Gtilde
    //                                    + 4ia(x-y) Gtilde_x + Gtilde_xx)
    const JetFunction sq = jets::polynomial({x * x, -2.0 * x, 1.0}, ord);  // (y-x)^2
    const JetFunction Kt =
        jets::sum(jets::scale(cplx(0.0, ap), jets::product(sq, W)), Wt);
    const cplx i2a(0.0, 2.0 * a);
    const JetFunction Kxx = jets::sum(
        jets::product(jets::polynomial({i2a - 4.0 * a * a * x * x, 8.0 * a * a * x,
                                        cplx(-4.0 * a * a, 0.0)},
                                       ord),
                      W),
        jets::sum(jets::product(jets::polynomial({cplx(0.0, 4.0 * a * x), cplx(0.0, -4.0 * a)},
                                                 ord),
                                Wx),
                  Wxx));

    std::vector<JetFunction> prods = {jets::product(Kt, F.F), jets::product(Kxx, F.F)};
    const bool shifted =
        route == PsiRoute::shifted || (route == PsiRoute::automatic && std::abs(x) > 0.6 * b);
    // the differentiated kernels carry two extra powers of (y - x)
    const OuterParts outer =
        outer_parts(prods, a, b, x, g.n, g.alpha + F.beta + 2.0, shifted, cfg);

    auto integrands = [&](double y, cplx* out) {
        const double d = y - x;
        const double ph = a * d * d;
        const cplx rot(std::cos(ph), std::sin(ph));
        out[0] = rot * prods[0].value(y);
        out[1] = rot * prods[1].value(y);
    };
    const ProperBatchResult core =
        proper_integral_batch(-b, b, 2, integrands, cfg, core_splits(a, b, x));

    PsiDerivatives r;
    r.dt = outer.plus[0] + core.value[0] + outer.minus[0];
    r.dxx = outer.plus[1] + core.value[1] + outer.minus[1];
    r.err_dt = outer.err_plus[0] + core.err[0] + outer.err_minus[0];
    r.err_dxx = outer.err_plus[1] + core.err[1] + outer.err_minus[1];
    r.converged = outer.converged && core.converged;
    return r;
}

double pde_residual(const GreensDecomposition& g, const InitialCondition& F, double t, double x,
                    double b, const QuadratureConfig& cfg) {
    const PsiDerivatives d = psi_derivatives(g, F, t, x, b, cfg);
    return std::abs(cplx(0.0, 1.0) * d.dt + d.dxx);
}

InitialConditionReport initial_condition_check(const GreensDecomposition& g,
                                               const InitialCondition& F, double x,
                                               const std::vector<double>& t_ladder, double b,
                                               const QuadratureConfig& cfg) {
    if (t_ladder.empty()) throw std::invalid_argument("initial_condition_check: empty ladder");
    InitialConditionReport rep;
    rep.t = t_ladder;
    const cplx target = F.F.value(x);
    for (double t : t_ladder) {
        const PsiReport p = psi(g, F, t, x, b, cfg);
        rep.psi_value.push_back(p.value);
        rep.deviation.push_back(std::abs(p.value - target));
        rep.outer_magnitude.push_back(std::abs(p.part_plus) + std::abs(p.part_minus));
        rep.rung_converged.push_back(p.converged);
    }
    int upward = 0;
    for (size_t j = 1; j < rep.deviation.size(); ++j)
        if (rep.deviation[j] > rep.deviation[j - 1] * 1.1 + 1e-12) ++upward;
    rep.decreasing = upward <= 1 && rep.deviation.back() < rep.deviation.front() + 1e-12;
    rep.outer_vanishes =
        rep.outer_magnitude.back() <= 0.5 * rep.outer_magnitude.front() + 1e-12 ||
        rep.outer_magnitude.back() < 1e-8;
    return rep;
}

DependenceReport continuous_dependence_check(const GreensDecomposition& g,
                                             const InitialCondition& F,
                                             const std::vector<InitialCondition>& Fm, double t,
                                             double x, double b, const QuadratureConfig& cfg) {
    if (Fm.empty()) throw std::invalid_argument("continuous_dependence_check: no perturbations");
    std::vector<InitialCondition> all;
    all.reserve(Fm.size() + 1);
    all.push_back(F);
    for (const auto& m : Fm) all.push_back(m);
    const std::vector<PsiReport> reps = psi_multi(g, all, t, x, b, cfg);

    DependenceReport r;
    r.base_value = reps[0].value;
    double err_budget = reps[0].abs_error_estimate;
    for (size_t m = 0; m < Fm.size(); ++m) {
        const JetFunction diff = jets::sum(Fm[m].F, jets::scale(-1.0, F.F));
        const CnRWitness w = norm_cn_r(diff, g.n, std::max(F.beta, Fm[m].beta));
        r.norm_difference.push_back(w.norm_estimate);
        r.value_difference.push_back(std::abs(reps[m + 1].value - r.base_value));
        err_budget = std::max(err_budget, reps[m + 1].abs_error_estimate);
    }

    // fit the proportionality constant on the first rungs, verify on the rest
    double C = 0.0;
    const size_t fit = std::min<size_t>(2, r.norm_difference.size());
    for (size_t m = 0; m < fit; ++m)
        if (r.norm_difference[m] > 1e-14)
            C = std::max(C, r.value_difference[m] / r.norm_difference[m]);
    const double slack = 4.0 * err_budget + 1e-12 * (1.0 + std::abs(r.base_value));
    r.proportional = true;
    for (size_t m = 0; m < r.norm_difference.size(); ++m)
        r.proportional = r.proportional &&
                         r.value_difference[m] <= 1.5 * C * r.norm_difference[m] + slack;
    return r;
}

double decomposition_consistency(const GreensDecomposition& g, double t, double x,
                                 const std::vector<double>& ys) {
    if (ys.empty()) throw std::invalid_argument("decomposition_consistency: empty grid");
    g.validate();
    const double a = g.a(t);
    const JetFunction W = g.gtilde(t, x);
    double worst = 0.0;
    for (double y : ys) {
        const cplx wv = W.value(y);
        const double d = y - x;
        const cplx lhs = std::exp(cplx(0.0, a * d * d)) * wv;
        const cplx rhs =
            std::exp(cplx(0.0, a * y * y)) * std::exp(cplx(0.0, a * (x * x - 2.0 * x * y))) * wv;
        const double scale = std::max(std::abs(lhs), 1e-300);
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

}  // namespace oscint
