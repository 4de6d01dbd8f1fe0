#include "oscint/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

namespace oscint {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelSlack = 1e-9;  // sampling slack accepted by every checker

void validate_grid(const GridSpec& g) {
    if (!(g.delta > 0.0) || !(g.delta < 1.0))
        throw std::invalid_argument("GridSpec: delta must lie in (0,1)");
    if (g.cutoff < 0.0) throw std::invalid_argument("GridSpec: cutoff must be >= 0");
}

double auto_cutoff(double start, const GridSpec& g) {
    if (g.cutoff > 0.0) return g.cutoff;
    return std::max(1e3, 10.0 * std::abs(start));
}

// log-spaced points on [lo, hi] plus in-range extras, sorted
std::vector<double> build_grid(double lo, double hi, const GridSpec& g) {
    std::vector<double> ys;
    for (double y = lo; y < hi; y *= 1.0 + g.delta) ys.push_back(y);
    ys.push_back(hi);
    for (double e : g.extra)
        if (e >= lo && e <= hi) ys.push_back(e);
    std::sort(ys.begin(), ys.end());
    return ys;
}

// symmetric window grid {0, +-t_j} on [-Y, Y], sorted
std::vector<double> build_window_grid(double Y, const GridSpec& g) {
    std::vector<double> ys{0.0};
    for (double t = g.delta; t < Y; t *= 1.0 + g.delta) {
        ys.push_back(t);
        ys.push_back(-t);
    }
    ys.push_back(Y);
    ys.push_back(-Y);
    for (double e : g.extra)
        if (std::abs(e) <= Y) ys.push_back(e);
    std::sort(ys.begin(), ys.end());
    return ys;
}

InequalityReport make_report(std::string id, double lhs, double rhs) {
    InequalityReport r;
    r.inequality_id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    if (!std::isfinite(rhs)) {
        r.margin = kInf;
        r.pass = true;
        return r;
    }
    r.margin = (rhs - lhs) / std::max(rhs, 1e-300);
    r.pass = lhs <= rhs * (1.0 + kRelSlack) + 1e-300;
    return r;
}

// f^(m) as a JetFunction of order f.max_order() - m
JetFunction derivative_function(const JetFunction& f, int m) {
    if (m == 0) return f;
    if (m < 0 || f.max_order() < m)
        throw std::invalid_argument("derivative_function: order exceeds the jet budget");
    const int mo = f.max_order() - m;
    GrowthInfo g = f.growth();
    if (g.derivative_drop) g.degree -= m;
    g.riemann_decay = g.known && g.degree < 1.0;
    std::string desc = "d" + std::to_string(m) + "(" + f.descriptor() + ")";
    JetFunction base = f;
    auto eval = [base, m, mo](double y) {
        Jet jf = base.at(y);
        Jet out(mo);
        for (int k = 0; k <= mo; ++k) out.set_coeff(k, jf.derivative(m + k) / factorial(k));
        return out;
    };
    return JetFunction(mo, std::move(desc), g, std::move(eval));
}

std::string fmt_json_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

CnAlphaWitness norm_cn_alpha(const JetFunction& f, double b, int n, double alpha,
                             const GridSpec& grid) {
    if (!(b > 0.0)) throw std::invalid_argument("norm_cn_alpha: b must be positive");
    if (n < 0) throw std::invalid_argument("norm_cn_alpha: n must be >= 0");
    if (alpha < 0.0) throw std::invalid_argument("norm_cn_alpha: alpha must be >= 0");
    if (!f.valid() || f.max_order() < n)
        throw std::invalid_argument("norm_cn_alpha: function carries fewer derivatives than n");
    validate_grid(grid);

    CnAlphaWitness w;
    w.b = b;
    w.n = n;
    w.alpha = alpha;
    w.cutoff = auto_cutoff(b, grid);

    Jet jb = f.at(b);
    for (int k = 0; k < n; ++k)
        w.boundary_part += std::abs(jb.derivative(k)) / std::pow(b, n - k + alpha);

    const GrowthInfo& g = f.growth();
    const double excess = g.known ? g.deriv_degree(n) - alpha : 0.0;
    if (g.known && excess > 1e-12) {
        // the sup provably diverges; certify the divergence instead of sampling
        w.sup_part = kInf;
        w.norm_estimate = kInf;
        w.certified = true;
        return w;
    }

    std::vector<double> ys = build_grid(b, w.cutoff, grid);
    const double ymid = std::sqrt(b * w.cutoff);
    double sup = 0.0, sup_mid = 0.0;
    for (double y : ys) {
        double q = std::abs(f.at(y).derivative(n)) / std::pow(y, alpha);
        sup = std::max(sup, q);
        if (y <= ymid) sup_mid = sup;
    }
    w.samples = ys.size();
    w.sup_part = sup;
    w.plateau = sup > 0.0 ? (sup - sup_mid) <= 1e-6 * sup : true;
    w.certified = g.known && excess <= 1e-12;
    w.norm_estimate = w.boundary_part + w.sup_part;
    return w;
}

CnRWitness norm_cn_r(const JetFunction& f, int n, double alpha, const GridSpec& grid) {
    if (n < 0) throw std::invalid_argument("norm_cn_r: n must be >= 0");
    if (alpha < 0.0) throw std::invalid_argument("norm_cn_r: alpha must be >= 0");
    if (!f.valid() || f.max_order() < n)
        throw std::invalid_argument("norm_cn_r: function carries fewer derivatives than n");
    validate_grid(grid);

    CnRWitness w;
    w.n = n;
    w.alpha = alpha;
    w.window = grid.cutoff > 0.0 ? grid.cutoff : 1e3;

    const GrowthInfo& g = f.growth();
    double excess = -kInf;
    if (g.known)
        for (int k = 0; k <= n; ++k) excess = std::max(excess, g.deriv_degree(k) - alpha);
    if (g.known && excess > 1e-12) {
        w.norm_estimate = kInf;
        w.certified = true;
        return w;
    }

    std::vector<double> ys = build_window_grid(w.window, grid);
    const double inner = w.window / 10.0;
    double sup = 0.0, sup_inner = 0.0;
    for (double y : ys) {
        Jet j = f.at(y);
        double r_alpha = std::pow(1.0 + std::abs(y), alpha);
        double q = 0.0;
        for (int k = 0; k <= n; ++k) q = std::max(q, std::abs(j.derivative(k)));
        q /= r_alpha;
        sup = std::max(sup, q);
        if (std::abs(y) <= inner) sup_inner = std::max(sup_inner, q);
    }
    w.samples = ys.size();
    w.norm_estimate = sup;
    w.plateau = sup > 0.0 ? (sup - sup_inner) <= 1e-6 * sup : true;
    w.certified = g.known && excess <= 1e-12;
    return w;
}

BoundCheckReport check_derivative_bound(const JetFunction& f, const CnAlphaWitness& witness,
                                        const GridSpec& grid) {
    validate_grid(grid);
    BoundCheckReport rep;
    if (!std::isfinite(witness.norm_estimate)) return rep;  // infinite bound holds trivially
    GridSpec g2 = grid;
    g2.cutoff = witness.cutoff;
    std::vector<double> ys = build_grid(witness.b, witness.cutoff, g2);
    for (double y : ys) {
        Jet j = f.at(y);
        for (int k = 0; k <= witness.n; ++k) {
            double lhs = std::abs(j.derivative(k));
            double rhs = witness.norm_estimate * std::pow(y, witness.n - k + witness.alpha);
            double margin = (rhs - lhs) / std::max(rhs, 1e-300);
            if (margin < rep.worst_margin) {
                rep.worst_margin = margin;
                rep.worst_y = y;
                rep.worst_k = k;
            }
        }
    }
    rep.pass = rep.worst_margin >= -kRelSlack;
    return rep;
}

std::string InequalityReport::json_row() const {
    std::string s = "{\"inequality_id\":\"" + inequality_id + "\"";
    s += ",\"lhs\":" + fmt_json_number(lhs);
    s += ",\"rhs\":" + fmt_json_number(rhs);
    s += ",\"margin\":" + fmt_json_number(margin);
    s += std::string(",\"pass\":") + (pass ? "true" : "false") + "}";
    return s;
}

InequalityReport check_restriction(const JetFunction& f, double b, double c, int n, double alpha,
                                   const GridSpec& grid) {
    if (!(c >= b)) throw std::invalid_argument("check_restriction: needs c >= b");
    CnAlphaWitness wc = norm_cn_alpha(f, c, n, alpha, grid);
    // nest the restricted grid into the full one so sampled sups stay ordered
    GridSpec gb = grid;
    gb.cutoff = std::max(auto_cutoff(b, grid), wc.cutoff);
    std::vector<double> nested = build_grid(c, wc.cutoff, grid);
    gb.extra.insert(gb.extra.end(), nested.begin(), nested.end());
    CnAlphaWitness wb = norm_cn_alpha(f, b, n, alpha, gb);
    return make_report("restriction", wc.norm_estimate, (n + 1.0) * wb.norm_estimate);
}

InequalityReport check_derivative_norm(const JetFunction& f, double b, int n, int m, double alpha,
                                       const GridSpec& grid) {
    if (m < 0 || m > n) throw std::invalid_argument("check_derivative_norm: needs 0 <= m <= n");
    JetFunction fm = derivative_function(f, m);
    CnAlphaWitness lhs = norm_cn_alpha(fm, b, n - m, alpha, grid);
    CnAlphaWitness rhs = norm_cn_alpha(f, b, n, alpha, grid);
    return make_report("derivative_norm", lhs.norm_estimate, rhs.norm_estimate);
}

InequalityReport check_exponent_embedding(const JetFunction& f, double b, int n, int m,
                                          double alpha, double beta, const GridSpec& grid) {
    if (m < 0 || m > n) throw std::invalid_argument("check_exponent_embedding: needs 0 <= m <= n");
    if (beta < alpha + n - m - 1e-12)
        throw std::invalid_argument("check_exponent_embedding: needs beta >= alpha + n - m");
    CnAlphaWitness lhs = norm_cn_alpha(f, b, m, beta, grid);
    CnAlphaWitness rhs = norm_cn_alpha(f, b, n, alpha, grid);
    double c = (m + 1.0) / std::pow(b, beta - alpha - n + m);
    return make_report("exponent_embedding", lhs.norm_estimate, c * rhs.norm_estimate);
}

InequalityReport check_monomial_mult(const JetFunction& f, double b, int n, double alpha, int p,
                                     const GridSpec& grid) {
    if (p < 0) throw std::invalid_argument("check_monomial_mult: needs p >= 0");
    JetFunction ypf = jets::product(jets::monomial(p, f.max_order()), f);
    CnAlphaWitness lhs = norm_cn_alpha(ypf, b, n, alpha + p, grid);
    CnAlphaWitness rhs = norm_cn_alpha(f, b, n, alpha, grid);
    return make_report("monomial_mult", lhs.norm_estimate,
                       std::pow(p + n + 1.0, n) * rhs.norm_estimate);
}

InequalityReport check_product(const JetFunction& f, const JetFunction& g, int n, double alpha,
                               double beta, const GridSpec& grid) {
    JetFunction fg = jets::product(f, g);
    CnRWitness lhs = norm_cn_r(fg, n, alpha + beta, grid);
    CnRWitness wf = norm_cn_r(f, n, alpha, grid);
    CnRWitness wg = norm_cn_r(g, n, beta, grid);
    return make_report("product", lhs.norm_estimate,
                       std::pow(2.0, n) * wf.norm_estimate * wg.norm_estimate);
}

InequalityReport check_monomial_mult_r(const JetFunction& f, int n, double alpha, int m,
                                       const GridSpec& grid) {
    if (m < 0) throw std::invalid_argument("check_monomial_mult_r: needs m >= 0");
    JetFunction ymf = jets::product(jets::monomial(m, f.max_order()), f);
    CnRWitness lhs = norm_cn_r(ymf, n, alpha + m, grid);
    CnRWitness rhs = norm_cn_r(f, n, alpha, grid);
    return make_report("monomial_mult_r", lhs.norm_estimate,
                       std::pow(1.0 + m, n) * rhs.norm_estimate);
}

InequalityReport check_plane_wave_mult(const JetFunction& f, int n, double alpha, double kappa,
                                       const GridSpec& grid) {
    JetFunction ef = jets::product(jets::plane_wave(kappa, f.max_order()), f);
    CnRWitness lhs = norm_cn_r(ef, n, alpha, grid);
    CnRWitness rhs = norm_cn_r(f, n, alpha, grid);
    return make_report("plane_wave_mult", lhs.norm_estimate,
                       std::pow(1.0 + std::abs(kappa), n) * rhs.norm_estimate);
}

InequalityReport check_shift_invariance(const JetFunction& f, int n, double alpha, double x,
                                        const GridSpec& grid) {
    JetFunction fx = jets::shift(f, x);
    CnRWitness lhs = norm_cn_r(fx, n, alpha, grid);
    // widen the reference window so every shifted sample point is covered
    double Y = (grid.cutoff > 0.0 ? grid.cutoff : 1e3);
    GridSpec gr = grid;
    gr.cutoff = Y + std::abs(x);
    std::vector<double> shifted = build_window_grid(Y, grid);
    for (double& y : shifted) y += x;
    gr.extra.insert(gr.extra.end(), shifted.begin(), shifted.end());
    CnRWitness rhs = norm_cn_r(f, n, alpha, gr);
    return make_report("shift_invariance", lhs.norm_estimate,
                       std::pow(1.0 + std::abs(x), alpha) * rhs.norm_estimate);
}

InequalityReport check_embedding(const JetFunction& f, double b, int n, double alpha,
                                 const GridSpec& grid) {
    CnAlphaWitness lhs = norm_cn_alpha(f, b, n, alpha, grid);
    GridSpec gr = grid;
    gr.cutoff = std::max(grid.cutoff > 0.0 ? grid.cutoff : 1e3, lhs.cutoff);
    std::vector<double> right = build_grid(b, lhs.cutoff, grid);
    gr.extra.insert(gr.extra.end(), right.begin(), right.end());
    CnRWitness rhs = norm_cn_r(f, n, alpha, gr);
    return make_report("embedding", lhs.norm_estimate,
                       std::pow(1.0 + 1.0 / b, n + alpha) * rhs.norm_estimate);
}

std::vector<InequalityReport> check_space_inequalities(std::uint64_t seed, int trials) {
    if (trials < 1) throw std::invalid_argument("check_space_inequalities: trials must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<InequalityReport> out;
    GridSpec grid;
    grid.delta = 3e-2;  // battery grid; individual checkers default finer

    for (int t = 0; t < trials; ++t) {
        const int n = 1 + static_cast<int>(unit(rng) * 3.999);
        const double b = 0.5 + 2.0 * unit(rng);
        const double c = b * (1.0 + 2.0 * unit(rng));
        const double alpha = std::floor(unit(rng) * 3.0) * 0.5;
        const double kappa = -3.0 + 6.0 * unit(rng);
        const double x = -2.0 + 4.0 * unit(rng);
        const int p = static_cast<int>(unit(rng) * 2.999);
        const int m = static_cast<int>(unit(rng) * (n + 0.999));
        const int order = n + p + 2;

        // bounded catalog functions keep every C^n_alpha norm finite
        JetFunction f;
        switch (static_cast<int>(unit(rng) * 3.999)) {
            case 0: f = jets::plane_wave(kappa, order); break;
            case 1: f = jets::gaussian(0.1 + unit(rng), order); break;
            case 2: f = jets::lorentzian(order); break;
            default:
                f = jets::sum(jets::plane_wave(kappa, order),
                              jets::scale(cplx{unit(rng), unit(rng)}, jets::gaussian(0.5, order)));
        }
        JetFunction g = (t % 2 == 0) ? jets::lorentzian(order)
                                     : jets::product(jets::monomial(1, order),
                                                     jets::gaussian(0.25 + unit(rng), order));
        const double beta_r = (t % 2 == 0) ? 0.0 : 1.0;  // true growth exponent of g

        out.push_back(check_restriction(f, b, c, n, alpha, grid));
        out.push_back(check_derivative_norm(f, b, n, m, alpha, grid));
        out.push_back(check_exponent_embedding(f, b, n, m, alpha, alpha + (n - m) + unit(rng), grid));
        out.push_back(check_monomial_mult(f, b, n, alpha, p, grid));
        out.push_back(check_product(f, g, n, alpha, beta_r, grid));
        out.push_back(check_monomial_mult_r(f, n, alpha, p, grid));
        out.push_back(check_plane_wave_mult(f, n, alpha, kappa, grid));
        out.push_back(check_shift_invariance(f, n, alpha, x, grid));
        out.push_back(check_embedding(f, b, n, alpha, grid));
    }
    return out;
}

}  // namespace oscint
