#include "oscint/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace oscint {

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
    if (max_panels < 1) throw std::invalid_argument("QuadratureConfig: max_panels must be >= 1");
    if (panel_rule < 2 || panel_rule > 64)
        throw std::invalid_argument("QuadratureConfig: panel_rule out of range [2,64]");
    if (!(eps0 > 0.0) || !(eps_ratio > 0.0) || eps_ratio >= 1.0)
        throw std::invalid_argument("QuadratureConfig: eps ladder must be strictly decreasing");
    if (eps_rungs < 2) throw std::invalid_argument("QuadratureConfig: need at least 2 eps rungs");
}

std::vector<double> QuadratureConfig::eps_ladder() const {
    std::vector<double> out(static_cast<size_t>(eps_rungs));
    double e = eps0;
    for (int r = 0; r < eps_rungs; ++r) {
        out[static_cast<size_t>(r)] = e;
        e *= eps_ratio;
    }
    return out;
}

const GaussLegendre& GaussLegendre::rule(int order) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    if (order < 2 || order > 64) throw std::invalid_argument("GaussLegendre: order out of range");

    GaussLegendre g;
    g.x.resize(static_cast<size_t>(order));
    g.w.resize(static_cast<size_t>(order));
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton on P_order with the Chebyshev-like initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        if (order % 2 == 1 && i == m - 1) x = 0.0;  // middle node of an odd rule
        g.x[static_cast<size_t>(i)] = -x;
        g.x[static_cast<size_t>(order - 1 - i)] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        g.w[static_cast<size_t>(i)] = w;
        g.w[static_cast<size_t>(order - 1 - i)] = w;
    }
    return cache.emplace(order, std::move(g)).first->second;
}

void AveragingAccelerator::push(cplx term) {
    ++n_;
    std::vector<cplx> next(std::min<size_t>(diag_.size() + 1, kMaxDepth + 1));
    next[0] = (diag_.empty() ? cplx{} : diag_[0]) + term;
    for (size_t i = 1; i < next.size(); ++i) next[i] = 0.5 * (next[i - 1] + diag_[i - 1]);
    diag_ = std::move(next);
    prev_est_ = est_;
    est_ = diag_.back();
    double settle = diag_.size() >= 2 ? std::abs(diag_[diag_.size() - 1] - diag_[diag_.size() - 2])
                                      : std::abs(est_);
    resid_ = (n_ >= 2) ? std::abs(est_ - prev_est_) + settle : 1e308;
}

namespace {

// bound for int_Y^inf e^{-eps (y-y0)^2} coeff * y^d dy, d >= 0, Y >= max(1, y0+1/sqrt eps)
double gaussian_tail_bound(double eps, double y0, double Y, double coeff, double deg) {
    double d = std::max(deg, 0.0);
    double u = Y - y0;
    if (u <= 0.0) return 1e308;
    double c = 2.0 * eps * u;
    double head = std::exp(-eps * u * u);
    double poly = std::pow(2.0, d) * (std::pow(Y, d) / c + std::tgamma(d + 1.0) / std::pow(c, d + 1.0));
    return coeff * head * poly;
}

double algebraic_tail_bound(double Y, double coeff, double deg) {
    if (!(deg < -1.0)) return 1e308;
    return coeff * std::pow(Y, deg + 1.0) / (-deg - 1.0);
}

}  // namespace

TailBatchResult oscillatory_tail_batch(double a, double b, int n_envelopes,
                                       const std::function<void(double, cplx*)>& envelopes,
                                       const QuadratureConfig& cfg, const TailBatchOptions& opt) {
    cfg.validate();
    if (n_envelopes <= 0) throw std::invalid_argument("oscillatory_tail_batch: empty batch");
    if (a == 0.0) throw std::invalid_argument("oscillatory_tail_batch: a must be nonzero");
    if (!(b > 0.0)) throw std::invalid_argument("oscillatory_tail_batch: b must be positive");
    const size_t K = static_cast<size_t>(n_envelopes);
    const GaussLegendre& rule = GaussLegendre::rule(cfg.panel_rule);
    const double aabs = std::abs(a);
    // panels advance the phase |a| y^2 by pi each, so successive panel sums
    // alternate in sign and iterated averaging extrapolates the series
    const double step = std::numbers::pi / aabs;

    std::vector<AveragingAccelerator> acc(K);
    std::vector<double> emp(K, 0.0);
    std::vector<cplx> vals(K), contrib(K);
    const bool have_decay = !opt.decay_degree.empty();
    if (have_decay && opt.decay_degree.size() != K)
        throw std::invalid_argument("oscillatory_tail_batch: decay_degree size mismatch");

    TailBatchResult out;
    out.value.assign(K, cplx{});
    out.err.assign(K, 0.0);

    // one Gauss pass over [lo, hi] for every member; also feeds the majorants
    auto gl_segment = [&](double lo, double hi, std::vector<cplx>& seg) {
        seg.assign(K, cplx{});
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int q = 0; q < cfg.panel_rule; ++q) {
            const double y = mid + half * rule.x[static_cast<size_t>(q)];
            const double ww = half * rule.w[static_cast<size_t>(q)];
            envelopes(y, vals.data());
            const double ph = a * y * y;
            const cplx rot(std::cos(ph), std::sin(ph));
            for (size_t i = 0; i < K; ++i) seg[i] += ww * rot * vals[i];
            if (have_decay) {
                for (size_t i = 0; i < K; ++i) {
                    double m = std::abs(vals[i]);
                    if (opt.damping_eps) {
                        double u = y - opt.damping_center;
                        double e = *opt.damping_eps * u * u;
                        if (e < 600.0) m *= std::exp(e);  // unfold damping for the majorant
                        else continue;                    // damped below resolution; skip
                    }
                    emp[i] = std::max(emp[i], m * std::pow(y, -opt.decay_degree[i]));
                }
            }
        }
    };

    // phase panels stay wide where the envelope is steep (small b, small |a|),
    // so each one is bisected until the batch-aggregate two-half sum settles;
    // the split decision uses only aggregate quantities, keeping the node set
    // identical across members and the batch exactly linear
    double panel_round = 0.0;
    std::function<void(double, double, const std::vector<cplx>&, int)> refine =
        [&](double lo, double hi, const std::vector<cplx>& whole, int depth) {
            const double mid = 0.5 * (lo + hi);
            std::vector<cplx> left, right;
            gl_segment(lo, mid, left);
            gl_segment(mid, hi, right);
            double diff = 0.0, mag = 0.0;
            for (size_t i = 0; i < K; ++i) {
                diff += std::abs(whole[i] - left[i] - right[i]);
                mag += std::abs(left[i]) + std::abs(right[i]);
            }
            if (depth >= 10 || diff <= std::max(cfg.abs_tol, 0.1 * cfg.rel_tol * mag)) {
                for (size_t i = 0; i < K; ++i) contrib[i] += left[i] + right[i];
                panel_round += diff;
                return;
            }
            refine(lo, mid, left, depth + 1);
            refine(mid, hi, right, depth + 1);
        };

    double ylo = b;
    int consecutive_ok = 0;
    bool cutoff_hit = false;
    long j = 0;
    std::vector<cplx> whole;
    for (; j < cfg.max_panels; ++j) {
        const double yhi = std::sqrt(b * b + static_cast<double>(j + 1) * step);
        std::fill(contrib.begin(), contrib.end(), cplx{});
        gl_segment(ylo, yhi, whole);
        refine(ylo, yhi, whole, 0);
        for (size_t i = 0; i < K; ++i) acc[i].push(contrib[i]);
        ylo = yhi;

        bool all_ok = j + 1 >= opt.min_panels;
        for (size_t i = 0; all_ok && i < K; ++i) {
            double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(acc[i].estimate()));
            all_ok = acc[i].residual() <= tol;
        }
        if (all_ok && ++consecutive_ok >= 2) {
            out.converged = true;
            break;
        }
        if (!all_ok) consecutive_ok = 0;

        // certified cutoff once the remaining tail is provably below budget
        if (have_decay && yhi >= std::max(1.0, opt.damping_center + 1.0)) {
            bool bounded = true;
            for (size_t i = 0; bounded && i < K; ++i) {
                double bnd = opt.damping_eps
                                 ? gaussian_tail_bound(*opt.damping_eps, opt.damping_center, yhi,
                                                       emp[i], opt.decay_degree[i])
                                 : algebraic_tail_bound(yhi, emp[i], opt.decay_degree[i]);
                bounded = bnd <= cfg.abs_tol;
            }
            if (bounded && j + 1 >= opt.min_panels) {
                out.converged = true;
                cutoff_hit = true;
                break;
            }
        }
    }
    out.panels = std::min(j + 1, cfg.max_panels);
    const double Y = ylo;
    for (size_t i = 0; i < K; ++i) {
        if (cutoff_hit) {
            // absolutely convergent regime: the partial sum plus the certified
            // bound beats the averaged estimate, which lags behind
            double bnd = opt.damping_eps
                             ? gaussian_tail_bound(*opt.damping_eps, opt.damping_center, Y, emp[i],
                                                   opt.decay_degree[i])
                             : algebraic_tail_bound(Y, emp[i], opt.decay_degree[i]);
            out.value[i] = acc[i].partial_sum();
            out.err[i] = bnd + panel_round + 1e-15 * std::abs(out.value[i]);
            continue;
        }
        out.value[i] = acc[i].estimate();
        double tail = 0.0;
        if (!out.converged) {
            tail = opt.damping_eps ? gaussian_tail_bound(*opt.damping_eps, opt.damping_center, Y,
                                                         have_decay ? emp[i] : 0.0,
                                                         have_decay ? opt.decay_degree[i] : 0.0)
                                   : (have_decay ? algebraic_tail_bound(Y, emp[i],
                                                                        opt.decay_degree[i])
                                                 : 0.0);
            if (!std::isfinite(tail) || tail > 1e300)
                tail = std::abs(acc[i].residual()) * 10.0 + std::abs(out.value[i]);
        }
        out.err[i] = acc[i].residual() + tail + panel_round + 1e-16 * std::abs(out.value[i]);
    }
    return out;
}

RichardsonResult richardson_extrapolate(const std::vector<cplx>& rungs, double ratio,
                                        int max_order, int forced_order) {
    RichardsonResult r;
    const int R = static_cast<int>(rungs.size());
    if (R < 3) throw std::invalid_argument("richardson_extrapolate: need at least 3 rungs");
    r.raw_last = rungs.back();

    std::vector<std::vector<cplx>> col;
    col.push_back(rungs);
    int depth = std::min(max_order, R - 2);
    for (int s = 1; s <= depth; ++s) {
        const std::vector<cplx>& prev = col.back();
        std::vector<cplx> cur(prev.size() - 1);
        const double w = std::pow(ratio, s);
        for (size_t i = 0; i + 1 < prev.size(); ++i)
            cur[i] = (prev[i + 1] - w * prev[i]) / (1.0 - w);
        col.push_back(std::move(cur));
    }
    if (forced_order >= 1) {
        const int s = std::min(forced_order, depth);
        const std::vector<cplx>& c = col[static_cast<size_t>(s)];
        r.order = s;
        r.value = c.back();
        r.residual = std::abs(c[c.size() - 1] - c[c.size() - 2]);
    } else {
        double best = 1e308;
        for (int s = 1; s <= depth; ++s) {
            const std::vector<cplx>& c = col[static_cast<size_t>(s)];
            double res = std::abs(c[c.size() - 1] - c[c.size() - 2]);
            if (res < best) {
                best = res;
                r.order = s;
                r.value = c.back();
            }
        }
        r.residual = best;
    }

    // Cauchy behavior of the raw ladder: differences should not keep growing
    double d1 = std::abs(rungs[static_cast<size_t>(R - 1)] - rungs[static_cast<size_t>(R - 2)]);
    double d2 = std::abs(rungs[static_cast<size_t>(R - 2)] - rungs[static_cast<size_t>(R - 3)]);
    double scale = std::abs(r.value) + 1.0;
    r.converged = !(d1 > d2 && d2 > 0.0 && d1 > 1e-4 * scale) &&
                  r.residual < 1e-2 * scale;
    return r;
}

ProperBatchResult proper_integral_batch(double lo, double hi, int n_integrands,
                                        const std::function<void(double, cplx*)>& integrands,
                                        const QuadratureConfig& cfg,
                                        std::vector<double> initial_splits) {
    cfg.validate();
    if (n_integrands <= 0) throw std::invalid_argument("proper_integral_batch: empty batch");
    const size_t K = static_cast<size_t>(n_integrands);
    ProperBatchResult out;
    out.value.assign(K, cplx{});
    out.err.assign(K, 0.0);
    if (lo == hi) return out;
    double sgn = 1.0;
    if (lo > hi) {
        std::swap(lo, hi);
        sgn = -1.0;
    }

    const GaussLegendre& rule = GaussLegendre::rule(cfg.panel_rule);
    std::vector<cplx> vals(K);
    auto panel = [&](double l, double h, std::vector<cplx>& dst) {
        const double mid = 0.5 * (l + h), half = 0.5 * (h - l);
        std::fill(dst.begin(), dst.end(), cplx{});
        for (int q = 0; q < cfg.panel_rule; ++q) {
            const double y = mid + half * rule.x[static_cast<size_t>(q)];
            integrands(y, vals.data());
            for (size_t i = 0; i < K; ++i) dst[i] += half * rule.w[static_cast<size_t>(q)] * vals[i];
        }
        out.evals += cfg.panel_rule;
    };

    struct Seg {
        double lo, hi;
        std::vector<cplx> v;
        int depth;
    };
    std::vector<Seg> stack;
    std::sort(initial_splits.begin(), initial_splits.end());
    std::vector<double> bounds{lo};
    for (double s : initial_splits)
        if (s > bounds.back() + 1e-300 && s < hi) bounds.push_back(s);
    bounds.push_back(hi);
    for (size_t i = bounds.size(); i-- > 1;) {
        Seg s{bounds[i - 1], bounds[i], std::vector<cplx>(K), 0};
        panel(s.lo, s.hi, s.v);
        stack.push_back(std::move(s));
    }

    // coarse magnitude for relative tolerance scaling
    std::vector<double> scale(K, 0.0);
    for (const Seg& s : stack)
        for (size_t i = 0; i < K; ++i) scale[i] += std::abs(s.v[i]);

    const double total_len = hi - lo;
    const long max_evals = cfg.max_panels * cfg.panel_rule;
    std::vector<cplx> left(K), right(K);
    while (!stack.empty()) {
        Seg s = std::move(stack.back());
        stack.pop_back();
        const double m = 0.5 * (s.lo + s.hi);
        panel(s.lo, m, left);
        panel(m, s.hi, right);
        bool ok = true;
        for (size_t i = 0; i < K && ok; ++i) {
            double delta = std::abs(s.v[i] - (left[i] + right[i]));
            double tol = std::max(cfg.abs_tol, cfg.rel_tol * scale[i]) * ((s.hi - s.lo) / total_len);
            ok = delta <= std::max(tol, 1e-16 * scale[i]);
        }
        if (ok || s.depth >= 48 || out.evals > max_evals) {
            if (!ok) out.converged = false;
            for (size_t i = 0; i < K; ++i) {
                out.value[i] += left[i] + right[i];
                out.err[i] += std::abs(s.v[i] - (left[i] + right[i]));
            }
            continue;
        }
        Seg l{s.lo, m, left, s.depth + 1};
        Seg r{m, s.hi, right, s.depth + 1};
        stack.push_back(std::move(r));
        stack.push_back(std::move(l));
    }
    for (size_t i = 0; i < K; ++i) out.value[i] *= sgn;
    return out;
}

}  // namespace oscint
