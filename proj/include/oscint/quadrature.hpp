#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "oscint/jet.hpp"

namespace oscint {

// Quadrature budget shared by every evaluation route.
struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_panels = 1'000'000;
    int panel_rule = 15;  // Gauss-Legendre nodes per panel
    // geometric epsilon ladder for the regularized oracle
    double eps0 = 0.1;
    double eps_ratio = 0.5;
    int eps_rungs = 12;

    void validate() const;
    std::vector<double> eps_ladder() const;
};

// Gauss-Legendre nodes/weights on [-1,1], computed once per order by Newton
// iteration on the Legendre recurrence and cached.
struct GaussLegendre {
    std::vector<double> x, w;
    static const GaussLegendre& rule(int order);
};

// Iterated-averaging extrapolation of a slowly-modulated alternating series.
// push() appends a term; estimate() is the deepest element of the averaging
// triangle, residual() a two-sided measure of how settled it is.
class AveragingAccelerator {
  public:
    void push(cplx term);
    cplx estimate() const { return est_; }
    // plain partial sum; preferred over the averaged estimate when the series
    // converges absolutely and a certified tail bound ends the summation
    cplx partial_sum() const { return diag_.empty() ? cplx{} : diag_[0]; }
    double residual() const { return resid_; }
    int count() const { return n_; }

  private:
    static constexpr int kMaxDepth = 48;
    std::vector<cplx> diag_;  // backward diagonal of the averaging table
    cplx est_{};
    cplx prev_est_{};
    double resid_ = 1e308;
    int n_ = 0;
};

// Batched evaluation of tail integrals  int_b^inf e^{i a y^2} g_i(y) dy for a
// family of envelopes sharing the panel structure. Panels advance the phase
// |a| y^2 by pi each, so consecutive contributions alternate in sign and the
// averaging accelerator applies. All envelopes are evaluated at the same
// nodes; the batch stops when every member has converged. Optional damping
// (e^{-eps (y-y0)^2} folded into the envelopes by the caller) enables a
// certified Gaussian cutoff; algebraic decay exponents enable a certified
// power-law cutoff.
struct TailBatchOptions {
    // |g_i(y)| <= coeff_i * y^{decay_degree[i]} for large y, coefficient
    // tracked empirically; degree < -1 enables the tail bound.
    std::vector<double> decay_degree;
    // Gaussian damping parameters of the envelopes, if any.
    std::optional<double> damping_eps;
    double damping_center = 0.0;
    int min_panels = 6;
};

struct TailBatchResult {
    std::vector<cplx> value;
    std::vector<double> err;
    long panels = 0;
    bool converged = false;
};

TailBatchResult oscillatory_tail_batch(double a, double b, int n_envelopes,
                                       const std::function<void(double, cplx*)>& envelopes,
                                       const QuadratureConfig& cfg,
                                       const TailBatchOptions& opt = {});

// Richardson extrapolation of v(eps) sampled on a geometric ladder
// eps_r = eps0 * ratio^r, assuming an expansion in integer powers of eps.
// The column (extrapolation order) is chosen by residual minimization, or
// pinned by forced_order >= 1 so a batch can share one column and stay linear
// across its members.
struct RichardsonResult {
    cplx value{};
    double residual = 0.0;
    int order = 0;
    bool converged = false;
    cplx raw_last{};
};

RichardsonResult richardson_extrapolate(const std::vector<cplx>& rungs, double ratio,
                                        int max_order = 4, int forced_order = -1);

// Adaptive proper integral over [lo, hi] for a batch of integrands evaluated
// together, bisecting until every member passes the tolerance on each panel.
// initial_splits are seeded panel boundaries (phase-coherent splits, kinks).
struct ProperBatchResult {
    std::vector<cplx> value;
    std::vector<double> err;
    long evals = 0;
    bool converged = true;
};

ProperBatchResult proper_integral_batch(double lo, double hi, int n_integrands,
                                        const std::function<void(double, cplx*)>& integrands,
                                        const QuadratureConfig& cfg,
                                        std::vector<double> initial_splits = {});

}  // namespace oscint
