#pragma once

#include <array>
#include <string>
#include <vector>

#include "oscint/jet.hpp"
#include "oscint/quadrature.hpp"
#include "oscint/spaces.hpp"

namespace oscint {

// Problem statement for the oscillatory integral over [b, inf) of
// e^{i a y^2} f(y), defined as the eps -> 0 limit of integrals regularized by
// e^{-eps (y-y0)^2}. The hypothesis n > alpha + 1 makes the limit exist for
// every f in the weighted space with parameters (b, n, alpha).
struct IntegralSpec {
    double a;
    double b;
    int n;
    double alpha;
    double y0;

    IntegralSpec(double a, double b, int n, double alpha = 0.0, double y0 = 0.0);
    // panel widths scale like 1/|a|; tiny |a| is valid but ill-conditioned
    bool conditioning_warning() const;
};

enum class EvalMethod { oracle, representation, riemann };

const char* method_name(EvalMethod m);

struct EvalDiagnostics {
    long panels = 0;
    // oracle: the eps rungs evaluated; riemann: the truncation radii
    std::vector<double> ladder;
    int extrapolation_order = 0;
    cplx raw_last{};                 // last-rung value before extrapolation
    double boundary_magnitude = 0.0; // |double boundary sum| (representation)
    double tail_magnitude = 0.0;     // sum of |weighted tail integrals|
    bool conditioning_warning = false;
    // set when a precondition (decay hypothesis, regularity) is asserted by
    // metadata rather than proven; the value is still computed
    bool hypothesis_flag = false;
};

struct EvalReport {
    cplx value{};
    double abs_error_estimate = 0.0;
    EvalMethod method = EvalMethod::oracle;
    bool converged = false;
    EvalDiagnostics diagnostics;

    std::string to_json() const;
};

// Regularized integral at fixed eps > 0; absolutely convergent, evaluated by
// phase-coherent panels with a certified Gaussian tail cutoff.
EvalReport regularized_integral(const JetFunction& f, const IntegralSpec& spec, double eps,
                                const QuadratureConfig& cfg = {});

// eps -> 0 limit along the config ladder, Richardson-extrapolated. The batch
// variant shares every panel, node, and stopping decision across the inputs,
// so results are linear across the batch to rounding.
EvalReport oracle_limit(const JetFunction& f, const IntegralSpec& spec,
                        const QuadratureConfig& cfg = {});
std::vector<EvalReport> oracle_limit_batch(const std::vector<JetFunction>& fs,
                                           const IntegralSpec& spec,
                                           const QuadratureConfig& cfg = {});

// eps = 0 representation: boundary double sum plus 2n absolutely convergent
// tail integrals (f^{(n)}/y^{n+2l} and f^{(k)}/y^{k+2n}), evaluated in one
// batch with certified algebraic cutoffs. Requires f.max_order >= spec.n.
EvalReport representation_value(const JetFunction& f, const IntegralSpec& spec,
                                const QuadratureConfig& cfg = {});
std::vector<EvalReport> representation_value_batch(const std::vector<JetFunction>& fs,
                                                   const IntegralSpec& spec,
                                                   const QuadratureConfig& cfg = {});

// Right-hand side of the iterated integration-by-parts identity at fixed
// eps > 0 and column depth m >= 0: boundary sums over k < n, l <= m plus
// direct quadrature of the n + m + 1 remaining regularized integrals.
// Values for different m must agree; that tests the identity itself.
EvalReport ibp_formula_value(const JetFunction& f, const IntegralSpec& spec, double eps, int m,
                             const QuadratureConfig& cfg = {});

// Two-sided check of the single integration-by-parts step at fixed eps:
// lhs = I(f / y_eps^kappa) against the boundary term and the two shifted
// integrals. residual = |lhs - rhs|, scale = max(1, |lhs|, |rhs|).
struct IdentityCheckReport {
    cplx lhs{};
    cplx rhs{};
    double residual = 0.0;
    double scale = 1.0;
    bool pass = false;
};

IdentityCheckReport ibp_identity_check(const JetFunction& f, const IntegralSpec& spec, double eps,
                                       int kappa, const QuadratureConfig& cfg = {},
                                       double tol = 1e-9);

// Explicit a-priori constant: |I^{eps,y0}(f)| <= D * ||f|| for 0 < eps <= 1,
// and the same bound for the limit. |a| * D tends to b^{n+alpha-1}/2.
double d_bound_constant(double a, double b, int n, double alpha);

// D * ||f|| with the norm taken from a computed witness; witness parameters
// must match the spec.
double theorem_bound(const CnAlphaWitness& witness, const IntegralSpec& spec);

// Truncated proper integrals int_b^R e^{iay^2} f dy on an increasing ladder
// of radii, accelerated. Valid when f^{(k)} = o(y^{k+1}) for k < n; growth
// metadata gates the hypothesis flag. An empty ladder selects phase-coherent
// automatic truncation radii.
EvalReport riemann_limit(const JetFunction& f, const IntegralSpec& spec,
                         const std::vector<double>& R_ladder = {},
                         const QuadratureConfig& cfg = {});

// One-parameter family s -> I_{a(s), b(s)}(f(s, .)). f and df_ds produce the
// y-jet functions at fixed s; n and alpha describe f(s, .) across the window
// (df_ds may grow two powers faster). Requires n > alpha + 3.
struct ParametricFamily {
    std::function<double(double)> a, da;
    std::function<double(double)> b, db;
    std::function<JetFunction(double)> f;
    std::function<JetFunction(double)> df_ds;
    int n = 0;
    double alpha = 0.0;
    double y0 = 0.0;
};

// d/ds of s -> I_{a(s),b(s)}(f(s,.)):
//   -b'(s) e^{ia(s)b(s)^2} f(s, b(s)) + I_{a(s),b(s)}(ia'(s) y^2 f + df/ds).
cplx parametric_derivative(const ParametricFamily& family, double s,
                           const QuadratureConfig& cfg = {});

// |I(f_m) - I(f)| <= D * ||f - f_m|| for every perturbation, all values from
// one shared batch so the differences are exact to rounding.
struct ContinuityReport {
    std::vector<double> norm_difference;
    std::vector<double> value_difference;
    std::vector<double> bound;
    std::vector<bool> within_bound;
    cplx base_value{};
    bool pass = false;
};

ContinuityReport continuity_check(const JetFunction& f, const std::vector<JetFunction>& fm,
                                  const IntegralSpec& spec, const QuadratureConfig& cfg = {});

// Contour integral of psi(z) = I(f(z, .)) around a triangle; a residual far
// below perimeter * max|psi| certifies holomorphy numerically (Morera).
struct HolomorphyReport {
    cplx contour_integral{};
    double residual = 0.0;
    double perimeter = 0.0;
    double max_abs_psi = 0.0;
    bool pass = false; // residual <= 1e-6 * perimeter * max|psi|
};

HolomorphyReport holomorphy_check(const std::function<JetFunction(cplx)>& family,
                                  const std::array<cplx, 3>& vertices, const IntegralSpec& spec,
                                  const QuadratureConfig& cfg = {});

}  // namespace oscint
