#pragma once

#include <functional>
#include <string>
#include <vector>

#include "oscint/oscillatory.hpp"

namespace oscint {

// Green's kernel G(t,x,y) = e^{i a(t) (y-x)^2} Gtilde(t,x,y) together with
// the partials of Gtilde, each delivered as a jet function in y at fixed
// (t,x). a must be positive on (0,T) and blow up as t -> 0+; the regularity
// window n > alpha + 3 admits initial data growing like r^beta for any
// beta < n - alpha - 3.
struct GreensDecomposition {
    double T = 0.0;  // time horizon; +inf allowed
    std::function<double(double)> a;
    std::function<double(double)> da;
    std::function<JetFunction(double, double)> gtilde;
    std::function<JetFunction(double, double)> gtilde_x;
    std::function<JetFunction(double, double)> gtilde_xx;
    std::function<JetFunction(double, double)> gtilde_t;
    int n = 0;
    double alpha = 0.0;

    // structural checks: parameter window, a(t) > 0 and monotone growth of
    // a along t = 2^{-j}; throws on violation
    void validate() const;
};

struct InitialCondition {
    JetFunction F;
    double beta = 0.0;

    InitialCondition(JetFunction F, double beta);
};

// Which evaluation of the outer pieces to use. The two routes differ in how
// the oscillatory phase is factored: ghat keeps the integrals on [b, inf) and
// [-inf, -b] with the e^{iay^2} phase and envelope e^{ia(x^2 -+ 2xy)}Gtilde F;
// shifted substitutes u = y -+ x, moving the endpoints to b -+ x with the
// kernel phase e^{iau^2} intact. Agreement is a consistency test; automatic
// picks shifted when |x| is close to b.
enum class PsiRoute { automatic, ghat, shifted };

struct PsiReport {
    cplx value{};
    double abs_error_estimate = 0.0;
    cplx part_plus{};   // integral over [b, inf)
    cplx part_core{};   // proper integral over [-b, b]
    cplx part_minus{};  // integral over (-inf, -b]
    double err_plus = 0.0, err_core = 0.0, err_minus = 0.0;
    long panels = 0;
    bool converged = false;
    bool tiny_time_flag = false;  // t < 1e-4: panels become extremely narrow
};

// Wave function at one point: three-way split into the two oscillatory tails
// plus the proper integral over [-b, b]. Requires 0 < t < T and b > |x|.
PsiReport psi(const GreensDecomposition& g, const InitialCondition& F, double t, double x,
              double b, const QuadratureConfig& cfg = {}, PsiRoute route = PsiRoute::automatic);

// Shared-panel batch over several initial conditions at one (t, x, b);
// differences across members are exact to rounding.
std::vector<PsiReport> psi_multi(const GreensDecomposition& g,
                                 const std::vector<InitialCondition>& Fs, double t, double x,
                                 double b, const QuadratureConfig& cfg = {},
                                 PsiRoute route = PsiRoute::automatic);

double default_split_radius(double x);  // |x| + 2

struct PsiDerivatives {
    cplx dt{};
    cplx dxx{};
    double err_dt = 0.0;
    double err_dxx = 0.0;
    bool converged = false;
};

// Time and second space derivative by the same three-way split with the
// analytically differentiated kernels under the integral; never finite
// differences.
PsiDerivatives psi_derivatives(const GreensDecomposition& g, const InitialCondition& F, double t,
                               double x, double b, const QuadratureConfig& cfg = {},
                               PsiRoute route = PsiRoute::automatic);

// |i dPsi/dt + d2Psi/dx2| pointwise (zero potential); small residual
// certifies the solution property at (t, x).
double pde_residual(const GreensDecomposition& g, const InitialCondition& F, double t, double x,
                    double b, const QuadratureConfig& cfg = {});

// Psi(t, x) along a decreasing time ladder against F(x); also tracks the
// outer pieces, which must vanish in the limit.
struct InitialConditionReport {
    std::vector<double> t;
    std::vector<cplx> psi_value;
    std::vector<double> deviation;       // |Psi(t,x) - F(x)|
    std::vector<double> outer_magnitude; // |part_plus| + |part_minus|
    std::vector<bool> rung_converged;
    bool decreasing = false;  // deviation trend over the ladder
    bool outer_vanishes = false;
};

InitialConditionReport initial_condition_check(const GreensDecomposition& g,
                                               const InitialCondition& F, double x,
                                               const std::vector<double>& t_ladder, double b,
                                               const QuadratureConfig& cfg = {});

// |Psi(t,x;F_m) - Psi(t,x;F)| against the norm differences ||F - F_m||,
// all values from one shared batch.
struct DependenceReport {
    std::vector<double> norm_difference;
    std::vector<double> value_difference;
    cplx base_value{};
    bool proportional = false;  // differences shrink with the norms
};

DependenceReport continuous_dependence_check(const GreensDecomposition& g,
                                             const InitialCondition& F,
                                             const std::vector<InitialCondition>& Fm, double t,
                                             double x, double b, const QuadratureConfig& cfg = {});

// Pointwise identity e^{ia(y-x)^2} Gtilde == e^{iay^2} e^{ia(x^2-2xy)} Gtilde
// between the two kernel factorizations, sampled on a y-grid.
double decomposition_consistency(const GreensDecomposition& g, double t, double x,
                                 const std::vector<double>& ys);

}  // namespace oscint
