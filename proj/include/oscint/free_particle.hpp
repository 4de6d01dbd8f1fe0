#pragma once

#include "oscint/schrodinger.hpp"

namespace oscint {

// Principal branch: cut along the negative real axis, Re(sqrt(z)) >= 0.
// All kernel constants route through this helper so the branch cannot drift.
cplx principal_sqrt(cplx z);

// Entire error function erf(z) = (2/sqrt(pi)) int_0^z e^{-xi^2} dxi.
// Maclaurin series for small |z|, a rational Faddeeva approximation beyond;
// absolute accuracy 1e-13 on |z| <= 10. |Re(z^2)| >= 700 would overflow the
// e^{-z^2} prefactor and throws range_error.
cplx complex_erf(cplx z);

// Scaled complementary error function w(z) = e^{-z^2} erfc(-iz) for
// Im(z) >= 0, extended to the lower half plane by the reflection formula.
cplx faddeeva_w(cplx z);

// Integral over [b, inf) of e^{iay^2 + i kappa y}:
//   sqrt(pi)/(2 sqrt(-ia)) e^{kappa^2/(4ia)} (1 - erf(b sqrt(-ia) - i kappa/(2 sqrt(-ia)))).
cplx closed_form_oscillatory_exp(double a, double b, double kappa);

// Free-particle wave function for the plane-wave datum e^{i kappa y}:
// e^{i kappa x - i kappa^2 t}.
cplx closed_form_plane_wave(double t, double x, double kappa);

// Free-particle wave function for the monomial datum y^m:
//   g_m(t,x) = m! sum_{k=0}^{floor(m/2)} x^{m-2k} (it)^k / (k! (m-2k)!).
cplx closed_form_moment(double t, double x, int m);

// The explicit kernel G = e^{i(y-x)^2/(4t)} / (2 sqrt(i pi t)):
// a(t) = 1/(4t), Gtilde = 1/(2 sqrt(i pi t)), Gtilde_x = Gtilde_xx = 0,
// Gtilde_t = -1/(4 sqrt(i pi) t^{3/2}). Valid for any n >= 4 at alpha = 0.
GreensDecomposition free_particle_kernel(int n);

// int_{-x0}^{x0} G(t,x,y) phi(y) dy along a decreasing time ladder, evaluated
// through the erf-based integration-by-parts form
//   (1/2) erf((y-x)/(2 sqrt(it))) phi(y) |_{-x0}^{x0}
//     - (1/2) int erf((y-x)/(2 sqrt(it))) phi'(y) dy,
// which converges to phi(x) as erf -> sgn(y - x).
struct KernelIdentityReport {
    std::vector<double> t;
    std::vector<cplx> value;
    std::vector<double> deviation;  // |value - phi(x)|
    bool converges = false;
};

KernelIdentityReport kernel_initial_condition_identity(double x0, const JetFunction& phi,
                                                       double x,
                                                       const std::vector<double>& t_ladder,
                                                       const QuadratureConfig& cfg = {});

}  // namespace oscint
