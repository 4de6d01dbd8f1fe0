#include "oscint/free_particle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace oscint {

namespace {

// Rational Faddeeva approximation on the upper half plane: N = 48 terms of
// the Fourier expansion in Z = (L + iz)/(L - iz), L = sqrt(N/sqrt(2)).
// Coefficients frozen from the generating FFT; highest degree first.
constexpr double kFaddeevaL = 5.825901260487881;
constexpr double kFaddeevaCoeff[48] = {
    -3.700743415417188e-17,  3.908097080905041e-17,  8.913045359641251e-17,
    4.336469876763116e-17,   2.10357809007448e-17,   7.068313479639792e-20,
    3.859105048166247e-16,   7.253797548522926e-16,  -1.8792328220691556e-15,
    -5.239158595095343e-15,  9.527536360754516e-15,  4.2342555584235587e-14,
    -3.1933415962846563e-14, -3.227757310972546e-13, -9.65501738984251e-14,
    2.2154187772000165e-12,  3.4253340904418414e-12, -1.1935451266839411e-11,
    -4.386586767527037e-11,  2.162200234796574e-11,  3.8794220773032034e-10,
    5.775289855479109e-10,   -2.015659927316155e-09, -9.596254713078844e-09,
    -6.3868099289015055e-09, 6.927000636026076e-08,  2.654949200687094e-07,
    1.949433746724146e-07,   -1.9445657790098968e-06, -9.475638240450828e-06,
    -1.905446161911202e-05,  1.7506316371117585e-05, 0.0003078691364088904,
    0.0014864991251956183,   0.005125813548225686,   0.014546837792237402,
    0.03586136998337668,     0.07895589553470005,    0.1578633044338047,
    0.2897998907960481,      0.49225702391399057,    0.7780624191484228,
    1.149220464539778,       1.5913084691178003,     2.0707599716742915,
    2.5370484874446904,      2.9304498956237564,     3.194064589395071,
};

// valid only for Im(z) >= 0
cplx faddeeva_upper(cplx z) {
    const cplx iz(-z.imag(), z.real());
    const cplx d = kFaddeevaL - iz;
    const cplx Z = (kFaddeevaL + iz) / d;
    cplx p = kFaddeevaCoeff[0];
    for (int k = 1; k < 48; ++k) p = p * Z + kFaddeevaCoeff[k];
    return 2.0 * p / (d * d) + std::numbers::inv_sqrtpi / d;
}

// Maclaurin sum, adequate to full precision for |z| <= 1.5
cplx erf_series(cplx z) {
    const cplx zz = z * z;
    cplx term = z;
    cplx s{};
    for (int k = 0; k < 64; ++k) {
        s += term / static_cast<double>(2 * k + 1);
        term *= -zz / static_cast<double>(k + 1);
        if (std::abs(term) < 1e-20 * (1.0 + std::abs(s))) break;
    }
    return 2.0 * std::numbers::inv_sqrtpi * s;
}

cplx ipow(cplx base, int p) {
    cplx r = 1.0;
    for (int i = 0; i < p; ++i) r *= base;
    return r;
}

}  // namespace

cplx principal_sqrt(cplx z) { return std::sqrt(z); }

cplx faddeeva_w(cplx z) {
    if (z.imag() >= 0.0) return faddeeva_upper(z);
    // w(z) + w(-z) = 2 e^{-z^2}; the exponential sets the overflow scale
    const cplx z2 = z * z;
    if (std::abs(z2.real()) >= 700.0)
        throw std::range_error("faddeeva_w: |Re(z^2)| >= 700 overflows the e^{-z^2} scale");
    return 2.0 * std::exp(-z2) - faddeeva_upper(-z);
}

cplx complex_erf(cplx z) {
    // |Re(z^2)| is invariant under both reductions below
    if (std::abs((z * z).real()) >= 700.0)
        throw std::range_error("complex_erf: |Re(z^2)| >= 700 overflows the e^{-z^2} scale");
    double sign = 1.0;
    if (z.real() < 0.0) {
        z = -z;
        sign = -1.0;
    }
    bool conjugated = false;
    if (z.imag() < 0.0) {
        z = std::conj(z);
        conjugated = true;
    }
    cplx r;
    if (std::abs(z) <= 1.5) {
        r = erf_series(z);
    } else {
        // first quadrant, so iz lands in the upper half plane
        r = 1.0 - std::exp(-z * z) * faddeeva_upper(cplx(-z.imag(), z.real()));
    }
    if (conjugated) r = std::conj(r);
    return sign * r;
}

cplx closed_form_oscillatory_exp(double a, double b, double kappa) {
    if (a == 0.0) throw std::invalid_argument("closed_form_oscillatory_exp: a must be nonzero");
    const cplx s = principal_sqrt(cplx(0.0, -a));  // sqrt(-ia)
    const cplx amplitude = 0.5 * std::sqrt(std::numbers::pi) / s;
    const cplx phase = std::exp(cplx(0.0, -kappa * kappa / (4.0 * a)));  // e^{kappa^2/(4ia)}
    const cplx arg = b * s - cplx(0.0, 0.5 * kappa) / s;
    return amplitude * phase * (1.0 - complex_erf(arg));
}

cplx closed_form_plane_wave(double t, double x, double kappa) {
    return std::exp(cplx(0.0, kappa * x - kappa * kappa * t));
}

cplx closed_form_moment(double t, double x, int m) {
    if (m < 0) throw std::invalid_argument("closed_form_moment: m must be >= 0");
    const cplx it(0.0, t);
    cplx s{};
    for (int k = 0; 2 * k <= m; ++k) {
        const double coeff = factorial(m) / (factorial(k) * factorial(m - 2 * k));
        const double xpow = (m - 2 * k == 0) ? 1.0 : std::pow(x, m - 2 * k);
        s += coeff * xpow * ipow(it, k);
    }
    return s;
}

GreensDecomposition free_particle_kernel(int n) {
    if (n < 4)
        throw std::invalid_argument("free_particle_kernel: n must be >= 4 (alpha = 0 window)");
    GreensDecomposition g;
    g.T = std::numeric_limits<double>::infinity();
    g.a = [](double t) { return 1.0 / (4.0 * t); };
    g.da = [](double t) { return -1.0 / (4.0 * t * t); };
    g.n = n;
    g.alpha = 0.0;
    g.gtilde = [n](double t, double) {
        const cplx c = 0.5 / principal_sqrt(cplx(0.0, std::numbers::pi * t));
        return jets::constant(c, n);
    };
    g.gtilde_x = [n](double, double) { return jets::zero(n); };
    g.gtilde_xx = [n](double, double) { return jets::zero(n); };
    g.gtilde_t = [n](double t, double) {
        const cplx c =
            -0.25 / (principal_sqrt(cplx(0.0, std::numbers::pi)) * t * std::sqrt(t));
        return jets::constant(c, n);
    };
    return g;
}

KernelIdentityReport kernel_initial_condition_identity(double x0, const JetFunction& phi,
                                                       double x,
                                                       const std::vector<double>& t_ladder,
                                                       const QuadratureConfig& cfg) {
    if (!(x0 > 0.0) || !(std::abs(x) < x0))
        throw std::invalid_argument("kernel_initial_condition_identity: need |x| < x0");
    if (phi.max_order() < 1)
        throw std::invalid_argument("kernel_initial_condition_identity: phi needs one derivative");
    if (t_ladder.empty())
        throw std::invalid_argument("kernel_initial_condition_identity: empty time ladder");

    KernelIdentityReport report;
    report.t = t_ladder;
    const cplx target = phi.value(x);
    bool all_converged = true;

    for (double t : t_ladder) {
        if (!(t > 0.0))
            throw std::invalid_argument("kernel_initial_condition_identity: t must be positive");
        const cplx s2 = 2.0 * principal_sqrt(cplx(0.0, t));  // 2 sqrt(it)
        const cplx boundary = 0.5 * (complex_erf((x0 - x) / s2) * phi.value(x0) -
                                     complex_erf((-x0 - x) / s2) * phi.value(-x0));

        // seed the transition layer around y = x, width ~ sqrt(t)
        std::vector<double> splits;
        const double layer = 10.0 * std::sqrt(t);
        for (double yc : {x - layer, x, x + layer})
            if (yc > -x0 && yc < x0) splits.push_back(yc);
        std::sort(splits.begin(), splits.end());
        splits.erase(std::unique(splits.begin(), splits.end()), splits.end());

        auto integrand = [&](double y, cplx* out) {
            out[0] = complex_erf((y - x) / s2) * phi.at(y, 1).derivative(1);
        };
        ProperBatchResult inner = proper_integral_batch(-x0, x0, 1, integrand, cfg, splits);
        all_converged = all_converged && inner.converged;

        const cplx value = boundary - 0.5 * inner.value[0];
        report.value.push_back(value);
        report.deviation.push_back(std::abs(value - target));
    }

    const double first = report.deviation.front();
    const double last = report.deviation.back();
    report.converges = all_converged && (last <= 0.25 * first + 1e-12 || last < 1e-9);
    return report;
}

}  // namespace oscint
