#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "oscint/free_particle.hpp"

using namespace oscint;

namespace {

double dist(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("the error function matches a frozen 50-digit reference table") {
    // mpmath erf on a grid covering all quadrants, the series/rational
    // crossover, and the exponentially large off-axis regime
    const struct {
        cplx z, ref;
    } table[] = {
        {cplx(0.5, 0.0), cplx(0.52049987781304654, 0.0)},
        {cplx(1.0, 0.0), cplx(0.84270079294971487, 0.0)},
        {cplx(2.0, 0.0), cplx(0.99532226501895273, 0.0)},
        {cplx(3.5, 0.0), cplx(0.99999925690162766, 0.0)},
        {cplx(0.0, 1.0), cplx(0.0, 1.6504257587975429)},
        {cplx(0.0, 3.0), cplx(0.0, 1629.9946226015657)},
        {cplx(1.0, 1.0), cplx(1.3161512816979476, 0.19045346923783469)},
        {cplx(2.0, 2.0), cplx(1.151310866398069, 0.12729162946314079)},
        {cplx(3.0, -3.0), cplx(0.86782649757545114, 0.012152181790312257)},
        {cplx(5.0, 1.0), cplx(1.0000000000029598, -2.8460183820855939e-12)},
        {cplx(-4.0, 2.0), cplx(-1.0000005652170028, -5.1310052960818763e-7)},
        {cplx(7.0, 0.5), cplx(1.0, 3.7946712159112757e-23)},
        {cplx(6.0, -6.0), cplx(1.0576342401356786, 0.0331391147411565)},
        {cplx(0.25, -0.75), cplx(0.47386755965954538, -0.9468077130877502)},
        {cplx(9.5, 2.0), cplx(1.0, 9.7720620174046916e-40)},
        {cplx(1.8, 6.4), cplx(-1434069590252178.8, -1483422310356499.8)},
        {cplx(-0.3, 9.7), cplx(1.8481257494994962e+39, 3.4281340450392309e+39)},
        {cplx(4.0, 4.0), cplx(0.97854923307608193, 0.097339690630831865)},
        {cplx(10.0, 0.0), cplx(1.0, 0.0)},
        {cplx(0.0, -10.0), cplx(0.0, -1.5243074227086697e+42)},
    };
    for (const auto& row : table) {
        const cplx got = complex_erf(row.z);
        const double scale = std::max(1.0, std::abs(row.ref));
        CHECK(dist(got, row.ref) <= 1e-13 * scale);
    }
}

TEST_CASE("the error function is odd and commutes with conjugation") {
    const cplx zs[] = {cplx(0.3, 0.2),  cplx(1.4, -0.9), cplx(2.5, 2.5),
                       cplx(-3.0, 1.0), cplx(0.0, 4.0),  cplx(6.0, -1.5)};
    for (cplx z : zs) {
        CHECK(dist(complex_erf(-z), -complex_erf(z)) <= 1e-13 * std::abs(complex_erf(z)) + 1e-15);
        CHECK(dist(complex_erf(std::conj(z)), std::conj(complex_erf(z))) <=
              1e-13 * std::abs(complex_erf(z)) + 1e-15);
    }
    CHECK(complex_erf(cplx(0.0, 0.0)) == cplx(0.0, 0.0));
}

TEST_CASE("arguments beyond the exponential scale are rejected") {
    CHECK_THROWS_AS(complex_erf(cplx(30.0, 0.0)), std::range_error);
    CHECK_THROWS_AS(complex_erf(cplx(1.0, 27.0)), std::range_error);
    CHECK_THROWS_AS(faddeeva_w(cplx(0.0, -27.0)), std::range_error);
    CHECK_NOTHROW(complex_erf(cplx(26.0, 0.0)));  // Re(z^2) = 676, still inside
}

TEST_CASE("the faddeeva function agrees with its erf expression") {
    // w(z) = e^{-z^2} (1 + erf(iz)); the arguments keep |iz| <= 1.5 so the
    // right side goes through the independent Maclaurin path
    const cplx zs[] = {cplx(0.5, 0.3), cplx(-0.2, 0.9), cplx(1.0, 0.1),
                       cplx(0.3, -0.4), cplx(-0.7, -0.2)};
    for (cplx z : zs) {
        const cplx via_erf =
            std::exp(-z * z) * (1.0 + complex_erf(cplx(-z.imag(), z.real())));
        CHECK(dist(faddeeva_w(z), via_erf) <= 1e-14 * std::abs(via_erf) + 1e-15);
    }
    CHECK(dist(faddeeva_w(cplx(0.0, 0.0)), cplx(1.0, 0.0)) <= 1e-14);
}

TEST_CASE("the principal square root keeps a nonnegative real part") {
    CHECK(dist(principal_sqrt(cplx(-1.0, 0.0)), cplx(0.0, 1.0)) <= 1e-16);
    CHECK(dist(principal_sqrt(cplx(-4.0, 0.0)), cplx(0.0, 2.0)) <= 1e-15);
    CHECK(dist(principal_sqrt(cplx(0.0, 2.0)), cplx(1.0, 1.0)) <= 1e-15);
    CHECK(dist(principal_sqrt(cplx(9.0, 0.0)), cplx(3.0, 0.0)) <= 1e-15);
    for (double arg = -3.1; arg < 3.1; arg += 0.37) {
        const cplx z = std::polar(2.3, arg);
        const cplx s = principal_sqrt(z);
        CHECK(s.real() >= 0.0);
        CHECK(dist(s * s, z) <= 1e-14);
    }
}

TEST_CASE("the exponential-envelope closed form matches rotated-ray quadrature") {
    // 30-digit mpmath references: the tail integral evaluated on the ray
    // y = b + s e^{i sgn(a) pi/4}, where the phase decays as e^{-|a| s^2}
    const struct {
        double a, b, kappa;
        cplx ref;
    } table[] = {
        {1.0, 1.0, 0.0, cplx(-0.27786716924252196, 0.31638876693436902)},
        {1.0, 1.0, 1.0, cplx(-0.30155722954775257, -0.079444004837113148)},
        {1.0, 0.5, -2.0, cplx(1.1692706649605187, -0.58443068185253553)},
        {5.0, 3.0, 1.0, cplx(0.024559856441072130, -0.020900600013502706)},
        {-1.0, 1.0, 0.0, cplx(-0.27786716924252196, -0.31638876693436902)},
        {-2.0, 0.7, -1.0, cplx(-0.23988082088363179, -0.021590255673939333)},
        {1.0, 3.0, 0.0, cplx(-0.076206489072518605, -0.14690545823601889)},
        {5.0, 0.5, -2.0, cplx(0.033406956411137501, 0.23392220708329447)},
    };
    for (const auto& row : table)
        CHECK(dist(closed_form_oscillatory_exp(row.a, row.b, row.kappa), row.ref) <= 1e-13);
}

TEST_CASE("reversing the phase sign conjugates the closed form") {
    for (double b : {0.5, 1.0, 3.0})
        for (double kappa : {-2.0, 0.0, 1.0}) {
            const cplx v = closed_form_oscillatory_exp(2.0, b, kappa);
            const cplx w = closed_form_oscillatory_exp(-2.0, b, -kappa);
            CHECK(dist(w, std::conj(v)) <= 1e-14 * std::abs(v) + 1e-16);
        }
    CHECK_THROWS_AS(closed_form_oscillatory_exp(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("the plane-wave solution has unit modulus and the right phase") {
    CHECK(dist(closed_form_plane_wave(0.0, 0.7, 2.0), std::exp(cplx(0.0, 1.4))) <= 1e-15);
    for (double t : {0.1, 0.5, 2.0})
        for (double kappa : {-1.0, 0.5, 3.0}) {
            const cplx v = closed_form_plane_wave(t, 0.4, kappa);
            CHECK(std::abs(std::abs(v) - 1.0) <= 1e-15);
            CHECK(dist(v, std::exp(cplx(0.0, kappa * 0.4 - kappa * kappa * t))) <= 1e-15);
        }
}

TEST_CASE("the first moments expand explicitly") {
    const double t = 0.37, x = -1.2;
    const cplx it(0.0, t);
    CHECK(dist(closed_form_moment(t, x, 0), cplx(1.0, 0.0)) <= 1e-15);
    CHECK(dist(closed_form_moment(t, x, 1), cplx(x, 0.0)) <= 1e-15);
    CHECK(dist(closed_form_moment(t, x, 2), x * x + 2.0 * it) <= 1e-15);
    CHECK(dist(closed_form_moment(t, x, 3), x * x * x + 6.0 * it * x) <= 1e-14);
    const cplx m4 = x * x * x * x + 12.0 * it * x * x - 12.0 * t * t;
    CHECK(dist(closed_form_moment(t, x, 4), m4) <= 1e-14 * std::abs(m4));
    CHECK_THROWS_AS(closed_form_moment(0.1, 0.0, -1), std::invalid_argument);
}

TEST_CASE("the explicit kernel carries the right phase rate and amplitude") {
    const GreensDecomposition g = free_particle_kernel(6);
    CHECK(g.n == 6);
    CHECK(g.alpha == 0.0);
    CHECK(g.T == std::numeric_limits<double>::infinity());
    CHECK(g.a(0.25) == 1.0);
    CHECK(g.a(0.5) == 0.5);
    CHECK(g.da(0.5) == -1.0);
    g.validate();

    // Gtilde = e^{-i pi/4} / (2 sqrt(pi t)), constant in y and x
    for (double t : {0.25, 0.8}) {
        const cplx want = std::polar(0.5 / std::sqrt(std::numbers::pi * t),
                                     -std::numbers::pi / 4.0);
        CHECK(dist(g.gtilde(t, 0.3).value(1.7), want) <= 1e-15);
        CHECK(dist(g.gtilde(t, -2.0).value(0.0), want) <= 1e-15);
        CHECK(g.gtilde(t, 0.0).at(1.0).derivative(1) == cplx(0.0, 0.0));
        CHECK(g.gtilde_x(t, 0.3).value(1.7) == cplx(0.0, 0.0));
        CHECK(g.gtilde_xx(t, 0.3).value(1.7) == cplx(0.0, 0.0));
    }

    // the time partial agrees with a centered difference of Gtilde
    const double t = 0.6, h = 1e-6;
    const cplx fd =
        (g.gtilde(t + h, 0.0).value(0.0) - g.gtilde(t - h, 0.0).value(0.0)) / (2.0 * h);
    const cplx an = g.gtilde_t(t, 0.0).value(0.0);
    CHECK(dist(fd, an) <= 1e-9 * std::abs(an));

    CHECK_THROWS_AS(free_particle_kernel(3), std::invalid_argument);
}

TEST_CASE("the windowed kernel integral settles on constant data") {
    const double x0 = 2.0, x = 0.3;
    const std::vector<double> ladder = {1.0 / 8, 1.0 / 32, 1.0 / 128, 1.0 / 512};
    const KernelIdentityReport r =
        kernel_initial_condition_identity(x0, jets::constant(1.0, 2), x, ladder);
    REQUIRE(r.value.size() == ladder.size());
    // constant data kill the interior term, leaving the boundary evaluation
    for (size_t j = 0; j < ladder.size(); ++j) {
        const cplx s2 = 2.0 * principal_sqrt(cplx(0.0, ladder[j]));
        const cplx exact =
            0.5 * (complex_erf((x0 - x) / s2) - complex_erf((-x0 - x) / s2));
        CHECK(dist(r.value[j], exact) <= 1e-12);
    }
    CHECK(r.converges);
    CHECK(r.deviation.back() < 0.05);
    CHECK(r.deviation.back() < r.deviation.front());
}

TEST_CASE("the windowed kernel integral recovers linear and quadratic data") {
    // the window-edge erf deficit decays like sqrt(t) with prefactor
    // ~ 2|phi(x0)| / (sqrt(pi) x0), so the ladder steps t down by 16 per rung
    const std::vector<double> ladder = {std::pow(2.0, -5), std::pow(2.0, -9),
                                        std::pow(2.0, -13), std::pow(2.0, -17)};

    const KernelIdentityReport lin =
        kernel_initial_condition_identity(3.0, jets::monomial(1, 2), 0.5, ladder);
    CHECK(lin.converges);
    CHECK(lin.deviation.back() < 0.05);

    const KernelIdentityReport quad =
        kernel_initial_condition_identity(3.0, jets::monomial(2, 2), 0.0, ladder);
    CHECK(quad.converges);
    CHECK(quad.deviation.back() < 0.05);
}

TEST_CASE("the windowed kernel integral validates its arguments") {
    const JetFunction one = jets::constant(1.0, 2);
    CHECK_THROWS_AS(kernel_initial_condition_identity(1.0, one, 1.5, {0.1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(kernel_initial_condition_identity(-1.0, one, 0.0, {0.1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(kernel_initial_condition_identity(1.0, one, 0.0, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(kernel_initial_condition_identity(1.0, one, 0.0, {0.1, -0.2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(kernel_initial_condition_identity(1.0, jets::constant(1.0, 0), 0.0, {0.1}),
                    std::invalid_argument);
}
