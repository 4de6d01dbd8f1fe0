#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oscint/jet.hpp"

using namespace oscint;
using doctest::Approx;

namespace {

const cplx kI{0.0, 1.0};

void check_close(cplx got, cplx want, double tol = 1e-13) {
    double scale = std::max(1.0, std::abs(want));
    CHECK(std::abs(got - want) <= tol * scale);
}

}  // namespace

TEST_CASE("jet arithmetic follows the Cauchy product") {
    Jet a(3, {cplx{1, 0}, cplx{0, 2}, cplx{-0.5, 0}, cplx{0.25, -1}});
    Jet b(3, {cplx{2, -1}, cplx{3, 0}, cplx{0, 1}, cplx{-1, 0}});

    Jet s = jet_add(a, b);
    Jet d = jet_sub(a, b);
    for (int k = 0; k <= 3; ++k) {
        check_close(s.coeff(k), a.coeff(k) + b.coeff(k));
        check_close(d.coeff(k), a.coeff(k) - b.coeff(k));
    }

    Jet p = jet_mul(a, b);
    for (int n = 0; n <= 3; ++n) {
        cplx conv{};
        for (int i = 0; i <= n; ++i) conv += a.coeff(i) * b.coeff(n - i);
        check_close(p.coeff(n), conv);
    }

    Jet sc = jet_scale(cplx{0, -2}, a);
    for (int k = 0; k <= 3; ++k) check_close(sc.coeff(k), cplx{0, -2} * a.coeff(k));

    Jet cj = jet_conj(a);
    for (int k = 0; k <= 3; ++k) check_close(cj.coeff(k), std::conj(a.coeff(k)));

    CHECK_THROWS_AS(jet_mul(a, Jet(2)), std::invalid_argument);
}

TEST_CASE("monomial jets carry binomial coefficients") {
    const double y = 1.7;
    JetFunction f = jets::monomial(5, 7);
    Jet j = f.at(y);
    double binom[8] = {1, 5, 10, 10, 5, 1, 0, 0};
    for (int k = 0; k <= 7; ++k) {
        double want = k <= 5 ? binom[k] * std::pow(y, 5 - k) : 0.0;
        check_close(j.coeff(k), cplx{want, 0});
    }
    check_close(j.derivative(2), cplx{20 * std::pow(y, 3), 0});
    CHECK(f.growth().degree == 5.0);
    CHECK(f.growth().derivative_drop);
    CHECK_FALSE(f.growth().riemann_decay);
    CHECK(f.growth().deriv_degree(3) == 2.0);
}

TEST_CASE("polynomial jets differentiate term by term") {
    const double y = -0.6;
    JetFunction f = jets::polynomial({cplx{1, 0}, cplx{2, 0}, cplx{3, 0}, cplx{0, 0.5}}, 5);
    Jet j = f.at(y);
    cplx y3 = cplx{0, 0.5} * (y * y * y);
    check_close(j.value(), 1.0 + 2.0 * y + 3.0 * y * y + y3);
    check_close(j.derivative(1), 2.0 + 6.0 * y + cplx{0, 1.5} * (y * y));
    check_close(j.derivative(2), 6.0 + cplx{0, 3.0} * y);
    check_close(j.derivative(3), cplx{0, 3.0});
    check_close(j.derivative(4), cplx{});
    check_close(j.derivative(5), cplx{});
}

TEST_CASE("plane wave derivatives are powers of i kappa") {
    const double y = 0.35;
    SUBCASE("real frequency") {
        JetFunction f = jets::plane_wave(2.0, 6);
        Jet j = f.at(y);
        cplx base = std::exp(kI * 2.0 * y);
        cplx fac{1, 0};
        for (int k = 0; k <= 6; ++k) {
            check_close(j.derivative(k), fac * base);
            fac *= kI * 2.0;
        }
        CHECK(f.growth().riemann_decay);
    }
    SUBCASE("decaying frequency") {
        cplx kappa{1.0, 0.5};
        JetFunction f = jets::plane_wave(kappa, 4);
        Jet j = f.at(y);
        cplx base = std::exp(kI * kappa * y);
        for (int k = 0; k <= 4; ++k)
            check_close(j.derivative(k), std::pow(kI * kappa, k) * base);
    }
    SUBCASE("growing frequency is rejected") {
        CHECK_THROWS_AS(jets::plane_wave(cplx{1.0, -0.1}, 3), std::invalid_argument);
    }
}

TEST_CASE("gaussian derivatives match the Hermite closed forms") {
    const double eps = 0.3, y = 0.9;
    JetFunction f = jets::gaussian(eps, 4);
    Jet j = f.at(y);
    const double x = std::sqrt(eps) * y;
    const double g = std::exp(-x * x);
    double h[5] = {1.0, 2 * x, 4 * x * x - 2, 8 * x * x * x - 12 * x,
                   16 * x * x * x * x - 48 * x * x + 12};
    for (int k = 0; k <= 4; ++k) {
        double want = std::pow(-std::sqrt(eps), k) * h[k] * g;
        check_close(j.derivative(k), cplx{want, 0});
    }
    CHECK_THROWS_AS(jets::gaussian(-0.1, 2), std::invalid_argument);
}

TEST_CASE("lorentzian derivatives match the rational closed forms") {
    const double y = 0.8;
    JetFunction f = jets::lorentzian(3);
    Jet j = f.at(y);
    const double q = 1.0 + y * y;
    check_close(j.value(), cplx{1.0 / q, 0});
    check_close(j.derivative(1), cplx{-2 * y / (q * q), 0});
    check_close(j.derivative(2), cplx{(6 * y * y - 2) / (q * q * q), 0});
    check_close(j.derivative(3), cplx{(24 * y - 24 * y * y * y) / (q * q * q * q), 0});
}

TEST_CASE("combinators act on jets as on functions") {
    const double y = 1.2;
    JetFunction g = jets::gaussian(0.25, 4);

    SUBCASE("shift") {
        JetFunction sh = jets::shift(g, 0.5);
        Jet a = sh.at(y), b = g.at(y + 0.5);
        for (int k = 0; k <= 4; ++k) check_close(a.coeff(k), b.coeff(k));
    }
    SUBCASE("reflect") {
        JetFunction pw = jets::plane_wave(2.0, 4);
        JetFunction rf = jets::reflect(pw);
        Jet a = rf.at(y), b = pw.at(-y);
        for (int k = 0; k <= 4; ++k)
            check_close(a.coeff(k), (k % 2 ? -1.0 : 1.0) * b.coeff(k));
    }
    SUBCASE("conjugate") {
        JetFunction pw = jets::plane_wave(2.0, 3);
        Jet a = jets::conjugate(pw).at(y);
        check_close(a.derivative(1), std::conj(kI * 2.0 * std::exp(kI * 2.0 * y)));
    }
    SUBCASE("sum and scale") {
        JetFunction m2 = jets::monomial(2, 4);
        JetFunction both = jets::sum(jets::scale(cplx{0, 3}, m2), g);
        Jet a = both.at(y);
        check_close(a.value(), cplx{0, 3} * (y * y) + std::exp(-0.25 * y * y));
        check_close(a.derivative(1), cplx{0, 6} * y - 0.5 * y * std::exp(-0.25 * y * y));
        CHECK(both.growth().degree == 2.0);
        CHECK_FALSE(both.growth().riemann_decay);
    }
    SUBCASE("product against Leibniz") {
        JetFunction pw = jets::plane_wave(1.0, 3);
        JetFunction m2 = jets::monomial(2, 3);
        Jet a = jets::product(m2, pw).at(y);
        cplx e = std::exp(kI * y);
        check_close(a.value(), y * y * e);
        check_close(a.derivative(1), (2 * y + kI * y * y) * e);
        check_close(a.derivative(2), (2.0 + 4.0 * kI * y - y * y) * e);
        check_close(a.derivative(3), (6.0 * kI - 6.0 * y - kI * y * y) * e);
        CHECK(jets::product(m2, pw).growth().degree == 2.0);
    }
}

TEST_CASE("descriptor grammar round trips the catalog") {
    const double y = 0.7;
    SUBCASE("a sum whose first branch has a coefficient list") {
        JetFunction f = jets::parse("sum(poly:1,0,2,gauss:0.25)", 4);
        cplx want = 1.0 + 2.0 * y * y + std::exp(-0.25 * y * y);
        check_close(f.value(y), want);
    }
    SUBCASE("nested shift and scale") {
        JetFunction f = jets::parse("shift:0.5(exp_i:2)", 3);
        check_close(f.value(y), std::exp(kI * 2.0 * (y + 0.5)));
        JetFunction h = jets::parse("scale:2(lorentz)", 2);
        check_close(h.value(y), cplx{2.0 / (1.0 + y * y), 0});
    }
    SUBCASE("zero") {
        JetFunction f = jets::parse("zero", 3);
        check_close(f.value(y), cplx{});
        CHECK(f.growth().riemann_decay);
    }
    SUBCASE("malformed descriptors are rejected with positions") {
        CHECK_THROWS_AS(jets::parse("poly:", 2), std::invalid_argument);
        CHECK_THROWS_AS(jets::parse("bogus", 2), std::invalid_argument);
        CHECK_THROWS_AS(jets::parse("exp_i:1x", 2), std::invalid_argument);
        CHECK_THROWS_AS(jets::parse("sum(zero)", 2), std::invalid_argument);
        CHECK_THROWS_AS(jets::parse("shift:1(zero", 2), std::invalid_argument);
    }
}

TEST_CASE("jets truncate, guard indices, and detect non-finite entries") {
    JetFunction f = jets::plane_wave(1.0, 5);
    Jet j = f.at(0.0);
    Jet t = j.truncated(2);
    CHECK(t.order() == 2);
    check_close(t.coeff(2), j.coeff(2));
    CHECK_THROWS_AS(t.coeff(3), std::out_of_range);
    CHECK_THROWS_AS(j.truncated(9), std::out_of_range);
    CHECK_THROWS_AS(f.at(0.0, 9), std::invalid_argument);

    Jet bad(2);
    bad.set_coeff(1, cplx{std::numeric_limits<double>::infinity(), 0});
    CHECK_FALSE(bad.finite());
    CHECK(j.finite());
}

TEST_CASE("factorial is exact through 20 and smooth beyond") {
    CHECK(factorial(0) == 1.0);
    CHECK(factorial(1) == 1.0);
    CHECK(factorial(12) == 479001600.0);
    CHECK(factorial(20) == 2432902008176640000.0);
    CHECK(factorial(21) == Approx(21.0 * 2432902008176640000.0).epsilon(1e-12));
    CHECK_THROWS_AS(factorial(-1), std::invalid_argument);
}
