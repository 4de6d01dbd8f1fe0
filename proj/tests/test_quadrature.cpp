#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oscint/quadrature.hpp"

using namespace oscint;

namespace {

const cplx kI{0.0, 1.0};

// Reference values computed offline with 50-digit adaptive quadrature
// (regularized, then extrapolated) and rounded to double:
//   A1 = int_1^inf e^{i y^2} / y^2 dy
//   A2 = int_1^inf e^{i y^2 + i y} dy
//   A3 = int_1^inf e^{i y^2} e^{-y^2} dy
//   A4 = int_1^inf e^{i y^2} / (1 + y^2) dy
const cplx kA1{-0.09247522800059833, 0.28573664632285259};
const cplx kA2{-0.30155722954775257, -0.07944400483711315};
const cplx kA3{-0.010214564707656876, 0.10651238410759113};
const cplx kA4{-0.07573763767017181, 0.16032267809325516};

void check_close(cplx got, cplx want, double tol) {
    INFO("got ", got.real(), "+", got.imag(), "i want ", want.real(), "+", want.imag(), "i");
    CHECK(std::abs(got - want) <= tol * std::max(1.0, std::abs(want)));
}

}  // namespace

TEST_CASE("gauss-legendre rules integrate polynomials to their exact degree") {
    const GaussLegendre& r = GaussLegendre::rule(15);
    REQUIRE(r.x.size() == 15);
    double wsum = 0.0;
    for (size_t q = 0; q < 15; ++q) {
        wsum += r.w[q];
        CHECK(r.x[q] == -r.x[14 - q]);
    }
    CHECK(r.x[7] == 0.0);
    CHECK(std::abs(wsum - 2.0) <= 1e-14);

    for (int deg : {8, 17, 28, 29}) {
        double s = 0.0;
        for (size_t q = 0; q < 15; ++q) s += r.w[q] * std::pow(r.x[q], deg);
        double want = (deg % 2 == 1) ? 0.0 : 2.0 / (deg + 1);
        CHECK(std::abs(s - want) <= 1e-14);
    }

    CHECK(&GaussLegendre::rule(15) == &r);  // cached
    CHECK_THROWS_AS(GaussLegendre::rule(1), std::invalid_argument);
}

TEST_CASE("iterated averaging extrapolates alternating series") {
    AveragingAccelerator acc;
    const cplx amp{1.0, 0.5};
    for (int j = 0; j < 40; ++j) acc.push(amp * ((j % 2 == 0) ? 1.0 : -1.0) / (j + 1.0));
    CHECK(acc.count() == 40);
    check_close(acc.estimate(), amp * std::numbers::ln2, 1e-11);
    CHECK(acc.residual() <= 1e-10);
    // forty raw terms only reach ~1e-2; the averaging table supplies the rest
    cplx raw = acc.partial_sum();
    CHECK(std::abs(raw - amp * std::numbers::ln2) > 1e-2);
}

TEST_CASE("tail integrals match the frozen references") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;

    SUBCASE("one envelope at a time") {
        auto env = [](double y, cplx* out) { out[0] = 1.0 / (y * y); };
        TailBatchResult r = oscillatory_tail_batch(1.0, 1.0, 1, env, cfg);
        REQUIRE(r.converged);
        check_close(r.value[0], kA1, 2e-12);
        CHECK(r.err[0] <= 1e-10);
    }
    SUBCASE("four envelopes share one panel structure") {
        auto env = [](double y, cplx* out) {
            out[0] = 1.0 / (y * y);
            out[1] = std::exp(kI * y);
            out[2] = std::exp(-y * y);
            out[3] = 1.0 / (1.0 + y * y);
        };
        TailBatchResult r = oscillatory_tail_batch(1.0, 1.0, 4, env, cfg);
        REQUIRE(r.converged);
        check_close(r.value[0], kA1, 2e-12);
        check_close(r.value[1], kA2, 2e-12);
        check_close(r.value[2], kA3, 2e-12);
        check_close(r.value[3], kA4, 2e-12);
    }
    SUBCASE("negative frequency conjugates") {
        auto env = [](double y, cplx* out) { out[0] = std::exp(-kI * y); };
        TailBatchResult r = oscillatory_tail_batch(-1.0, 1.0, 1, env, cfg);
        REQUIRE(r.converged);
        check_close(r.value[0], std::conj(kA2), 2e-12);
    }
}

TEST_CASE("batched members inherit exact linearity") {
    QuadratureConfig cfg;
    auto env = [](double y, cplx* out) {
        out[0] = 1.0 / (y * y);
        out[1] = std::exp(kI * y) / y;
        out[2] = out[0] + 2.0 * out[1];
    };
    TailBatchResult r = oscillatory_tail_batch(2.0, 0.8, 3, env, cfg);
    REQUIRE(r.converged);
    cplx lin = r.value[0] + 2.0 * r.value[1];
    CHECK(std::abs(r.value[2] - lin) <= 1e-13 * std::max(1.0, std::abs(lin)));
}

TEST_CASE("gaussian damping with a certified cutoff stays correct") {
    // int_1^inf e^{i y^2} e^{-y^2/2} y^3 dy = e^c (1/c^2 - 1/c)/2, c = -1/2 + i
    const cplx c{-0.5, 1.0};
    const cplx want = 0.5 * std::exp(c) * (1.0 / (c * c) - 1.0 / c);
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    TailBatchOptions opt;
    opt.decay_degree = {3.0};
    opt.damping_eps = 0.5;
    opt.damping_center = 0.0;
    auto env = [](double y, cplx* out) { out[0] = std::exp(-0.5 * y * y) * y * y * y; };
    TailBatchResult r = oscillatory_tail_batch(1.0, 1.0, 1, env, cfg, opt);
    REQUIRE(r.converged);
    check_close(r.value[0], want, 2e-12);
}

TEST_CASE("tail batch rejects malformed requests") {
    QuadratureConfig cfg;
    auto env = [](double, cplx* out) { out[0] = 1.0; };
    CHECK_THROWS_AS(oscillatory_tail_batch(0.0, 1.0, 1, env, cfg), std::invalid_argument);
    CHECK_THROWS_AS(oscillatory_tail_batch(1.0, -1.0, 1, env, cfg), std::invalid_argument);
    CHECK_THROWS_AS(oscillatory_tail_batch(1.0, 1.0, 0, env, cfg), std::invalid_argument);
    QuadratureConfig bad;
    bad.eps_ratio = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("richardson extrapolation removes the leading epsilon powers") {
    QuadratureConfig cfg;
    auto ladder = cfg.eps_ladder();
    REQUIRE(ladder.size() == 12);
    CHECK(ladder[0] == 0.1);
    CHECK(ladder[1] == 0.05);

    const cplx V{0.7, -0.3};
    std::vector<cplx> rungs;
    for (double e : ladder) rungs.push_back(V + 3.0 * e - cplx{0, 2} * (e * e));
    RichardsonResult r = richardson_extrapolate(rungs, cfg.eps_ratio);
    CHECK(r.converged);
    CHECK(r.order >= 2);
    check_close(r.value, V, 1e-12);
    CHECK(r.raw_last == rungs.back());
    CHECK(std::abs(r.raw_last - V) > 1e-5);  // raw rung is visibly biased

    SUBCASE("a diverging ladder is flagged") {
        std::vector<cplx> div{cplx{1, 0}, cplx{2, 0}, cplx{4, 0}, cplx{8, 0}, cplx{16, 0}};
        RichardsonResult d = richardson_extrapolate(div, 0.5);
        CHECK_FALSE(d.converged);
    }
    SUBCASE("too few rungs are rejected") {
        CHECK_THROWS_AS(richardson_extrapolate({cplx{1, 0}, cplx{2, 0}}, 0.5),
                        std::invalid_argument);
    }
}

TEST_CASE("adaptive proper integrals handle batches, kinks, and orientation") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;

    SUBCASE("smooth batch") {
        auto f = [](double y, cplx* out) {
            out[0] = std::exp(kI * y);
            out[1] = y * y;
        };
        ProperBatchResult r = proper_integral_batch(0.0, std::numbers::pi, 2, f, cfg);
        CHECK(r.converged);
        check_close(r.value[0], cplx{0.0, 2.0}, 1e-12);
        check_close(r.value[1], std::pow(std::numbers::pi, 3) / 3.0, 1e-12);
    }
    SUBCASE("kink seeded by an initial split") {
        auto f = [](double y, cplx* out) { out[0] = std::abs(y - 1.0); };
        ProperBatchResult r = proper_integral_batch(0.0, 2.0, 1, f, cfg, {1.0});
        CHECK(r.converged);
        check_close(r.value[0], 1.0, 1e-12);
    }
    SUBCASE("reversed orientation flips the sign") {
        auto f = [](double y, cplx* out) { out[0] = std::exp(kI * y); };
        ProperBatchResult r = proper_integral_batch(std::numbers::pi, 0.0, 1, f, cfg);
        check_close(r.value[0], cplx{0.0, -2.0}, 1e-12);
    }
    SUBCASE("empty interval") {
        ProperBatchResult r = proper_integral_batch(1.5, 1.5, 1,
                                                    [](double, cplx* out) { out[0] = 1.0; }, cfg);
        CHECK(r.value[0] == cplx{});
    }
}

TEST_CASE("tail batch is bitwise deterministic across runs") {
    QuadratureConfig cfg;
    auto env = [](double y, cplx* out) { out[0] = 1.0 / (1.0 + y * y); };
    TailBatchResult r1 = oscillatory_tail_batch(1.5, 0.7, 1, env, cfg);
    TailBatchResult r2 = oscillatory_tail_batch(1.5, 0.7, 1, env, cfg);
    CHECK(r1.value[0].real() == r2.value[0].real());
    CHECK(r1.value[0].imag() == r2.value[0].imag());
    CHECK(r1.panels == r2.panels);
}
