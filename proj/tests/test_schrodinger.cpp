#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oscint/free_particle.hpp"
#include "oscint/schrodinger.hpp"

using namespace oscint;

namespace {

double dist(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("the wave function reproduces the plane-wave solution") {
    const GreensDecomposition g = free_particle_kernel(6);
    const InitialCondition F(jets::plane_wave(1.0, 6), 0.0);
    PsiReport r = psi(g, F, 0.5, 0.3, 2.3);
    CHECK(r.converged);
    CHECK(!r.tiny_time_flag);
    CHECK(dist(r.value, closed_form_plane_wave(0.5, 0.3, 1.0)) <= 1e-8);
    CHECK(dist(r.value, closed_form_plane_wave(0.5, 0.3, 1.0)) <=
          10.0 * r.abs_error_estimate + 1e-10);
    CHECK(r.panels > 0);
}

TEST_CASE("the wave function reproduces the polynomial moments") {
    const GreensDecomposition g = free_particle_kernel(7);
    const double t = 0.4, x = -0.6;
    for (int m = 0; m <= 3; ++m) {
        const InitialCondition F(jets::monomial(m, 7), static_cast<double>(m));
        PsiReport r = psi(g, F, t, x, default_split_radius(x));
        const cplx want = closed_form_moment(t, x, m);
        CHECK(r.converged);
        CHECK(dist(r.value, want) <= 1e-6 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("the split radius does not affect the wave function") {
    const GreensDecomposition g = free_particle_kernel(6);
    const InitialCondition F(jets::plane_wave(1.0, 6), 0.0);
    PsiReport rb = psi(g, F, 0.5, 0.3, 2.5);
    PsiReport rB = psi(g, F, 0.5, 0.3, 3.25);
    CHECK(rb.converged);
    CHECK(rB.converged);
    CHECK(dist(rb.value, rB.value) <=
          rb.abs_error_estimate + rB.abs_error_estimate + 1e-8);
    // the individual parts DO depend on b; only the sum is invariant
    CHECK(dist(rb.part_core, rB.part_core) > 1e-6);
}

TEST_CASE("the two outer-phase factorizations agree") {
    const GreensDecomposition g = free_particle_kernel(6);
    const InitialCondition F(jets::plane_wave(1.0, 6), 0.0);
    PsiReport rg = psi(g, F, 0.5, 1.5, 2.5, {}, PsiRoute::ghat);
    PsiReport rs = psi(g, F, 0.5, 1.5, 2.5, {}, PsiRoute::shifted);
    CHECK(rg.converged);
    CHECK(rs.converged);
    CHECK(dist(rg.value, rs.value) <=
          rg.abs_error_estimate + rs.abs_error_estimate + 1e-9);

    // automatic resolves to ghat near the center and shifted near the edge,
    // reproducing the explicit route bit for bit
    PsiReport ra_in = psi(g, F, 0.5, 0.3, 2.5);
    PsiReport rg_in = psi(g, F, 0.5, 0.3, 2.5, {}, PsiRoute::ghat);
    CHECK(ra_in.value == rg_in.value);
    PsiReport ra_out = psi(g, F, 0.5, 2.0, 2.5);
    PsiReport rs_out = psi(g, F, 0.5, 2.0, 2.5, {}, PsiRoute::shifted);
    CHECK(ra_out.value == rs_out.value);
}

TEST_CASE("the wave function satisfies the evolution equation pointwise") {
    const GreensDecomposition g = free_particle_kernel(6);
    const InitialCondition F(jets::plane_wave(1.0, 6), 0.0);
    CHECK(pde_residual(g, F, 0.7, 0.4, 3.0) <= 1e-6);

    PsiDerivatives d = psi_derivatives(g, F, 0.7, 0.4, 3.0);
    CHECK(d.converged);
    // plane wave: dPsi/dt = -i kappa^2 Psi, d2Psi/dx2 = -kappa^2 Psi
    const cplx base = closed_form_plane_wave(0.7, 0.4, 1.0);
    CHECK(dist(d.dt, cplx(0.0, -1.0) * base) <= 1e-6);
    CHECK(dist(d.dxx, -base) <= 1e-6);
}

TEST_CASE("the wave function settles onto plane-wave data as time vanishes") {
    const GreensDecomposition g = free_particle_kernel(6);
    const InitialCondition F(jets::plane_wave(1.0, 6), 0.0);
    const std::vector<double> ladder = {0.4, 0.2, 0.1, 0.05};
    InitialConditionReport r = initial_condition_check(g, F, 0.2, ladder, 2.5);
    REQUIRE(r.deviation.size() == ladder.size());
    for (size_t j = 0; j < ladder.size(); ++j) {
        CHECK(r.rung_converged[j]);
        // |e^{-i kappa^2 t} - 1| = 2 |sin(kappa^2 t / 2)|
        CHECK(r.deviation[j] ==
              doctest::Approx(2.0 * std::abs(std::sin(0.5 * ladder[j]))).epsilon(1e-5));
    }
    CHECK(r.decreasing);
    CHECK(r.outer_vanishes);
}

TEST_CASE("the wave function settles onto quadratic data as time vanishes") {
    const GreensDecomposition g = free_particle_kernel(7);
    const InitialCondition F(jets::monomial(2, 7), 2.0);
    const std::vector<double> ladder = {0.2, 0.1, 0.05, 0.025};
    InitialConditionReport r = initial_condition_check(g, F, 0.0, ladder, 3.0);
    for (size_t j = 0; j < ladder.size(); ++j) {
        CHECK(r.rung_converged[j]);
        // Psi - F(0) = g_2(t, 0) = 2it exactly
        CHECK(r.deviation[j] == doctest::Approx(2.0 * ladder[j]).epsilon(1e-5));
    }
    CHECK(r.decreasing);
    CHECK(r.outer_vanishes);
}

TEST_CASE("perturbed data move the wave function proportionally") {
    const GreensDecomposition g = free_particle_kernel(6);
    const InitialCondition F(jets::plane_wave(1.0, 6), 0.0);
    std::vector<InitialCondition> Fm;
    for (int m = 1; m <= 3; ++m)
        Fm.emplace_back(jets::scale(1.0 + 1.0 / m, jets::plane_wave(1.0, 6)), 0.0);
    DependenceReport r = continuous_dependence_check(g, F, Fm, 0.5, 0.3, 2.5);
    CHECK(r.proportional);
    REQUIRE(r.norm_difference.size() == 3);
    for (size_t i = 1; i < 3; ++i) {
        CHECK(r.norm_difference[i] < r.norm_difference[i - 1]);
        CHECK(r.value_difference[i] < r.value_difference[i - 1]);
    }
}

TEST_CASE("batched wave functions are linear in the data") {
    const GreensDecomposition g = free_particle_kernel(6);
    const JetFunction f = jets::plane_wave(1.0, 6);
    const JetFunction h = jets::gaussian(0.2, 6);
    const std::vector<InitialCondition> Fs = {
        {f, 0.0}, {h, 0.0}, {jets::sum(f, h), 0.0}};
    auto rs = psi_multi(g, Fs, 0.5, 0.3, 2.5);
    REQUIRE(rs.size() == 3);
    const double scale = std::abs(rs[0].value) + std::abs(rs[1].value);
    CHECK(dist(rs[2].value, rs[0].value + rs[1].value) <= 1e-12 * scale);
}

TEST_CASE("the kernel factorizations agree pointwise") {
    const GreensDecomposition g = free_particle_kernel(6);
    CHECK(decomposition_consistency(g, 0.5, 0.7, {1.0, 2.0, 3.5}) <= 1e-12);
}

TEST_CASE("very small times are flagged") {
    const GreensDecomposition g = free_particle_kernel(6);
    const InitialCondition F(jets::constant(1.0, 6), 0.0);
    PsiReport r = psi(g, F, 9e-5, 0.0, 0.5);
    CHECK(r.tiny_time_flag);
    // constant data evolve to the same constant
    CHECK(dist(r.value, cplx(1.0, 0.0)) <= 1e-5);
}

TEST_CASE("the solver validates its inputs") {
    const GreensDecomposition g = free_particle_kernel(6);
    const InitialCondition F(jets::plane_wave(1.0, 6), 0.0);

    CHECK_THROWS_AS(psi(g, F, 0.0, 0.3, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(psi(g, F, -0.5, 0.3, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(psi(g, F, 0.5, 3.0, 2.5), std::invalid_argument);  // b <= |x|
    CHECK_THROWS_AS(psi(g, F, 0.5, 2.5, 2.5), std::invalid_argument);

    GreensDecomposition finite = free_particle_kernel(6);
    finite.T = 1.0;
    CHECK_THROWS_AS(psi(finite, F, 1.5, 0.3, 2.5), std::invalid_argument);

    // datum jet shallower than the kernel order
    const InitialCondition shallow(jets::plane_wave(1.0, 3), 0.0);
    CHECK_THROWS_AS(psi(g, shallow, 0.5, 0.3, 2.5), std::invalid_argument);

    // growth window: beta must stay below n - alpha - 3
    const GreensDecomposition g5 = free_particle_kernel(5);
    const InitialCondition quad(jets::monomial(2, 5), 2.0);
    CHECK_THROWS_AS(psi(g5, quad, 0.5, 0.0, 2.5), std::invalid_argument);

    GreensDecomposition incomplete = free_particle_kernel(6);
    incomplete.gtilde_t = nullptr;
    CHECK_THROWS_AS(psi(incomplete, F, 0.5, 0.3, 2.5), std::invalid_argument);

    GreensDecomposition narrow = free_particle_kernel(4);
    narrow.alpha = 1.0;  // closes the n > alpha + 3 window
    CHECK_THROWS_AS(psi(narrow, F, 0.5, 0.3, 2.5), std::invalid_argument);

    CHECK_THROWS_AS(InitialCondition(jets::plane_wave(1.0, 6), -1.0), std::invalid_argument);
    CHECK_THROWS_AS(InitialCondition(jets::plane_wave(1.0, 6), std::nan("")),
                    std::invalid_argument);

    CHECK(default_split_radius(1.5) == 3.5);
    CHECK(default_split_radius(-2.0) == 4.0);
}
