#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oscint/spaces.hpp"

using namespace oscint;

TEST_CASE("the weighted norm of y^2 on [1,inf) with two derivatives is five") {
    CnAlphaWitness w = norm_cn_alpha(jets::monomial(2, 4), 1.0, 2, 0.0);
    CHECK(w.norm_estimate == 5.0);  // |1|/1 + |2|/1 + sup|2| , all exact
    CHECK(w.boundary_part == 3.0);
    CHECK(w.sup_part == 2.0);
    CHECK(w.plateau);
    CHECK(w.certified);
}

TEST_CASE("the zero function has zero norm") {
    CnAlphaWitness w = norm_cn_alpha(jets::zero(3), 0.5, 2, 1.0, {});
    CHECK(w.norm_estimate == 0.0);
    CHECK(w.plateau);
    CnRWitness wr = norm_cn_r(jets::zero(3), 2, 0.0);
    CHECK(wr.norm_estimate == 0.0);
}

TEST_CASE("plane wave norms reduce to powers of the base point") {
    const double b = 0.7;
    CnAlphaWitness w = norm_cn_alpha(jets::plane_wave(1.0, 4), b, 3, 0.0);
    double want = std::pow(b, -3) + std::pow(b, -2) + std::pow(b, -1) + 1.0;
    CHECK(std::abs(w.norm_estimate - want) <= 1e-12 * want);
    CHECK(w.plateau);

    CnRWitness wr = norm_cn_r(jets::plane_wave(2.0, 2), 2, 0.0);
    CHECK(std::abs(wr.norm_estimate - 4.0) <= 1e-12);
}

TEST_CASE("norm estimation is absolutely homogeneous") {
    JetFunction f = jets::gaussian(0.4, 3);
    JetFunction g = jets::scale(cplx{0, 2}, f);
    CnAlphaWitness wf = norm_cn_alpha(f, 0.8, 3, 0.5);
    CnAlphaWitness wg = norm_cn_alpha(g, 0.8, 3, 0.5);
    CHECK(std::abs(wg.norm_estimate - 2.0 * wf.norm_estimate) <= 1e-12 * wg.norm_estimate);
}

TEST_CASE("grid refinement never decreases the estimate") {
    JetFunction f = jets::lorentzian(2);
    GridSpec coarse;
    coarse.delta = 0.25;
    CnAlphaWitness wc = norm_cn_alpha(f, 0.5, 2, 0.0, coarse);
    GridSpec fine = coarse;
    for (double y = 0.5; y < 3.0; y += 0.01) fine.extra.push_back(y);
    CnAlphaWitness wf = norm_cn_alpha(f, 0.5, 2, 0.0, fine);
    CHECK(wf.norm_estimate >= wc.norm_estimate);
    CHECK(wf.samples > wc.samples);
}

TEST_CASE("provable sup divergence is certified instead of sampled") {
    CnAlphaWitness w = norm_cn_alpha(jets::monomial(3, 5), 1.0, 2, 0.0);
    CHECK(std::isinf(w.norm_estimate));
    CHECK(w.certified);
    CnRWitness wr = norm_cn_r(jets::monomial(2, 3), 1, 0.0);
    CHECK(std::isinf(wr.norm_estimate));
}

TEST_CASE("norm estimation rejects malformed requests") {
    JetFunction f = jets::gaussian(0.5, 2);
    CHECK_THROWS_AS(norm_cn_alpha(f, 1.0, 3, 0.0), std::invalid_argument);  // too few derivatives
    CHECK_THROWS_AS(norm_cn_alpha(f, 0.0, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(norm_cn_alpha(f, 1.0, 1, -0.5), std::invalid_argument);
    GridSpec bad;
    bad.delta = 0.0;
    CHECK_THROWS_AS(norm_cn_alpha(f, 1.0, 1, 0.0, bad), std::invalid_argument);
    CHECK_THROWS_AS(norm_cn_r(f, 3, 0.0), std::invalid_argument);
}

TEST_CASE("lower derivatives obey the norm-weighted power bound") {
    JetFunction f = jets::monomial(2, 4);
    CnAlphaWitness w = norm_cn_alpha(f, 1.0, 2, 0.0);
    BoundCheckReport rep = check_derivative_bound(f, w);
    CHECK(rep.pass);
    CHECK(rep.worst_margin >= 0.0);

    // a deliberately understated norm must be caught
    CnAlphaWitness fake = w;
    fake.norm_estimate = 0.5;
    BoundCheckReport bad = check_derivative_bound(f, fake);
    CHECK_FALSE(bad.pass);
    CHECK(bad.worst_margin < -1e-9);
    CHECK(bad.worst_k >= 0);
}

TEST_CASE("known inequality cases give the expected slack") {
    SUBCASE("zero shift is an exact identity") {
        InequalityReport r = check_shift_invariance(jets::gaussian(0.3, 3), 3, 0.0, 0.0);
        CHECK(r.pass);
        CHECK(std::abs(r.margin) <= 1e-12);
    }
    SUBCASE("constant times constant against the product law") {
        JetFunction one = jets::constant(cplx{1, 0}, 2);
        InequalityReport r = check_product(one, one, 2, 0.0, 0.0);
        CHECK(r.pass);
        CHECK(r.lhs == 1.0);
        CHECK(r.rhs == 4.0);
    }
    SUBCASE("restriction of a plane wave") {
        InequalityReport r = check_restriction(jets::plane_wave(1.0, 3), 0.8, 1.6, 3, 0.0);
        CHECK(r.pass);
        CHECK(r.margin >= -1e-9);
    }
    SUBCASE("derivative norms only shed boundary terms") {
        InequalityReport r = check_derivative_norm(jets::gaussian(0.6, 5), 0.9, 3, 1, 0.5);
        CHECK(r.pass);
    }
    SUBCASE("hypothesis violations are rejected") {
        JetFunction f = jets::gaussian(0.5, 4);
        CHECK_THROWS_AS(check_derivative_norm(f, 1.0, 2, 3, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(check_exponent_embedding(f, 1.0, 3, 1, 0.0, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(check_restriction(f, 1.0, 0.5, 2, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(check_monomial_mult(f, 1.0, 2, 0.0, -1), std::invalid_argument);
    }
}

TEST_CASE("the seeded battery holds every inequality") {
    auto reports = check_space_inequalities(20250816u, 8);
    CHECK(reports.size() == 8u * 9u);
    for (const auto& r : reports) {
        INFO(r.inequality_id, ": lhs=", r.lhs, " rhs=", r.rhs, " margin=", r.margin);
        CHECK(r.pass);
        CHECK(r.margin >= -1e-9);
    }

    auto again = check_space_inequalities(20250816u, 8);
    REQUIRE(again.size() == reports.size());
    for (size_t i = 0; i < reports.size(); ++i) {
        CHECK(again[i].inequality_id == reports[i].inequality_id);
        CHECK(again[i].lhs == reports[i].lhs);
        CHECK(again[i].rhs == reports[i].rhs);
    }
}

TEST_CASE("inequality reports serialize to json rows") {
    InequalityReport r;
    r.inequality_id = "product";
    r.lhs = 1.0;
    r.rhs = 4.0;
    r.margin = 0.75;
    r.pass = true;
    CHECK(r.json_row() ==
          "{\"inequality_id\":\"product\",\"lhs\":1,\"rhs\":4,\"margin\":0.75,\"pass\":true}");
}
