#include "test_util.hpp"

using namespace aclab;
using aclab::test::c2;

TEST(E4Terms, LogZ2ClosedForm) {
    const CandidateFunction l = candidates::log_abs(2, 1);
    for (double r : {0.3, 1e-2, 1e-5}) {
        const double t = 0.7;
        const E4Breakdown e = e4_terms(l, 0.0, r, t);
        EXPECT_NEAR(e.a, -t / r, 1e-9 * t / r);
        EXPECT_NEAR(e.b, 0.0, 1e-12);
        EXPECT_NEAR(e.c1, 1.0, 1e-12);
        EXPECT_NEAR(e.c2, 0.0, 1e-12);
        EXPECT_NEAR(e.total(), 1 - t / r, 1e-9 * t / r);
    }
}

TEST(E4Terms, AbsSquaredClosedForm) {
    const CandidateFunction l = candidates::abs_sq(2, 1);
    const cplx z1(0.3, -0.2), z2(0.1, 0.05), t(0.4, -0.7);
    const E4Breakdown e = e4_terms(l, z1, z2, t);
    EXPECT_NEAR(e.a, 0.0, 1e-15);
    EXPECT_NEAR(e.b, std::norm(t) + std::norm(z2), 1e-15);
    EXPECT_NEAR(e.c1, 2 * std::norm(z2), 1e-15);
    EXPECT_NEAR(e.c2, 0.0, 1e-15);
}

TEST(E4Terms, DependenceOnT) {
    const CandidateFunction l = candidates::from_expression("log(abs(z2)) + re(z1*conj(z2)) + 2*z1*conj(z1)*im(z2)^2", 2);
    const cplx z1(0.1, 0.2), z2(0.03, -0.02);
    const cplx t1(0.5, -0.1), t2(-0.2, 0.9);
    const E4Breakdown e1 = e4_terms(l, z1, z2, t1), e2 = e4_terms(l, z1, z2, t2), e12 = e4_terms(l, z1, z2, 2.0 * t1 - 3.0 * t2);
    EXPECT_NEAR(e12.a, 2 * e1.a - 3 * e2.a, 1e-12 * std::abs(e12.a) + 1e-12);
    const E4Breakdown rot = e4_terms(l, z1, z2, std::polar(1.0, 1.234) * t1);
    EXPECT_NEAR(rot.b, e1.b, 1e-12 * std::abs(e1.b));
    EXPECT_EQ(rot.c1, e1.c1);
    EXPECT_EQ(rot.c2, e1.c2);
    const E4Breakdown zero = e4_terms(l, z1, z2, 0.0);
    EXPECT_EQ(zero.a, 0.0);
    EXPECT_NEAR(zero.b, l.jet(c2(z1, z2)).hzzbar(1, 1).real() * std::norm(z2), 1e-12);
}

TEST(E4Terms, Errors) {
    EXPECT_LAB_ERROR(e4_terms(candidates::log_abs(2, 1), 0.0, 0.0, 1.0), invalid_argument);
    EXPECT_LAB_ERROR(e4_terms(candidates::log_abs(3, 1), 0.0, 0.1, 1.0), invalid_argument);
}

TEST(E4Terms, AgreesWithSolvedDisc) {
    const CandidateFunction l = candidates::from_expression("log(abs(z2)) + 2*z1*conj(z1) + re(z2)", 2);
    for (const auto& [z2, t] : {std::pair{cplx(0.05, 0.02), cplx(0.3, -0.2)}, std::pair{cplx(-0.01, 0.03), cplx(-0.1, 0.05)}}) {
        const E4CrossCheck c = e4_disc_crosscheck(l, cplx(0.1, -0.1), z2, t);
        EXPECT_LT(c.difference() / std::max(1.0, std::abs(c.e4.total())), 1e-3);
    }
}

TEST(Attack, LogZ2MatchesClosedForm) {
    AttackSpec spec;
    const auto rows = run_attack(candidates::log_abs(2, 1), spec);
    ASSERT_EQ(rows.size(), 7u);
    for (const AttackRow& r : rows) {
        EXPECT_NEAR(r.best.total(), 1 - 8 * std::abs(std::log(r.r)), 1e-10);
        EXPECT_LT(r.best.total(), 0.0);
        EXPECT_TRUE(r.success);
        EXPECT_EQ(r.samples, 64u);
    }
}

TEST(Attack, QuadraticInZ1AddsConstant) {
    const CandidateFunction l = candidates::from_expression("log(abs(z2)) + 10*z1*conj(z1)", 2);
    const auto rows = run_attack(l, AttackSpec{});
    for (const AttackRow& r : rows) {
        EXPECT_NEAR(r.best.c2, 10.0, 1e-12);
        EXPECT_NEAR(r.best.total(), 11 - 8 * std::abs(std::log(r.r)), 1e-9);
    }
    EXPECT_LT(rows.back().best.total(), rows.front().best.total());
}

TEST(Attack, AbsSquaredIsANegativeControl) {
    for (const AttackRow& r : run_attack(candidates::abs_sq(2, 1), AttackSpec{})) {
        EXPECT_GT(r.best.total(), 0.0);
        EXPECT_FALSE(r.success);
        EXPECT_NEAR(r.best.total(), std::norm(r.best.t) + 3 * r.r * r.r, 1e-15);
    }
}

TEST(Attack, MaskExcludesSamples) {
    AttackSpec spec;
    spec.admissible = [](cplx z2) { return z2.imag() >= 0; };
    const auto rows = run_attack(candidates::log_abs(2, 1), spec);
    for (const AttackRow& r : rows) {
        EXPECT_EQ(r.samples + r.masked, 64u);
        EXPECT_GT(r.masked, 0u);
    }
}

TEST(Attack, CoarseAngleGridIsRefused) {
    AttackSpec spec;
    spec.angles = 4;
    EXPECT_LAB_ERROR(run_attack(candidates::log_abs(2, 1), spec), invalid_argument);
}

TEST(Lelong, LogHasUnitNumber) {
    const LelongDecomposition d = lelong_fit(candidates::log_abs(2, 1), 0.0, log_radii(1e-8, 1e-2, 13));
    EXPECT_NEAR(d.a, 1.0, 1e-12);
    EXPECT_NEAR(d.mu->value(c2(0.0, 1e-3)), 0.0, 1e-12);
}

TEST(Lelong, ThreeLogPlusHarmonic) {
    const LelongDecomposition d = lelong_fit(candidates::from_expression("3*log(abs(z2)) + re(z2)", 2), 0.0, log_radii(1e-8, 1e-2, 13));
    EXPECT_NEAR(d.a, 3.0, 1e-10);
    EXPECT_NEAR(d.mu->value(c2(0.0, cplx(1e-3, 2e-3))), 1e-3, 1e-10);
}

TEST(Lelong, LogLogPerturbationVanishesInTheLimit) {
    const CandidateFunction l = candidates::from_expression("log(abs(z2)) - log(abs(log(abs(z2))))", 2);
    double prev = 1.0;
    for (double hi : {1e-2, 1e-5, 1e-8}) {
        const double err = std::abs(lelong_fit(l, 0.0, log_radii(hi * 1e-3, hi, 7)).a - 1.0);
        EXPECT_LT(err, prev);
        prev = err;
    }
    EXPECT_LT(prev, 0.1);
}

TEST(Lelong, BoundedPerturbationDoesNotChangeTheSlope) {
    const CandidateFunction a = candidates::log_abs(2, 1);
    const CandidateFunction b = candidates::from_expression("log(abs(z2)) + z2*conj(z2) + re(z1*z2)", 2);
    double prev = 1.0;
    for (double hi : {1e-1, 1e-2, 1e-3}) {
        const auto r = log_radii(hi * 1e-2, hi, 5);
        const double d = std::abs(lelong_fit(a, 0.0, r).a - lelong_fit(b, 0.0, r).a);
        EXPECT_LT(d, prev);
        prev = d;
    }
}

TEST(Lelong, RejectsNonSubharmonic) {
    EXPECT_LAB_ERROR(lelong_fit(candidates::from_expression("-log(abs(z2))", 2), 0.0, log_radii(1e-6, 1e-2, 5)), not_subharmonic);
}

TEST(CheckH, ZeroResidual) {
    const CandidateFunction zero = candidates::from_expression("0", 2);
    const HReport h = check_H(candidates::log_abs(2, 1), zero, 0.0, 1e-2, 1e-8);
    EXPECT_TRUE(h.satisfied);
    for (const HDecade& d : h.decades) EXPECT_EQ(d.first + d.second, 0.0);
}

TEST(CheckH, RealPartResidual) {
    const CandidateFunction mu = candidates::from_expression("re(z2)", 2);
    const HReport h = check_H(mu, mu, 0.0, 1e-2, 1e-8);
    EXPECT_TRUE(h.satisfied);
    for (const HDecade& d : h.decades) {
        EXPECT_NEAR(d.first, d.r_hi / 2, 1e-15);
        EXPECT_NEAR(d.second, 0.0, 1e-15);
    }
}

TEST(CheckH, LogLogResidualDecaysLikeInverseLog) {
    const CandidateFunction mu = candidates::from_expression("-log(abs(log(abs(z2))))", 2);
    const HReport h = check_H(mu, mu, 0.0, 1e-2, 1e-8);
    EXPECT_TRUE(h.satisfied) << h.verdict;
    for (const HDecade& d : h.decades) EXPECT_NEAR(d.first, 1 / (2 * std::abs(std::log(d.r_hi))), 1e-10);
}

TEST(SmoothInZ1, PreservesAffineAndZ1IndependentCandidates) {
    const CVec z = c2(cplx(0.2, 0.1), cplx(0.03, 0.01));
    for (const char* e : {"log(abs(z2))", "re(z1)", "3*re(z1) - im(z1) + z2*conj(z2)"}) {
        const CandidateFunction l = candidates::from_expression(e, 2);
        EXPECT_NEAR(smooth_in_z1(l, 0.1).value(z), l.value(z), 1e-10) << e;
    }
}

TEST(SmoothInZ1, QuadraticGainsTheSecondMoment) {
    const CandidateFunction l = candidates::abs_sq(2, 0);
    const CVec z = c2(cplx(0.2, 0.1), 0.03);
    const double m2 = Z1Kernel::bump(0.1).second_moment();
    EXPECT_NEAR(m2, 0.01 / 4, 1e-14);
    EXPECT_NEAR(smooth_in_z1(l, 0.1).value(z), l.value(z) + m2, 1e-12);
}

TEST(SmoothInZ1, NarrowSlabIsRefused) {
    CandidateFunction l = candidates::log_abs(2, 1);
    l.z1_extent = 0.05;
    EXPECT_LAB_ERROR(smooth_in_z1(l, 0.1), domain_too_narrow);
}
