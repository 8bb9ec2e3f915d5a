#include <random>

#include "test_util.hpp"

using namespace aclab;
using aclab::test::c2;

TEST(ModelLaplacians, ClosedFormValues) {
    EXPECT_NEAR(model_laplacians(std::exp(-1.0)).loglog, std::exp(2.0) / 4, 1e-13);
    EXPECT_NEAR(model_laplacians(0.5).abs, 0.5, 1e-15);
    EXPECT_LAB_ERROR(model_laplacians(0.0), out_of_range);
    EXPECT_LAB_ERROR(model_laplacians(1.5), out_of_range);
}

TEST(ModelLaplacians, MatchFiniteDifferences) {
    for (int k = 0; k < 20; ++k) {
        const double r = 1e-4 * std::pow(0.5 / 1e-4, k / 19.0);
        const cplx z = std::polar(r, 0.3 * k);
        const ModelLaplacians a = model_laplacians(z), f = model_laplacians_fd(z);
        EXPECT_NEAR(f.loglog / a.loglog, 1.0, 1e-6) << r;
        EXPECT_NEAR(f.abs / a.abs, 1.0, 1e-6) << r;
    }
}

TEST(PerturbedOperator, LogIsHarmonic) {
    const PerturbedOperator op = PerturbedOperator::laplacian();
    const CandidateFunction f = candidates::log_abs(1, 0);
    for (cplx z : {cplx(0.5, 0.1), cplx(-1e-3, 2e-3), cplx(0, -0.9)}) EXPECT_NEAR(perturbed_apply(op, f, z), 0.0, 1e-9);
}

TEST(PerturbedOperator, LogLogIsPositiveNearZero) {
    auto small = [](cplx z) { return 0.3 * z; };
    auto bounded = [](cplx) { return cplx(0.5, 0.2); };
    const PerturbedOperator op(small, small, small, bounded, bounded);
    const PositivityScan scan = positivity_radius(op, candidates::loglog(1), 1e-8, 0.3);
    EXPECT_GT(scan.r0, 1e-3);
    EXPECT_GT(scan.min_value, 0.0);
}

TEST(PerturbedOperator, ChirkaConstantIsFound) {
    auto small = [](cplx z) { return 0.3 * z; };
    auto bounded = [](cplx) { return cplx(0.5, 0.2); };
    const PerturbedOperator op(small, small, small, bounded, bounded);
    const ChirkaSearch s = minimal_chirka_constant(op, 0.1, {0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0});
    ASSERT_TRUE(s.found);
    EXPECT_GT(s.constant, 0.0);
}

TEST(PerturbedOperator, SecondOrderCoefficientsMustVanishAtZero) {
    auto one = [](cplx) { return cplx(1.0); };
    EXPECT_LAB_ERROR(PerturbedOperator(one, nullptr, nullptr, nullptr, nullptr), invalid_argument);
}

TEST(LLHessian, OneTransverseDimension) {
    CVec zp(1);
    zp << 0.1;
    const LLHessianBound b = ll_hessian_bound(zp);
    EXPECT_TRUE(b.holds);
    EXPECT_NEAR(b.bound, 1.0 / (0.01 * std::pow(std::log(0.1), 2)), 1e-12);
}

TEST(LLHessian, ThreeTransverseDimensions) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    for (int k = 0; k < 100; ++k) {
        CVec zp(3);
        for (int j = 0; j < 3; ++j) zp(j) = cplx(nd(rng), nd(rng));
        zp *= 0.05 / zp.norm();
        const LLHessianBound b = ll_hessian_bound(zp);
        EXPECT_TRUE(b.holds);
        EXPECT_GE(b.min_eig - b.bound, -1e-10 * b.bound);
    }
    CVec far(1);
    far << 0.5;
    EXPECT_LAB_ERROR(ll_hessian_bound(far), out_of_range);
}

TEST(Candidates, Lambda0HessianIsAQuarter) {
    const CandidateJet j = candidates::lambda0().jet(c2(cplx(0.3, -0.1), cplx(0.2, 0.4)));
    EXPECT_LT((j.hzzbar - 0.25 * CMat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Candidates, JetsMatchFiniteDifferences) {
    const CVec z = c2(cplx(0.1, 0.05), cplx(0.01, -0.02));
    for (const CandidateFunction& c : {candidates::loglog(2), candidates::prop1(2, 5.0), candidates::prop3(2, 2.0),
                                       candidates::from_expression("log(abs(z2)) + 3*re(z1)*im(z2)", 2)}) {
        const CandidateJet j = c.jet(z);
        const WirtingerJet f = fd_wirtinger([&](const CVec& p) { return c.value(p); }, z, 1e-5);
        EXPECT_LT((j.dz - f.dz).norm() / std::max(1.0, j.dz.norm()), 1e-6) << c.name();
        EXPECT_LT((j.hzzbar - f.dzdzbar).norm() / std::max(1.0, j.hzzbar.norm()), 1e-4) << c.name();
        EXPECT_LT((j.hzzbar - j.hzzbar.adjoint()).norm(), 1e-12) << c.name();
    }
}

TEST(Candidates, SingularLocusIsRefused) {
    EXPECT_LAB_ERROR(candidates::log_abs(2, 1).jet(c2(0.1, 0.0)), singular_locus);
}

TEST(E2Terms, QuadraticOnStraightDisc) {
    const StructureField s = builtin::standard(2, 1.0);
    const DiscSolution sol = solve_disc(s, {c2(0.0, 0.0), c2(1.0, 0.0), 0.05}, {32, 1e-12, 10});
    const TermBreakdown t = e2_terms(candidates::abs_sq(2, 0), sol);
    EXPECT_NEAR(t["I"], 1.0, 1e-12);
    EXPECT_NEAR(t["II"], 0.0, 1e-12);
    EXPECT_NEAR(t["III"], 0.0, 1e-12);
}

TEST(E2Terms, LinearCandidateSeesOnlyThirdTerm) {
    const StructureField s = builtin::example_part3();
    const DiscSolution sol = solve_disc(s, {c2(0.0, cplx(0.05, 0.02)), c2(1.0, cplx(0.3, 0.1)), 0.05}, {64, 1e-11, 100});
    const TermBreakdown t = e2_terms(candidates::re_z1(2), sol);
    const std::size_t c = sol.grid.center_index();
    EXPECT_EQ(t["I"], 0.0);
    EXPECT_EQ(t["II"], 0.0);
    EXPECT_NEAR(t["III"], sol.u_zetazetabar[0][c].real(), 1e-14);
}

TEST(E2Terms, LogLogMatchesFiniteDifferenceLaplacian) {
    const StructureField s = builtin::example_part3();
    const DiscSolution sol = solve_disc(s, {c2(0.0, 0.01), c2(1.0, 0.005), 0.005}, {128, 1e-12, 100});
    const CandidateFunction ll = candidates::loglog(2);
    const double e2 = e2_terms(ll, sol).total(), fd = fd_laplacian_quarter(ll, sol);
    EXPECT_LT(std::abs(e2 - fd) / std::abs(e2), 1e-3);
}

TEST(Prop1, ZeroConstantHoldsForAnyK) {
    for (double k : {0.0, 1.0, 100.0}) {
        const Prop1Certificate c = certify_prop1_inequality(0.0, k, Prop1Grid::uniform(11, 11, 10, 1e-8, 0.3));
        EXPECT_TRUE(c.holds()) << k;
    }
}

TEST(Prop1, EighthSlackHoldsForUnitConstant) {
    const Prop1Certificate c = certify_prop1_inequality(1.0, 5.0, Prop1Grid::uniform(50, 50, 20, 1e-8, 1e-2));
    EXPECT_TRUE(c.holds());
    EXPECT_EQ(c.points, 50u * 50u * 20u);
    EXPECT_EQ(c.form_disagreements, 0u);
    EXPECT_GE(c.min_eps_zero_row, 0.0);
}

TEST(Prop1, ConstantTooSmall) {
    EXPECT_LAB_ERROR(certify_prop1_inequality(1.0, 4.0, Prop1Grid::uniform(3, 3, 3, 1e-6, 1e-2)), constant_too_small);
    EXPECT_LAB_ERROR(certify_prop1_inequality(-1.0, 4.0, Prop1Grid::uniform(3, 3, 3, 1e-6, 1e-2)), invalid_argument);
}

TEST(Prop1, EmptyRangeWhenGridMissesIt) {
    EXPECT_LAB_ERROR(certify_prop1_inequality(1.0, 5.0, Prop1Grid::uniform(3, 3, 3, 0.1, 0.3)), empty_range);
}

// The admissible radius range first grows with K and then shrinks: the C K r eps^2 and C K tau^2 terms
// eventually dominate. Increasing K does not always enlarge the certified range.
TEST(Prop1, AdmissibleRadiusIsNotMonotoneInK) {
    const double r5 = prop1_r_max(1.0, 5.0), r10 = prop1_r_max(1.0, 10.0), r1000 = prop1_r_max(1.0, 1000.0);
    EXPECT_GT(r5, prop1_r_max(1.0, 4.01));
    EXPECT_LT(r10, r5);
    EXPECT_LT(r1000, r10);
    EXPECT_GT(r1000, 0.0);
}

TEST(StructureConstants, RefineMonotonically) {
    const StructureConstants c = structure_constants(builtin::prop1_test(), Box::centered({0.2, 0.05}), 3);
    ASSERT_EQ(c.grad_by_level.size(), 3u);
    for (std::size_t l = 1; l < 3; ++l) EXPECT_GE(c.grad_by_level[l], c.grad_by_level[l - 1]);
    EXPECT_NEAR(c.k, 4 * c.c * c.c + 1, 1e-12);
}

TEST(CertifyPsh, Prop1CandidateOnAxisStandardStructure) {
    const StructureField s = builtin::prop1_test();
    const StructureConstants sc = structure_constants(s, Box::centered({0.25, 0.05}), 2);
    JetSampler js;
    const PshReport rep = certify_psh_on_discs(candidates::prop1(2, sc.k), s, js.sample(2, 12));
    EXPECT_TRUE(rep.certified()) << rep.violations << " violations, " << rep.errors << " errors";
}

TEST(CertifyPsh, LogOnExampleIsViolatedByAttackJets) {
    const StructureField s = builtin::example_part3();
    std::vector<JetSpec> jets;
    for (double r : {1e-2, 1e-3}) {
        const double t = 8 * r * std::abs(std::log(r));
        jets.push_back({c2(0.0, r), c2(1.0, t), 0.05});  // t real and positive aligns against A for z2 = r
    }
    const PshReport rep = certify_psh_on_discs(candidates::log_abs(2, 1), s, jets, {{128, 1e-11, 100}, -1.0});
    EXPECT_EQ(rep.violations, jets.size());
    EXPECT_EQ(rep.errors, 0u);
}

TEST(CertifyPsh, NormSquaredOnFlatStructure) {
    JetSampler js;
    const auto jets = js.sample(2, 20);
    const PshReport rep = certify_psh_on_discs(candidates::norm_sq(2), builtin::standard(2, 1.0), jets);
    EXPECT_TRUE(rep.certified());
    for (const DiscCheck& d : rep.discs) EXPECT_NEAR(d.terms.total(), d.jet.derivative.squaredNorm(), 1e-12);
}

TEST(Prop3, FlatStructureCertifiesAtUnitK) {
    JetSampler js;
    const Prop3Report rep = prop3_certify(builtin::standard(2, 1.0), js.sample(2, 20));
    EXPECT_TRUE(rep.found);
    EXPECT_EQ(rep.k, 1.0);
}

TEST(Prop3, RefusesUnnormalizedStructure) {
    JetSampler js;
    EXPECT_LAB_ERROR(prop3_certify(builtin::toy_n0(), js.sample(2, 2)), normalization_unmet);
}
