#include <random>

#include "test_util.hpp"

using namespace aclab;
using aclab::test::c2;

namespace {

RMat printed_matrix(double x2, double y2) {
    RMat m(4, 4);
    m << 0, -1, 0, 0,
         1, 0, 0, 0,
         -2 * y2, -2 * x2, 0, -1,
         -2 * x2, 2 * y2, 1, 0;
    return m;
}

CMat random_q(std::mt19937_64& rng, int n, double bound) {
    std::uniform_real_distribution<double> u(-1, 1);
    CMat q(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) q(a, b) = cplx(u(rng), u(rng));
    return q * (bound * u(rng) * u(rng) / operator_norm(q));
}

}  // namespace

TEST(QToJ, ZeroGivesStandardStructure) {
    const RMat j = q_to_j(CMat::Zero(2, 2));
    EXPECT_LT((j - j_standard(2)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(j(1, 0), 1.0);
    EXPECT_EQ(j(0, 1), -1.0);
}

TEST(QToJ, ExampleReproducesPrintedMatrix) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int k = 0; k < 100; ++k) {
        const double x1 = u(rng), y1 = u(rng), x2 = u(rng), y2 = u(rng);
        const RMat j = q_to_j(builtin::example_part3_q(c2(cplx(x1, y1), cplx(x2, y2))));
        EXPECT_LT((j - printed_matrix(x2, y2)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(QToJ, ConstantRoundTrip) {
    CMat q = CMat::Zero(2, 2);
    q(0, 0) = 0.1;
    EXPECT_LT((j_to_q(q_to_j(q)) - q).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(QToJ, RandomRoundTripsAndSquaresToMinusOne) {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 3; ++n) {
        for (int k = 0; k < 200; ++k) {
            const CMat q = random_q(rng, n, 0.3);
            const RMat j = q_to_j(q);
            EXPECT_LT((j * j + RMat::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_LT((j_to_q(j) - q).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

TEST(QToJ, SingularIsInadmissible) {
    // Q = [[1]] gives 1 + R singular.
    CMat q(1, 1);
    q(0, 0) = 1.0;
    EXPECT_LAB_ERROR(q_to_j(q), inadmissible_structure);
}

TEST(JToQ, StandardAndPrintedMatrix) {
    EXPECT_LT(j_to_q(j_standard(2)).cwiseAbs().maxCoeff(), 1e-15);
    const CMat q = j_to_q(printed_matrix(0.3, -0.2));
    EXPECT_LT(std::abs(q(1, 0) - cplx(0.3, -0.2)), 1e-14);
    EXPECT_LT(std::abs(q(0, 0)) + std::abs(q(0, 1)) + std::abs(q(1, 1)), 1e-14);
}

TEST(JToQ, RejectsNonComplexStructure) {
    EXPECT_LAB_ERROR(j_to_q(RMat::Identity(4, 4)), invalid_j);
}

TEST(ExampleStructure, PointValues) {
    const StructureField s = builtin::example_part3(Box::centered({6.0, 0.35}));
    EXPECT_EQ(s.q_at(c2(5.0, 0.0)).cwiseAbs().maxCoeff(), 0.0);
    // (0, 1+i) lies outside every admissible box, so the unbounded formula is used.
    const CMat q = builtin::example_part3_q(c2(0.0, cplx(1, 1)));
    EXPECT_EQ(q(1, 0), cplx(1, 1));
    EXPECT_EQ(q(0, 0) + q(0, 1) + q(1, 1), cplx(0));
}

TEST(ExampleStructure, AnalyticDerivativesMatchDifferences) {
    const StructureField s = builtin::example_part3();
    const CVec z = c2(cplx(0.5, 1), cplx(0.1, -0.2));
    const QDerivatives a = s.dq_at(z), f = s.fd_dq(z, 1e-5);
    for (int k = 0; k < 2; ++k) {
        EXPECT_LT((a.dz[k] - f.dz[k]).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_LT((a.dzbar[k] - f.dzbar[k]).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(ExampleStructure, OutsideAdmissibleBoxIsRefused) {
    EXPECT_LAB_ERROR(builtin::example_part3(Box::centered({1.0, 1.0})), inadmissible_structure);
}

TEST(StructureFromExpressions, MatchesClosedForm) {
    const StructureField s =
        structure_from_expressions("e", 2, {"0", "0", "z2", "0"}, Box::centered({4.0, 0.35}));
    const CVec z = c2(cplx(1, 1), cplx(0.1, 0.2));
    EXPECT_LT((s.q_at(z) - builtin::example_part3_q(z)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((s.dq_at(z).dz[1] - builtin::example_part3().dq_at(z).dz[1]).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Nijenhuis, VanishesForStandardStructure) {
    const JMatrixField j = JMatrixField::standard(2, Box::cube(2, 1.0));
    const RVec p = RVec::Zero(4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            EXPECT_LT(nijenhuis(j, p, real_basis(2, a), real_basis(2, b)).value.norm(), 1e-10);
}

TEST(Nijenhuis, ExampleIsNonzeroAndStable) {
    const JMatrixField j = JMatrixField::from_q(2, Box::centered({4.0, 0.8}), builtin::example_part3_q);
    RVec p(4);
    p << 0, 0, 0.5, 0;
    const NijenhuisResult r = nijenhuis(j, p, real_basis(2, 0), real_basis(2, 2));
    EXPECT_GT(r.value_half.norm(), 1.0);
    EXPECT_LT(r.relative_change, 0.05);
}

TEST(Nijenhuis, AntisymmetricAndZeroOnDiagonal) {
    const JMatrixField j = JMatrixField::from_q(2, Box::centered({4.0, 0.8}), builtin::example_part3_q);
    RVec p(4), x(4), y(4);
    p << 0.1, -0.2, 0.3, 0.1;
    x << 1, 0.5, -0.2, 0.3;
    y << -0.4, 1, 0.7, 0.2;
    EXPECT_LT(nijenhuis(j, p, x, x).value.norm(), 1e-10);
    const RVec nxy = nijenhuis(j, p, x, y).value, nyx = nijenhuis(j, p, y, x).value;
    EXPECT_LT((nxy + nyx).norm(), 1e-10 * std::max(1.0, nxy.norm()));
}

TEST(Nijenhuis, BoundaryMarginIsEnforced) {
    const JMatrixField j = JMatrixField::standard(2, Box::cube(2, 1.0));
    RVec p = RVec::Zero(4);
    p(0) = 1.0;
    EXPECT_LAB_ERROR(nijenhuis(j, p, real_basis(2, 0), real_basis(2, 1)), domain_margin);
}

TEST(Frame, ZeroForStandardStructure) {
    EXPECT_EQ(zeroone_frame(builtin::standard(), c2(0.3, 0.1)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Frame, ExampleSatisfiesTheZeroOneCondition) {
    const StructureField s = builtin::example_part3();
    const CVec z = c2(cplx(0.5, -1), cplx(0.2, 0.15));
    const CMat alpha = zeroone_frame(s, z);
    const RMat j = s.j_at(z);
    // A (0,1) vector V = X + iY satisfies J X = Y, i.e. J V = -i V.
    for (int k = 0; k < 2; ++k) {
        const CVec v = frame_vector(alpha, k);
        const CVec jv = j.cast<cplx>() * v;
        EXPECT_LT((jv + kI * v).norm(), 1e-12);
    }
    EXPECT_LT((alpha - s.q_at(z).adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((zeroone_frame_from_j(j) - alpha).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Frame, VanishesAlongTheAxisForAxisStandardStructures) {
    for (const char* name : {"example_part3", "toy_n0", "toy_quadratic", "prop1_test"}) {
        const StructureField s = builtin::by_name(name);
        EXPECT_LT(zeroone_frame(s, c2(cplx(0.4, -0.3), 0.0)).cwiseAbs().maxCoeff(), 1e-14) << name;
    }
}

TEST(Normalization, IdentityForStandardStructure) {
    const NormalizationMap m = build_normalization(builtin::standard(2, 0.5));
    const CVec z = c2(cplx(0.1, 0.2), cplx(-0.1, 0.05));
    EXPECT_LT((m.apply(z) - z).norm(), 1e-15);
    const auto c = m.coefficients(0.1);
    EXPECT_EQ(c.a[0].cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(c.b[0].cwiseAbs().maxCoeff(), 0.0);
}

TEST(Normalization, ExampleHasNijenhuisObstruction) {
    EXPECT_LAB_ERROR(build_normalization(builtin::example_part3()), nijenhuis_obstruction);
}

TEST(Normalization, RefusesStructureNotStandardOnAxis) {
    const StructureField s = structure_from_expressions("shift", 2, {"0.1", "0", "0", "0"}, Box::cube(2, 0.5));
    EXPECT_LAB_ERROR(build_normalization(s), not_standard_on_axis);
}

TEST(Normalization, ToyCoefficientsSolveTheEquation) {
    const NormalizationMap m = build_normalization(builtin::toy_n0());
    EXPECT_LE(m.max_equation_residual(), 1e-12);
    const auto c = m.coefficients(cplx(0.2, 0.1));
    // alpha(1,1) = conj(Q(1,1)); its z2bar-derivative is conj(0.2 + 0.1 z1bar) and its z2-derivative conj(0.1 - 0.05i).
    EXPECT_LT(std::abs(c.b[0](0, 0) + 0.5 * std::conj(0.2 + 0.1 * std::conj(cplx(0.2, 0.1)))), 1e-12);
    EXPECT_LT(std::abs(c.a[0](0, 0) + std::conj(cplx(0.1, -0.05))), 1e-12);
}

TEST(Normalization, InverseRoundTrip) {
    const NormalizationMap m = build_normalization(builtin::toy_n0());
    const CVec z = c2(cplx(0.2, -0.1), cplx(0.05, 0.03));
    EXPECT_LT((m.inverse(m.apply(z)) - z).norm(), 1e-12);
}

TEST(Pushforward, StandardStructureUnchanged) {
    const NormalizationMap m = build_normalization(builtin::standard(2, 0.5));
    const StructureField p = pushforward_structure(m);
    EXPECT_LT(p.q_at(c2(0.1, cplx(0.05, 0.02))).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Pushforward, ToyGradientVanishesOnAxis) {
    const NormalizationMap m = build_normalization(builtin::toy_n0());
    const StructureField p = pushforward_structure(m);
    EXPECT_LT(axis_gradient_sup(p, 3), 1e-6);
}
