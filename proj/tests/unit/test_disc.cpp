#include "test_util.hpp"

using namespace aclab;
using aclab::test::c2;

namespace {

CGrid sample(const DiscGrid& g, const std::function<cplx(cplx)>& f) {
    CGrid out(g.count());
    for (std::size_t k = 0; k < g.count(); ++k) out[k] = f(g.zeta(k));
    return out;
}

// Max over interior nodes of |dbar(T f) - f| for f = zeta.
double dbar_defect(int cells) {
    const DiscGrid g(cells, 1.0);
    const CGrid f = sample(g, [](cplx z) { return z; });
    CGrid dbar;
    grid_wirtinger(g, cauchy_green(g, f), nullptr, &dbar);
    double e = 0.0;
    for (std::size_t k = 0; k < g.count(); ++k)
        if (std::abs(g.zeta(k)) <= 0.5) e = std::max(e, std::abs(dbar[k] - f[k]));
    return e;
}

JetSpec make_jet(cplx z1, cplx z2, cplx v1, cplx v2, double rho) { return {c2(z1, z2), c2(v1, v2), rho}; }

}  // namespace

TEST(CauchyGreen, ZeroMapsToZero) {
    const DiscGrid g(32, 1.0);
    for (cplx v : cauchy_green(g, CGrid(g.count(), 0.0))) EXPECT_EQ(v, cplx(0));
}

TEST(CauchyGreen, ConstantOneGivesConjugate) {
    const DiscGrid g(256, 1.0);
    const CGrid t = cauchy_green(g, CGrid(g.count(), 1.0));
    int checked = 0;
    for (int i = 0; i < 10; ++i) {
        const cplx z = std::polar(0.08 * i, 0.7 * i);
        const std::size_t id = g.index(g.center() + static_cast<int>(std::lround(z.real() / g.step())),
                                       g.center() + static_cast<int>(std::lround(z.imag() / g.step())));
        EXPECT_LT(std::abs(t[id] - std::conj(g.zeta(id))), 2e-2) << g.zeta(id);
        ++checked;
    }
    EXPECT_EQ(checked, 10);
}

TEST(CauchyGreen, DbarInvertsAtFirstOrder) {
    const double coarse = dbar_defect(64), fine = dbar_defect(128);
    EXPECT_LT(fine, coarse);
    EXPECT_LT(fine, 0.1);
}

TEST(DiscGrid, RejectsBadParameters) {
    EXPECT_LAB_ERROR(DiscGrid(5, 1.0), invalid_argument);
    EXPECT_LAB_ERROR(DiscGrid(8, 0.0), invalid_argument);
}

TEST(SolveDisc, StandardStructureGivesLinearMap) {
    const StructureField s = builtin::standard(2, 1.0);
    const JetSpec j = make_jet(cplx(0.1, 0.2), cplx(-0.3, 0.1), cplx(1, 0.5), cplx(0.2, -1), 0.05);
    const DiscSolution sol = solve_disc(s, j, {64, 1e-12, 50});
    EXPECT_LE(sol.iterations, 1);
    EXPECT_EQ(sol.residual_sup, 0.0);
    for (std::size_t k = 0; k < sol.grid.count(); ++k) {
        if (!sol.grid.active(k)) continue;
        const CVec expected = j.center + j.derivative * sol.grid.zeta(k);
        EXPECT_LT((sol.value(k) - expected).norm(), 1e-15);
    }
}

TEST(SolveDisc, ExampleOnTheAxisIsTheStraightDisc) {
    const StructureField s = builtin::example_part3();
    const DiscSolution sol = solve_disc(s, make_jet(cplx(0.5, -0.2), 0.0, 1.0, 0.0, 0.05), {64, 1e-12, 50});
    EXPECT_EQ(sol.residual_sup, 0.0);
    for (std::size_t k = 0; k < sol.grid.count(); ++k) {
        if (!sol.grid.active(k)) continue;
        EXPECT_LT(std::abs(sol.u[0][k] - (cplx(0.5, -0.2) + sol.grid.zeta(k))), 1e-15);
        EXPECT_EQ(sol.u[1][k], cplx(0));
    }
}

TEST(SolveDisc, ExampleJetHasConjugateDbarAtCenter) {
    const StructureField s = builtin::example_part3();
    const cplx z2(0.06, -0.05), t(0.3, 0.2);
    const DiscSolution sol = solve_disc(s, make_jet(0.0, z2, 1.0, t, 0.05), {128, 1e-11, 100});
    EXPECT_LE(sol.residual_sup, 1e-10);
    const std::size_t c = sol.grid.center_index();
    EXPECT_LT(std::abs(sol.u[0][c]), 1e-12);
    EXPECT_LT(std::abs(sol.u[1][c] - z2), 1e-12);
    EXPECT_LT(std::abs(sol.u_zeta[0][c] - 1.0), 1e-9);
    EXPECT_LT(std::abs(sol.u_zeta[1][c] - t), 1e-9);
    EXPECT_LT(std::abs(sol.u_zetabar[0][c]), 1e-6);
    EXPECT_LT(std::abs(sol.u_zetabar[1][c] - std::conj(z2)), 1e-6);
}

TEST(SolveDisc, ExampleSecondDerivativeIdentity) {
    const StructureField s = builtin::example_part3();
    const DiscSolution sol = solve_disc(s, make_jet(0.0, cplx(0.08, 0.03), 1.0, cplx(0.5, -0.5), 0.05), {128, 1e-11, 100});
    double worst = 0.0;
    for (std::size_t k = 0; k < sol.grid.count(); ++k) {
        if (!sol.grid.interior(k)) continue;
        const cplx rhs = sol.u[1][k] * std::norm(sol.u_zeta[0][k]);
        worst = std::max(worst, std::abs(sol.u_zetazetabar[1][k] - rhs) / std::abs(rhs));
    }
    EXPECT_LT(worst, 1e-2);
    const E3Report e3 = e3_bound_check(sol, s);
    EXPECT_TRUE(e3.holds());
    EXPECT_GT(e3.checked, 0u);
}

TEST(SolveDisc, E3BothSidesVanishForStandardStructure) {
    const StructureField s = builtin::standard(2, 1.0);
    const DiscSolution sol = solve_disc(s, make_jet(0.0, 0.0, 1.0, 0.3, 0.1), {64, 1e-12, 50});
    const E3Report e3 = e3_bound_check(sol, s);
    EXPECT_TRUE(e3.holds());
    EXPECT_EQ(e3.worst_ratio, 0.0);
}

TEST(SolveDisc, RandomAdmissibleStructureSatisfiesE3) {
    const StructureField s = builtin::random_affine(2, 3);
    const DiscSolution sol = solve_disc(s, make_jet(0.0, 0.0, 1.0, cplx(0.2, 0.1), 0.05), {64, 1e-11, 100});
    EXPECT_TRUE(e3_bound_check(sol, s).holds());
}

TEST(SolveDisc, ErrorsOnBadJets) {
    const StructureField s = builtin::example_part3();
    EXPECT_LAB_ERROR(solve_disc(s, make_jet(0.0, 0.5, 1.0, 0.0, 0.05)), left_domain);
    EXPECT_LAB_ERROR(solve_disc(s, make_jet(0.0, 0.0, 1.0, 0.0, 2.0)), invalid_argument);
    EXPECT_LAB_ERROR(solve_disc(s, JetSpec{CVec::Zero(3), CVec::Zero(3), 0.05}), invalid_argument);
}

TEST(ExactJetDisc, Examples) {
    for (cplx zeta : {cplx(0), cplx(0.3, 0.1), cplx(-0.2, 0.4)}) {
        EXPECT_EQ(exact_jet_disc(0.0, 0.0, zeta), c2(zeta, 0.0));
        EXPECT_EQ(exact_jet_residual(0.0, 0.0, zeta).norm(), 0.0);
    }
    EXPECT_EQ(exact_jet_disc(0.0, 1.0, cplx(0.1, 0.2)), c2(cplx(0.1, 0.2), cplx(1.1, -0.2)));
    EXPECT_EQ(exact_jet_residual(0.0, 1.0, 0.0).norm(), 0.0);
    EXPECT_GT(exact_jet_residual(0.0, 1.0, 0.1).norm(), 0.0);
    EXPECT_LT(exact_jet_residual(kI, 2.0 * kI, 0.0).norm(), 1e-14);
}
