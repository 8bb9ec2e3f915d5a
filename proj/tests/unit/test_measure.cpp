#include "test_util.hpp"

using namespace aclab;

namespace {

std::size_t node(const PlaneGrid& g, cplx p) {
    return g.index(static_cast<int>(std::lround((p.real() + g.half_width()) / g.step())),
                   static_cast<int>(std::lround((p.imag() + g.half_width()) / g.step())));
}

}  // namespace

TEST(Density, WholePlaneAndHalfPlane) {
    const PlaneGrid g(256, 1.0);
    const auto whole = density_profile(FatSet::everything(g), {0.05, 0.1, 0.5});
    for (const DensityRow& d : whole) EXPECT_NEAR(d.density, 1.0, 2 * g.step() / d.r);
    const auto half = density_profile(FatSet::from_predicate(g, [](cplx z) { return z.real() > 0; }), {0.05, 0.1, 0.5});
    for (const DensityRow& d : half) EXPECT_NEAR(d.density, 0.5, 2 * g.step() / d.r);
    EXPECT_TRUE(is_fat(FatSet::everything(g)));
}

TEST(Density, UnresolvableRadius) {
    const PlaneGrid g(64, 1.0);
    EXPECT_LAB_ERROR(density_profile(FatSet::everything(g), {g.step()}), unresolvable_radius);
    EXPECT_LAB_ERROR(density_profile(FatSet::everything(g), {2.0}), unresolvable_radius);
}

TEST(Density, AnnulusComplementIsFatAlongAvoidingRadii) {
    const PlaneGrid g(1024, 1.0);
    const std::vector<long> n{1, 4};
    const FatSet e = remark1_avoiding_set(n, g);
    // At r = 2^-6 no annulus meets the disc; at r = 2^-4 the annulus (2^-5, 2^-4) covers 3/4 of it.
    const auto rows = density_profile(e, {std::ldexp(1.0, -6), std::ldexp(1.0, -4)});
    EXPECT_NEAR(rows[0].density, 1.0, 0.02);
    EXPECT_NEAR(rows[1].density, 0.25, 0.03);
}

TEST(ConvInvAbs, SingleAtom) {
    const PlaneGrid g(128, 2.0);
    const GridMeasure nu = measures::atoms(g, {{cplx(1.0, 0.0), 1.0}});
    const auto c = conv_inv_abs(nu);
    for (cplx z : {cplx(0, 0), cplx(-1, 0.5), cplx(1.5, 1.5)}) {
        const std::size_t id = node(g, z);
        EXPECT_NEAR(c[id], 1.0 / std::abs(g.z(id) - 1.0), 1e-12);
    }
}

TEST(ConvInvAbs, UniformDiscAtOrigin) {
    const PlaneGrid g(512, 2.0);
    const auto c = conv_inv_abs(measures::uniform_disc(g, 1.0, 1.0));
    EXPECT_NEAR(c[g.center_index()], 2.0, 0.02);
}

TEST(ConvInvAbs, CircleMeasureLeavesAFatSet) {
    const PlaneGrid g(512, 0.02);
    const auto c = conv_inv_abs(measures::circle(g, 1e-2));
    const FatSet e1 = e_eps(c, g, 1.0);
    for (const DensityRow& d : density_profile(e1, {4e-4, 6e-4, 1e-3})) EXPECT_GE(d.density, 0.99) << d.r;
}

TEST(ConvInvAbs, FarFieldBound) {
    const PlaneGrid g(128, 1.0);
    for (const char* name : {"uniform_disc", "circle", "atoms"}) {
        const FarFieldCheck f = lemma_a1_far_field(measures::by_name(name, g));
        EXPECT_EQ(f.violations, 0u) << name;
        EXPECT_LE(f.worst_ratio, 1.0) << name;
    }
}

TEST(FatWitness, ZeroMeasureKeepsEverything) {
    const PlaneGrid g(128, 1.0);
    const FatWitness w = build_fat_witness(measures::zero(g), dyadic_schedule(g));
    EXPECT_TRUE(w.fat);
    for (auto m : w.set.mask) EXPECT_EQ(m, 1);
    for (const WitnessAnnulus& a : w.annuli) EXPECT_EQ(a.sup_z_conv, 0.0);
}

TEST(FatWitness, UniformDiscIsFat) {
    const PlaneGrid g(512, 1.0);
    const GridMeasure nu = measures::uniform_disc(g, 0.5);
    const FatWitness w = build_fat_witness(nu, adaptive_schedule(conv_inv_abs(nu), g));
    EXPECT_TRUE(w.fat);
    for (const WitnessAnnulus& a : w.annuli) EXPECT_LE(a.sup_z_conv, 1.0 / a.j + 1e-12);
}

TEST(FatWitness, AtomAtOriginIsRefused) {
    const PlaneGrid g(64, 1.0);
    EXPECT_LAB_ERROR(build_fat_witness(measures::by_name("origin_atom", g), dyadic_schedule(g)), atom_at_origin);
}

TEST(FatWitness, ScheduleMustHalve) {
    const PlaneGrid g(64, 1.0);
    EXPECT_LAB_ERROR(build_fat_witness(measures::zero(g), {1.0, 0.6}), invalid_schedule);
    EXPECT_LAB_ERROR(build_fat_witness(measures::zero(g), {}), invalid_schedule);
}

TEST(PvConvolution, ZeroAndFarField) {
    const PlaneGrid g(512, 4.0);
    for (cplx v : pv_conv_z2(GridMeasure(g, MeasureMode::density))) EXPECT_EQ(v, cplx(0));
    const GridMeasure disc = GridMeasure::from_density(
        g, [](cplx z) { return std::abs(z) < 1.0 ? cplx(1) : cplx(0); }, MeasureMode::density, 8);
    const auto t = pv_conv_z2(disc), tb = pv_conv_zbar2(disc);
    for (cplx z : {cplx(3, 0), cplx(0, -3), cplx(2.1, 2.1)}) {
        const std::size_t id = node(g, z);
        const cplx w = g.z(id);
        const cplx expected = -1.0 / (w * w);
        EXPECT_LT(std::abs(t[id] - expected), 0.02 * std::abs(expected)) << w;
        EXPECT_LT(std::abs(tb[id] - std::conj(t[id])), 1e-12);
    }
}

TEST(PvConvolution, Linearity) {
    const PlaneGrid g(64, 1.0);
    const GridMeasure a = measures::gaussian_bump(g, 0.1), b = measures::dyadic_cells(g);
    GridMeasure s(g, MeasureMode::density);
    for (std::size_t k = 0; k < g.count(); ++k) s.mass[k] = 2.0 * a.mass[k] - kI * b.mass[k];
    const auto ta = pv_conv_z2(a), tb = pv_conv_z2(b), ts = pv_conv_z2(s);
    for (std::size_t k = 0; k < g.count(); ++k) EXPECT_LT(std::abs(ts[k] - (2.0 * ta[k] - kI * tb[k])), 1e-9);
}

TEST(WeakL1, DistributionFunctionDecreases) {
    const PlaneGrid g(256, 1.0);
    const GridMeasure psi = measures::gaussian_bump(g, 0.05);
    const WeakL1Table tab = weak_l1_table(pv_conv_z2(psi), psi, 0.1, 1000.0, 9);
    ASSERT_EQ(tab.rows.size(), 9u);
    for (std::size_t k = 1; k < tab.rows.size(); ++k) EXPECT_LE(tab.rows[k].measure, tab.rows[k - 1].measure);
    EXPECT_GT(tab.c_emp, 0.0);
    EXPECT_LT(tab.c_emp, 10.0);
}

TEST(LemmaA3, AnnulusIntegralClosedForm) {
    const PolarRegion whole{};
    const A3Table t = lemma_a3_divergence(lemma_a3_weight, 1.0, whole, 64);
    ASSERT_EQ(t.rows.size(), 64u);
    for (const A3Row& r : t.rows) EXPECT_NEAR(r.integral / (2 * kPi * std::log(1 + 1.0 / r.k)), 1.0, 1e-6) << r.k;
    EXPECT_GE(t.rows.back().partial_sum, 0.8 * t.constant() * std::log(64.0));
}

TEST(LemmaA3, SectorRegionStillDiverges) {
    PolarRegion sector;
    sector.member = [](cplx z) { return std::arg(z) > -2.0 && std::arg(z) < 2.0; };
    const A3Table t = lemma_a3_divergence(lemma_a3_weight, 1.0, sector, 32);
    EXPECT_FALSE(t.truncated);
    for (const A3Row& r : t.rows) EXPECT_GE(r.integral, r.lower_bound);
}

TEST(LemmaA3, InvalidDelta) {
    EXPECT_LAB_ERROR(lemma_a3_divergence(lemma_a3_weight, 2 * kPi, PolarRegion{}, 4), invalid_argument);
    EXPECT_LAB_ERROR(lemma_a3_divergence(lemma_a3_weight, 0.0, PolarRegion{}, 4), invalid_argument);
}

TEST(Remark1, MassesAndSups) {
    const Remark1Report rep = remark1_density({1, 4, 16, 64, 256});
    ASSERT_EQ(rep.annuli.size(), 5u);
    for (const Remark1Annulus& a : rep.annuli) {
        EXPECT_NEAR(a.mass_quadrature / a.mass_closed, 1.0, 1e-2);
        EXPECT_NEAR(a.sup_sampled / a.sup_closed, 1.0, 1e-2);
        EXPECT_NEAR(a.relative_area, 0.75, 0.0);
    }
    EXPECT_GT(rep.annuli.back().sup_closed, rep.annuli.front().sup_closed);
    EXPECT_NEAR(rep.annuli.back().partial_mass, rep.total_mass, 1e-15);
    EXPECT_EQ(rep.annuli.back().tail_bound, 0.0);
    EXPECT_GT(rep.annuli.front().tail_bound, 0.0);
}

TEST(Remark1, SequenceValidation) {
    EXPECT_TRUE(remark1_density({}).annuli.empty());
    EXPECT_EQ(remark1_density({}).total_mass, 0.0);
    EXPECT_LAB_ERROR(remark1_density({4, 2}), invalid_argument);
    EXPECT_LAB_ERROR(remark1_density({0, 2}), invalid_argument);
}
