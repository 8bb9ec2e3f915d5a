#pragma once

// (1/|z|) * nu on the grid, the sets E_eps = {z : (1/|z|) * nu <= eps/|z|}, and a glued witness
//   E cap {r_{j+1} < |z| <= r_j} = E_{1/j} cap {r_{j+1} < |z| <= r_j},  r_{j+1} <= r_j / 2.

#include <vector>

#include "aclab/disc/fft_convolution.hpp"
#include "aclab/measure/grid_measure.hpp"

namespace aclab {

/// Cell average of 1/|z| over the centered h x h square: 4 log(1 + sqrt 2) / h.
inline double inv_abs_self_cell(double h) { return 4 * std::log(1 + std::sqrt(2.0)) / h; }

inline std::vector<double> conv_inv_abs(const GridMeasure& nu) {
    if (nu.mode != MeasureMode::measure) fail(ErrorCode::invalid_argument, "conv_inv_abs expects a positive measure");
    const double h = nu.grid.step();
    const Convolver2D conv(nu.grid.size(), [h](int di, int dj) {
        if (di == 0 && dj == 0) return cplx(inv_abs_self_cell(h));
        return cplx(1.0 / (h * std::hypot(double(di), double(dj))));
    });
    const std::vector<cplx> c = conv.apply(nu.mass);
    std::vector<double> out(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) out[k] = std::max(0.0, c[k].real());
    return out;
}

struct FarFieldCheck {
    std::size_t points = 0, violations = 0;
    double worst_ratio = 0.0;  // max of far / (|nu| / (2|z|))
};

/// int_{|z - t| >= 2|z|} |z - t|^{-1} d nu(t) <= |nu| / (2|z|), by direct summation at `samples` nodes.
inline FarFieldCheck lemma_a1_far_field(const GridMeasure& nu, int samples = 40) {
    FarFieldCheck chk;
    const PlaneGrid& g = nu.grid;
    const double total = nu.total_mass();
    std::vector<std::size_t> support;
    for (std::size_t q = 0; q < g.count(); ++q)
        if (nu.mass[q] != cplx(0)) support.push_back(q);
    for (int s = 0; s < samples; ++s) {
        // Points spiralling in toward the origin over three decades.
        const double r = g.half_width() * 0.5 * std::pow(1e-3, double(s) / std::max(1, samples - 1));
        const cplx z = std::polar(r, 2.4 * s);
        double far = 0.0;
        for (std::size_t q : support) {
            const double d = std::abs(z - g.z(q));
            if (d >= 2 * std::abs(z)) far += nu.mass[q].real() / d;
        }
        const double bound = total / (2 * std::abs(z));
        ++chk.points;
        if (bound > 0) chk.worst_ratio = std::max(chk.worst_ratio, far / bound);
        if (far > bound * (1 + 1e-12)) ++chk.violations;
    }
    return chk;
}

/// E_eps = {z : (1/|z|) * nu <= eps / |z|}; the origin itself is included.
inline FatSet e_eps(const std::vector<double>& conv, const PlaneGrid& g, double eps) {
    FatSet e{g, std::vector<std::uint8_t>(g.count(), 0)};
    for (std::size_t id = 0; id < g.count(); ++id) {
        const double r = std::abs(g.z(id));
        e.mask[id] = r == 0.0 || conv[id] * r <= eps;
    }
    return e;
}

struct WitnessAnnulus {
    int j = 0;
    double r_outer = 0.0, r_inner = 0.0;
    double sup_z_conv = 0.0;   // sup over E in the annulus of |z| (1/|z|) * nu
    double kept_fraction = 0.0;  // share of the annulus cells kept in E
};

struct FatWitness {
    FatSet set;
    std::vector<WitnessAnnulus> annuli;
    std::vector<DensityRow> profile;  // at the resolvable dyadic radii
    bool fat = false;
};

/// Dyadic schedule r_j = R 2^{-(j-1)}, j = 1, 2, ..., down to the grid scale.
inline std::vector<double> dyadic_schedule(const PlaneGrid& g) {
    std::vector<double> r;
    for (double x = g.half_width(); x >= g.step(); x /= 2) r.push_back(x);
    return r;
}

/// A schedule decreasing "fast enough": r_{j+1} is the largest dyadic radius <= r_j / 2 below which E_{1/(j+1)}
/// has density >= target at every resolvable dyadic radius. Stops when no such radius is resolvable.
inline std::vector<double> adaptive_schedule(const std::vector<double>& conv, const PlaneGrid& g, double target = 0.999,
                                             double min_steps = 16) {
    std::vector<double> radii{g.half_width()};
    const std::vector<double> dyadic = resolvable_dyadic_radii(g, min_steps);  // ascending
    for (int j = 2;; ++j) {
        const FatSet e = e_eps(conv, g, 1.0 / j);
        const std::vector<DensityRow> prof = density_profile(e, dyadic);
        double next = 0.0;
        // Largest dyadic c <= r_j / 2 with density >= target on all dyadic radii <= c.
        for (std::size_t k = 0; k < prof.size(); ++k) {
            if (prof[k].density < target) break;
            if (prof[k].r <= 0.5 * radii.back() * (1 + 1e-12)) next = prof[k].r;
        }
        if (next == 0.0) break;
        radii.push_back(next);
    }
    return radii;
}

inline FatWitness build_fat_witness(const GridMeasure& nu, const std::vector<double>& radii) {
    nu.validate();
    if (nu.mode != MeasureMode::measure) fail(ErrorCode::invalid_argument, "fat witness expects a positive measure");
    if (nu.atom_at_origin) fail(ErrorCode::atom_at_origin, "measure has an atom at the origin");
    if (radii.empty()) fail(ErrorCode::invalid_schedule, "empty radius schedule");
    for (std::size_t k = 1; k < radii.size(); ++k)
        if (!(radii[k] > 0.0) || radii[k] > 0.5 * radii[k - 1] * (1 + 1e-12))
            fail(ErrorCode::invalid_schedule, "schedule must satisfy r_{j+1} <= r_j / 2");
    const PlaneGrid& g = nu.grid;
    const std::vector<double> conv = conv_inv_abs(nu);
    FatWitness w{FatSet{g, std::vector<std::uint8_t>(g.count(), 1)}, {}, {}, false};
    std::vector<WitnessAnnulus> rows(radii.size());
    std::vector<std::size_t> cells(radii.size(), 0);
    for (std::size_t k = 0; k < radii.size(); ++k) {
        rows[k].j = static_cast<int>(k) + 1;
        rows[k].r_outer = radii[k];
        rows[k].r_inner = k + 1 < radii.size() ? radii[k + 1] : 0.0;
    }
    for (std::size_t id = 0; id < g.count(); ++id) {
        const double r = std::abs(g.z(id));
        if (r == 0.0 || r > radii.front()) continue;
        // Annulus index: r_{k+1} < r <= r_k.
        std::size_t k = 0;
        while (k + 1 < radii.size() && r <= radii[k + 1]) ++k;
        const double eps = 1.0 / rows[k].j;
        const bool keep = conv[id] * r <= eps;
        w.set.mask[id] = keep;
        ++cells[k];
        if (keep) {
            rows[k].sup_z_conv = std::max(rows[k].sup_z_conv, conv[id] * r);
            rows[k].kept_fraction += 1.0;
        }
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (cells[k]) rows[k].kept_fraction /= double(cells[k]);
        w.annuli.push_back(rows[k]);
    }
    w.profile = density_profile(w.set, resolvable_dyadic_radii(g));
    w.fat = is_fat(w.set);
    return w;
}

}  // namespace aclab
