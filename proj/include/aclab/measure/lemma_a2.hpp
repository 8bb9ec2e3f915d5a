#pragma once

// Principal-value convolution psi * (-1/(pi z^2)) on the grid, its distribution function, and the
// dyadic level-set bound |{2^{-k-1} <= |z| <= 2^{-k}, |T psi| > 2^{2k}}| <= C |psi|_1 2^{-2k}.

#include <vector>

#include "aclab/disc/fft_convolution.hpp"
#include "aclab/measure/grid_measure.hpp"

namespace aclab {

namespace detail {

/// The centered cell contributes nothing: the kernel is odd under z -> iz.
inline std::vector<cplx> pv_convolve(const GridMeasure& psi, bool conjugate_kernel) {
    const double h = psi.grid.step();
    const Convolver2D conv(psi.grid.size(), [h, conjugate_kernel](int di, int dj) {
        if (di == 0 && dj == 0) return cplx(0);
        const cplx z = h * cplx(di, dj);
        const cplx k = -1.0 / (kPi * z * z);
        return conjugate_kernel ? std::conj(k) : k;
    });
    return conv.apply(psi.mass);
}

}  // namespace detail

inline std::vector<cplx> pv_conv_z2(const GridMeasure& psi) { return detail::pv_convolve(psi, false); }

/// Same with the conjugate kernel -1/(pi zbar^2); conj(pv_conv_z2(psi)) == pv_conv_zbar2(conj psi).
inline std::vector<cplx> pv_conv_zbar2(const GridMeasure& psi) { return detail::pv_convolve(psi, true); }

struct WeakL1Row {
    double t = 0.0;
    double measure = 0.0;  // |{|T psi| > t}|
    double product = 0.0;  // t |{...}| / |psi|_1
};

struct WeakL1Table {
    std::vector<WeakL1Row> rows;
    double c_emp = 0.0;           // max product
    double min_product = 0.0;
    double spread() const { return min_product > 0 ? c_emp / min_product : std::numeric_limits<double>::infinity(); }
};

/// Distribution function of |T psi| at log-spaced levels in [t_lo, t_hi].
inline WeakL1Table weak_l1_table(const std::vector<cplx>& tpsi, const GridMeasure& psi, double t_lo, double t_hi, int levels = 17) {
    const double a = psi.grid.step() * psi.grid.step();
    const double norm = psi.total_mass();
    WeakL1Table tab;
    tab.min_product = std::numeric_limits<double>::infinity();
    for (int k = 0; k < levels; ++k) {
        const double t = t_lo * std::pow(t_hi / t_lo, double(k) / (levels - 1));
        std::size_t n = 0;
        for (const cplx& v : tpsi) n += std::abs(v) > t;
        WeakL1Row row{t, double(n) * a, norm > 0 ? t * double(n) * a / norm : 0.0};
        tab.c_emp = std::max(tab.c_emp, row.product);
        tab.min_product = std::min(tab.min_product, row.product);
        tab.rows.push_back(row);
    }
    return tab;
}

struct LevelRow {
    int k = 0;
    double area = 0.0;      // |{2^{-k-1} <= |z| <= 2^{-k}, |T psi| > 2^{2k}}|
    double constant = 0.0;  // area 2^{2k} / |psi|_1
    bool resolved = false;  // inner radius at least 2 grid steps
};

inline std::vector<LevelRow> lemma_a2_levels(const std::vector<cplx>& tpsi, const GridMeasure& psi, int k_lo = 4, int k_hi = 10) {
    const PlaneGrid& g = psi.grid;
    const double norm = psi.total_mass();
    std::vector<LevelRow> out;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double lo = std::ldexp(1.0, -k - 1), hi = std::ldexp(1.0, -k), t = std::ldexp(1.0, 2 * k);
        LevelRow row;
        row.k = k;
        row.resolved = lo >= 2 * g.step();
        std::size_t n = 0;
        for (std::size_t id = 0; id < g.count(); ++id) {
            const double r = std::abs(g.z(id));
            if (r >= lo && r <= hi && std::abs(tpsi[id]) > t) ++n;
        }
        row.area = double(n) * g.step() * g.step();
        row.constant = norm > 0 ? row.area * std::ldexp(1.0, 2 * k) / norm : 0.0;
        out.push_back(row);
    }
    return out;
}

/// E_1 = {z : |T psi| <= 1/|z|^2}; the origin is included.
inline FatSet lemma_a2_set(const std::vector<cplx>& tpsi, const PlaneGrid& g) {
    FatSet e{g, std::vector<std::uint8_t>(g.count(), 0)};
    for (std::size_t id = 0; id < g.count(); ++id) {
        const double r = std::abs(g.z(id));
        e.mask[id] = r == 0.0 || std::abs(tpsi[id]) * r * r <= 1.0;
    }
    return e;
}

}  // namespace aclab
