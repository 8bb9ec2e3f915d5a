#pragma once

// Measures and sets on the square [-R, R]^2, sampled on the node grid z(i, j) = -R + (i + i j) h, h = 2R/N.
// Each node stands for the h x h cell centered on it; with N even, 0 is the central node.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aclab/core/error.hpp"
#include "aclab/core/types.hpp"

namespace aclab {

class PlaneGrid {
public:
    PlaneGrid(int n_cells, double half_width) : n_(n_cells), m_(n_cells + 1), r_(half_width), h_(2 * half_width / n_cells) {
        if (n_cells < 4 || n_cells % 2) fail(ErrorCode::invalid_argument, "plane grid needs an even cell count >= 4");
        if (!(half_width > 0)) fail(ErrorCode::invalid_argument, "plane grid half-width must be positive");
    }

    int cells() const { return n_; }
    int size() const { return m_; }
    double half_width() const { return r_; }
    double step() const { return h_; }
    std::size_t count() const { return static_cast<std::size_t>(m_) * m_; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * m_ + i; }
    std::size_t center_index() const { return index(n_ / 2, n_ / 2); }
    cplx z(int i, int j) const { return cplx(-r_ + i * h_, -r_ + j * h_); }
    cplx z(std::size_t id) const { return z(static_cast<int>(id % m_), static_cast<int>(id / m_)); }

    /// Fraction of the cell at id inside {|z| < r}, linear in the signed distance of the center.
    double disc_weight(std::size_t id, double r) const { return std::clamp(0.5 + (r - std::abs(z(id))) / h_, 0.0, 1.0); }

private:
    int n_, m_;
    double r_, h_;
};

enum class MeasureMode { measure, density };

/// Cell masses (measure mode, >= 0) or signed/complex cell integrals of an L^1 density.
struct GridMeasure {
    PlaneGrid grid;
    MeasureMode mode = MeasureMode::measure;
    std::vector<cplx> mass;
    std::string name;
    bool atom_at_origin = false;  // set when a point mass is placed on the origin node

    GridMeasure(PlaneGrid g, MeasureMode m, std::string nm = "") : grid(g), mode(m), mass(g.count(), 0.0), name(std::move(nm)) {}

    double total_mass() const {
        double s = 0.0;
        for (const cplx& v : mass) s += std::abs(v);
        return s;
    }

    void validate() const {
        if (mode == MeasureMode::measure) {
            for (const cplx& v : mass)
                if (v.imag() != 0.0 || v.real() < 0.0) fail(ErrorCode::invalid_argument, "measure masses must be nonnegative reals");
        }
        for (const cplx& v : mass)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) fail(ErrorCode::invalid_argument, "masses must be finite");
    }

    /// Cell integrals of f by s x s midpoint subsampling.
    static GridMeasure from_density(const PlaneGrid& g, const std::function<cplx(cplx)>& f, MeasureMode mode, int s = 4,
                                    std::string nm = "") {
        GridMeasure m(g, mode, std::move(nm));
        const double h = g.step();
        for (std::size_t id = 0; id < g.count(); ++id) {
            const cplx c = g.z(id);
            cplx acc = 0.0;
            for (int b = 0; b < s; ++b)
                for (int a = 0; a < s; ++a) acc += f(c + h * cplx((a + 0.5) / s - 0.5, (b + 0.5) / s - 0.5));
            m.mass[id] = acc * (h * h / (s * s));
        }
        m.validate();
        return m;
    }

    /// Adds an atom of mass w at the node nearest to p.
    void add_atom(cplx p, cplx w) {
        const int i = static_cast<int>(std::lround((p.real() + grid.half_width()) / grid.step()));
        const int j = static_cast<int>(std::lround((p.imag() + grid.half_width()) / grid.step()));
        if (i < 0 || j < 0 || i >= grid.size() || j >= grid.size()) fail(ErrorCode::out_of_range, "atom outside the grid");
        mass[grid.index(i, j)] += w;
        if (grid.index(i, j) == grid.center_index() && w != cplx(0)) atom_at_origin = true;
    }
};

namespace measures {

inline GridMeasure zero(const PlaneGrid& g) { return GridMeasure(g, MeasureMode::measure, "zero"); }

/// Total mass `total` spread uniformly over |z| < radius (cell fractions by subsampling).
inline GridMeasure uniform_disc(const PlaneGrid& g, double radius = 1.0, double total = 1.0) {
    const double d = total / (kPi * radius * radius);
    GridMeasure m = GridMeasure::from_density(g, [=](cplx z) { return std::abs(z) < radius ? cplx(d) : cplx(0); },
                                              MeasureMode::measure, 8, "uniform_disc");
    // Normalize away the subsampling error in the boundary cells.
    const double s = total / m.total_mass();
    for (cplx& v : m.mass) v *= s;
    return m;
}

/// Total mass `total` spread evenly over `atoms` points of the circle |z| = radius.
inline GridMeasure circle(const PlaneGrid& g, double radius, double total = 1.0, int atoms = 4096) {
    GridMeasure m(g, MeasureMode::measure, "circle");
    for (int k = 0; k < atoms; ++k) m.add_atom(std::polar(radius, 2 * kPi * (k + 0.5) / atoms), total / atoms);
    return m;
}

inline GridMeasure atoms(const PlaneGrid& g, const std::vector<std::pair<cplx, double>>& pts, std::string nm = "atoms") {
    GridMeasure m(g, MeasureMode::measure, std::move(nm));
    for (const auto& [p, w] : pts) m.add_atom(p, w);
    m.validate();
    return m;
}

/// Unit-mass Gaussian bump of width sigma at the origin, as an L^1 density.
inline GridMeasure gaussian_bump(const PlaneGrid& g, double sigma) {
    return GridMeasure::from_density(
        g, [=](cplx z) { return cplx(std::exp(-std::norm(z) / (2 * sigma * sigma)) / (2 * kPi * sigma * sigma)); },
        MeasureMode::density, 4, "gaussian_bump");
}

/// L^1 density with mass 2^{-k} packed into the node cell at 0.75 2^{-k} e^{ik}, k = 4..9.
inline GridMeasure dyadic_cells(const PlaneGrid& g) {
    GridMeasure m(g, MeasureMode::density, "dyadic_cells");
    for (int k = 4; k <= 9; ++k) m.add_atom(std::polar(0.75 * std::ldexp(g.half_width(), -k), double(k)), std::ldexp(1.0, -k));
    return m;
}

inline std::vector<std::string> names() {
    return {"zero", "uniform_disc", "circle", "atoms", "gaussian_bump", "dyadic_cells", "origin_atom"};
}

/// Builtin test measures at a given grid; "circle" sits at |z| = R/2, "atoms" off the origin.
inline GridMeasure by_name(const std::string& name, const PlaneGrid& g) {
    const double r = g.half_width();
    if (name == "zero") return zero(g);
    if (name == "uniform_disc") return uniform_disc(g, 0.5 * r);
    if (name == "circle") return circle(g, 0.5 * r);
    if (name == "atoms") return atoms(g, {{cplx(0.3 * r, 0.1 * r), 0.5}, {cplx(-0.2 * r, -0.4 * r), 0.25}, {cplx(0.05 * r, 0.6 * r), 0.25}});
    if (name == "gaussian_bump") return gaussian_bump(g, std::max(0.002 * r, 2 * g.step()));
    if (name == "dyadic_cells") return dyadic_cells(g);
    if (name == "origin_atom") return atoms(g, {{cplx(0), 1.0}}, "origin_atom");
    fail(ErrorCode::invalid_argument, "unknown builtin measure: " + name);
}

}  // namespace measures

struct FatSet {
    PlaneGrid grid;
    std::vector<std::uint8_t> mask;

    static FatSet everything(const PlaneGrid& g) { return {g, std::vector<std::uint8_t>(g.count(), 1)}; }

    static FatSet from_predicate(const PlaneGrid& g, const std::function<bool(cplx)>& p) {
        FatSet e{g, std::vector<std::uint8_t>(g.count(), 0)};
        for (std::size_t id = 0; id < g.count(); ++id) e.mask[id] = p(g.z(id));
        return e;
    }
};

struct DensityRow {
    double r = 0.0;
    double density = 0.0;
};

/// |E cap {|z| < r}| / (pi r^2) by cell counting with boundary cells weighted by their linearized fraction.
inline std::vector<DensityRow> density_profile(const FatSet& e, const std::vector<double>& radii) {
    const PlaneGrid& g = e.grid;
    std::vector<DensityRow> out;
    for (double r : radii) {
        if (!(r >= 4 * g.step())) fail(ErrorCode::unresolvable_radius, "radius below 4 grid steps");
        if (r > g.half_width()) fail(ErrorCode::unresolvable_radius, "radius beyond the grid");
        const int lo = std::max(0, static_cast<int>(std::floor((g.half_width() - r) / g.step())) - 1);
        const int hi = std::min(g.size() - 1, static_cast<int>(std::ceil((g.half_width() + r) / g.step())) + 1);
        double area = 0.0;
        for (int j = lo; j <= hi; ++j)
            for (int i = lo; i <= hi; ++i) {
                const std::size_t id = g.index(i, j);
                if (e.mask[id]) area += g.disc_weight(id, r);
            }
        out.push_back({r, area * g.step() * g.step() / (kPi * r * r)});
    }
    return out;
}

/// Dyadic radii R 2^{-m} at or above `min_steps` grid steps, smallest first.
inline std::vector<double> resolvable_dyadic_radii(const PlaneGrid& g, double min_steps = 16) {
    std::vector<double> out;
    for (double r = g.half_width(); r >= min_steps * g.step(); r /= 2) out.insert(out.begin(), r);
    return out;
}

/// Fatness verdict: density >= threshold at the `count` smallest resolvable dyadic radii.
inline bool is_fat(const FatSet& e, double threshold = 0.99, int count = 3, double min_steps = 16) {
    std::vector<double> radii = resolvable_dyadic_radii(e.grid, min_steps);
    if (static_cast<int>(radii.size()) < count) fail(ErrorCode::unresolvable_radius, "too few resolvable dyadic radii");
    radii.resize(static_cast<std::size_t>(count));
    for (const DensityRow& d : density_profile(e, radii))
        if (d.density < threshold) return false;
    return true;
}

}  // namespace aclab
