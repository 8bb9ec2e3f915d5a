#pragma once

// Node grid on the square [-rho, rho]^2 carrying the disc |zeta| <= rho, and the two integral
// operators of the disc solver:
//   T f(zeta)  = (1/pi) int f(w) / (zeta - w) dA(w)          (d/dzetabar T f = f)
//   Pi f(zeta) = -(1/pi) p.v. int f(w) / (zeta - w)^2 dA(w)  (Pi f = d/dzeta T f)
// Each node carries the area fraction of its cell inside the disc; the self cell contributes 0
// to both sums (odd kernels over a centered square).

#include <memory>
#include <vector>

#include "aclab/core/error.hpp"
#include "aclab/disc/fft_convolution.hpp"

namespace aclab {

using CGrid = std::vector<cplx>;

class DiscGrid {
public:
    /// n_cells even; nodes zeta(i, j) = -rho + (i + i j) h with h = 2 rho / n_cells.
    DiscGrid(int n_cells, double rho, int subsamples = 16) : n_(n_cells), m_(n_cells + 1), rho_(rho), h_(2 * rho / n_cells) {
        if (n_cells < 4 || n_cells % 2) fail(ErrorCode::invalid_argument, "disc grid needs an even cell count >= 4");
        if (!(rho > 0)) fail(ErrorCode::invalid_argument, "disc radius must be positive");
        const std::size_t count = static_cast<std::size_t>(m_) * m_;
        weight_.assign(count, 0.0);
        inside_.assign(count, 0);
        interior_.assign(count, 0);
        for (int j = 0; j < m_; ++j) {
            for (int i = 0; i < m_; ++i) {
                const cplx z = zeta(i, j);
                const std::size_t id = index(i, j);
                const double r = std::abs(z);
                inside_[id] = r <= rho_;
                interior_[id] = r <= std::min(rho_ - 2.5 * h_, 0.9 * rho_);
                if (r + h_ * 0.7072 <= rho_) {
                    weight_[id] = 1.0;
                } else if (r - h_ * 0.7072 < rho_) {
                    int hits = 0;
                    for (int b = 0; b < subsamples; ++b)
                        for (int a = 0; a < subsamples; ++a) {
                            const cplx s = z + h_ * cplx((a + 0.5) / subsamples - 0.5, (b + 0.5) / subsamples - 0.5);
                            hits += std::abs(s) <= rho_;
                        }
                    weight_[id] = double(hits) / (subsamples * subsamples);
                }
            }
        }
    }

    int cells() const { return n_; }
    int size() const { return m_; }
    double radius() const { return rho_; }
    double step() const { return h_; }
    std::size_t count() const { return weight_.size(); }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * m_ + i; }
    int center() const { return n_ / 2; }
    std::size_t center_index() const { return index(center(), center()); }
    cplx zeta(int i, int j) const { return cplx(-rho_ + i * h_, -rho_ + j * h_); }
    cplx zeta(std::size_t id) const { return zeta(static_cast<int>(id % m_), static_cast<int>(id / m_)); }

    double weight(std::size_t id) const { return weight_[id]; }
    bool active(std::size_t id) const { return weight_[id] > 0.0 || inside_[id]; }
    bool inside(std::size_t id) const { return inside_[id]; }
    /// Nodes with |zeta| <= min(rho - 2.5 h, 0.9 rho); derivative grids are trusted there.
    bool interior(std::size_t id) const { return interior_[id]; }

    /// Node index of zeta0; refuses points that are not grid nodes or lie in the boundary ring.
    std::size_t node_of(cplx zeta0) const {
        const double fi = (zeta0.real() + rho_) / h_, fj = (zeta0.imag() + rho_) / h_;
        const int i = static_cast<int>(std::lround(fi)), j = static_cast<int>(std::lround(fj));
        if (std::abs(fi - i) > 1e-6 || std::abs(fj - j) > 1e-6 || i < 0 || j < 0 || i >= m_ || j >= m_) {
            fail(ErrorCode::invalid_argument, "zeta0 is not a grid node");
        }
        const std::size_t id = index(i, j);
        if (!interior_[id]) fail(ErrorCode::invalid_argument, "zeta0 lies in the masked boundary ring");
        return id;
    }

private:
    int n_, m_;
    double rho_, h_;
    std::vector<double> weight_;
    std::vector<std::uint8_t> inside_, interior_;
};

class DiscOperators {
public:
    explicit DiscOperators(const DiscGrid& g)
        : grid_(g),
          t_(std::make_shared<Convolver2D>(g.size(),
                                           [h = g.step()](int di, int dj) -> cplx {
                                               if (di == 0 && dj == 0) return 0.0;
                                               return h / (kPi * cplx(di, dj));
                                           })),
          pi_(std::make_shared<Convolver2D>(g.size(), [](int di, int dj) -> cplx {
              if (di == 0 && dj == 0) return 0.0;
              const cplx d(di, dj);
              return -1.0 / (kPi * d * d);
          })) {}

    const DiscGrid& grid() const { return grid_; }

    CGrid cauchy_green(const CGrid& f) const { return t_->apply(weighted(f)); }
    CGrid beurling(const CGrid& f) const { return pi_->apply(weighted(f)); }

private:
    CGrid weighted(const CGrid& f) const {
        CGrid w(f.size());
        for (std::size_t k = 0; k < f.size(); ++k) w[k] = f[k] * grid_.weight(k);
        return w;
    }

    DiscGrid grid_;
    std::shared_ptr<const Convolver2D> t_, pi_;
};

/// Cauchy-Green transform of f sampled on the nodes of a disc grid.
inline CGrid cauchy_green(const DiscGrid& g, const CGrid& f) { return DiscOperators(g).cauchy_green(f); }

/// Central-difference Wirtinger derivatives of a node grid; zero on the outermost ring of nodes.
inline void grid_wirtinger(const DiscGrid& g, const CGrid& f, CGrid* dzeta, CGrid* dzetabar) {
    const int m = g.size();
    const double h = g.step();
    if (dzeta) dzeta->assign(f.size(), 0.0);
    if (dzetabar) dzetabar->assign(f.size(), 0.0);
    for (int j = 1; j < m - 1; ++j) {
        for (int i = 1; i < m - 1; ++i) {
            const cplx dx = (f[g.index(i + 1, j)] - f[g.index(i - 1, j)]) / (2 * h);
            const cplx dy = (f[g.index(i, j + 1)] - f[g.index(i, j - 1)]) / (2 * h);
            if (dzeta) (*dzeta)[g.index(i, j)] = 0.5 * (dx - kI * dy);
            if (dzetabar) (*dzetabar)[g.index(i, j)] = 0.5 * (dx + kI * dy);
        }
    }
}

}  // namespace aclab
