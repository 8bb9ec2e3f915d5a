#pragma once

// J-holomorphic discs with prescribed 1-jet at the center:  d(ubar)/dzeta = Q(u) du/dzeta on |zeta| <= rho.
//
// The unknown is g = du/dzetabar. Writing T and Pi for the Cauchy-Green and Beurling operators,
//   u       = p + v zeta + T g - (T g)(0) - (Pi g)(0) zeta
//   u_zeta  = v + Pi g - (Pi g)(0)
// pins u(0) = p and u_zeta(0) = v, and the equation becomes the fixed point g = conj(Q(u) u_zeta).
// The residual of the equation at a node is therefore |g_new - g|.

#include <optional>
#include <string>

#include "aclab/disc/cauchy_green.hpp"
#include "aclab/structure/structure_field.hpp"

namespace aclab {

struct JetSpec {
    CVec center;
    CVec derivative;
    double radius = 0.05;
};

struct SolverOptions {
    int grid_n = 256;
    double tol = 1e-8;
    int max_iter = 100;
};

struct DiscSolution {
    DiscGrid grid;
    JetSpec jet;
    int dimension = 0;
    // Per component c, a node grid.
    std::vector<CGrid> u, u_zeta, u_zetabar, u_zetazetabar, residual;
    int iterations = 0;
    double residual_sup = 0.0;                // over active nodes
    std::vector<double> step_distances;       // sup |g_{k+1} - g_k|
    double contraction_ratio = 0.0;           // last observed ratio of successive distances

    CVec at(const std::vector<CGrid>& f, std::size_t id) const {
        CVec v(dimension);
        for (int c = 0; c < dimension; ++c) v(c) = f[static_cast<std::size_t>(c)][id];
        return v;
    }
    CVec value(std::size_t id) const { return at(u, id); }
};

namespace detail {

inline void check_jet(const StructureField& s, const JetSpec& jet) {
    if (jet.center.size() != s.dimension() || jet.derivative.size() != s.dimension()) {
        fail(ErrorCode::invalid_argument, "jet dimension does not match the structure");
    }
    if (!(jet.radius > 0.0) || jet.radius > 1.0) fail(ErrorCode::invalid_argument, "disc radius must lie in (0, 1]");
    if (!s.domain().contains(jet.center)) fail(ErrorCode::left_domain, "jet center outside the structure domain");
}

}  // namespace detail

inline DiscSolution solve_disc(const StructureField& s, const JetSpec& jet, const SolverOptions& opt = {}) {
    detail::check_jet(s, jet);
    const int n = s.dimension();
    const DiscGrid grid(opt.grid_n, jet.radius);
    const DiscOperators ops(grid);
    const std::size_t count = grid.count();
    const std::size_t c0 = grid.center_index();

    DiscSolution sol{grid, jet, n, {}, {}, {}, {}, {}, 0, 0.0, {}, 0.0};
    std::vector<CGrid> g(static_cast<std::size_t>(n), CGrid(count, 0.0));
    std::vector<CGrid> u(static_cast<std::size_t>(n)), uz(static_cast<std::size_t>(n));

    auto assemble = [&]() {
        for (int c = 0; c < n; ++c) {
            const auto cs = static_cast<std::size_t>(c);
            const CGrid tg = ops.cauchy_green(g[cs]);
            const CGrid pg = ops.beurling(g[cs]);
            const cplx t0 = tg[c0], p0 = pg[c0];
            u[cs].assign(count, 0.0);
            uz[cs].assign(count, 0.0);
            for (std::size_t k = 0; k < count; ++k) {
                const cplx z = grid.zeta(k);
                u[cs][k] = jet.center(c) + jet.derivative(c) * z + tg[k] - t0 - p0 * z;
                uz[cs][k] = jet.derivative(c) + pg[k] - p0;
            }
        }
    };

    // One application of the fixed-point map; returns sup |g_new - g| over active nodes.
    auto update = [&](std::vector<CGrid>& g_new) {
        double dist = 0.0;
        CVec uk(n), uzk(n);
        for (std::size_t k = 0; k < count; ++k) {
            if (!grid.active(k)) continue;
            for (int c = 0; c < n; ++c) {
                uk(c) = u[static_cast<std::size_t>(c)][k];
                uzk(c) = uz[static_cast<std::size_t>(c)][k];
            }
            if (!s.domain().contains(uk)) fail(ErrorCode::left_domain, "solution left structure domain");
            const CVec rhs = (s.q_at(uk) * uzk).conjugate();
            for (int c = 0; c < n; ++c) {
                const auto cs = static_cast<std::size_t>(c);
                g_new[cs][k] = rhs(c);
                dist = std::max(dist, std::abs(rhs(c) - g[cs][k]));
            }
        }
        return dist;
    };

    std::vector<CGrid> g_new = g;
    int increases = 0;
    for (int it = 1; it <= opt.max_iter; ++it) {
        assemble();
        const double dist = update(g_new);
        sol.iterations = it;
        sol.step_distances.push_back(dist);
        if (sol.step_distances.size() >= 2) {
            const double prev = sol.step_distances[sol.step_distances.size() - 2];
            if (prev > 0) sol.contraction_ratio = dist / prev;
            increases = dist > prev ? increases + 1 : 0;
            if (increases >= 3) fail(ErrorCode::radius_too_large, "radius too large: Picard iteration does not contract");
        }
        if (dist <= opt.tol) break;
        if (it == opt.max_iter) {
            fail(ErrorCode::radius_too_large,
                 "radius too large: no convergence in " + std::to_string(opt.max_iter) + " iterations");
        }
        g.swap(g_new);
    }

    // State (u, u_zeta, g) is consistent; the residual is measured for exactly this state.
    sol.u = u;
    sol.u_zeta = uz;
    sol.u_zetabar = g;
    sol.residual.assign(static_cast<std::size_t>(n), CGrid(count, 0.0));
    sol.residual_sup = 0.0;
    for (int c = 0; c < n; ++c) {
        const auto cs = static_cast<std::size_t>(c);
        for (std::size_t k = 0; k < count; ++k) {
            if (!grid.active(k)) continue;
            // r = conj(u_zetabar) - Q(u) u_zeta
            const cplx r = std::conj(g[cs][k]) - std::conj(g_new[cs][k]);
            sol.residual[cs][k] = r;
            sol.residual_sup = std::max(sol.residual_sup, std::abs(r));
        }
    }
    sol.u_zetazetabar.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        grid_wirtinger(grid, g[static_cast<std::size_t>(c)], &sol.u_zetazetabar[static_cast<std::size_t>(c)], nullptr);
    }
    return sol;
}

struct E3Report {
    double worst_ratio = 0.0;  // max over interior nodes of lhs / rhs (nodes with rhs > 0)
    double max_excess = 0.0;   // max of lhs - rhs - slack (<= 0 when the bound holds)
    double slack = 0.0;
    std::size_t violations = 0;
    std::size_t checked = 0;
    bool holds() const { return violations == 0; }
};

/// |u_{zeta zetabar}| <= 2 |[sum_j Q_{z_j}(u) u_{j,zetabar}] u_zeta + [sum_j Q_{zbar_j}(u) conj(u_{j,zeta})] u_zeta| + slack.
inline E3Report e3_bound_check(const DiscSolution& sol, const StructureField& s, std::optional<double> slack = {},
                               double solver_tol = 1e-8) {
    const auto& grid = sol.grid;
    const int n = sol.dimension;
    E3Report rep;
    rep.slack = slack ? *slack : 10 * solver_tol / grid.step() + 1e-9;
    for (std::size_t k = 0; k < grid.count(); ++k) {
        if (!grid.interior(k)) continue;
        const CVec u = sol.at(sol.u, k), uz = sol.at(sol.u_zeta, k), uzb = sol.at(sol.u_zetabar, k);
        const CMat q = s.q_at(u);
        if (!(operator_norm(q) < 0.5)) fail(ErrorCode::norm_precondition, "|Q(u)| >= 1/2 on the disc");
        const QDerivatives d = s.dq_at(u);
        CMat a = CMat::Zero(n, n);
        for (int j = 0; j < n; ++j) a += d.dz[static_cast<std::size_t>(j)] * uzb(j) + d.dzbar[static_cast<std::size_t>(j)] * std::conj(uz(j));
        const double rhs = 2 * (a * uz).norm();
        const double lhs = sol.at(sol.u_zetazetabar, k).norm();
        ++rep.checked;
        if (rhs > 0) rep.worst_ratio = std::max(rep.worst_ratio, lhs / rhs);
        const double excess = lhs - rhs - rep.slack;
        rep.max_excess = std::max(rep.max_excess, excess);
        if (excess > 0) ++rep.violations;
    }
    return rep;
}

/// zeta -> (z1 + zeta, z2 + conj(z2) conj(zeta)).
inline CVec exact_jet_disc(cplx z1, cplx z2, cplx zeta) {
    CVec u(2);
    u << z1 + zeta, z2 + std::conj(z2) * std::conj(zeta);
    return u;
}

/// E1 residual d(ubar)/dzeta - Q(u) du/dzeta of the exact-jet disc for the example structure.
inline CVec exact_jet_residual(cplx z1, cplx z2, cplx zeta) {
    const CVec u = exact_jet_disc(z1, z2, zeta);
    CVec uz(2), ubar_z(2);
    uz << 1.0, 0.0;
    // d(ubar)/dzeta = conj(du/dzetabar) = (0, z2)
    ubar_z << 0.0, z2;
    return ubar_z - builtin::example_part3_q(u) * uz;
}

}  // namespace aclab
