#pragma once

// Complex Hessian of LL(Z') = -log|log|Z'|| against the bound
//   4 sum_{jk} d2 LL / dz_j dzbar_k t_j conj(t_k) >= |t|^2 / (|Z'|^2 log^2 |Z'|).
// The bound is attained in the radial direction, so the comparison carries a relative roundoff allowance.

#include "aclab/psh/candidate.hpp"

namespace aclab {

struct LLHessianBound {
    double min_eig = 0.0;
    double max_eig = 0.0;
    double bound = 0.0;
    bool holds = false;
};

inline LLHessianBound ll_hessian_bound(const CVec& zp, double rel_tol = 1e-10) {
    const double r = zp.norm();
    if (!(r > 1e-12) || !(r < std::exp(-1.0))) fail(ErrorCode::out_of_range, "|Z'| must lie in (1e-12, 1/e)");
    const int m = static_cast<int>(zp.size());
    CVec z = CVec::Zero(m + 1);
    z.tail(m) = zp;
    const CandidateJet j = candidates::loglog(m + 1).jet(z);
    const CMat h = 4.0 * j.hzzbar.bottomRightCorner(m, m);
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    LLHessianBound b;
    b.min_eig = es.eigenvalues()(0);
    b.max_eig = es.eigenvalues()(m - 1);
    const double l = std::log(r);
    b.bound = 1.0 / (r * r * l * l);
    b.holds = b.min_eig >= b.bound * (1.0 - rel_tol);
    return b;
}

}  // namespace aclab
