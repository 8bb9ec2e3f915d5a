#pragma once

// Laplacian of lambda o u for a J-holomorphic disc u:
//   d2(lambda o u)/dzeta dzetabar = I + II + III,
//   I   = sum_{jk} l_{j kbar} (u_{j,zeta} conj(u_{k,zeta}) + u_{j,zetabar} conj(u_{k,zetabar}))
//   II  = 2 Re sum_{jk} l_{jk} u_{j,zeta} u_{k,zetabar}
//   III = 2 Re sum_j l_j u_{j,zeta zetabar}

#include <string>
#include <utility>
#include <vector>

#include "aclab/disc/solver.hpp"
#include "aclab/psh/candidate.hpp"

namespace aclab {

class TermBreakdown {
public:
    TermBreakdown() = default;

    TermBreakdown(std::vector<std::string> labels, std::vector<double> values) : labels_(std::move(labels)), values_(std::move(values)) {
        if (labels_.size() != values_.size()) fail(ErrorCode::invalid_argument, "term labels and values differ in count");
        for (double v : values_) total_ += v;
    }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& values() const { return values_; }
    double total() const { return total_; }

    double operator[](const std::string& label) const {
        for (std::size_t k = 0; k < labels_.size(); ++k)
            if (labels_[k] == label) return values_[k];
        fail(ErrorCode::invalid_argument, "no term labelled " + label);
    }

private:
    std::vector<std::string> labels_;
    std::vector<double> values_;
    double total_ = 0.0;
};

/// I, II, III from the candidate's jet at u and the derivatives of u at one point.
inline TermBreakdown e2_terms(const CandidateJet& l, const CVec& uz, const CVec& uzb, const CVec& uzzb) {
    const double one = (uz.transpose() * l.hzzbar * uz.conjugate()).value().real() +
                       (uzb.transpose() * l.hzzbar * uzb.conjugate()).value().real();
    const double two = 2 * (uz.transpose() * l.hzz * uzb).value().real();
    const double three = 2 * (l.dz.transpose() * uzzb).value().real();
    return TermBreakdown({"I", "II", "III"}, {one, two, three});
}

inline TermBreakdown e2_terms(const CandidateFunction& lambda, const DiscSolution& sol, cplx zeta0 = 0.0) {
    const std::size_t id = sol.grid.node_of(zeta0);
    const CandidateJet l = lambda.jet(sol.value(id));
    return e2_terms(l, sol.at(sol.u_zeta, id), sol.at(sol.u_zetabar, id), sol.at(sol.u_zetazetabar, id));
}

/// Five-point finite-difference Laplacian / 4 of lambda o u at a grid node.
inline double fd_laplacian_quarter(const CandidateFunction& lambda, const DiscSolution& sol, cplx zeta0 = 0.0) {
    const std::size_t id = sol.grid.node_of(zeta0);
    const int m = sol.grid.size();
    const int i = static_cast<int>(id % m), j = static_cast<int>(id / m);
    auto f = [&](int a, int b) { return lambda.value(sol.value(sol.grid.index(a, b))); };
    const double h = sol.grid.step();
    return (f(i + 1, j) + f(i - 1, j) + f(i, j + 1) + f(i, j - 1) - 4 * f(i, j)) / (4 * h * h);
}

}  // namespace aclab
