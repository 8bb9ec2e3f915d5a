#pragma once

// Divergence behind the non-integrability argument: with eta = sqrt(delta / (2 pi)) and
// rho >= 1/(|z|^2 |log|z||) on a set F of density > delta, the annuli eta^{k+1} < |z| < eta^k carry
//   int_{F cap annulus} rho > delta / (2 |log eta| k),
// so the partial sums grow like log K.
// The annuli shrink geometrically past any grid, so integrals are taken in polar coordinates with
// s = -log r: dA = r^2 ds dtheta.

#include <functional>
#include <vector>

#include "aclab/core/error.hpp"
#include "aclab/core/quadrature.hpp"

namespace aclab {

struct PolarRegion {
    std::function<bool(cplx)> member;  // F
    int angles = 720;
    int radial_nodes = 16;

    /// int_{F cap {r_in < |z| < r_out}} f dA.
    double integrate(const std::function<double(cplx)>& f, double r_in, double r_out) const {
        const double s_lo = -std::log(r_out), s_hi = -std::log(r_in);
        double total = 0.0;
        for (int a = 0; a < angles; ++a) {
            const double theta = 2 * kPi * (a + 0.5) / angles;
            total += aclab::integrate(
                [&](double s) {
                    const cplx z = std::polar(std::exp(-s), theta);
                    return member && !member(z) ? 0.0 : f(z) * std::exp(-2 * s);
                },
                s_lo, s_hi, radial_nodes);
        }
        return total * 2 * kPi / angles;
    }

    double area(double r_in, double r_out) const { return integrate([](cplx) { return 1.0; }, r_in, r_out); }
};

struct A3Row {
    int k = 0;
    double r_outer = 0.0;     // eta^k
    double density = 0.0;     // |F cap {|z| < eta^k}| / eta^{2k}
    double integral = 0.0;    // over F cap {eta^{k+1} < |z| < eta^k}
    double lower_bound = 0.0; // delta / (2 |log eta| k)
    double partial_sum = 0.0;
};

struct A3Table {
    double delta = 0.0, eta = 0.0;
    std::vector<A3Row> rows;
    bool truncated = false;   // density precondition failed at rows.size() + 1
    std::string note;
    double constant() const { return delta / (2 * std::abs(std::log(eta))); }
    /// S_K / log K at the last row.
    double growth_rate() const { return rows.size() >= 2 ? rows.back().partial_sum / std::log(double(rows.back().k)) : 0.0; }
};

inline double lemma_a3_weight(cplx z) {
    const double r = std::abs(z);
    return 1.0 / (r * r * std::abs(std::log(r)));
}

inline A3Table lemma_a3_divergence(const std::function<double(cplx)>& rho, double delta, const PolarRegion& f, int k_max) {
    if (!(delta > 0.0) || !(delta < 2 * kPi)) fail(ErrorCode::invalid_argument, "invalid delta: need 0 < delta < 2 pi");
    if (k_max < 1) fail(ErrorCode::invalid_argument, "need at least one annulus");
    A3Table t;
    t.delta = delta;
    t.eta = std::sqrt(delta / (2 * kPi));
    const double le = std::abs(std::log(t.eta));
    // |F cap {|z| < eta^k}| from the annulus areas; the tail below eta^{k+40} is dropped.
    auto disc_area = [&](int k) {
        double a = 0.0;
        for (int m = k; m < k + 40; ++m) a += f.area(std::pow(t.eta, m + 1), std::pow(t.eta, m));
        return a;
    };
    double sum = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        A3Row row;
        row.k = k;
        row.r_outer = std::pow(t.eta, k);
        row.density = disc_area(k) / (row.r_outer * row.r_outer);
        if (!(row.density > delta)) {
            t.truncated = true;
            t.note = "density precondition fails at k = " + std::to_string(k);
            break;
        }
        row.integral = f.integrate(rho, std::pow(t.eta, k + 1), row.r_outer);
        row.lower_bound = delta / (2 * le * k);
        sum += row.integral;
        row.partial_sum = sum;
        t.rows.push_back(row);
    }
    return t;
}

}  // namespace aclab
