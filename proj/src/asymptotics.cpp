#include "horolab/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace horolab {

double unit_sphere_volume(int n) {
    if (n < 0) throw std::invalid_argument("sphere volume: n must be >= 0");
    // omega_n = 2 pi^{(n+1)/2} / Gamma((n+1)/2)
    const double k = 0.5 * (n + 1);
    return 2.0 * std::exp(k * std::log(M_PI) - std::lgamma(k));
}

VolumeCurve volume_curve(const CurvatureProfile& p, double h, const std::vector<double>& r_grid,
                         double tol) {
    const double nh = p.n * h;
    const double omega = unit_sphere_volume(p.n);
    const auto flow = sphere_flow(p, r_grid, nh, tol, /*with_ball=*/true);
    VolumeCurve c;
    for (const auto& s : flow) {
        c.r.push_back(s.r);
        c.log_sphere.push_back(std::log(omega) + s.log_theta);
        c.log_ball.push_back(std::log(omega) + std::log(s.ball_scaled) + nh * s.r);
        c.sphere_scaled.push_back(omega * s.theta_scaled);
        c.ball_scaled.push_back(omega * s.ball_scaled);
    }
    return c;
}

EntropyEstimate entropy_from_curve(const VolumeCurve& vc, double r_lo, double r_hi) {
    if (r_hi - r_lo < 10.0)
        throw std::invalid_argument("entropy: window must span at least 10 length units");
    double sr = 0, sv = 0, srr = 0, srv = 0;
    int m = 0;
    for (size_t k = 0; k < vc.r.size(); ++k) {
        if (vc.r[k] < r_lo - 1e-12 || vc.r[k] > r_hi + 1e-12) continue;
        sr += vc.r[k];
        sv += vc.log_ball[k];
        srr += vc.r[k] * vc.r[k];
        srv += vc.r[k] * vc.log_ball[k];
        ++m;
    }
    if (m < 2) throw std::invalid_argument("entropy: window outside grid");
    EntropyEstimate e;
    e.slope = (m * srv - sr * sv) / (m * srr - sr * sr);
    e.r_lo = r_lo;
    e.r_hi = r_hi;
    return e;
}

EntropyEstimate entropy_estimate(const CurvatureProfile& p, double h, double tol) {
    const double r_lo = 10.0 / p.a, r_hi = 30.0 / p.a;
    const int m = 21;
    std::vector<double> grid;
    for (int k = 0; k < m; ++k) grid.push_back(r_lo + (r_hi - r_lo) * k / (m - 1));
    EntropyEstimate e = entropy_from_curve(volume_curve(p, h, grid, tol), r_lo, r_hi);
    e.expected = p.n * h;
    e.residual = std::abs(e.slope - e.expected);
    return e;
}

IsoperimetricCheck isoperimetric_check(const CurvatureProfile& p, double h,
                                       const std::vector<double>& r_grid, double slack,
                                       double tol) {
    const double nh = p.n * h;
    const auto c = volume_curve(p, h, r_grid, tol);
    IsoperimetricCheck out;
    out.worst_margin = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < c.r.size(); ++k) {
        const double margin = (c.sphere_scaled[k] - nh * c.ball_scaled[k]) / c.sphere_scaled[k];
        if (margin < out.worst_margin) {
            out.worst_margin = margin;
            out.worst_r = c.r[k];
        }
    }
    out.holds = out.worst_margin >= -slack;
    return out;
}

MargulisValue margulis(const CurvatureProfile& p, double h, double r_max, double tol) {
    const double omega = unit_sphere_volume(p.n);
    const auto c = volume_curve(p, h, {r_max}, tol);
    const auto tau = tau_from_tensors(p, r_max, tol);
    MargulisValue out;
    out.m = c.sphere_scaled.back();
    out.from_tau = omega * tau.tau;
    out.ball_limit = c.ball_scaled.back();
    out.error_bound = (p.a > 0) ? epsilon_bound(p.a, p.n, r_max) * out.m + omega * tau.error_bound
                                : std::numeric_limits<double>::infinity();
    return out;
}

GrowthExponent horosphere_growth_exponent(const RossProfile& ross, double r_max, double tol) {
    const CurvatureProfile p = make_ross_profile(ross);
    if (r_max <= 0) r_max = 40.0 / p.a;
    const int d = ross_fat_multiplicity(ross.family);
    const ManifoldParams m = derive_params(p, r_max, tol);
    GrowthExponent g;
    g.exact = (p.n - d) + 2 * d;
    g.numeric = m.entropy / p.a;
    g.residual = std::abs(g.numeric - g.exact);
    return g;
}

}  // namespace horolab
