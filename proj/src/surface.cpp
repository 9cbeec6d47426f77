#include "horolab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "horolab/comparison.hpp"
#include "horolab/ode.hpp"

namespace horolab {

namespace {

constexpr double kPoleEps = 1e-12;

double wrap_pi(double x) {
    x = std::remainder(x, 2.0 * M_PI);
    return x;  // in [-pi, pi]
}

void check_pinch(const WarpedSurface& s, double r_hi) {
    // f(0) = 0, f'(0) = 1 and the declared pinch, by dense sampling
    if (std::abs(s.f(1e-6) / 1e-6 - 1.0) > 1e-4)
        throw std::invalid_argument("surface " + s.name + ": f'(0) != 1");
    const double lo = -s.b * s.b * (1.0 + 1e-6) - 1e-9;
    const double hi = -s.a * s.a * (1.0 - 1e-6) + 1e-9;
    for (int k = 1; k <= 4000; ++k) {
        const double r = r_hi * k / 4000.0;
        const double K = -s.fpp(r) / s.f(r);
        if (!(K >= lo && K <= hi))
            throw std::invalid_argument("surface " + s.name + ": curvature " + std::to_string(K) +
                                        " at r = " + std::to_string(r) +
                                        " leaves the declared pinch");
    }
}

using Vec = Dopri5<double>::Vec;

// Clairaut form, state (r, phi, psi) with psi the angle to the outgoing
// radial direction: r' = cos psi, phi' = sin psi / f, psi' = -(f'/f) sin psi.
// Keeps the conserved quantity f sin psi well-scaled along escaping geodesics.
void geodesic_rhs(const WarpedSurface& s, double, const Vec& y, Vec& dy) {
    dy.resize(3);
    const double f = s.f(y[0]), fp = s.fp(y[0]);
    const double sp = std::sin(y[2]);
    dy[0] = std::cos(y[2]);
    dy[1] = sp / f;
    dy[2] = -(fp / f) * sp;
}

Vec launch_state(const SurfacePoint& from, double dir) {
    Vec y(3);
    y[0] = from.r;
    y[1] = from.phi;
    y[2] = dir;
    return y;
}

// Scalar Jacobi field j'' + K(radius(t)) j = 0 with j(0) = 0, j'(0) = 1,
// integrated to t = len; returns j'(len)/j(len). radius(t) >= 0 describes the
// distance to the pole along a radial line (may pass through the pole).
double scalar_jacobi_curvature(const WarpedSurface& s,
                               const std::function<double(double)>& radius, double len,
                               double tol) {
    auto rhs = [&](double t, const Vec& y, Vec& dy) {
        dy.resize(2);
        dy[0] = y[1];
        dy[1] = -s.K(radius(t)) * y[0];
    };
    Dopri5<double> solver(rhs, tol, tol * 1e-3 + 1e-300);
    Vec y(2);
    y[0] = 0.0;
    y[1] = 1.0;
    solver.integrate(0.0, len, y);
    return y[1] / y[0];
}

struct Crossing {
    double dphi = 0.0;   // accumulated angle at the outgoing crossing of r2
    double length = 0.0;
    double rdot = 0.0;   // radial speed there (> 0)
};

// Shoot from radius r1 at angle psi in (0, pi) and locate the outgoing
// crossing of radius r2 (the unique point with r = r2, r' > 0).
Crossing outgoing_crossing(const WarpedSurface& s, double r1, double psi, double r2, double tol) {
    const double t_max = r1 + r2 + 1.0;
    auto rhs = [&s](double t, const Vec& y, Vec& dy) { geodesic_rhs(s, t, y, dy); };
    Dopri5<double> solver(rhs, tol, tol * 1e-6 + 1e-300);
    Vec y0 = launch_state({r1, 0.0}, psi);
    solver.init(0.0, y0, 1.0);

    if (r1 >= r2 && std::cos(psi) > 0.0) return {0.0, 0.0, std::cos(psi)};

    double t_prev = 0.0;
    Vec y_prev = y0;
    for (;;) {
        if (solver.t() >= t_max)
            throw std::runtime_error("surface: no radius crossing before the length bound");
        const double t_cur = solver.step(t_max);
        const Vec& y = solver.y();
        if (y[0] >= r2 && std::cos(y[2]) > 0.0) {
            // refine the crossing inside [t_prev, t_cur] by Newton on
            // r(t) - r2, re-integrating from the saved state
            double t_star = t_cur;
            Vec yt = y;
            for (int it = 0; it < 60; ++it) {
                const double g = yt[0] - r2;
                if (std::abs(g) < 1e-14 * std::max(1.0, r2)) break;
                double t_next = t_star - g / std::cos(yt[2]);
                t_next = std::min(std::max(t_next, t_prev), t_cur);
                if (t_next == t_star) break;
                t_star = t_next;
                yt = y_prev;
                Dopri5<double> local(rhs, tol, tol * 1e-6 + 1e-300);
                local.integrate(t_prev, t_star, yt);
            }
            return {yt[1], t_star, std::cos(yt[2])};
        }
        t_prev = t_cur;
        y_prev = y;
    }
}

}  // namespace

double WarpedSurface::K(double r) const {
    if (r < 1e-6) r = 1e-6;  // K extends continuously to the pole
    return -fpp(r) / f(r);
}

WarpedSurface make_hyperbolic_surface(double a) {
    if (a <= 0.0) throw std::invalid_argument("surface: a must be > 0");
    WarpedSurface s;
    s.name = "hyperbolic(a=" + std::to_string(a) + ")";
    s.a = s.b = a;
    s.f = [a](double r) { return std::sinh(a * r) / a; };
    s.fp = [a](double r) { return std::cosh(a * r); };
    s.fpp = [a](double r) { return a * std::sinh(a * r); };
    return s;
}

WarpedSurface make_pinched_surface() {
    WarpedSurface s;
    s.name = "pinched";
    s.a = 1.0;
    s.b = 2.0;
    const double c = 0.3;
    s.f = [c](double r) {
        const double th = std::tanh(r);
        return std::sinh(r) + c * (std::cosh(r) - 1.0) * th * th;
    };
    s.fp = [c](double r) {
        const double th = std::tanh(r), se2 = 1.0 - th * th;
        return std::cosh(r) +
               c * (std::sinh(r) * th * th + (std::cosh(r) - 1.0) * 2.0 * th * se2);
    };
    s.fpp = [c](double r) {
        const double th = std::tanh(r), se2 = 1.0 - th * th;
        return std::sinh(r) +
               c * (std::cosh(r) * th * th + 4.0 * std::sinh(r) * th * se2 +
                    2.0 * (std::cosh(r) - 1.0) * (se2 * se2 - 2.0 * th * th * se2));
    };
    check_pinch(s, 40.0);
    return s;
}

WarpedSurface make_expression_surface(const std::string& name, const Expr& f, double a, double b,
                                      double r_sample_hi) {
    if (!(0.0 < a && a <= b)) throw std::invalid_argument("surface: need 0 < a <= b");
    WarpedSurface s;
    s.name = name;
    s.a = a;
    s.b = b;
    s.f = [f](double r) { return f(r); };
    // five-point central differences; h balances truncation vs cancellation
    const double h = 1e-3;
    s.fp = [f, h](double r) {
        return (-f(r + 2 * h) + 8 * f(r + h) - 8 * f(r - h) + f(r - 2 * h)) / (12 * h);
    };
    s.fpp = [f, h](double r) {
        return (-f(r + 2 * h) + 16 * f(r + h) - 30 * f(r) + 16 * f(r - h) - f(r - 2 * h)) /
               (12 * h * h);
    };
    if (std::abs(f(0.0)) > 1e-9) throw std::invalid_argument("surface " + name + ": f(0) != 0");
    check_pinch(s, r_sample_hi);
    return s;
}

ShootResult shoot(const WarpedSurface& s, const SurfacePoint& from, double dir, double length,
                  double tol) {
    if (length < 0.0) throw std::invalid_argument("shoot: length must be >= 0");
    ShootResult out;
    out.length = length;

    const double sd = std::sin(dir), cd = std::cos(dir);
    if (from.r < kPoleEps) {
        // radial ray out of the pole
        out.end = {length, from.phi, 1.0, 0.0, 0.0};
        return out;
    }
    if (std::abs(sd) < 1e-14) {
        // radial geodesic, possibly through the pole
        double u = from.r + (cd > 0.0 ? length : -length);
        if (u >= 0.0) out.end = {u, from.phi, cd > 0.0 ? 1.0 : -1.0, 0.0, 0.0};
        else out.end = {-u, wrap_pi(from.phi + M_PI), 1.0, 0.0, 0.0};
        return out;
    }

    auto rhs = [&s](double t, const Vec& y, Vec& dy) { geodesic_rhs(s, t, y, dy); };
    Dopri5<double> solver(rhs, tol, tol * 1e-6 + 1e-300);
    Vec y = launch_state(from, dir);
    const double L0 = s.f(from.r) * sd;
    double drift = 0.0;
    solver.integrate(0.0, length, y, [&](double, const Vec& v) {
        drift = std::max(drift, std::abs(s.f(v[0]) * std::sin(v[2]) - L0));
    });
    const double fr = s.f(y[0]);
    out.end = {y[0], wrap_pi(y[1]), std::cos(y[2]), std::sin(y[2]) / fr, fr * std::sin(y[2])};
    out.clairaut_drift = drift;
    return out;
}

ConnectResult connect(const WarpedSurface& s, const SurfacePoint& x, const SurfacePoint& y,
                      double tol) {
    ConnectResult out;
    if (x.r < kPoleEps && y.r < kPoleEps) return out;
    if (x.r < kPoleEps) {
        out.d = y.r;
        return out;
    }
    if (y.r < kPoleEps) {
        out.d = x.r;
        out.psi = M_PI;
        return out;
    }

    const double dphi = std::abs(wrap_pi(y.phi - x.phi));
    if (dphi < 1e-9) {
        out.d = std::abs(y.r - x.r);
        out.psi = (y.r >= x.r) ? 0.0 : M_PI;
        return out;
    }
    if (dphi > M_PI - 1e-9) {
        out.d = x.r + y.r;  // axis geodesic through the pole
        out.psi = M_PI;
        return out;
    }

    // solve from the smaller-radius endpoint; the angle swept to the outgoing
    // crossing of the larger radius is monotone in the launch angle
    const bool swapped = x.r > y.r;
    const double r_lo = swapped ? y.r : x.r;
    const double r_hi = swapped ? x.r : y.r;
    double lo = (r_hi > r_lo + 1e-12) ? 0.0 : M_PI / 2.0;
    double hi = M_PI;
    // swept angle at the crossing minus the target; 0 at lo, pi - dphi at hi
    // in the limit, so the bracket values can be seeded without evaluating at
    // the (degenerate) endpoints. Illinois variant of regula falsi.
    double flo = -dphi, fhi = M_PI - dphi;
    const double ode_tol = std::min(1e-12, tol * 1e-2);
    Crossing cr;
    double psi = 0.5 * (lo + hi);
    for (int it = 0; it < 80; ++it) {
        double cand = (lo * fhi - hi * flo) / (fhi - flo);
        if (!std::isfinite(cand) || cand <= lo || cand >= hi) cand = 0.5 * (lo + hi);
        psi = cand;
        double g;
        try {
            cr = outgoing_crossing(s, r_lo, psi, r_hi, ode_tol);
            g = cr.dphi - dphi;
        } catch (const OdeError&) {
            // near-pole passage: behaves like the through-pole limit
            cr = {M_PI, r_lo + r_hi, 1.0};
            g = M_PI - dphi;
        }
        ++out.iterations;
        if (std::abs(g) < 1e-13 || hi - lo < 1e-14) break;
        if (g < 0.0) {
            lo = psi;
            flo = g;
            fhi *= 0.5;
        } else {
            hi = psi;
            fhi = g;
            flo *= 0.5;
        }
    }
    out.d = cr.length;
    // psi at x: launch angle at the near endpoint, or the angle of the
    // reversed tangent at the crossing when the endpoints were swapped
    if (!swapped) out.psi = psi;
    else out.psi = std::acos(std::clamp(-cr.rdot, -1.0, 1.0));
    return out;
}

double distance(const WarpedSurface& s, const SurfacePoint& x, const SurfacePoint& y, double tol) {
    return connect(s, x, y, tol).d;
}

double angle_at(const WarpedSurface& s, const SurfacePoint& vertex, const SurfacePoint& p,
                const SurfacePoint& q, double tol) {
    if (vertex.r < kPoleEps) {
        const double d = std::abs(wrap_pi(p.phi - q.phi));
        return d;
    }
    const double sp = wrap_pi(p.phi - vertex.phi) >= 0.0 ? 1.0 : -1.0;
    const double sq = wrap_pi(q.phi - vertex.phi) >= 0.0 ? 1.0 : -1.0;
    const double ap = sp * connect(s, vertex, p, tol).psi;
    const double aq = sq * connect(s, vertex, q, tol).psi;
    double d = std::abs(ap - aq);
    if (d > M_PI) d = 2.0 * M_PI - d;
    return d;
}

SampledCheckReport verify_triangle_comparison(const WarpedSurface& s, int trials,
                                              std::uint64_t seed, double slack) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const ModelCurvature ma(s.a), mb(s.b);
    const double thetas[] = {0.25, 0.5, 0.75};

    SampledCheckReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < trials; ++trial) {
        const double rx = 0.3 + 2.2 * u01(rng);
        const double phix = 2.0 * M_PI * u01(rng);
        const double psi1 = 2.0 * M_PI * u01(rng);
        const double alpha = 0.25 + 2.65 * u01(rng);
        const double L1 = 0.5 + 2.5 * u01(rng);
        const double L2 = 0.5 + 2.5 * u01(rng);
        const SurfacePoint x{rx, phix};
        const SurfacePoint yy = shoot(s, x, psi1, L1).end.to_point();
        const SurfacePoint zz = shoot(s, x, psi1 + alpha, L2).end.to_point();
        const double dyz = distance(s, yy, zz);
        for (double theta : thetas) {
            const SurfacePoint p = shoot(s, x, psi1, theta * L1).end.to_point();
            const SurfacePoint q = shoot(s, x, psi1 + alpha, theta * L2).end.to_point();
            const double dpq = distance(s, p, q);
            const double ratio_a = c_a(ma, dyz) / c_a(ma, dpq);
            const double ratio_b = c_a(mb, dyz) / c_a(mb, dpq);
            const double lower = f_comparison(ma, L1, L2, alpha, theta);
            const double upper = f_comparison(mb, L1, L2, alpha, theta);
            const double m1 = ratio_a - lower;  // curvature <= -a^2 bound
            const double m2 = upper - ratio_b;  // curvature >= -b^2 bound
            rep.checks += 2;
            rep.worst_margin = std::min({rep.worst_margin, m1, m2});
            if (m1 < -slack) ++rep.violations;
            if (m2 < -slack) ++rep.violations;
        }
    }
    rep.pass = rep.violations == 0;
    return rep;
}

double circle_curvature(const WarpedSurface& s, const SurfacePoint& center, double radius,
                        double dir, double tol) {
    if (radius <= 0.0) throw std::invalid_argument("circle curvature: radius must be > 0");
    if (center.r < kPoleEps) return s.fp(radius) / s.f(radius);

    const double sd = std::sin(dir);
    if (std::abs(sd) < 1e-14) {
        // radial shot: the circle center, the pole and the point are collinear
        const double sign = (std::cos(dir) > 0.0) ? 1.0 : -1.0;
        const double r0 = center.r;
        return scalar_jacobi_curvature(
            s, [r0, sign](double t) { return std::abs(r0 + sign * t); }, radius, tol);
    }

    // generic center: geodesic + scalar Jacobi field along it
    auto rhs = [&s](double t, const Vec& y, Vec& dy) {
        dy.resize(5);
        Vec dg(3);
        const Vec g = y.head(3);
        geodesic_rhs(s, t, g, dg);
        dy.head<3>() = dg;
        dy[3] = y[4];
        dy[4] = -s.K(y[0]) * y[3];
    };
    Dopri5<double> solver(rhs, tol, tol * 1e-6 + 1e-300);
    Vec y(5);
    y.head<3>() = launch_state(center, dir);
    y[3] = 0.0;
    y[4] = 1.0;
    solver.integrate(0.0, radius, y);
    return y[4] / y[3];
}

SampledCheckReport verify_tangent_circles(const WarpedSurface& s, int trials, std::uint64_t seed,
                                          double slack) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const ModelCurvature ma(s.a), mb(s.b);
    const double T = 45.0;

    SampledCheckReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < trials; ++trial) {
        // tangency point on the axis; both centers behind it on the same line
        const double ut = 0.5 + 2.5 * u01(rng);
        const double r = 0.2 + 1.8 * u01(rng);
        const double R = r + 0.3 + 4.7 * u01(rng);
        auto curv_at = [&](double rad) {
            const double u0 = ut - rad;
            return scalar_jacobi_curvature(
                s, [u0](double t) { return std::abs(u0 + t); }, rad, 1e-12);
        };
        const double kx = curv_at(r);
        const double ky = curv_at(R);
        const double kxi = curv_at(T + ut);  // horocycle limit (center at -T)

        const double m1 = (kx - ky) - (cot_a(mb, r) - cot_a(mb, R));
        const double m2 = (cot_a(ma, r) - cot_a(ma, R)) - (kx - ky);
        const double m3 = kx - kxi;
        const double m4 = (cot_a(ma, r) - s.a) - (kx - kxi);
        rep.checks += 4;
        for (double m : {m1, m2, m3, m4}) {
            rep.worst_margin = std::min(rep.worst_margin, m);
            if (m < -slack) ++rep.violations;
        }
    }
    rep.pass = rep.violations == 0;
    return rep;
}

std::vector<std::pair<double, double>> horocurvature_profile(const WarpedSurface& s, double t_lo,
                                                             double t_hi, int samples, double T,
                                                             double tol) {
    if (samples < 1 || t_hi < t_lo)
        throw std::invalid_argument("horocurvature: bad sample range");
    // one scalar Jacobi field launched far behind t_lo; by t >= t_lo the
    // curvature j'/j has converged onto the horocycle field (error ~ e^{-2aT})
    const double u0 = t_lo - T;
    auto rhs = [&s, u0](double t, const Vec& y, Vec& dy) {
        dy.resize(2);
        dy[0] = y[1];
        dy[1] = -s.K(std::abs(u0 + t)) * y[0];
    };
    std::vector<double> ts;
    for (int k = 0; k < samples; ++k)
        ts.push_back((t_lo - u0) + (t_hi - t_lo) * (samples == 1 ? 0.0 : double(k) / (samples - 1)));
    std::vector<std::pair<double, double>> out;
    Dopri5<double> solver(rhs, tol, tol * 1e-3 + 1e-300);
    Vec y(2);
    y[0] = 0.0;
    y[1] = 1.0;
    solver.integrate_samples(0.0, ts.back(), y, ts,
                             [&](double t, const Vec& v) { out.emplace_back(u0 + t, v[1] / v[0]); });
    return out;
}

}  // namespace horolab
