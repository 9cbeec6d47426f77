#include "horolab/ballmodel.hpp"

#include <cmath>
#include <stdexcept>

namespace horolab {

namespace {

void check_interior(const BallPoint& x, const char* who) {
    if (x.squaredNorm() >= 1.0)
        throw std::invalid_argument(std::string(who) + ": point must lie in the open unit ball");
}

void check_boundary(const BoundaryPoint& xi, const char* who) {
    if (std::abs(xi.norm() - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(who) + ": boundary point must be a unit vector");
}

void check_positive(ModelCurvature a, const char* who) {
    if (a.a <= 0.0)
        throw std::invalid_argument(std::string(who) + ": needs strictly negative curvature");
}

// curvature -1 distance in the unit ball
double dist1(const BallPoint& x, const BallPoint& y) {
    const double q = 2.0 * (x - y).squaredNorm() / ((1.0 - x.squaredNorm()) * (1.0 - y.squaredNorm()));
    return std::acosh(1.0 + std::max(0.0, q));
}

}  // namespace

double ball_distance(ModelCurvature a, const BallPoint& x, const BallPoint& y) {
    check_positive(a, "ball_distance");
    check_interior(x, "ball_distance");
    check_interior(y, "ball_distance");
    return dist1(x, y) / a.a;
}

double poisson_kernel(const BallPoint& x, const BoundaryPoint& xi) {
    check_interior(x, "poisson_kernel");
    check_boundary(xi, "poisson_kernel");
    return (1.0 - x.squaredNorm()) / (x - xi).squaredNorm();
}

double busemann(ModelCurvature a, const BallPoint& x, const BoundaryPoint& xi) {
    check_positive(a, "busemann");
    return -std::log(poisson_kernel(x, xi)) / a.a;
}

double harmonic_density_ratio(ModelCurvature a, const BallPoint& x, const BallPoint& y,
                              const BoundaryPoint& xi) {
    const int n = static_cast<int>(x.size()) - 1;
    return std::exp(-n * a.a * (busemann(a, x, xi) - busemann(a, y, xi)));
}

BallPoint mobius_translate(const BallPoint& c, const BallPoint& x) {
    const double c2 = c.squaredNorm(), x2 = x.squaredNorm(), cx = c.dot(x);
    const double den = 1.0 + 2.0 * cx + c2 * x2;
    return ((1.0 - c2) * x + (1.0 + 2.0 * cx + x2) * c) / den;
}

RayPoint geodesic_ray_point(ModelCurvature a, const BallPoint& x, const BoundaryPoint& xi,
                            double t) {
    check_positive(a, "geodesic_point");
    check_interior(x, "geodesic_point");
    check_boundary(xi, "geodesic_point");
    // slide x to the origin, walk radially toward the translated boundary
    // point, slide back; 1 - |z|^2 via the Mobius conformal identity
    // 1 - |phi_c(p)|^2 = (1 - |c|^2)(1 - |p|^2) / (1 + 2<c,p> + |c|^2 |p|^2)
    const BoundaryPoint xi0 = mobius_translate(-x, xi);
    const double s = 0.5 * a.a * t;
    const BallPoint p = std::tanh(s) * (xi0 / xi0.norm());
    const double omp2 = 1.0 / (std::cosh(s) * std::cosh(s));  // 1 - tanh^2
    const double den = 1.0 + 2.0 * x.dot(p) + x.squaredNorm() * p.squaredNorm();
    RayPoint out;
    out.z = mobius_translate(x, p);
    out.one_minus_norm2 = (1.0 - x.squaredNorm()) * omp2 / den;
    return out;
}

BallPoint geodesic_point(ModelCurvature a, const BallPoint& x, const BoundaryPoint& xi, double t) {
    return geodesic_ray_point(a, x, xi, t).z;
}

double ball_distance(ModelCurvature a, const BallPoint& x, const RayPoint& y) {
    check_positive(a, "ball_distance");
    check_interior(x, "ball_distance");
    const double q = 2.0 * (x - y.z).squaredNorm() / ((1.0 - x.squaredNorm()) * y.one_minus_norm2);
    // acosh(1 + q), stable for q both small and huge
    return std::log1p(q + std::sqrt(q * (q + 2.0))) / a.a;
}

double visual_density_ratio_numeric(ModelCurvature a, const BallPoint& x, const BallPoint& y,
                                    const BoundaryPoint& xi, double t) {
    check_positive(a, "visual_density_ratio");
    const int n = static_cast<int>(x.size()) - 1;
    const RayPoint z = geodesic_ray_point(a, x, xi, t);
    const double rzx = t;
    const double rzy = ball_distance(a, y, z);
    const double dxy = ball_distance(a, x, y);
    if (dxy < 1e-14) return 1.0;
    // <grad r_x, grad r_y>(z) = cos of the angle of the triangle (x, y, z)
    // at z, by the hyperbolic law of cosines
    const double aa = a.a;
    const double cosg = (std::cosh(aa * rzx) * std::cosh(aa * rzy) - std::cosh(aa * dxy)) /
                        (std::sinh(aa * rzx) * std::sinh(aa * rzy));
    if (cosg <= 0.0)
        throw std::invalid_argument("visual_density_ratio: t too small for these points");
    return std::pow(std::sinh(aa * rzy) / std::sinh(aa * rzx), n) / cosg;
}

namespace {

// Upper half-plane machinery for the mean-value experiment (curvature -a^2,
// metric (dx^2 + dy^2)/(a y)^2, target boundary point at infinity).
//
// The ball-model boundary angle phi maps to the real line by the Cayley
// transform: u = -cot(phi/2), phi(u) = 2 atan2(1, -u); phi = 0 is infinity.

struct HalfPlaneField {
    const Expr* f;

    double boundary(double u) const { return (*f)(2.0 * std::atan2(1.0, -u)); }

    // harmonic extension, Poisson integral with the substitution
    // u = x + y tan(psi): F = (1/pi) int_{-pi/2}^{pi/2} f(x + y tan psi) dpsi
    double F(double x, double y, int nodes) const {
        const double hw = M_PI / (nodes - 1);
        double acc = 0.0;
        for (int k = 0; k < nodes; ++k) {
            const double psi = -M_PI / 2.0 + M_PI * k / (nodes - 1);
            const double c = std::cos(psi);
            // endpoint values f(+-inf) = f(phi -> 0)
            const double v = (std::abs(c) < 1e-12) ? boundary(psi > 0 ? 1e18 : -1e18)
                                                   : boundary(x + y * std::tan(psi));
            const double w = (k == 0 || k == nodes - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
            acc += w * v;
        }
        return acc * hw / (3.0 * M_PI);
    }
};

// composite Simpson average of F(x, y) over x in [-L, L]
double horoball_mean(const HalfPlaneField& hp, double L, double y, int x_nodes, int f_nodes) {
    double acc = 0.0;
    for (int k = 0; k < x_nodes; ++k) {
        const double x = -L + 2.0 * L * k / (x_nodes - 1);
        const double w = (k == 0 || k == x_nodes - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        acc += w * hp.F(x, y, f_nodes);
    }
    return acc / (3.0 * (x_nodes - 1) / 2.0 * 2.0);
}

}  // namespace

MeanValueResult mean_value_experiment(ModelCurvature a, const Expr& boundary_fn,
                                      std::vector<double> radius_schedule) {
    check_positive(a, "mean_value_experiment");
    if (radius_schedule.empty())
        for (int j = 0; j <= 11; ++j) radius_schedule.push_back(std::pow(2.0, j));

    const double nh = a.a;  // n = 1, h = a on the hyperbolic plane
    HalfPlaneField hp{&boundary_fn};

    MeanValueResult out;
    out.boundary_value = boundary_fn(0.0);
    out.best_deviation = std::numeric_limits<double>::infinity();

    // flow parameter toward the boundary point: gamma(t) = (0, e^{a t}), the
    // time-t image of the base horocycle y = 1 is y = e^{a t}
    const int t_nodes = 13;
    const double t_hi = 1.6;
    const int f_nodes = 257;

    for (double r : radius_schedule) {
        const double L = a.a * r;  // Euclidean half-width of the intrinsic ball
        int x_nodes = static_cast<int>(4.0 * L) + 9;
        if (x_nodes % 2 == 0) ++x_nodes;
        if (x_nodes < 257) x_nodes = 257;

        std::vector<double> g(t_nodes);
        for (int k = 0; k < t_nodes; ++k) {
            const double t = t_hi * k / (t_nodes - 1);
            g[static_cast<size_t>(k)] = horoball_mean(hp, L, std::exp(a.a * t), x_nodes, f_nodes);
        }
        const double dt = t_hi / (t_nodes - 1);
        double res = 0.0;
        for (int k = 1; k + 1 < t_nodes; ++k) {
            const double gpp = (g[k + 1] - 2.0 * g[k] + g[k - 1]) / (dt * dt);
            const double gp = (g[k + 1] - g[k - 1]) / (2.0 * dt);
            res = std::max(res, std::abs(gpp - nh * gp));
        }

        out.radii.push_back(r);
        out.means.push_back(g[0]);
        out.residuals.push_back(res);
        const double dev = std::abs(g[0] - out.boundary_value);
        if (dev < out.best_deviation) {
            out.best_deviation = dev;
            out.best_radius = r;
        }
    }

    const size_t m = out.residuals.size();
    out.residual_trend_ok = m >= 3 && out.residuals[m - 1] < out.residuals[m - 2] &&
                            out.residuals[m - 2] < out.residuals[m - 3];
    return out;
}

}  // namespace horolab
