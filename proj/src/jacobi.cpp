#include "horolab/jacobi.hpp"

#include <algorithm>
#include <cmath>

#include "horolab/ode.hpp"

namespace horolab {

namespace {

using LD = long double;
using VecL = Eigen::Matrix<LD, Eigen::Dynamic, 1>;
using MatL = Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic>;

MatL to_ld(const Eigen::MatrixXd& m) { return m.cast<LD>(); }
Eigen::MatrixXd to_d(const MatL& m) { return m.cast<double>(); }

// log |det M| by LU; the Jacobi tensors we feed in never hit det = 0.
LD log_abs_det(const MatL& m) {
    Eigen::PartialPivLU<MatL> lu(m);
    LD s = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) s += std::log(std::abs(lu.matrixLU()(i, i)));
    return s;
}

VecL diag_ld(const CurvatureProfile& p, LD t) {
    return p.diag(static_cast<double>(t)).cast<LD>();
}

// State layout [vec(J), vec(Jp)] (+ trailing scalar when carrying volume).
struct JacobiRhs {
    const CurvatureProfile* p;
    int n;
    LD nh = -1;  // < 0: no volume accumulator

    void operator()(LD t, const VecL& y, VecL& dy) const {
        dy.resize(y.size());
        const auto J = Eigen::Map<const MatL>(y.data(), n, n);
        const auto Jp = Eigen::Map<const MatL>(y.data() + n * n, n, n);
        auto dJ = Eigen::Map<MatL>(dy.data(), n, n);
        auto dJp = Eigen::Map<MatL>(dy.data() + n * n, n, n);
        dJ = Jp;
        const VecL d = diag_ld(*p, t);
        dJp = (-d).asDiagonal() * J;  // Jp' = -R(t) J, R diagonal
        if (nh >= 0) {
            const LD u = y[2 * n * n];
            dy[2 * n * n] = std::exp(log_abs_det(MatL(J)) - nh * t) - nh * u;
        }
    }
};

std::vector<LD> sample_list(double t0, double t1, const std::vector<double>& samples) {
    const LD dir = (t1 >= t0) ? 1 : -1;
    std::vector<LD> ts;
    ts.push_back(static_cast<LD>(t0));
    for (double s : samples)
        if ((s - t0) * dir > 0 && (t1 - s) * dir > 0) ts.push_back(static_cast<LD>(s));
    std::sort(ts.begin(), ts.end(),
              [dir](LD x, LD y) { return x * dir < y * dir; });
    ts.push_back(static_cast<LD>(t1));
    return ts;
}

MatL shape_from_jacobi(const MatL& J, const MatL& Jp) {
    // A = Jp J^-1, via J^T Y = Jp^T so no explicit inverse
    Eigen::PartialPivLU<MatL> lu(MatL(J.transpose()));
    return lu.solve(MatL(Jp.transpose())).transpose();
}

// Jacobi tensor vanishing at t_zero with unit derivative, integrated to 0;
// returns the shape operator Jp(0) J(0)^-1.
MatL shape_limit_at_zero(const CurvatureProfile& p, double t_zero, double tol) {
    const int n = p.n;
    VecL y(2 * n * n);
    Eigen::Map<MatL>(y.data(), n, n).setZero();
    Eigen::Map<MatL>(y.data() + n * n, n, n).setIdentity();
    JacobiRhs rhs{&p, n};
    Dopri5<LD> solver([rhs](LD t, const VecL& v, VecL& dv) { rhs(t, v, dv); },
                      static_cast<LD>(tol), static_cast<LD>(tol) * LD(1e-6) + LD(1e-300));
    solver.integrate(static_cast<LD>(t_zero), 0, y);
    const MatL J = Eigen::Map<const MatL>(y.data(), n, n);
    const MatL Jp = Eigen::Map<const MatL>(y.data() + n * n, n, n);
    MatL A = shape_from_jacobi(J, Jp);
    return LD(0.5) * (A + MatL(A.transpose()));
}

}  // namespace

JacobiTrajectory integrate_jacobi(const CurvatureProfile& p, const Eigen::MatrixXd& J0,
                                  const Eigen::MatrixXd& J0p, double t0, double t1, double tol,
                                  std::vector<double> sample_ts) {
    const int n = p.n;
    if (J0.rows() != n || J0.cols() != n || J0p.rows() != n || J0p.cols() != n)
        throw std::invalid_argument("jacobi: initial tensors must be n x n");

    VecL y(2 * n * n);
    Eigen::Map<MatL>(y.data(), n, n) = to_ld(J0);
    Eigen::Map<MatL>(y.data() + n * n, n, n) = to_ld(J0p);

    const MatL W0 = to_ld(J0).transpose() * to_ld(J0p) - to_ld(J0p).transpose() * to_ld(J0);

    JacobiTrajectory out;
    JacobiRhs rhs{&p, n};
    Dopri5<LD> solver([rhs](LD t, const VecL& v, VecL& dv) { rhs(t, v, dv); },
                      static_cast<LD>(tol), static_cast<LD>(tol) * LD(1e-6) + LD(1e-300));
    const auto ts = sample_list(t0, t1, sample_ts);
    solver.integrate_samples(ts.front(), ts.back(), y, ts, [&](LD t, const VecL& v) {
        const MatL J = Eigen::Map<const MatL>(v.data(), n, n);
        const MatL Jp = Eigen::Map<const MatL>(v.data() + n * n, n, n);
        const MatL W = J.transpose() * Jp - Jp.transpose() * J;
        const LD scale = std::max<LD>(1, (J.transpose() * Jp).cwiseAbs().maxCoeff());
        const LD drift = (W - W0).cwiseAbs().maxCoeff() / scale;
        out.wronskian_drift = std::max(out.wronskian_drift, static_cast<double>(drift));
        out.states.push_back({static_cast<double>(t), to_d(J), to_d(Jp)});
    });
    return out;
}

std::vector<ShapeOperator> riccati_integrate(const CurvatureProfile& p, const Eigen::MatrixXd& A0,
                                             double t0, double t1, double tol,
                                             std::vector<double> sample_ts) {
    const int n = p.n;
    if (A0.rows() != n || A0.cols() != n)
        throw std::invalid_argument("riccati: A0 must be n x n");
    const LD blowup = LD(1e8) * std::max<LD>(1, static_cast<LD>(p.b) * static_cast<LD>(p.b));

    auto rhs = [&p, n](LD t, const VecL& y, VecL& dy) {
        dy.resize(y.size());
        const auto A = Eigen::Map<const MatL>(y.data(), n, n);
        auto dA = Eigen::Map<MatL>(dy.data(), n, n);
        dA = -(A * A).eval();
        dA -= diag_ld(p, t).asDiagonal();
    };

    VecL y = Eigen::Map<const Eigen::VectorXd>(A0.data(), n * n).cast<LD>();
    Dopri5<LD> solver(rhs, static_cast<LD>(tol), static_cast<LD>(tol) * LD(1e-6) + LD(1e-300));
    const auto ts = sample_list(t0, t1, sample_ts);

    std::vector<ShapeOperator> out;
    auto record = [&](LD t, const VecL& v) {
        out.push_back({static_cast<double>(t), to_d(Eigen::Map<const MatL>(v.data(), n, n))});
    };

    solver.init(ts.front(), y, ts.back() - ts.front());
    size_t next = 0;
    if (ts[0] == static_cast<LD>(t0)) record(solver.t(), solver.y());
    ++next;
    try {
        while ((ts.back() - solver.t()) * solver.dir() > 0) {
            const LD target = (next < ts.size()) ? ts[next] : ts.back();
            solver.step(target);
            if (solver.y().cwiseAbs().maxCoeff() > blowup)
                throw RiccatiBlowup(static_cast<double>(solver.t()));
            if (next < ts.size() && solver.t() == ts[next]) {
                record(solver.t(), solver.y());
                ++next;
            }
        }
    } catch (const OdeError&) {
        // step collapse / non-finite state is the blow-up signature here
        throw RiccatiBlowup(static_cast<double>(solver.t()));
    }
    return out;
}

std::vector<SphereFlowSample> sphere_flow(const CurvatureProfile& p,
                                          const std::vector<double>& r_grid, double nh,
                                          double tol, bool with_ball) {
    const int n = p.n;
    const LD r0 = 1e-4L;
    std::vector<double> grid = r_grid;
    std::sort(grid.begin(), grid.end());
    if (grid.empty() || grid.front() <= static_cast<double>(r0))
        throw std::invalid_argument("sphere_flow: radii must be > 1e-4");

    const bool with_vol = nh >= 0 && with_ball;
    VecL y(2 * n * n + (with_vol ? 1 : 0));
    {
        // series start: J = r0 I - r0^3/6 R(0), J' = I - r0^2/2 R(0)
        const VecL d = diag_ld(p, 0);
        auto J = Eigen::Map<MatL>(y.data(), n, n);
        auto Jp = Eigen::Map<MatL>(y.data() + n * n, n, n);
        J = MatL((r0 * VecL::Ones(n) - r0 * r0 * r0 / 6 * d).asDiagonal());
        Jp = MatL((VecL::Ones(n) - r0 * r0 / 2 * d).asDiagonal());
        if (with_vol) y[2 * n * n] = std::pow(r0, LD(n + 1)) / LD(n + 1);
    }

    JacobiRhs rhs{&p, n, with_vol ? static_cast<LD>(nh) : LD(-1)};
    Dopri5<LD> solver([rhs](LD t, const VecL& v, VecL& dv) { rhs(t, v, dv); },
                      static_cast<LD>(tol), static_cast<LD>(tol) * LD(1e-6) + LD(1e-300));

    std::vector<SphereFlowSample> out;
    std::vector<LD> ts;
    for (double r : grid) ts.push_back(static_cast<LD>(r));
    solver.integrate_samples(r0, ts.back(), y, ts, [&](LD t, const VecL& v) {
        if (t == r0) return;
        const MatL J = Eigen::Map<const MatL>(v.data(), n, n);
        const MatL Jp = Eigen::Map<const MatL>(v.data() + n * n, n, n);
        Eigen::PartialPivLU<MatL> lu(J);
        LD logdet = 0;
        for (Eigen::Index i = 0; i < n; ++i) logdet += std::log(std::abs(lu.matrixLU()(i, i)));
        SphereFlowSample s;
        s.r = static_cast<double>(t);
        s.log_theta = static_cast<double>(logdet);
        s.mean_h = static_cast<double>(lu.solve(Jp).trace() / LD(n));
        if (nh >= 0)
            s.theta_scaled = static_cast<double>(std::exp(logdet - static_cast<LD>(nh) * t));
        if (with_vol) s.ball_scaled = static_cast<double>(v[2 * n * n]);
        s.J = to_d(J);
        s.Jp = to_d(Jp);
        s.A = to_d(shape_from_jacobi(J, Jp));
        out.push_back(std::move(s));
    });
    return out;
}

double log_theta(const CurvatureProfile& p, double r, double tol) {
    return sphere_flow(p, {r}, -1.0, tol).front().log_theta;
}

double theta(const CurvatureProfile& p, double r, double tol) {
    return std::exp(log_theta(p, r, tol));
}

Eigen::MatrixXd sphere_shape_operator(const CurvatureProfile& p, double r, double tol) {
    return sphere_flow(p, {r}, -1.0, tol).front().A;
}

double mean_curvature_along(const CurvatureProfile& p, double r, double tol) {
    return sphere_flow(p, {r}, -1.0, tol).front().mean_h;
}

ShapeLimit horosphere_shape_operator(const CurvatureProfile& p, double r_max, double tol) {
    if (r_max <= 0) throw std::invalid_argument("horosphere shape: r_max must be > 0");
    const MatL half = shape_limit_at_zero(p, -r_max / 2, tol);
    const MatL full = shape_limit_at_zero(p, -r_max, tol);
    ShapeLimit out;
    out.A = to_d(full);
    out.certificate = static_cast<double>((full - half).cwiseAbs().maxCoeff());
    out.r_max = r_max;
    return out;
}

ShapeLimit stable_shape_operator(const CurvatureProfile& p, double r_max, double tol) {
    if (r_max <= 0) throw std::invalid_argument("stable shape: r_max must be > 0");
    const MatL half = shape_limit_at_zero(p, r_max / 2, tol);
    const MatL full = shape_limit_at_zero(p, r_max, tol);
    ShapeLimit out;
    out.A = to_d(full);
    out.certificate = static_cast<double>((full - half).cwiseAbs().maxCoeff());
    out.r_max = r_max;
    return out;
}

AsymptoticDensity tau_from_tensors(const CurvatureProfile& p, double r_max, double tol) {
    const ShapeLimit U = horosphere_shape_operator(p, r_max, tol);
    const ShapeLimit S = stable_shape_operator(p, r_max, tol);
    const MatL M = to_ld(U.A) - to_ld(S.A);
    Eigen::SelfAdjointEigenSolver<MatL> es(M);
    const VecL ev = es.eigenvalues();
    if (ev.minCoeff() <= 0)
        throw std::runtime_error("tau: U'(0) - S'(0) is not positive definite");
    LD logdet = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) logdet += std::log(ev[i]);
    AsymptoticDensity out;
    out.tau = static_cast<double>(std::exp(-logdet));
    out.radius_used = r_max;
    out.error_bound = out.tau * p.n * (U.certificate + S.certificate) /
                      static_cast<double>(ev.minCoeff());
    return out;
}

AsymptoticDensity tau_from_limit(const CurvatureProfile& p, double h, double r_max, double tol) {
    if (r_max <= 0.01) throw std::invalid_argument("tau limit: r_max too small");
    std::vector<double> grid;
    for (int k = 6; k >= 0; --k) grid.push_back(r_max / std::pow(2.0, k));
    const auto flow = sphere_flow(p, grid, p.n * h, tol);
    for (size_t k = 1; k < flow.size(); ++k) {
        if (flow[k].theta_scaled < flow[k - 1].theta_scaled * (1.0 - 1e-9))
            throw std::runtime_error(
                "tau limit: theta e^{-nhr} decreasing between r = " +
                std::to_string(flow[k - 1].r) + " and r = " + std::to_string(flow[k].r) +
                "; entropy parameter looks wrong");
    }
    AsymptoticDensity out;
    out.tau = flow.back().theta_scaled;
    out.radius_used = r_max;
    out.error_bound = (p.a > 0) ? epsilon_bound(p.a, p.n, r_max) * out.tau
                                : std::numeric_limits<double>::infinity();
    return out;
}

double epsilon_bound(double a, int n, double r) {
    if (a <= 0) throw std::invalid_argument("epsilon bound: needs a > 0");
    if (n < 1 || r <= 0) throw std::invalid_argument("epsilon bound: needs n >= 1 and r > 0");
    // (1 - e^{-2ar})^{-n} - 1, kept accurate for large r
    return std::expm1(-static_cast<double>(n) * std::log1p(-std::exp(-2.0 * a * r)));
}

ManifoldParams derive_params(const CurvatureProfile& p, double r_max, double tol) {
    const ShapeLimit U = horosphere_shape_operator(p, r_max, tol);
    ManifoldParams m;
    m.n = p.n;
    m.a = p.a;
    m.b = p.b;
    m.h = U.A.trace() / p.n;
    m.entropy = p.n * m.h;
    return m;
}

RicciNormChecks ricci_and_norm_checks(const CurvatureProfile& p, double r_max, double tol) {
    if (r_max <= 0) r_max = 40.0 / std::max(p.a, 0.25);
    const ShapeLimit U = horosphere_shape_operator(p, r_max, tol);
    RicciNormChecks c;
    c.ric = p.diag(0.0).sum();  // tr R(0)
    c.norm_A2 = U.A.squaredNorm();
    c.h = U.A.trace() / p.n;
    const double n = p.n;
    c.ric_lower = -n * n * c.h * c.h + n * (n - 1) * p.a * p.a;
    c.ric_upper = -n * n * c.h * c.h + n * (n - 1) * p.b * p.b;
    c.identity_residual = std::abs(c.norm_A2 + c.ric);
    const double slack = 1e-8 * std::max(1.0, n * n * c.h * c.h);
    c.bounds_hold = (c.ric >= c.ric_lower - slack) &&
                    (c.norm_A2 <= n * n * c.h * c.h - n * (n - 1) * p.a * p.a + slack);
    c.constant_curvature_flag = std::abs(c.h - p.a) <= 1e-9 * std::max(1.0, p.a);
    return c;
}

}  // namespace horolab
