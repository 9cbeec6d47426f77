#include "horolab/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace horolab {

Eigen::MatrixXd CurvatureProfile::at(double t) const {
    return Eigen::MatrixXd(diag(t).asDiagonal());
}

CurvatureProfile CurvatureProfile::reversed() const {
    CurvatureProfile p = *this;
    p.name = name + "/reversed";
    auto d = diag;
    p.diag = [d](double t) { return d(-t); };
    return p;
}

CurvatureProfile CurvatureProfile::shifted(double t0) const {
    CurvatureProfile p = *this;
    p.name = name + "/shifted";
    auto d = diag;
    p.diag = [d, t0](double t) { return d(t + t0); };
    return p;
}

CurvatureProfile make_constant_profile(int n, double a) {
    if (n < 1) throw std::invalid_argument("profile: n must be >= 1");
    if (a <= 0.0) throw std::invalid_argument("profile: a must be > 0");
    CurvatureProfile p;
    p.name = "RH" + std::to_string(n + 1) + "(a=" + std::to_string(a) + ")";
    p.n = n;
    p.a = p.b = a;
    const Eigen::VectorXd d = Eigen::VectorXd::Constant(n, -a * a);
    p.diag = [d](double) { return d; };
    return p;
}

int ross_fat_multiplicity(RossFamily family) {
    switch (family) {
        case RossFamily::Real: return 0;
        case RossFamily::Complex: return 1;
        case RossFamily::Quaternionic: return 3;
        case RossFamily::Octonionic: return 7;
    }
    return 0;
}

CurvatureProfile make_ross_profile(const RossProfile& ross) {
    const int d = ross_fat_multiplicity(ross.family);
    const int m = ross.real_dimension;
    const double a = ross.scale;
    if (a <= 0.0) throw std::invalid_argument("ross: scale must be > 0");
    const char* tag = nullptr;
    switch (ross.family) {
        case RossFamily::Real:
            if (m < 2) throw std::invalid_argument("ross: real dimension must be >= 2");
            tag = "RH";
            break;
        case RossFamily::Complex:
            if (m < 4 || m % 2 != 0)
                throw std::invalid_argument("ross: complex family needs even real dimension >= 4");
            tag = "CH";
            break;
        case RossFamily::Quaternionic:
            if (m < 8 || m % 4 != 0)
                throw std::invalid_argument("ross: quaternionic family needs real dimension 4k >= 8");
            tag = "HH";
            break;
        case RossFamily::Octonionic:
            if (m != 16) throw std::invalid_argument("ross: octonionic family exists only at real dimension 16");
            tag = "OH";
            break;
    }
    const int n = m - 1;
    if (d >= n && d != 0) throw std::invalid_argument("ross: dimension too small for family");

    CurvatureProfile p;
    p.name = std::string(tag) + std::to_string(d == 0 ? m : m / (d + 1)) +
             "(a=" + std::to_string(a) + ")";
    p.n = n;
    p.a = a;
    p.b = (d == 0) ? a : 2.0 * a;
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, -a * a);
    diag.tail(d).setConstant(-4.0 * a * a);
    p.diag = [diag](double) { return diag; };
    return p;
}

CurvatureProfile make_synthetic_profile(int n, std::vector<Expr> entries, double a, double b,
                                        double t_sample_lo, double t_sample_hi, int samples) {
    if (n < 1) throw std::invalid_argument("synthetic profile: n must be >= 1");
    if (static_cast<int>(entries.size()) != n)
        throw std::invalid_argument("synthetic profile: need one entry per normal direction");
    if (!(a >= 0.0 && b >= a)) throw std::invalid_argument("synthetic profile: need 0 <= a <= b");

    const double lo = a * a * (1.0 - 1e-9) - 1e-12;
    const double hi = b * b * (1.0 + 1e-9) + 1e-12;
    for (int k = 0; k < samples; ++k) {
        const double t = t_sample_lo + (t_sample_hi - t_sample_lo) * k / (samples - 1);
        for (int i = 0; i < n; ++i) {
            const double v = entries[static_cast<size_t>(i)](t);
            if (!(v >= lo && v <= hi))
                throw std::invalid_argument("synthetic profile: entry " + std::to_string(i) +
                                            " leaves [a^2, b^2] at t = " + std::to_string(t) +
                                            " (value " + std::to_string(v) + ")");
        }
    }

    CurvatureProfile p;
    p.name = "synthetic(n=" + std::to_string(n) + ")";
    p.n = n;
    p.a = a;
    p.b = b;
    p.constant = false;
    auto fns = std::make_shared<std::vector<Expr>>(std::move(entries));
    p.diag = [fns, n](double t) {
        Eigen::VectorXd d(n);
        for (int i = 0; i < n; ++i) d[i] = -(*fns)[static_cast<size_t>(i)](t);
        return d;
    };
    return p;
}

}  // namespace horolab
