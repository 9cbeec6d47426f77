#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace horolab {

struct OdeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive Dormand-Prince 5(4) integrator on Eigen vectors.
///
/// Works in either time direction, with mixed absolute/relative per-component
/// error control (step accepted when the weighted RMS error estimate is below
/// 1). The scalar type is a template parameter so the Jacobi flows can run in
/// extended precision. The stepping core is exposed so callers can clamp steps
/// to sample grids or locate events.
template <class Scalar>
class Dopri5 {
  public:
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Rhs = std::function<void(Scalar, const Vec&, Vec&)>;

    Dopri5(Rhs rhs, Scalar rtol, Scalar atol) : rhs_(std::move(rhs)), rtol_(rtol), atol_(atol) {}

    void init(Scalar t0, const Vec& y0, Scalar direction) {
        t_ = t0;
        y_ = y0;
        dir_ = (direction >= Scalar(0)) ? Scalar(1) : Scalar(-1);
        k1_.resize(y0.size());
        rhs_(t_, y_, k1_);
        ++n_rhs_;
        h_ = Scalar(0);
        rejects_ = 0;
    }

    Scalar t() const { return t_; }
    const Vec& y() const { return y_; }
    Scalar dir() const { return dir_; }

    /// Take one accepted step, not beyond t_limit. Returns the new time.
    Scalar step(Scalar t_limit) {
        if ((t_limit - t_) * dir_ <= Scalar(0)) return t_;
        if (h_ == Scalar(0)) h_ = initial_step() * dir_;
        for (;;) {
            if (std::abs(h_) < std::abs(t_) * eps() * Scalar(16) + Scalar(1e-300))
                throw OdeError("dopri5: step size underflow at t = " +
                               std::to_string(static_cast<double>(t_)));
            bool clamped = false;
            Scalar h = h_;
            if ((t_ + h - t_limit) * dir_ > Scalar(0)) {
                h = t_limit - t_;
                clamped = true;
            }
            const Scalar err = try_step(h);
            if (!std::isfinite(static_cast<double>(err)))
                throw OdeError("dopri5: non-finite state at t = " +
                               std::to_string(static_cast<double>(t_)));
            if (err <= Scalar(1)) {
                t_ = (clamped ? t_limit : t_ + h);
                y_.swap(ynew_);
                k1_.swap(k7_);
                ++n_accepted_;
                Scalar fac = Scalar(0.9) * std::pow(std::max(err, Scalar(1e-30)), Scalar(-0.2));
                fac = std::min(Scalar(6), std::max(Scalar(0.25), fac));
                if (rejects_ > 0) fac = std::min(fac, Scalar(1));
                rejects_ = 0;
                if (!clamped) h_ = h * fac;
                else h_ = std::min<Scalar>(std::abs(h_), std::abs(h * fac)) * dir_;
                return t_;
            }
            ++n_rejected_;
            ++rejects_;
            h_ = h * std::max(Scalar(0.1), Scalar(0.9) * std::pow(err, Scalar(-0.2)));
        }
    }

    /// Advance from t0 to t1, calling observer(t, y) at t0 and at every
    /// accepted step (including t1).
    void integrate(Scalar t0, Scalar t1, Vec& y,
                   const std::function<void(Scalar, const Vec&)>& observer = nullptr) {
        init(t0, y, t1 - t0);
        if (observer) observer(t_, y_);
        while ((t1 - t_) * dir_ > Scalar(0)) {
            step(t1);
            if (observer) observer(t_, y_);
        }
        y = y_;
    }

    /// Advance from t0 to t1 landing exactly on each sample time (sorted in
    /// integration direction); calls on_sample(t, y) there.
    void integrate_samples(Scalar t0, Scalar t1, Vec& y, const std::vector<Scalar>& samples,
                           const std::function<void(Scalar, const Vec&)>& on_sample) {
        init(t0, y, t1 - t0);
        size_t next = 0;
        while (next < samples.size() && (samples[next] - t0) * dir_ <= Scalar(0)) {
            if (samples[next] == t0) on_sample(t_, y_);
            ++next;
        }
        while ((t1 - t_) * dir_ > Scalar(0)) {
            const Scalar target = (next < samples.size()) ? samples[next] : t1;
            step(target);
            if (next < samples.size() && t_ == samples[next]) {
                on_sample(t_, y_);
                ++next;
            }
        }
        y = y_;
    }

    long evals() const { return n_rhs_; }
    long accepted() const { return n_accepted_; }
    long rejected() const { return n_rejected_; }

  private:
    static constexpr Scalar eps() { return std::numeric_limits<Scalar>::epsilon(); }

    Scalar initial_step() {
        const Scalar scale = k1_.template lpNorm<Eigen::Infinity>() /
                             (y_.template lpNorm<Eigen::Infinity>() + Scalar(1));
        return Scalar(0.01) / (scale + Scalar(1e-2));
    }

    // One trial step of size h from (t_, y_); fills ynew_, k7_ and returns the
    // weighted error.
    Scalar try_step(Scalar h) {
        const Eigen::Index m = y_.size();
        k2_.resize(m); k3_.resize(m); k4_.resize(m); k5_.resize(m); k6_.resize(m);
        k7_.resize(m); ytmp_.resize(m); ynew_.resize(m);

        ytmp_ = y_ + h * (a21 * k1_);
        rhs_(t_ + c2 * h, ytmp_, k2_);
        ytmp_ = y_ + h * (a31 * k1_ + a32 * k2_);
        rhs_(t_ + c3 * h, ytmp_, k3_);
        ytmp_ = y_ + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
        rhs_(t_ + c4 * h, ytmp_, k4_);
        ytmp_ = y_ + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
        rhs_(t_ + c5 * h, ytmp_, k5_);
        ytmp_ = y_ + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
        rhs_(t_ + h, ytmp_, k6_);
        ynew_ = y_ + h * (a71 * k1_ + a73 * k3_ + a74 * k4_ + a75 * k5_ + a76 * k6_);
        rhs_(t_ + h, ynew_, k7_);  // FSAL
        n_rhs_ += 6;

        Scalar err2 = 0;
        for (Eigen::Index i = 0; i < m; ++i) {
            using std::abs;
            const Scalar e = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] +
                                  e6 * k6_[i] + e7 * k7_[i]);
            const Scalar sc = atol_ + rtol_ * std::max(abs(y_[i]), abs(ynew_[i]));
            const Scalar q = e / sc;
            err2 += q * q;
        }
        return std::sqrt(err2 / Scalar(static_cast<double>(m)));
    }

    Rhs rhs_;
    Scalar rtol_, atol_;
    Scalar t_ = 0, h_ = 0, dir_ = 1;
    Vec y_, k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_, ynew_;
    int rejects_ = 0;
    long n_rhs_ = 0, n_accepted_ = 0, n_rejected_ = 0;

    // Dormand-Prince 5(4) tableau
    static constexpr Scalar c2 = Scalar(1) / 5, c3 = Scalar(3) / 10, c4 = Scalar(4) / 5,
                            c5 = Scalar(8) / 9;
    static constexpr Scalar a21 = Scalar(1) / 5;
    static constexpr Scalar a31 = Scalar(3) / 40, a32 = Scalar(9) / 40;
    static constexpr Scalar a41 = Scalar(44) / 45, a42 = Scalar(-56) / 15, a43 = Scalar(32) / 9;
    static constexpr Scalar a51 = Scalar(19372) / 6561, a52 = Scalar(-25360) / 2187,
                            a53 = Scalar(64448) / 6561, a54 = Scalar(-212) / 729;
    static constexpr Scalar a61 = Scalar(9017) / 3168, a62 = Scalar(-355) / 33,
                            a63 = Scalar(46732) / 5247, a64 = Scalar(49) / 176,
                            a65 = Scalar(-5103) / 18656;
    static constexpr Scalar a71 = Scalar(35) / 384, a73 = Scalar(500) / 1113,
                            a74 = Scalar(125) / 192, a75 = Scalar(-2187) / 6784,
                            a76 = Scalar(11) / 84;
    // b - bhat
    static constexpr Scalar e1 = Scalar(35) / 384 - Scalar(5179) / 57600;
    static constexpr Scalar e3 = Scalar(500) / 1113 - Scalar(7571) / 16695;
    static constexpr Scalar e4 = Scalar(125) / 192 - Scalar(393) / 640;
    static constexpr Scalar e5 = Scalar(-2187) / 6784 + Scalar(92097) / 339200;
    static constexpr Scalar e6 = Scalar(11) / 84 - Scalar(187) / 2100;
    static constexpr Scalar e7 = Scalar(-1) / 40;
};

}  // namespace horolab
