#include "orbitreach/extremals.hpp"

#include "orbitreach/errors.hpp"

#include <algorithm>
#include <cmath>

namespace orbitreach {

double hamiltonian(const ControlSystem& sys, std::span<const double> u, std::span<const double> x,
                   std::span<const double> p) {
    sys.space().check_dim(x);
    sys.space().check_dim(p);
    std::vector<double> f(sys.dim());
    sys.eval(x.data(), u.data(), f.data());
    double h = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) h += p[i] * f[i];
    return h;
}

namespace {

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double a : v) s += a * a;
    return std::sqrt(s);
}

class LiftStepper {
public:
    explicit LiftStepper(const ControlSystem& sys)
        : sys_(sys), n_(sys.dim()), jac_(n_ * n_), k_(4, std::vector<double>(2 * n_)), tmp_(2 * n_) {}

    void step(double* z, const double* u, double dt) {
        rhs(z, u, k_[0].data());
        for (std::size_t i = 0; i < 2 * n_; ++i) tmp_[i] = z[i] + 0.5 * dt * k_[0][i];
        rhs(tmp_.data(), u, k_[1].data());
        for (std::size_t i = 0; i < 2 * n_; ++i) tmp_[i] = z[i] + 0.5 * dt * k_[1][i];
        rhs(tmp_.data(), u, k_[2].data());
        for (std::size_t i = 0; i < 2 * n_; ++i) tmp_[i] = z[i] + dt * k_[2][i];
        rhs(tmp_.data(), u, k_[3].data());
        for (std::size_t i = 0; i < 2 * n_; ++i)
            z[i] += dt / 6.0 * (k_[0][i] + 2.0 * k_[1][i] + 2.0 * k_[2][i] + k_[3][i]);
    }

private:
    void rhs(const double* z, const double* u, double* out) {
        sys_.eval(z, u, out);
        sys_.eval_jacobian(z, u, jac_.data());
        const double* p = z + n_;
        for (std::size_t j = 0; j < n_; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n_; ++i) s += jac_[i * n_ + j] * p[i];
            out[n_ + j] = -s;
        }
    }

    const ControlSystem& sys_;
    std::size_t n_;
    std::vector<double> jac_;
    std::vector<std::vector<double>> k_;
    std::vector<double> tmp_;
};

}  // namespace

ExtremalLift integrate_lift(const ControlSystem& sys, const PiecewiseControl& ctrl,
                            std::span<const double> x0, std::span<const double> p0, double step) {
    if (!(step > 0.0)) throw ArgumentError("integration step must be positive");
    sys.space().check_dim(x0);
    sys.space().check_dim(p0);
    ctrl.validate(sys);
    const std::size_t n = sys.dim();
    if (norm(p0) < kCovectorFloor) throw IntegrationError("initial covector vanishes");

    ExtremalLift lift;
    Trajectory& traj = lift.base;
    traj.control = ctrl;
    std::vector<double> z(2 * n);
    Point x = sys.space().wrap(x0);
    std::copy(x.begin(), x.end(), z.begin());
    std::copy(p0.begin(), p0.end(), z.begin() + static_cast<std::ptrdiff_t>(n));
    traj.states.push_back(x);
    traj.times.push_back(0.0);
    traj.segment_index.push_back(0);
    lift.covector.emplace_back(p0.begin(), p0.end());

    LiftStepper stepper(sys);
    double t = 0.0;
    for (std::size_t s = 0; s < ctrl.segments.size(); ++s) {
        const auto& seg = ctrl.segments[s];
        double dt = 0.0;
        std::size_t steps = segment_steps(seg.duration, step, dt);
        double seg_start = t;
        for (std::size_t k = 0; k < steps; ++k) {
            stepper.step(z.data(), seg.value.data(), dt);
            for (double v : z)
                if (!std::isfinite(v)) throw IntegrationError("lift produced a non-finite state");
            std::span<double> xs(z.data(), n), ps(z.data() + n, n);
            sys.space().wrap_in_place(xs);
            if (!sys.space().contains(xs)) throw DomainError("lift base left the domain");
            if (norm(ps) < kCovectorFloor) throw IntegrationError("covector collapsed to zero");
            t = (k + 1 == steps) ? seg_start + seg.duration : seg_start + static_cast<double>(k + 1) * dt;
            traj.states.emplace_back(xs.begin(), xs.end());
            traj.times.push_back(t);
            traj.segment_index.push_back(s);
            lift.covector.emplace_back(ps.begin(), ps.end());
        }
    }
    traj.duration = t;
    return lift;
}

ExtremalLift constant_lift(const Trajectory& base, std::span<const double> p) {
    ExtremalLift lift;
    lift.base = base;
    lift.covector.assign(base.states.size(), std::vector<double>(p.begin(), p.end()));
    return lift;
}

namespace {

const ControlValue& control_at(const ExtremalLift& lift, const PiecewiseControl& ctrl, std::size_t i) {
    std::size_t s = lift.base.segment_index.at(i);
    if (s >= ctrl.segments.size()) throw ArgumentError("lift refers to a missing control segment");
    return ctrl.segments[s].value;
}

void check_shape(const ExtremalLift& lift) {
    if (lift.base.states.empty() || lift.covector.size() != lift.base.states.size() ||
        lift.base.segment_index.size() != lift.base.states.size())
        throw ArgumentError("lift samples are inconsistent");
}

}  // namespace

ExtremalResiduals check_extremal_conditions(const ControlSystem& sys, const ExtremalLift& lift,
                                            const PiecewiseControl& ctrl, double step) {
    check_shape(lift);
    ExtremalResiduals r;
    const auto& states = lift.base.states;

    ExtremalLift ref = integrate_lift(sys, ctrl, states.front(), lift.covector.front(), step);
    if (ref.base.states.size() != states.size())
        throw ArgumentError("lift samples do not match the integration grid");
    r.min_covector_norm = INFINITY;
    const auto extremes = sys.extreme_controls();
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& p = lift.covector[i];
        double dp = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) dp = std::max(dp, std::abs(p[j] - ref.covector[i][j]));
        r.cond_i = std::max({r.cond_i, sys.space().dist(states[i], ref.base.states[i]), dp});
        r.min_covector_norm = std::min(r.min_covector_norm, norm(p));

        const auto& u = control_at(lift, ctrl, i);
        double h = hamiltonian(sys, u, states[i], p);
        r.cond_ii = std::max(r.cond_ii, std::abs(h));
        double hmax = -INFINITY;
        for (const auto& v : extremes) hmax = std::max(hmax, hamiltonian(sys, v, states[i], p));
        r.cond_iii = std::max(r.cond_iii, hmax - h);
    }
    r.cond_iv = check_singular(sys, lift, ctrl);
    return r;
}

std::optional<double> check_singular(const ControlSystem& sys, const ExtremalLift& lift,
                                     const PiecewiseControl& ctrl) {
    check_shape(lift);
    if (!sys.is_affine()) return std::nullopt;
    for (const auto& seg : ctrl.segments)
        if (!sys.interior_control(seg.value)) return std::nullopt;
    double worst = 0.0;
    const auto& states = lift.base.states;
    for (std::size_t i = 0; i < states.size(); ++i) {
        double s2 = 0.0;
        for (const auto& y : sys.inputs()) {
            auto yv = y.evaluate(states[i]);
            double d = 0.0;
            for (std::size_t k = 0; k < yv.size(); ++k) d += lift.covector[i][k] * yv[k];
            s2 += d * d;
        }
        worst = std::max(worst, std::sqrt(s2));
    }
    return worst;
}

std::vector<PolyVectorField> endpoint_image_fields(const ControlSystem& sys, unsigned depth) {
    if (!sys.is_affine()) throw ArgumentError("endpoint image needs an affine system");
    std::vector<PolyVectorField> out;
    for (const auto& y : sys.inputs()) {
        PolyVectorField v = y;
        out.push_back(v);
        for (unsigned l = 1; l <= depth; ++l) {
            v = lie_bracket(sys.drift(), v);
            out.push_back(v);
        }
    }
    return out;
}

std::size_t endpoint_image_rank(const ControlSystem& sys, std::span<const double> x, unsigned depth) {
    sys.space().check_dim(x);
    auto fields = endpoint_image_fields(sys, depth);
    return span_rank(fields, x);
}

bool consing_check(const ControlSystem& sys, std::span<const double> x, unsigned depth) {
    return endpoint_image_rank(sys, x, depth) == sys.dim();
}

std::size_t arwar_rank(const ControlSystem& sys, std::span<const double> x, unsigned depth) {
    sys.space().check_dim(x);
    auto fields = endpoint_image_fields(sys, depth);
    fields.push_back(sys.drift());
    return span_rank(fields, x);
}

}  // namespace orbitreach
