#include "orbitreach/dynamics.hpp"

#include "orbitreach/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace orbitreach {

bool ControlBox::contains(std::span<const double> u) const {
    if (u.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
        if (!(u[i] >= lo[i] && u[i] <= hi[i])) return false;
    return true;
}

bool ControlBox::interior(std::span<const double> u) const {
    if (u.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
        if (!(u[i] > lo[i] && u[i] < hi[i])) return false;
    return true;
}

std::vector<std::vector<double>> ControlBox::vertices() const {
    std::vector<std::vector<double>> out;
    const std::size_t k = dim();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<double> v(k);
        for (std::size_t i = 0; i < k; ++i) v[i] = (mask >> (k - 1 - i)) & 1u ? hi[i] : lo[i];
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<double> ControlBox::clamp(std::span<const double> u) const {
    std::vector<double> out(u.begin(), u.end());
    for (std::size_t i = 0; i < dim() && i < out.size(); ++i)
        out[i] = std::clamp(out[i], lo[i], hi[i]);
    return out;
}

ControlSystem ControlSystem::affine(StateSpace space, PolyVectorField drift,
                                    std::vector<PolyVectorField> inputs, ControlBox box,
                                    std::vector<std::string> names) {
    if (drift.dim() != space.dim()) throw DimensionError("drift dimension differs from space");
    for (const auto& y : inputs)
        if (y.dim() != space.dim()) throw DimensionError("input field dimension differs from space");
    if (box.lo.size() != inputs.size() || box.hi.size() != inputs.size())
        throw DimensionError("control box needs one interval per input field");
    for (std::size_t i = 0; i < box.dim(); ++i)
        if (!(box.lo[i] <= box.hi[i])) throw ArgumentError("control box interval is empty");

    ControlSystem s;
    s.kind_ = Kind::Affine;
    s.space_ = std::move(space);
    s.generators_.push_back(std::move(drift));
    for (auto& y : inputs) s.generators_.push_back(y);
    s.inputs_ = std::move(inputs);
    s.box_ = std::move(box);
    if (names.empty()) {
        names.push_back("X");
        for (std::size_t j = 0; j < s.inputs_.size(); ++j)
            names.push_back(s.inputs_.size() == 1 ? "Y" : "Y" + std::to_string(j + 1));
    }
    if (names.size() != s.generators_.size()) throw ArgumentError("one name per field required");
    s.names_ = std::move(names);
    s.compile();
    return s;
}

ControlSystem ControlSystem::finite(StateSpace space, std::vector<PolyVectorField> fields,
                                    std::vector<std::string> names) {
    if (fields.empty()) throw ArgumentError("finite control set is empty");
    for (const auto& f : fields)
        if (f.dim() != space.dim()) throw DimensionError("field dimension differs from space");
    ControlSystem s;
    s.kind_ = Kind::Finite;
    s.space_ = std::move(space);
    s.generators_ = std::move(fields);
    if (names.empty())
        for (std::size_t j = 0; j < s.generators_.size(); ++j) names.push_back("F" + std::to_string(j));
    if (names.size() != s.generators_.size()) throw ArgumentError("one name per field required");
    s.names_ = std::move(names);
    s.compile();
    return s;
}

void ControlSystem::compile() {
    compiled_.clear();
    for (const auto& g : generators_) {
        CompiledField cf;
        for (const auto& c : g.components()) cf.comps.emplace_back(c);
        for (const auto& j : g.jacobian()) cf.jac.emplace_back(j);
        compiled_.push_back(std::move(cf));
    }
}

const PolyVectorField& ControlSystem::drift() const {
    if (!is_affine()) throw ArgumentError("finite control system has no drift");
    return generators_.front();
}

const std::vector<PolyVectorField>& ControlSystem::inputs() const {
    if (!is_affine()) throw ArgumentError("finite control system has no input fields");
    return inputs_;
}

const ControlBox& ControlSystem::box() const {
    if (!is_affine()) throw ArgumentError("finite control system has no control box");
    return box_;
}

const std::vector<PolyVectorField>& ControlSystem::fields() const {
    if (is_affine()) throw ArgumentError("affine control system has no finite field list");
    return generators_;
}

std::size_t ControlSystem::control_dim() const noexcept {
    return is_affine() ? inputs_.size() : 1;
}

bool ControlSystem::valid_control(std::span<const double> u) const {
    if (is_affine()) return box_.contains(u);
    if (u.size() != 1) return false;
    double i = u[0];
    return i >= 0 && i < static_cast<double>(generators_.size()) && std::floor(i) == i;
}

bool ControlSystem::interior_control(std::span<const double> u) const {
    if (is_affine()) return box_.interior(u);
    return false;
}

std::vector<ControlValue> ControlSystem::extreme_controls() const {
    if (is_affine()) return box_.vertices();
    std::vector<ControlValue> out;
    for (std::size_t i = 0; i < generators_.size(); ++i) out.push_back({static_cast<double>(i)});
    return out;
}

PolyVectorField ControlSystem::field_for(std::span<const double> u) const {
    if (!valid_control(u)) throw ArgumentError("control value outside the control set");
    if (!is_affine()) return generators_[static_cast<std::size_t>(u[0])];
    PolyVectorField f = generators_.front();
    for (std::size_t j = 0; j < inputs_.size(); ++j)
        if (u[j] != 0.0) f += Rational(u[j]) * inputs_[j];
    return f;
}

void ControlSystem::eval(const double* x, const double* u, double* out) const {
    const std::size_t n = dim();
    if (!is_affine()) {
        const auto& cf = compiled_[static_cast<std::size_t>(u[0])];
        for (std::size_t i = 0; i < n; ++i) out[i] = cf.comps[i](x);
        return;
    }
    const auto& d = compiled_[0];
    for (std::size_t i = 0; i < n; ++i) out[i] = d.comps[i](x);
    for (std::size_t j = 0; j < inputs_.size(); ++j) {
        if (u[j] == 0.0) continue;
        const auto& cf = compiled_[j + 1];
        for (std::size_t i = 0; i < n; ++i)
            if (!cf.comps[i].is_zero()) out[i] += u[j] * cf.comps[i](x);
    }
}

void ControlSystem::eval_jacobian(const double* x, const double* u, double* out) const {
    const std::size_t nn = dim() * dim();
    if (!is_affine()) {
        const auto& cf = compiled_[static_cast<std::size_t>(u[0])];
        for (std::size_t i = 0; i < nn; ++i) out[i] = cf.jac[i](x);
        return;
    }
    for (std::size_t i = 0; i < nn; ++i) out[i] = compiled_[0].jac[i](x);
    for (std::size_t j = 0; j < inputs_.size(); ++j) {
        if (u[j] == 0.0) continue;
        const auto& cf = compiled_[j + 1];
        for (std::size_t i = 0; i < nn; ++i)
            if (!cf.jac[i].is_zero()) out[i] += u[j] * cf.jac[i](x);
    }
}

namespace {

bool same_space(const StateSpace& a, const StateSpace& b) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a.period(i) != b.period(i)) return false;
    if (a.constraints().size() != b.constraints().size()) return false;
    for (std::size_t i = 0; i < a.constraints().size(); ++i)
        if (!(a.constraints()[i].lhs == b.constraints()[i].lhs) ||
            a.constraints()[i].relation != b.constraints()[i].relation)
            return false;
    return true;
}

}  // namespace

bool operator==(const ControlSystem& a, const ControlSystem& b) {
    return a.kind_ == b.kind_ && same_space(a.space_, b.space_) &&
           a.generators_ == b.generators_ && a.box_ == b.box_;
}

ControlSystem reverse_system(const ControlSystem& sys) {
    std::vector<PolyVectorField> neg;
    for (const auto& f : sys.generating_fields()) neg.push_back(-f);
    if (sys.is_affine()) {
        PolyVectorField drift = neg.front();
        neg.erase(neg.begin());
        return ControlSystem::affine(sys.space(), std::move(drift), std::move(neg), sys.box(),
                                     sys.names());
    }
    return ControlSystem::finite(sys.space(), std::move(neg), sys.names());
}

double PiecewiseControl::total_time() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration;
    return t;
}

void PiecewiseControl::validate(const ControlSystem& sys) const {
    for (const auto& s : segments) {
        if (!(s.duration > 0.0) || !std::isfinite(s.duration))
            throw ArgumentError("control segment duration must be positive");
        if (!sys.valid_control(s.value)) throw ArgumentError("control value outside the control set");
    }
}

PiecewiseControl PiecewiseControl::reversed() const {
    PiecewiseControl r;
    r.segments.assign(segments.rbegin(), segments.rend());
    return r;
}

void PiecewiseControl::append(const PiecewiseControl& other) {
    segments.insert(segments.end(), other.segments.begin(), other.segments.end());
}

std::size_t segment_steps(double duration, double step, double& dt) {
    double r = duration / step;
    double n = std::round(r);
    if (n >= 1.0 && std::abs(r - n) <= 1e-9 * n) {
        dt = step;
        return static_cast<std::size_t>(n);
    }
    n = std::max(1.0, std::ceil(r));
    dt = duration / n;
    return static_cast<std::size_t>(n);
}

Rk4Stepper::Rk4Stepper(const ControlSystem& sys)
    : sys_(&sys), k1_(sys.dim()), k2_(sys.dim()), k3_(sys.dim()), k4_(sys.dim()), tmp_(sys.dim()) {}

void Rk4Stepper::step(double* x, const double* u, double dt) {
    const std::size_t n = k1_.size();
    sys_->eval(x, u, k1_.data());
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = x[i] + 0.5 * dt * k1_[i];
    sys_->eval(tmp_.data(), u, k2_.data());
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = x[i] + 0.5 * dt * k2_[i];
    sys_->eval(tmp_.data(), u, k3_.data());
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = x[i] + dt * k3_[i];
    sys_->eval(tmp_.data(), u, k4_.data());
    for (std::size_t i = 0; i < n; ++i)
        x[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
}

StepOutcome advance(const ControlSystem& sys, Rk4Stepper& stepper, double* x, const double* u,
                    double dt) {
    stepper.step(x, u, dt);
    const std::size_t n = sys.dim();
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(x[i])) throw IntegrationError("integration produced a non-finite state");
    sys.space().wrap_in_place(std::span<double>(x, n));
    if (!sys.space().contains(std::span<const double>(x, n))) return StepOutcome::LeftDomain;
    return StepOutcome::Ok;
}

bool integrate_visit(const ControlSystem& sys, std::span<const double> x0,
                     const PiecewiseControl& ctrl, double step,
                     const std::function<bool(const double* x)>& visit) {
    if (!(step > 0.0)) throw ArgumentError("integration step must be positive");
    Point x = sys.space().wrap(x0);
    if (!visit(x.data())) return false;
    Rk4Stepper stepper(sys);
    Point scratch(x.size());
    for (const auto& seg : ctrl.segments) {
        double dt = 0.0;
        std::size_t n = segment_steps(seg.duration, step, dt);
        for (std::size_t k = 0; k < n; ++k) {
            scratch = x;
            if (advance(sys, stepper, scratch.data(), seg.value.data(), dt) == StepOutcome::LeftDomain)
                return false;
            x.swap(scratch);
            if (!visit(x.data())) return false;
        }
    }
    return true;
}

bool integrate_endpoint(const ControlSystem& sys, std::span<const double> x0,
                        const PiecewiseControl& ctrl, double step, Point& out) {
    const std::size_t n = sys.dim();
    out.assign(n, 0.0);
    return integrate_visit(sys, x0, ctrl, step, [&](const double* x) {
        std::copy(x, x + n, out.begin());
        return true;
    });
}

Trajectory integrate(const ControlSystem& sys, std::span<const double> x0,
                     const PiecewiseControl& ctrl, double step) {
    if (!(step > 0.0)) throw ArgumentError("integration step must be positive");
    sys.space().check_dim(x0);
    ctrl.validate(sys);

    Trajectory traj;
    traj.control = ctrl;
    Point x = sys.space().wrap(x0);
    traj.states.push_back(x);
    traj.times.push_back(0.0);
    traj.segment_index.push_back(0);

    Rk4Stepper stepper(sys);
    double t = 0.0;
    for (std::size_t s = 0; s < ctrl.segments.size() && !traj.truncated; ++s) {
        const auto& seg = ctrl.segments[s];
        double dt = 0.0;
        std::size_t n = segment_steps(seg.duration, step, dt);
        double seg_start = t;
        for (std::size_t k = 0; k < n; ++k) {
            Point next = x;
            if (advance(sys, stepper, next.data(), seg.value.data(), dt) == StepOutcome::LeftDomain) {
                traj.truncated = true;
                break;
            }
            x = std::move(next);
            // Avoid drift from accumulating dt: the last step lands on the boundary.
            t = (k + 1 == n) ? seg_start + seg.duration : seg_start + static_cast<double>(k + 1) * dt;
            traj.states.push_back(x);
            traj.times.push_back(t);
            traj.segment_index.push_back(s);
        }
    }
    traj.duration = traj.times.back();
    return traj;
}

Trajectory concat(const ControlSystem& sys, const Trajectory& t1, const Trajectory& t2,
                  double tolerance) {
    double gap = sys.space().dist(t1.end(), t2.start());
    if (gap > tolerance)
        throw GlueError("trajectory gap " + std::to_string(gap) + " exceeds glue tolerance " +
                        std::to_string(tolerance));
    Trajectory out = t1;
    const std::size_t seg_offset = t1.control.segments.size();
    for (std::size_t i = 1; i < t2.states.size(); ++i) {
        out.states.push_back(t2.states[i]);
        out.times.push_back(t1.duration + t2.times[i]);
        out.segment_index.push_back(seg_offset + t2.segment_index[i]);
    }
    out.control.append(t2.control);
    out.duration = t1.duration + t2.duration;
    out.truncated = t1.truncated || t2.truncated;
    out.glue_gap = t1.glue_gap + t2.glue_gap + gap;
    return out;
}

Trajectory reverse_trajectory(const Trajectory& t) {
    Trajectory r;
    r.control = t.control.reversed();
    r.t0 = t.t0;
    r.duration = t.duration;
    r.truncated = t.truncated;
    r.glue_gap = t.glue_gap;
    const std::size_t nseg = t.control.segments.size();
    for (std::size_t i = t.states.size(); i-- > 0;) {
        r.states.push_back(t.states[i]);
        r.times.push_back(t.duration - t.times[i]);
        // State i of the reversal was produced by the segment that follows it
        // in forward time.
        std::size_t fwd = (i + 1 < t.states.size()) ? t.segment_index[i + 1] : t.segment_index[i];
        r.segment_index.push_back(nseg ? nseg - 1 - std::min(fwd, nseg - 1) : 0);
    }
    if (!r.segment_index.empty()) r.segment_index.front() = 0;
    return r;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
    const std::size_t n = t.states.empty() ? 0 : t.states.front().size();
    const std::size_t k = t.control.segments.empty() ? 0 : t.control.segments.front().value.size();
    os << "t";
    for (std::size_t i = 0; i < n; ++i) os << ",x" << (i + 1);
    for (std::size_t j = 0; j < k; ++j) os << ",u" << (j + 1);
    os << "\n";
    auto old = os.precision(17);
    for (std::size_t r = 0; r < t.states.size(); ++r) {
        os << t.times[r];
        for (double v : t.states[r]) os << "," << v;
        if (k) {
            const auto& u = t.control.segments[std::min(t.segment_index[r], t.control.segments.size() - 1)].value;
            for (double v : u) os << "," << v;
        }
        os << "\n";
    }
    os.precision(old);
}

}  // namespace orbitreach
