#include "orbitreach/shooting.hpp"

#include "orbitreach/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace orbitreach {

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> x0, std::span<const double> scale,
                          std::size_t max_evals, double target) {
    const std::size_t n = x0.size();
    if (scale.size() != n) throw DimensionError("simplex scale must match the variable count");
    SimplexResult res;
    auto eval = [&](const std::vector<double>& x) {
        ++res.evaluations;
        double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::max();
    };

    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    vals[0] = eval(x0);
    for (std::size_t i = 0; i < n && res.evaluations < max_evals; ++i) {
        pts[i + 1][i] += scale[i];
        vals[i + 1] = eval(pts[i + 1]);
    }
    if (n == 0 || res.evaluations < n + 1) {
        res.x = x0;
        res.value = vals[0];
        return res;
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    while (res.evaluations < max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
        if (vals[best] <= target) break;
        if (vals[worst] - vals[best] <= 1e-15 * (std::abs(vals[best]) + 1e-300)) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == worst) continue;
            for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[k][i] / static_cast<double>(n);
        }
        for (std::size_t i = 0; i < n; ++i) xr[i] = centroid[i] + (centroid[i] - pts[worst][i]);
        double fr = eval(xr);
        if (fr < vals[best]) {
            for (std::size_t i = 0; i < n; ++i) xe[i] = centroid[i] + 2.0 * (centroid[i] - pts[worst][i]);
            double fe = eval(xe);
            if (fe < fr) { pts[worst] = xe; vals[worst] = fe; }
            else { pts[worst] = xr; vals[worst] = fr; }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr < vals[worst];
        for (std::size_t i = 0; i < n; ++i) {
            xc[i] = outside ? centroid[i] + 0.5 * (xr[i] - centroid[i])
                            : centroid[i] + 0.5 * (pts[worst][i] - centroid[i]);
        }
        double fc = eval(xc);
        if (fc < std::min(fr, vals[worst])) {
            pts[worst] = xc;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t k = 0; k <= n && res.evaluations < max_evals; ++k) {
            if (k == best) continue;
            for (std::size_t i = 0; i < n; ++i) pts[k][i] = pts[best][i] + 0.5 * (pts[k][i] - pts[best][i]);
            vals[k] = eval(pts[k]);
        }
    }
    auto it = std::min_element(vals.begin(), vals.end());
    res.x = pts[static_cast<std::size_t>(it - vals.begin())];
    res.value = *it;
    return res;
}

namespace {

struct FreeLayout {
    std::size_t first = 0;      // index of the first free segment
    std::size_t value_vars = 0;  // control variables per segment
};

PiecewiseControl decode(const ControlSystem& sys, const PiecewiseControl& base,
                        const FreeLayout& lay, std::span<const double> v) {
    PiecewiseControl out;
    std::size_t p = 0;
    for (std::size_t s = lay.first; s < base.segments.size(); ++s) {
        Segment seg;
        seg.duration = std::abs(v[p++]);
        if (lay.value_vars > 0) {
            seg.value = sys.box().clamp(v.subspan(p, lay.value_vars));
            p += lay.value_vars;
        } else {
            seg.value = base.segments[s].value;
        }
        if (seg.duration > 0.0) out.segments.push_back(std::move(seg));
    }
    return out;
}

}  // namespace

ShootingResult refine_endpoint(const ControlSystem& sys, std::span<const double> x0,
                               const PiecewiseControl& ctrl, std::span<const double> target,
                               const ShootingOptions& options) {
    sys.space().check_dim(x0);
    sys.space().check_dim(target);
    ctrl.validate(sys);
    const std::size_t n = sys.dim();

    FreeLayout lay;
    lay.first = ctrl.segments.size() - std::min(options.free_segments, ctrl.segments.size());
    lay.value_vars = sys.is_affine() ? sys.control_dim() : 0;

    PiecewiseControl prefix;
    prefix.segments.assign(ctrl.segments.begin(), ctrl.segments.begin() + lay.first);

    auto admissible_path = [&](std::span<const double> from, const PiecewiseControl& c, Point& end) {
        end.assign(n, 0.0);
        return integrate_visit(sys, from, c, options.step, [&](const double* x) {
            if (options.admissible && !options.admissible(x)) return false;
            std::copy(x, x + n, end.begin());
            return true;
        });
    };

    ShootingResult res;
    Point mid;
    if (!admissible_path(x0, prefix, mid)) throw ArgumentError("trajectory prefix is not admissible");
    Point end;
    if (!admissible_path(mid, PiecewiseControl{std::vector<Segment>(ctrl.segments.begin() + lay.first,
                                                                    ctrl.segments.end())},
                         end))
        throw ArgumentError("trajectory is not admissible");
    res.control = ctrl;
    res.endpoint = end;
    res.initial_gap = res.gap = sys.space().dist(end, target);
    if (res.gap <= options.tolerance || lay.first == ctrl.segments.size()) {
        res.converged = res.gap <= options.tolerance;
        return res;
    }

    std::vector<double> v;
    std::vector<double> scale;
    double total = 0.0;
    for (std::size_t s = lay.first; s < ctrl.segments.size(); ++s) {
        const auto& seg = ctrl.segments[s];
        total += seg.duration;
        v.push_back(seg.duration);
        for (std::size_t j = 0; j < lay.value_vars; ++j) v.push_back(seg.value[j]);
    }

    const double penalty = 1e6;
    auto objective = [&](std::span<const double> w) {
        PiecewiseControl c = decode(sys, ctrl, lay, w);
        Point e;
        if (!admissible_path(mid, c, e)) return penalty;
        return sys.space().dist(e, target);
    };

    std::vector<double> best = v;
    double best_val = res.gap;
    double radius = res.gap;
    while (res.evaluations < options.max_evals && best_val > options.tolerance) {
        scale.clear();
        for (std::size_t s = lay.first, p = 0; s < ctrl.segments.size(); ++s) {
            const auto& seg = ctrl.segments[s];
            scale.push_back(std::max(std::min(radius, 0.5 * seg.duration + options.step), 1e-12));
            ++p;
            for (std::size_t j = 0; j < lay.value_vars; ++j, ++p) {
                double width = sys.box().hi[j] - sys.box().lo[j];
                double sc = std::min(0.25 * width, radius / std::max(total, 1e-3));
                // Step into the box from a face.
                if (best[p] >= sys.box().hi[j]) sc = -sc;
                scale.push_back(std::max(std::abs(sc), 1e-12) * (sc < 0 ? -1.0 : 1.0));
            }
        }
        auto r = nelder_mead(objective, best, scale, options.max_evals - res.evaluations,
                             options.tolerance);
        res.evaluations += r.evaluations;
        if (r.value < best_val) {
            double gain = best_val - r.value;
            best = r.x;
            best_val = r.value;
            radius = std::max(best_val, 1e-12);
            if (gain < 1e-3 * best_val) radius *= 0.1;
        } else {
            radius *= 0.1;
            if (radius < 1e-14) break;
        }
    }

    if (best_val < res.gap) {
        PiecewiseControl tail = decode(sys, ctrl, lay, best);
        res.control = prefix;
        res.control.append(tail);
        admissible_path(mid, tail, res.endpoint);
        res.gap = best_val;
    }
    res.converged = res.gap <= options.tolerance;
    return res;
}

}  // namespace orbitreach
