#include "orbitreach/fields.hpp"

#include "orbitreach/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <sstream>

namespace orbitreach {

PolyVectorField::PolyVectorField(std::vector<Polynomial> components)
    : components_(std::move(components)) {
    for (const auto& c : components_)
        if (c.nvars() != components_.size())
            throw DimensionError("field component has " + std::to_string(c.nvars()) +
                                 " variables, field dimension is " +
                                 std::to_string(components_.size()));
}

PolyVectorField PolyVectorField::zero(std::size_t dim) {
    return PolyVectorField(std::vector<Polynomial>(dim, Polynomial(dim)));
}

PolyVectorField PolyVectorField::coordinate(std::size_t dim, std::size_t axis) {
    if (axis >= dim) throw DimensionError("coordinate axis out of range");
    std::vector<Polynomial> c(dim, Polynomial(dim));
    c[axis] = Polynomial::constant(dim, Rational(1));
    return PolyVectorField(std::move(c));
}

bool PolyVectorField::is_zero() const {
    return std::all_of(components_.begin(), components_.end(),
                       [](const Polynomial& p) { return p.is_zero(); });
}

std::vector<double> PolyVectorField::evaluate(std::span<const double> x) const {
    std::vector<double> out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = components_[i].evaluate(x);
    return out;
}

std::vector<Rational> PolyVectorField::evaluate(std::span<const Rational> x) const {
    std::vector<Rational> out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = components_[i].evaluate(x);
    return out;
}

std::vector<Polynomial> PolyVectorField::jacobian() const {
    std::vector<Polynomial> j;
    j.reserve(dim() * dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t k = 0; k < dim(); ++k) j.push_back(components_[i].derivative(k));
    return j;
}

std::string PolyVectorField::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < dim(); ++i) {
        if (i) os << ", ";
        os << components_[i].to_string();
    }
    os << "]";
    return os.str();
}

PolyVectorField& PolyVectorField::operator+=(const PolyVectorField& rhs) {
    if (rhs.dim() != dim()) throw DimensionError("field dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) components_[i] += rhs.components_[i];
    return *this;
}

PolyVectorField& PolyVectorField::operator-=(const PolyVectorField& rhs) {
    if (rhs.dim() != dim()) throw DimensionError("field dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) components_[i] -= rhs.components_[i];
    return *this;
}

PolyVectorField& PolyVectorField::operator*=(const Rational& s) {
    for (auto& c : components_) c *= s;
    return *this;
}

Polynomial lie_derivative(const PolyVectorField& v, const Polynomial& p) {
    if (p.nvars() != v.dim()) throw DimensionError("field dimension mismatch");
    Polynomial out(v.dim());
    for (std::size_t j = 0; j < v.dim(); ++j) {
        if (v[j].is_zero()) continue;
        Polynomial d = p.derivative(j);
        if (!d.is_zero()) out += v[j] * d;
    }
    return out;
}

PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y) {
    if (x.dim() != y.dim())
        throw DimensionError("cannot bracket fields of dimension " + std::to_string(x.dim()) +
                             " and " + std::to_string(y.dim()));
    std::vector<Polynomial> c;
    c.reserve(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        c.push_back(lie_derivative(x, y[i]) - lie_derivative(y, x[i]));
    return PolyVectorField(std::move(c));
}

PolyVectorField ad_power(const PolyVectorField& x, const PolyVectorField& y, unsigned l) {
    if (x.dim() != y.dim()) throw DimensionError("field dimension mismatch");
    PolyVectorField out = y;
    for (unsigned i = 0; i < l; ++i) {
        if (out.is_zero()) break;
        out = lie_bracket(x, out);
    }
    return out;
}

std::string word_to_string(const BracketWord& w, std::span<const std::string> names) {
    auto name = [&](std::size_t i) {
        return i < names.size() ? names[i] : "g" + std::to_string(i + 1);
    };
    if (w.size() == 1) return name(w[0]);
    std::string s;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) s += "[" + name(w[i]) + ",";
    s += name(w.back());
    s += std::string(w.size() - 1, ']');
    return s;
}

PolyVectorField evaluate_word(std::span<const PolyVectorField> generators, const BracketWord& w) {
    if (w.empty()) throw ArgumentError("empty bracket word");
    PolyVectorField f = generators[w.back()];
    for (std::size_t i = w.size() - 1; i-- > 0;) f = lie_bracket(generators[w[i]], f);
    return f;
}

LieHull generate_hull(std::vector<PolyVectorField> generators, unsigned depth) {
    if (depth < 1) throw ArgumentError("hull depth must be at least 1");
    for (const auto& g : generators)
        if (g.dim() != generators.front().dim()) throw DimensionError("generator dimension mismatch");

    LieHull hull;
    hull.depth = depth;
    hull.generators = std::move(generators);
    const auto& gens = hull.generators;

    auto known = [&](const PolyVectorField& f) {
        return std::any_of(hull.elements.begin(), hull.elements.end(),
                           [&](const LieHullElement& e) { return e.field == f; });
    };

    // Words of the current length, in lexicographic order.
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].is_zero() || known(gens[i])) continue;
        layer.push_back(hull.elements.size());
        hull.elements.push_back({{i}, gens[i]});
    }
    for (unsigned len = 2; len <= depth && !layer.empty(); ++len) {
        std::vector<std::pair<BracketWord, std::size_t>> candidates;
        for (std::size_t g = 0; g < gens.size(); ++g)
            for (std::size_t idx : layer) {
                BracketWord w{g};
                const auto& inner = hull.elements[idx].word;
                w.insert(w.end(), inner.begin(), inner.end());
                candidates.emplace_back(std::move(w), idx);
            }
        std::sort(candidates.begin(), candidates.end());
        std::vector<std::size_t> next;
        for (auto& [w, idx] : candidates) {
            PolyVectorField f = lie_bracket(gens[w.front()], hull.elements[idx].field);
            if (f.is_zero() || known(f)) continue;
            next.push_back(hull.elements.size());
            hull.elements.push_back({std::move(w), std::move(f)});
        }
        layer = std::move(next);
    }
    return hull;
}

namespace {

std::size_t exact_rank(std::vector<std::vector<Rational>> rows, std::size_t ncols) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[rank]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][col] == 0) continue;
            Rational f = rows[r][col] / rows[rank][col];
            for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::size_t span_rank(std::span<const PolyVectorField> fields, std::span<const double> x,
                      RankMethod method) {
    if (fields.empty()) return 0;
    const std::size_t n = fields.front().dim();
    if (x.size() != n) throw DimensionError("rank point has wrong dimension");

    if (method == RankMethod::Exact) {
        std::vector<Rational> xq(x.begin(), x.end());
        // Rows are coordinates so elimination touches at most n rows.
        std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(fields.size()));
        for (std::size_t j = 0; j < fields.size(); ++j) {
            auto v = fields[j].evaluate(std::span<const Rational>(xq));
            for (std::size_t i = 0; i < n; ++i) rows[i][j] = v[i];
        }
        return exact_rank(std::move(rows), fields.size());
    }

    Eigen::MatrixXd m(n, fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
        auto v = fields[j].evaluate(x);
        for (std::size_t i = 0; i < n; ++i) m(i, j) = v[i];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > kRankRelativeThreshold * s(0)) ++r;
    return r;
}

std::size_t lie_rank(const LieHull& hull, std::span<const double> x, RankMethod method) {
    std::vector<PolyVectorField> fields;
    fields.reserve(hull.elements.size());
    for (const auto& e : hull.elements) fields.push_back(e.field);
    return span_rank(fields, x, method);
}

LarcReport larc_check(std::span<const PolyVectorField> generators, std::span<const Point> points,
                      unsigned depth, RankMethod method) {
    if (generators.empty()) throw ArgumentError("no generating fields");
    LarcReport r;
    r.dim = generators.front().dim();
    r.depth = depth;
    LieHull hull = generate_hull({generators.begin(), generators.end()}, depth);
    r.passed = true;
    for (const auto& p : points) {
        if (p.size() != r.dim) throw DimensionError("sample point has the wrong dimension");
        std::size_t rank = lie_rank(hull, p, method);
        r.points.push_back(p);
        r.ranks.push_back(rank);
        r.passed = r.passed && rank == r.dim;
    }
    return r;
}

}  // namespace orbitreach
