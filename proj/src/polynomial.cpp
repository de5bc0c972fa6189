#include "orbitreach/polynomial.hpp"

#include "orbitreach/errors.hpp"

#include <algorithm>
#include <sstream>

namespace orbitreach {

std::string to_string(const Rational& r) {
    return r.get_str();
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw DimensionError("variable index out of range");
    Exponents e(nvars, 0);
    e[index] = 1;
    return monomial(nvars, std::move(e), Rational(1));
}

Polynomial Polynomial::monomial(std::size_t nvars, Exponents exps, const Rational& c) {
    if (exps.size() != nvars) throw DimensionError("exponent vector has wrong length");
    Polynomial p(nvars);
    p.add_term(exps, c);
    return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Polynomial::check_same_vars(const Polynomial& other) const {
    if (nvars_ != other.nvars_)
        throw DimensionError("polynomials over different variable counts");
}

std::size_t Polynomial::degree() const {
    std::size_t d = 0;
    for (const auto& [e, c] : terms_) {
        std::size_t s = 0;
        for (auto v : e) s += v;
        d = std::max(d, s);
    }
    return d;
}

bool Polynomial::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 &&
            std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                        [](auto v) { return v == 0; }));
}

Rational Polynomial::constant_term() const {
    auto it = terms_.find(Exponents(nvars_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    if (var >= nvars_) throw DimensionError("derivative variable out of range");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        --d[var];
        out.add_term(d, c * e[var]);
    }
    return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
    Polynomial result = constant(nvars_, Rational(1));
    Polynomial base = *this;
    while (exponent) {
        if (exponent & 1u) result = result * base;
        exponent >>= 1u;
        if (exponent) base = base * base;
    }
    return result;
}

double Polynomial::evaluate(std::span<const double> x) const {
    if (x.size() != nvars_) throw DimensionError("evaluation point has wrong dimension");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double v = c.get_d();
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) v *= x[i];
        sum += v;
    }
    return sum;
}

Rational Polynomial::evaluate(std::span<const Rational> x) const {
    if (x.size() != nvars_) throw DimensionError("evaluation point has wrong dimension");
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
        Rational v = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) v *= x[i];
        sum += v;
    }
    return sum;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest monomials first reads more naturally.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool has_var = std::any_of(e.begin(), e.end(), [](auto v) { return v != 0; });
        bool wrote = false;
        if (mag != 1 || !has_var) {
            os << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << "*";
            os << "x" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
            wrote = true;
        }
    }
    return os.str();
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    check_same_vars(rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    check_same_vars(rhs);
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same_vars(b);
    Polynomial out(a.nvars_);
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) {
    for (const auto& [e, c] : p.terms()) {
        Term t{c.get_d(), static_cast<std::uint32_t>(factors_.size()), 0};
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0)
                factors_.push_back({static_cast<std::uint16_t>(i), e[i]});
        t.last = static_cast<std::uint32_t>(factors_.size());
        terms_.push_back(t);
    }
}

}  // namespace orbitreach
