#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace orbitreach {

using Rational = mpq_class;

/// Exponent vector of a monomial, one entry per variable.
using Exponents = std::vector<std::uint16_t>;

/// Multivariate polynomial in x1..xn with exact rational coefficients.
///
/// Terms are kept in a sorted map with zero coefficients removed, so two
/// polynomials are equal iff their term maps are equal.
class Polynomial {
public:
    using TermMap = std::map<Exponents, Rational>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial variable(std::size_t nvars, std::size_t index);
    static Polynomial monomial(std::size_t nvars, Exponents exps, const Rational& c);

    std::size_t nvars() const noexcept { return nvars_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t degree() const;

    /// True iff the polynomial has no monomial of positive degree.
    bool is_constant() const;
    Rational constant_term() const;

    Polynomial derivative(std::size_t var) const;
    Polynomial pow(unsigned exponent) const;

    double evaluate(std::span<const double> x) const;
    Rational evaluate(std::span<const Rational> x) const;

    /// Canonical text form, e.g. `1/2*x1*x3 - 3*x2^2 + 4`.
    std::string to_string() const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Rational& s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    void add_term(const Exponents& e, const Rational& c);
    void check_same_vars(const Polynomial& other) const;

    std::size_t nvars_ = 0;
    TermMap terms_;
};

/// Floating-point evaluation form of a polynomial, built once and evaluated
/// many times inside integrators.
class CompiledPolynomial {
public:
    CompiledPolynomial() = default;
    explicit CompiledPolynomial(const Polynomial& p);

    double operator()(const double* x) const {
        double sum = 0.0;
        for (const auto& t : terms_) {
            double v = t.coef;
            for (std::uint32_t f = t.first; f < t.last; ++f) {
                const Factor& fac = factors_[f];
                double xv = x[fac.var];
                double pw = xv;
                for (std::uint16_t e = 1; e < fac.exp; ++e) pw *= xv;
                v *= pw;
            }
            sum += v;
        }
        return sum;
    }

    bool is_zero() const noexcept { return terms_.empty(); }

private:
    struct Factor {
        std::uint16_t var;
        std::uint16_t exp;
    };
    struct Term {
        double coef;
        std::uint32_t first;
        std::uint32_t last;
    };
    std::vector<Term> terms_;
    std::vector<Factor> factors_;
};

std::string to_string(const Rational& r);

}  // namespace orbitreach
