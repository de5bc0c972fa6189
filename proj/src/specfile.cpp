#include "orbitreach/specfile.hpp"

#include "orbitreach/errors.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace orbitreach {

namespace {

/// Position-tracking reader over one logical line.
class Cursor {
public:
    Cursor(std::string_view text, std::size_t line, std::size_t column0 = 1)
        : text_(text), line_(line), column0_(column0) {}

    [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
    [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const {
        throw ParseError(what, line_, column0_ + pos);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    bool accept(std::string_view s) {
        skip_ws();
        if (text_.substr(pos_, s.size()) != s) return false;
        pos_ += s.size();
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    void expect_end() {
        if (!at_end()) fail("unexpected trailing text");
    }
    std::size_t pos() {
        skip_ws();
        return pos_;
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
        }
        if (start == pos_) fail("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    bool at_number() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }

    /// Unsigned decimal literal as an exact rational plus its text.
    Rational number(std::string* lexeme = nullptr) {
        skip_ws();
        std::size_t start = pos_;
        std::string digits;
        long frac = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits += text_[pos_++];
                ++frac;
            }
        }
        if (digits.empty()) fail_at(start, "expected a number");
        long exp = 0;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_++;
            bool neg = false;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) neg = text_[pos_++] == '-';
            std::string ed;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ed += text_[pos_++];
            if (ed.empty()) fail_at(save, "malformed exponent");
            if (ed.size() > 4) fail_at(save, "exponent too large");
            exp = std::stol(ed);
            if (neg) exp = -exp;
        }
        if (lexeme) *lexeme = std::string(text_.substr(start, pos_ - start));
        mpz_class num(digits, 10);
        mpz_class den = 1;
        long shift = exp - frac;
        mpz_class ten = 10;
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(std::labs(shift)));
        if (shift >= 0) num *= scale;
        else den = scale;
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    unsigned long integer() {
        skip_ws();
        std::size_t start = pos_;
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
        if (digits.empty()) fail_at(start, "expected an integer");
        if (digits.size() > 9) fail_at(start, "integer too large");
        return std::stoul(digits);
    }

    std::string_view rest() {
        skip_ws();
        return text_.substr(pos_);
    }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t column0_;
    std::size_t pos_ = 0;
};

// ---- polynomials -------------------------------------------------------

Polynomial poly_expr(Cursor& c, std::size_t n);

Polynomial poly_atom(Cursor& c, std::size_t n) {
    if (c.accept('(')) {
        Polynomial p = poly_expr(c, n);
        c.expect(')');
        return p;
    }
    if (c.at_number()) return Polynomial::constant(n, c.number());
    std::size_t at = c.pos();
    if (c.peek() == 'x') {
        std::string id = c.identifier();
        std::size_t idx = 0;
        bool ok = id.size() > 1;
        for (std::size_t i = 1; i < id.size() && ok; ++i) ok = std::isdigit(static_cast<unsigned char>(id[i]));
        if (ok && id.size() < 8) idx = std::stoul(id.substr(1));
        if (!ok || idx == 0) c.fail_at(at, "unknown variable '" + id + "'");
        if (idx > n) c.fail_at(at, "variable '" + id + "' exceeds dimension " + std::to_string(n));
        return Polynomial::variable(n, idx - 1);
    }
    c.fail("expected a number, variable or '('");
}

Polynomial poly_power(Cursor& c, std::size_t n) {
    Polynomial base = poly_atom(c, n);
    if (c.accept('^')) {
        unsigned long e = c.integer();
        if (e > 64) c.fail("exponent too large");
        return base.pow(static_cast<unsigned>(e));
    }
    return base;
}

Polynomial poly_unary(Cursor& c, std::size_t n) {
    if (c.accept('-')) return -poly_unary(c, n);
    if (c.accept('+')) return poly_unary(c, n);
    return poly_power(c, n);
}

Polynomial poly_term(Cursor& c, std::size_t n) {
    Polynomial p = poly_unary(c, n);
    while (true) {
        if (c.accept('*')) {
            p = p * poly_unary(c, n);
        } else if (c.peek() == '/') {
            std::size_t at = c.pos();
            c.accept('/');
            Polynomial d = poly_unary(c, n);
            if (!d.is_constant() || d.is_zero()) c.fail_at(at, "division by a non-constant or zero");
            p = p * (Rational(1) / d.constant_term());
        } else {
            return p;
        }
    }
}

Polynomial poly_expr(Cursor& c, std::size_t n) {
    Polynomial p = poly_term(c, n);
    while (true) {
        if (c.accept('+')) p = p + poly_term(c, n);
        else if (c.accept('-')) p = p - poly_term(c, n);
        else return p;
    }
}

// ---- real scalars ------------------------------------------------------

double scalar_expr(Cursor& c);

double scalar_atom(Cursor& c) {
    if (c.accept('(')) {
        double v = scalar_expr(c);
        c.expect(')');
        return v;
    }
    if (c.at_number()) {
        std::string lex;
        c.number(&lex);
        return std::strtod(lex.c_str(), nullptr);
    }
    std::size_t at = c.pos();
    if (std::isalpha(static_cast<unsigned char>(c.peek()))) {
        std::string id = c.identifier();
        if (id == "pi") return std::numbers::pi;
        c.fail_at(at, "unknown constant '" + id + "'");
    }
    c.fail("expected a number");
}

double scalar_unary(Cursor& c) {
    if (c.accept('-')) return -scalar_unary(c);
    if (c.accept('+')) return scalar_unary(c);
    return scalar_atom(c);
}

double scalar_term(Cursor& c) {
    double v = scalar_unary(c);
    while (true) {
        if (c.accept('*')) v *= scalar_unary(c);
        else if (c.accept('/')) v /= scalar_unary(c);
        else return v;
    }
}

double scalar_expr(Cursor& c) {
    double v = scalar_term(c);
    while (true) {
        if (c.accept('+')) v += scalar_term(c);
        else if (c.accept('-')) v -= scalar_term(c);
        else return v;
    }
}

double scalar(Cursor& c) {
    std::size_t at = c.pos();
    double v = scalar_expr(c);
    if (!std::isfinite(v)) c.fail_at(at, "value is not finite");
    return v;
}

std::vector<double> scalar_list(Cursor& c) {
    std::vector<double> out{scalar(c)};
    while (c.accept(',')) out.push_back(scalar(c));
    return out;
}

std::vector<std::string> name_list(Cursor& c) {
    std::vector<std::string> out;
    if (c.at_end()) return out;
    out.push_back(c.identifier());
    while (c.accept(',')) out.push_back(c.identifier());
    return out;
}

Point tuple(Cursor& c, std::size_t n) {
    std::size_t at = c.pos();
    c.expect('(');
    Point p = scalar_list(c);
    c.expect(')');
    if (p.size() != n) c.fail_at(at, "point needs " + std::to_string(n) + " coordinates");
    return p;
}

std::uint64_t count_value(Cursor& c) {
    std::size_t at = c.pos();
    double v = scalar(c);
    if (v < 0 || v != std::floor(v) || v > 9.0e15) c.fail_at(at, "expected a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

// ---- document ----------------------------------------------------------

struct Located {
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Line {
    std::string text;  // comment stripped
    std::size_t number;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
    Cursor c(text, 1);
    Polynomial p = poly_expr(c, nvars);
    c.expect_end();
    return p;
}

SystemSpec parse_spec(std::string_view text) {
    std::vector<Line> lines;
    {
        std::size_t start = 0, number = 1;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            std::string_view raw = text.substr(start, end - start);
            if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
            std::size_t hash = raw.find('#');
            if (hash != std::string_view::npos) raw = raw.substr(0, hash);
            lines.push_back({std::string(raw), number++});
            if (end == text.size()) break;
            start = end + 1;
        }
    }

    std::string section;
    std::set<std::string> seen_sections;
    std::set<std::string> seen_keys;

    std::optional<std::size_t> dim;
    Located dim_at;
    std::map<std::size_t, double> periods;
    std::vector<Constraint> constraints;
    std::vector<std::pair<std::string, PolyVectorField>> fields;
    std::map<std::string, std::size_t> field_index;

    std::optional<std::string> kind;
    Located kind_at;
    std::optional<std::string> drift;
    Located drift_at;
    std::optional<std::vector<std::string>> inputs;
    Located inputs_at;
    std::optional<std::vector<std::pair<double, double>>> box;
    Located box_at;
    std::optional<std::vector<std::string>> controls;
    Located controls_at;
    SpecParams params;
    std::size_t last_line = lines.empty() ? 1 : lines.back().number;

    for (const auto& ln : lines) {
        Cursor c(ln.text, ln.number);
        if (c.at_end()) continue;
        if (c.accept('[')) {
            std::size_t at = c.pos();
            std::string name = c.identifier();
            c.expect(']');
            c.expect_end();
            static const std::set<std::string> known{"space", "fields", "system", "params"};
            if (!known.count(name)) c.fail_at(at, "unknown section '" + name + "'");
            if (!seen_sections.insert(name).second) c.fail_at(at, "duplicate section '" + name + "'");
            if (name != "space" && !dim) c.fail_at(at, "the [space] section with dim must come first");
            section = name;
            continue;
        }
        if (section.empty()) c.fail("expected a section header");

        std::size_t key_at = c.pos();
        std::string key = c.identifier();
        Located here{ln.number, key_at + 1};
        auto unique = [&](const std::string& k) {
            if (!seen_keys.insert(section + "." + k).second) c.fail_at(key_at, "duplicate key '" + k + "'");
        };

        if (section == "space") {
            if (key == "dim") {
                unique(key);
                c.expect('=');
                std::size_t at = c.pos();
                unsigned long d = c.integer();
                if (d == 0 || d > 64) c.fail_at(at, "dim must be between 1 and 64");
                c.expect_end();
                dim = d;
                dim_at = here;
            } else if (key == "period") {
                if (!dim) c.fail_at(key_at, "dim must be declared before periods");
                std::size_t at = c.pos();
                std::string var = c.identifier();
                std::size_t idx = 0;
                if (var.size() > 1 && var[0] == 'x' && var.size() < 8 &&
                    std::all_of(var.begin() + 1, var.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                    idx = std::stoul(var.substr(1));
                if (idx == 0 || idx > *dim) c.fail_at(at, "unknown coordinate '" + var + "'");
                if (periods.count(idx - 1)) c.fail_at(at, "duplicate period for " + var);
                c.expect('=');
                std::size_t vat = c.pos();
                double v = scalar(c);
                if (!(v > 0.0)) c.fail_at(vat, "period must be positive");
                c.expect_end();
                periods[idx - 1] = v;
            } else if (key == "constraint") {
                if (!dim) c.fail_at(key_at, "dim must be declared before constraints");
                Polynomial lhs = poly_expr(c, *dim);
                Relation rel;
                if (c.accept("<=")) rel = Relation::LessEqual;
                else if (c.accept(">=")) rel = Relation::GreaterEqual;
                else if (c.accept('<')) rel = Relation::Less;
                else if (c.accept('>')) rel = Relation::Greater;
                else c.fail("expected a comparison operator");
                Polynomial rhs = poly_expr(c, *dim);
                c.expect_end();
                constraints.emplace_back(lhs - rhs, rel);
            } else {
                c.fail_at(key_at, "unknown key '" + key + "' in [space]");
            }
        } else if (section == "fields") {
            if (field_index.count(key)) c.fail_at(key_at, "duplicate field name '" + key + "'");
            c.expect('=');
            std::size_t at = c.pos();
            c.expect('[');
            std::vector<Polynomial> comps{poly_expr(c, *dim)};
            while (c.accept(',')) comps.push_back(poly_expr(c, *dim));
            c.expect(']');
            c.expect_end();
            if (comps.size() != *dim)
                c.fail_at(at, "field '" + key + "' has " + std::to_string(comps.size()) +
                                  " components, dim is " + std::to_string(*dim));
            field_index[key] = fields.size();
            fields.emplace_back(key, PolyVectorField(std::move(comps)));
        } else if (section == "system") {
            unique(key);
            c.expect('=');
            if (key == "kind") {
                std::size_t at = c.pos();
                std::string v = c.identifier();
                if (v != "affine" && v != "finite") c.fail_at(at, "kind must be affine or finite");
                kind = v;
                kind_at = here;
            } else if (key == "drift") {
                drift = c.identifier();
                drift_at = here;
            } else if (key == "inputs") {
                inputs = name_list(c);
                inputs_at = here;
            } else if (key == "controls") {
                controls = name_list(c);
                controls_at = here;
            } else if (key == "control_box") {
                std::vector<std::pair<double, double>> b;
                do {
                    std::size_t at = c.pos();
                    c.expect('[');
                    double lo = scalar(c);
                    c.expect(',');
                    double hi = scalar(c);
                    c.expect(']');
                    if (!(lo <= hi)) c.fail_at(at, "control interval is empty");
                    b.emplace_back(lo, hi);
                } while (c.accept(','));
                box = std::move(b);
                box_at = here;
            } else {
                c.fail_at(key_at, "unknown key '" + key + "' in [system]");
            }
            c.expect_end();
        } else if (section == "params") {
            unique(key);
            c.expect('=');
            std::size_t at = c.pos();
            auto positive = [&](double v) {
                if (!(v > 0.0)) c.fail_at(at, key + " must be positive");
                return v;
            };
            if (key == "step") params.step = positive(scalar(c));
            else if (key == "budget") params.budget = count_value(c);
            else if (key == "grid_h") {
                auto v = scalar_list(c);
                for (double h : v) positive(h);
                if (v.size() != 1 && v.size() != *dim) c.fail_at(at, "grid_h needs 1 or dim entries");
                params.grid_h = v;
            } else if (key == "seed") params.seed = count_value(c);
            else if (key == "depth") {
                auto d = count_value(c);
                if (d == 0 || d > 64) c.fail_at(at, "depth must be between 1 and 64");
                params.depth = static_cast<unsigned>(d);
            } else if (key == "max_time") params.max_time = positive(scalar(c));
            else if (key == "max_segments") {
                auto v = count_value(c);
                if (v == 0) c.fail_at(at, "max_segments must be positive");
                params.max_segments = v;
            } else if (key == "radius") {
                auto v = count_value(c);
                if (v > 1000) c.fail_at(at, "radius too large");
                params.radius = static_cast<int>(v);
            } else if (key == "glue_tolerance") params.glue_tolerance = positive(scalar(c));
            else if (key == "window") {
                auto v = scalar_list(c);
                for (double s : v) positive(s);
                if (v.size() != 1 && v.size() != *dim) c.fail_at(at, "window needs 1 or dim entries");
                params.window = v;
            } else if (key == "base_point") {
                auto v = scalar_list(c);
                if (v.size() != *dim) c.fail_at(at, "base_point needs " + std::to_string(*dim) + " coordinates");
                params.base_point = v;
            } else if (key == "samples") {
                std::vector<Point> pts{tuple(c, *dim)};
                while (c.accept(',')) pts.push_back(tuple(c, *dim));
                params.samples = std::move(pts);
            } else if (key == "orbit_period") params.orbit_period = positive(scalar(c));
            else if (key == "orbit_control") params.orbit_control = scalar_list(c);
            else if (key == "covector") {
                auto v = scalar_list(c);
                if (v.size() != *dim) c.fail_at(at, "covector needs " + std::to_string(*dim) + " entries");
                params.covector = v;
            } else {
                c.fail_at(key_at, "unknown key '" + key + "' in [params]");
            }
            c.expect_end();
        }
    }

    auto fail_at = [](const Located& l, const std::string& what) -> void {
        throw ParseError(what, l.line, l.column);
    };
    if (!dim) throw ParseError("missing [space] section with dim", last_line, 1);
    if (!seen_sections.count("system")) throw ParseError("missing [system] section", last_line, 1);
    if (!kind) throw ParseError("missing system kind", last_line, 1);

    StateSpace space(*dim);
    for (const auto& [axis, p] : periods) space.set_period(axis, p);
    for (auto& con : constraints) space.add_constraint(std::move(con));

    auto lookup = [&](const std::string& name, const Located& at) -> const PolyVectorField& {
        auto it = field_index.find(name);
        if (it == field_index.end()) fail_at(at, "unknown field '" + name + "'");
        return fields[it->second].second;
    };

    std::optional<ControlSystem> built;
    if (*kind == "affine") {
        if (controls) fail_at(controls_at, "controls belongs to finite systems");
        if (!drift) fail_at(kind_at, "affine system needs a drift");
        std::vector<std::string> in = inputs.value_or(std::vector<std::string>{});
        std::vector<PolyVectorField> ys;
        for (const auto& name : in) ys.push_back(lookup(name, inputs_at));
        ControlBox cb;
        if (box) {
            if (box->size() != in.size())
                fail_at(box_at, "control_box has " + std::to_string(box->size()) + " intervals for " +
                                    std::to_string(in.size()) + " inputs");
            for (auto [lo, hi] : *box) {
                cb.lo.push_back(lo);
                cb.hi.push_back(hi);
            }
        } else if (!in.empty()) {
            fail_at(inputs_at, "affine system with inputs needs a control_box");
        }
        std::vector<std::string> names{*drift};
        names.insert(names.end(), in.begin(), in.end());
        built = ControlSystem::affine(space, lookup(*drift, drift_at), std::move(ys), std::move(cb),
                                            std::move(names));
    } else {
        if (drift) fail_at(drift_at, "drift belongs to affine systems");
        if (inputs) fail_at(inputs_at, "inputs belong to affine systems");
        if (box) fail_at(box_at, "control_box belongs to affine systems");
        if (!controls || controls->empty())
            fail_at(controls ? controls_at : kind_at, "finite system needs a nonempty controls list");
        std::vector<PolyVectorField> fs;
        for (const auto& name : *controls) fs.push_back(lookup(name, controls_at));
        built = ControlSystem::finite(space, std::move(fs), *controls);
    }
    return SystemSpec{std::move(*built), std::move(fields), std::move(params)};
}

namespace {

std::string real(double v) {
    // Prefer p*pi/q when that reproduces the value exactly.
    for (int q = 1; v != 0.0 && q <= 12; ++q) {
        double p = std::round(v * q / std::numbers::pi);
        if (p == 0.0 || std::abs(p) > 1000 || p * std::numbers::pi / q != v) continue;
        std::string s = p == 1.0 ? "pi" : p == -1.0 ? "-pi" : std::to_string(static_cast<long>(p)) + "*pi";
        return q == 1 ? s : s + "/" + std::to_string(q);
    }
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string real_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + real(v[i]);
    return s;
}

}  // namespace

std::string format_spec(const SystemSpec& spec) {
    const ControlSystem& sys = spec.system;
    const StateSpace& space = sys.space();
    std::ostringstream os;
    os << "[space]\n";
    os << "dim = " << space.dim() << "\n";
    for (std::size_t i = 0; i < space.dim(); ++i)
        if (space.period(i)) os << "period x" << (i + 1) << " = " << real(*space.period(i)) << "\n";
    for (const auto& c : space.constraints()) os << "constraint " << c.to_string() << "\n";

    std::vector<std::pair<std::string, PolyVectorField>> fields = spec.fields;
    if (fields.empty()) {
        const auto& gens = sys.generating_fields();
        const auto& names = sys.names();
        for (std::size_t i = 0; i < gens.size(); ++i) fields.emplace_back(names[i], gens[i]);
    }
    os << "\n[fields]\n";
    for (const auto& [name, f] : fields) os << name << " = " << f.to_string() << "\n";

    os << "\n[system]\n";
    const auto& names = sys.names();
    if (sys.is_affine()) {
        os << "kind = affine\n";
        os << "drift = " << names.front() << "\n";
        os << "inputs = ";
        for (std::size_t j = 1; j < names.size(); ++j) os << (j > 1 ? ", " : "") << names[j];
        os << "\n";
        if (!sys.inputs().empty()) {
            os << "control_box = ";
            for (std::size_t j = 0; j < sys.box().dim(); ++j)
                os << (j ? ", " : "") << "[" << real(sys.box().lo[j]) << ", " << real(sys.box().hi[j]) << "]";
            os << "\n";
        }
    } else {
        os << "kind = finite\n";
        os << "controls = ";
        for (std::size_t j = 0; j < names.size(); ++j) os << (j ? ", " : "") << names[j];
        os << "\n";
    }

    const SpecParams& p = spec.params;
    std::ostringstream ps;
    if (p.step) ps << "step = " << real(*p.step) << "\n";
    if (p.budget) ps << "budget = " << *p.budget << "\n";
    if (p.grid_h) ps << "grid_h = " << real_list(*p.grid_h) << "\n";
    if (p.seed) ps << "seed = " << *p.seed << "\n";
    if (p.depth) ps << "depth = " << *p.depth << "\n";
    if (p.max_time) ps << "max_time = " << real(*p.max_time) << "\n";
    if (p.max_segments) ps << "max_segments = " << *p.max_segments << "\n";
    if (p.radius) ps << "radius = " << *p.radius << "\n";
    if (p.glue_tolerance) ps << "glue_tolerance = " << real(*p.glue_tolerance) << "\n";
    if (p.window) ps << "window = " << real_list(*p.window) << "\n";
    if (p.base_point) ps << "base_point = " << real_list(*p.base_point) << "\n";
    if (p.samples) {
        ps << "samples = ";
        for (std::size_t i = 0; i < p.samples->size(); ++i)
            ps << (i ? ", " : "") << "(" << real_list((*p.samples)[i]) << ")";
        ps << "\n";
    }
    if (p.orbit_period) ps << "orbit_period = " << real(*p.orbit_period) << "\n";
    if (p.orbit_control) ps << "orbit_control = " << real_list(*p.orbit_control) << "\n";
    if (p.covector) ps << "covector = " << real_list(*p.covector) << "\n";
    if (!ps.str().empty()) os << "\n[params]\n" << ps.str();
    return os.str();
}

SystemSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

}  // namespace orbitreach
