#include "pmc/funcring.hpp"

#include <sstream>

namespace pmc {

Point Point::parse(const std::string& s) {
    if (s == "inf" || s == "oo" || s == "infinity") return Point::infinity();
    return Point(parse_rational(s));
}

Chart Chart::intersect(const Chart& o) const {
    std::set<Point> ex = excluded_;
    ex.insert(o.excluded_.begin(), o.excluded_.end());
    return Chart(id_ + "&" + o.id_, std::move(ex));
}

std::string Chart::str() const {
    std::ostringstream os;
    os << (id_.empty() ? "chart" : id_) << "{excl:";
    bool first = true;
    for (const auto& p : excluded_) {
        if (!first) os << ",";
        os << p.str();
        first = false;
    }
    os << "}";
    return os.str();
}

RationalFunction::RationalFunction(Poly num, Poly den, Chart home)
    : num_(std::move(num)), den_(std::move(den)), home_(std::move(home)) {
    if (den_.is_zero()) throw std::invalid_argument("zero denominator");
    normalize();
    check_poles();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::one();
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.exact_div(g);
        den_ = den_.exact_div(g);
    }
    Rational lc = den_.leading();
    if (lc != 1) {
        den_ = den_ * (Rational(1) / lc);
        num_ = num_ * (Rational(1) / lc);
    }
}

void RationalFunction::check_poles() const {
    // Finite poles must lie in the excluded set: the squarefree part of the
    // denominator has to divide prod (x - e) over the finite excluded points.
    if (den_.degree() == 0) return;
    Poly prod = Poly::one();
    for (const auto& p : home_.excluded())
        if (!p.is_infinity()) prod = prod * Poly::linear_root(p.value());
    if (!divides(squarefree_part(den_), prod))
        throw std::invalid_argument("denominator vanishes inside the chart: (" +
                                    poly_to_string(den_) + ") on " + home_.str());
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    if (home_ != o.home_) throw chart_mismatch("adding functions on different charts");
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_, home_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    return *this + (-o);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    if (home_ != o.home_) throw chart_mismatch("multiplying functions on different charts");
    return RationalFunction(num_ * o.num_, den_ * o.den_, home_);
}

RationalFunction RationalFunction::operator*(const Rational& k) const {
    return RationalFunction(num_ * k, den_, home_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (home_ != o.home_) throw chart_mismatch("dividing functions on different charts");
    if (o.is_zero()) throw std::domain_error("division by the zero function");
    return RationalFunction(num_ * o.den_, den_ * o.num_, home_);
}

bool RationalFunction::operator==(const RationalFunction& o) const {
    if (home_ != o.home_) throw chart_mismatch("comparing functions on different charts");
    return num_ == o.num_ && den_ == o.den_;
}

bool RationalFunction::is_unit() const {
    if (num_.is_zero()) return false;
    Poly prod = Poly::one();
    for (const auto& p : home_.excluded())
        if (!p.is_infinity()) prod = prod * Poly::linear_root(p.value());
    if (!divides(squarefree_part(num_), prod)) return false;
    if (home_.contains_infinity() && num_.degree() < den_.degree()) return false;
    return true;
}

int RationalFunction::vanishing_order(const Point& p) const {
    if (num_.is_zero()) throw std::domain_error("vanishing order of the zero function");
    if (p.is_infinity()) return den_.degree() - num_.degree();
    return num_.root_multiplicity(p.value()) - den_.root_multiplicity(p.value());
}

Rational RationalFunction::evaluate(const Point& p) const {
    if (p.is_infinity()) {
        if (num_.degree() > den_.degree()) throw pole_error("pole at infinity");
        if (num_.degree() < den_.degree()) return Rational(0);
        return num_.leading() / den_.leading();
    }
    Rational dv = den_.eval(p.value());
    if (dv == 0) throw pole_error("pole at " + p.str());
    return num_.eval(p.value()) / dv;
}

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(),
                            den_ * den_, home_);
}

RationalFunction RationalFunction::pow(int e) const {
    if (e < 0) {
        RationalFunction inv = RationalFunction(den_, num_, home_);
        return inv.pow(-e);
    }
    RationalFunction r = constant(Rational(1), home_);
    RationalFunction b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

RationalFunction RationalFunction::restricted(const Chart& sub) const {
    return RationalFunction(num_, den_, sub);
}

std::pair<RationalFunction, RationalFunction> RationalFunction::laurent_split() const {
    // Denominator must be a monomial x^m (monic after normalization).
    int m = den_.degree();
    if (den_ != Poly::monomial(m, Rational(1)) && !(m == 0 && den_ == Poly::one()))
        throw std::invalid_argument("laurent_split: denominator is not a monomial");
    std::vector<Rational> plus, minus; // minus holds coefficients of x^{-1},...
    for (int i = 0; i <= num_.degree(); ++i) {
        int e = i - m;
        if (e >= 0) {
            if (static_cast<int>(plus.size()) <= e) plus.resize(static_cast<size_t>(e) + 1, Rational(0));
            plus[static_cast<size_t>(e)] = num_.coeff(i);
        } else {
            size_t k = static_cast<size_t>(-e);
            if (minus.size() < k) minus.resize(k, Rational(0));
            minus[k - 1] = num_.coeff(i);
        }
    }
    RationalFunction fplus = from_poly(Poly(std::move(plus)), home_);
    // Rebuild the negative part as num/x^d.
    int d = static_cast<int>(minus.size());
    std::vector<Rational> mn(minus.size(), Rational(0));
    for (size_t k = 0; k < minus.size(); ++k)
        mn[minus.size() - 1 - k] = minus[k]; // coefficient of x^{d-1-k} over x^d
    RationalFunction fminus(Poly(std::move(mn)), Poly::monomial(d, Rational(1)), home_);
    return {fplus, fminus};
}

std::string RationalFunction::str() const {
    if (num_.is_zero()) return "0";
    // Scale so both polynomials have integer coefficients.
    Integer l(1);
    for (const auto& c : num_.coeffs()) l = lcm(l, denominator(c));
    for (const auto& c : den_.coeffs()) l = lcm(l, denominator(c));
    Poly n = num_ * Rational(l), d = den_ * Rational(l);
    Integer g(0);
    for (const auto& c : n.coeffs()) g = gcd(g, numerator(c));
    for (const auto& c : d.coeffs()) g = gcd(g, numerator(c));
    if (g > 1) {
        n = n * Rational(Integer(1), g);
        d = d * Rational(Integer(1), g);
    }
    auto wrap = [](const Poly& p) {
        std::string s = poly_to_string(p);
        // Atomic = an integer or a bare power of x; anything else needs
        // parentheses so "a/bx^2" cannot reparse as (a/b)*x^2.
        bool digits = !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
        bool xpow = s == "x" || (s.rfind("x^", 0) == 0 &&
                    s.find_first_not_of("0123456789", 2) == std::string::npos);
        return (digits || xpow) ? s : "(" + s + ")";
    };
    if (d == Poly::one()) return poly_to_string(n);
    return wrap(n) + "/" + wrap(d);
}

namespace {

// Minimal recursive-descent parser over Q(x).
struct Parser {
    const std::string& s;
    size_t i = 0;
    const Chart& home;

    explicit Parser(const std::string& str, const Chart& h) : s(str), home(h) {}

    void skip() { while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i; }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }

    RationalFunction expr() {
        RationalFunction v = term();
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }

    RationalFunction term() {
        RationalFunction v = factor();
        for (;;) {
            skip();
            if (eat('*')) { v = v * factor(); continue; }
            if (eat('/')) { v = v / factor(); continue; }
            // implicit multiplication: "3x", "2(x+1)"
            if (i < s.size() && (s[i] == 'x' || s[i] == '(')) { v = v * factor(); continue; }
            return v;
        }
    }

    RationalFunction factor() {
        skip();
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        RationalFunction base = atom();
        skip();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            size_t j = i;
            while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i) throw std::invalid_argument("exponent expected in: " + s);
            int e = std::stoi(s.substr(i, j - i));
            i = j;
            return base.pow(neg ? -e : e);
        }
        return base;
    }

    RationalFunction atom() {
        skip();
        if (i >= s.size()) throw std::invalid_argument("unexpected end of expression: " + s);
        if (s[i] == '(') {
            ++i;
            RationalFunction v = expr();
            if (!eat(')')) throw std::invalid_argument("missing ')' in: " + s);
            return v;
        }
        if (s[i] == 'x') {
            ++i;
            return RationalFunction::x(home);
        }
        size_t j = i;
        while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw std::invalid_argument("unexpected character '" + std::string(1, s[i]) +
                                                "' in: " + s);
        Rational v(parse_rational(s.substr(i, j - i)));
        i = j;
        return RationalFunction::constant(v, home);
    }
};

} // namespace

RationalFunction parse_rational_function(const std::string& s, const Chart& home) {
    Parser p(s, home);
    RationalFunction v = p.expr();
    p.skip();
    if (p.i != s.size())
        throw std::invalid_argument("trailing input in rational function: " + s);
    return v;
}

} // namespace pmc
