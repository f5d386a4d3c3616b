#include "pmc/poly.hpp"

#include <sstream>

namespace pmc {

Poly Poly::monomial(int deg, Rational c) {
    if (deg < 0) throw std::invalid_argument("monomial degree must be >= 0");
    if (c == 0) return Poly();
    std::vector<Rational> v(static_cast<size_t>(deg) + 1, Rational(0));
    v.back() = std::move(c);
    return Poly(std::move(v));
}

Poly Poly::linear_root(const Rational& root) {
    return Poly(std::vector<Rational>{-root, Rational(1)});
}

const Rational& Poly::leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

Rational Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
    return c_[static_cast<size_t>(i)];
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rational> v(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            v[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(v));
}

Poly Poly::operator*(const Rational& k) const {
    if (k == 0) return Poly();
    Poly r = *this;
    for (auto& c : r.c_) c *= k;
    return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly q, r = *this;
    const int dd = d.degree();
    const Rational& lc = d.leading();
    std::vector<Rational> qc(r.degree() >= dd ? static_cast<size_t>(r.degree() - dd) + 1 : 0,
                             Rational(0));
    while (!r.is_zero() && r.degree() >= dd) {
        int k = r.degree() - dd;
        Rational f = r.leading() / lc;
        qc[static_cast<size_t>(k)] = f;
        r = r - d * Poly::monomial(k, f);
    }
    return {Poly(std::move(qc)), r};
}

Poly Poly::exact_div(const Poly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rational> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational(static_cast<long long>(i));
    return Poly(std::move(v));
}

Poly Poly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative polynomial power");
    Poly r = Poly::one(), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Rational Poly::eval(const Rational& p) const {
    Rational r(0);
    for (size_t i = c_.size(); i-- > 0;) r = r * p + c_[i];
    return r;
}

Poly Poly::shift(const Rational& a) const {
    // Horner in (y + a).
    Poly r;
    Poly lin(std::vector<Rational>{a, Rational(1)});
    for (size_t i = c_.size(); i-- > 0;) r = r * lin + Poly(c_[i]);
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * (Rational(1) / leading());
}

int Poly::root_multiplicity(const Rational& p) const {
    if (is_zero()) throw std::domain_error("root multiplicity of zero polynomial");
    int m = 0;
    Poly lin = Poly::linear_root(p), cur = *this;
    while (cur.eval(p) == 0) {
        cur = cur.exact_div(lin);
        ++m;
    }
    return m;
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly squarefree_part(const Poly& p) {
    if (p.is_zero()) return p;
    if (p.degree() == 0) return Poly::one();
    return p.exact_div(poly_gcd(p, p.derivative())).monic();
}

bool divides(const Poly& d, const Poly& p) {
    if (d.is_zero()) return p.is_zero();
    return p.divmod(d).second.is_zero();
}

// Power series inverse of q (q(0) != 0) modulo y^len.
std::vector<Rational> series_inverse(const Poly& q, int len) {
    std::vector<Rational> inv(static_cast<size_t>(len), Rational(0));
    Rational q0 = q.coeff(0);
    if (q0 == 0) throw std::domain_error("series inverse of non-unit");
    inv[0] = Rational(1) / q0;
    for (int k = 1; k < len; ++k) {
        Rational acc(0);
        for (int i = 1; i <= k; ++i) acc += q.coeff(i) * inv[static_cast<size_t>(k - i)];
        inv[static_cast<size_t>(k)] = -acc / q0;
    }
    return inv;
}

std::string poly_to_string(const Poly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    // Clear denominators so the printed coefficients are integers.
    Integer l(1);
    for (const auto& c : p.coeffs()) l = lcm(l, denominator(c));
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        Rational ci = p.coeff(i) * Rational(l);
        if (ci == 0) continue;
        Integer c = numerator(ci);
        if (first) {
            if (c < 0) { os << "-"; c = -c; }
            first = false;
        } else {
            os << (c < 0 ? "-" : "+");
            if (c < 0) c = -c;
        }
        if (i == 0 || c != 1) os << c.str();
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    std::string body = os.str();
    if (l == 1) return body;
    return "(" + body + ")/" + l.str();
}

} // namespace pmc
