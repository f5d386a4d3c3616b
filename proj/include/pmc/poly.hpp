#ifndef PMC_POLY_HPP
#define PMC_POLY_HPP

#include "pmc/rational.hpp"
#include <vector>
#include <optional>

namespace pmc {

// Dense univariate polynomial over the rationals. The zero polynomial has an
// empty coefficient vector and degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(Rational c) { if (c != 0) c_.push_back(std::move(c)); }
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Rational(1)); }
    static Poly x() { return monomial(1, Rational(1)); }
    static Poly monomial(int deg, Rational c);
    // (x - root)
    static Poly linear_root(const Rational& root);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& leading() const;
    Rational coeff(int i) const;
    const std::vector<Rational>& coeffs() const { return c_; }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& k) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }

    // Euclidean division: returns {quotient, remainder}.
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    // Division that must be exact; throws std::domain_error otherwise.
    Poly exact_div(const Poly& d) const;

    Poly derivative() const;
    Poly pow(int e) const;
    Rational eval(const Rational& p) const;
    // Taylor rebase: returns q with q(y) = p(y + a).
    Poly shift(const Rational& a) const;

    Poly monic() const;
    // Multiplicity of the root p (0 if p is not a root).
    int root_multiplicity(const Rational& p) const;

private:
    void trim();
    std::vector<Rational> c_; // c_[i] is the coefficient of x^i
};

// Monic gcd via the Euclidean algorithm.
Poly poly_gcd(Poly a, Poly b);
// p / gcd(p, p'): same roots as p, each simple.
Poly squarefree_part(const Poly& p);
bool divides(const Poly& d, const Poly& p);

// Rendering and parsing of integer-cleared polynomial expressions such as
// "x^2-1" or "3x^2+x/2". Parsing accepts +, -, *, /, ^, parentheses.
std::string poly_to_string(const Poly& p, const std::string& var = "x");

// Coefficients of 1/q as a power series modulo y^len (q(0) != 0).
std::vector<Rational> series_inverse(const Poly& q, int len);

} // namespace pmc

#endif
