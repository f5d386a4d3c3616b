#ifndef PMC_FUNCRING_HPP
#define PMC_FUNCRING_HPP

#include "pmc/poly.hpp"
#include <set>
#include <string>
#include <utility>

namespace pmc {

struct chart_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

// A closed point of the projective line: a rational coordinate or infinity.
class Point {
public:
    Point() : inf_(false), v_(0) {}
    explicit Point(Rational v) : inf_(false), v_(std::move(v)) {}
    static Point infinity() { Point p; p.inf_ = true; return p; }
    static Point of(long long n, long long d = 1) { return Point(Rational(n, d)); }

    bool is_infinity() const { return inf_; }
    const Rational& value() const {
        if (inf_) throw std::domain_error("coordinate of the point at infinity");
        return v_;
    }

    bool operator==(const Point& o) const { return inf_ == o.inf_ && (inf_ || v_ == o.v_); }
    bool operator!=(const Point& o) const { return !(*this == o); }
    // Finite points in coordinate order, infinity last.
    bool operator<(const Point& o) const {
        if (inf_ != o.inf_) return !inf_;
        if (inf_) return false;
        return v_ < o.v_;
    }

    std::string str() const { return inf_ ? "inf" : to_string(v_); }
    static Point parse(const std::string& s);

private:
    bool inf_;
    Rational v_;
};

// An affine chart of the projective line: the complement of a finite set of
// points. Any two charts intersect. The coordinate is always the global x.
class Chart {
public:
    Chart() = default;
    Chart(std::string id, std::set<Point> excluded)
        : id_(std::move(id)), excluded_(std::move(excluded)) {}

    const std::string& id() const { return id_; }
    const std::set<Point>& excluded() const { return excluded_; }
    bool contains(const Point& p) const { return excluded_.find(p) == excluded_.end(); }
    bool contains_infinity() const { return contains(Point::infinity()); }

    // Complement of the union of the excluded sets.
    Chart intersect(const Chart& o) const;

    // Charts are compared by their point sets; the id is cosmetic.
    bool operator==(const Chart& o) const { return excluded_ == o.excluded_; }
    bool operator!=(const Chart& o) const { return !(*this == o); }

    std::string str() const;

private:
    std::string id_;
    std::set<Point> excluded_;
};

// An exact rational function regular on its chart (finite poles confined to
// the excluded set; behaviour at infinity is tracked by degree bookkeeping).
// Stored reduced with monic denominator, so equality is syntactic.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Poly::one()) {}
    RationalFunction(Poly num, Poly den, Chart home);

    static RationalFunction from_poly(Poly p, Chart home) {
        return RationalFunction(std::move(p), Poly::one(), std::move(home));
    }
    static RationalFunction constant(Rational c, Chart home) {
        return from_poly(Poly(std::move(c)), std::move(home));
    }
    static RationalFunction x(Chart home) { return from_poly(Poly::x(), std::move(home)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const Chart& home() const { return home_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator-() const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator*(const Rational& k) const;
    // The quotient must again be regular on the chart; throws otherwise.
    RationalFunction operator/(const RationalFunction& o) const;

    // Syntactic equality of the normalized representation (homes must match).
    bool operator==(const RationalFunction& o) const;
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }
    // Equality as rational functions, ignoring homes.
    bool same_function(const RationalFunction& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }

    bool is_unit() const;
    int vanishing_order(const Point& p) const;
    Rational evaluate(const Point& p) const;
    RationalFunction derivative() const;
    RationalFunction pow(int e) const;

    // Reinterprets the function on a smaller chart (more excluded points).
    RationalFunction restricted(const Chart& sub) const;

    // On a chart excluding {0, inf}: splits a Laurent polynomial into the
    // part with nonnegative powers of x and the part with negative powers.
    std::pair<RationalFunction, RationalFunction> laurent_split() const;

    std::string str() const;

private:
    void normalize();
    void check_poles() const;
    Poly num_, den_;
    Chart home_;
};

// Parses expressions such as "(x^2-1)/(x-1)", "x^2+3x-1/2", "5".
// The result must be regular on the given chart.
RationalFunction parse_rational_function(const std::string& s, const Chart& home);

} // namespace pmc

#endif
