#ifndef PMC_DEFORM_HPP
#define PMC_DEFORM_HPP

#include "pmc/ribbon.hpp"
#include "pmc/rng.hpp"

namespace pmc {

// Per-chart factor r_j of a local reducible deformation: either the unit
// marker r_j = 1, or a marked finite point x_j (contained in this chart
// only), a multiplicity p_j >= 1 and p_j distinct nonzero scalars lambda_m,
// defining r_j = prod (tau + lambda_m t) with tau = x - x_j. Its restriction
// to C is rho_j = tau^{p_j}.
struct FactorDatum {
    int chart = 0;
    bool marked = false;
    Rational point;
    int mult = 1;
    std::vector<Rational> lambdas;

    static FactorDatum unit(int chart) {
        FactorDatum f;
        f.chart = chart;
        return f;
    }
    static FactorDatum at(int chart, Rational point, int mult);
    static FactorDatum at(int chart, Rational point, int mult, std::vector<Rational> lambdas);

    Poly rho() const; // (x - point)^mult, or 1
};

// An element of the algebra of pairs on one chart: the triple (a, b, beta)
// stands for the pair (a + b t, a + (b + r_j beta) t) with t^2 = 0; only
// rho_j = r_j|_C enters the truncated arithmetic.
struct PairElement {
    int chart = 0;
    RationalFunction a, b, beta;

    static PairElement pi(const Chart& home, int chart);
    static PairElement one(const Chart& home, int chart);

    bool operator==(const PairElement& o) const {
        return chart == o.chart && a == o.a && b == o.b && beta == o.beta;
    }
    std::string str() const;
};

PairElement pair_add(const PairElement& u, const PairElement& v);
PairElement pair_mul(const PairElement& u, const PairElement& v);

// The gluing data of a local reducible deformation: a cover, one factor per
// chart, and the two component cocycles mu1, mu2 (each an untwisted additive
// cocycle, i.e. a double-curve cocycle with nu = 1).
class LocalDeformationDatum {
public:
    LocalDeformationDatum(Cover cover, std::vector<FactorDatum> factors,
                          std::map<PairKey, RationalFunction> mu1,
                          std::map<PairKey, RationalFunction> mu2);

    const Cover& cover() const { return cover_; }
    const std::vector<FactorDatum>& factors() const { return factors_; }
    const AdditiveCocycle& mu1() const { return mu1_; }
    const AdditiveCocycle& mu2() const { return mu2_; }
    RationalFunction rho(int chart, const Chart& home) const;
    int divisor_degree() const; // sum of the marked multiplicities

private:
    Cover cover_;
    std::vector<FactorDatum> factors_;
    AdditiveCocycle mu1_, mu2_;
};

// Transition of the pair algebra from chart j to chart k over the overlap
// (equation-(1) gluing):
//   a' = a,  b' = mu1_jk a_x + b,
//   beta' = ((mu2_jk - mu1_jk) a_x + rho_j beta) / rho_k.
PairElement glue_transition(const LocalDeformationDatum& d, int j, int k,
                            const PairElement& u);

// The quotient by pi: the primitive double curve with cocycles
// nu_jk = rho_j / rho_k and mu_jk = (mu2_jk - mu1_jk) / rho_k.
DoubleCurve quotient_by_pi(const LocalDeformationDatum& d);

// Builds the local reducible deformation of a target double curve in divisor
// normal form (nu_jk = rho_j/rho_k with every marked point confined to one
// chart and chart 0 unmarked): component 1 carries the zero cocycle and
// component 2 the cocycle rho_k * mu_jk. The quotient reproduces the target
// bitwise.
LocalDeformationDatum build_local_deformation(const DoubleCurve& target);

// Divisor-normal-form constructors shared by tests and the CLI: marked
// points x_1..x_m with multiplicities live in charts 1..m; chart 0 is the
// complement of the support and contains infinity.
Cover divisor_cover(const std::vector<std::pair<Rational, int>>& divisor);
DoubleCurve divisor_ribbon(const std::vector<std::pair<Rational, int>>& divisor,
                           const std::vector<RationalFunction>& mu_chain);

// ---------------------------------------------------------------------------
// The C x A^1 gluing model: two copies of the trivial family glued along C
// and the vertical lines over marked points P_1..P_m, truncated at t^N.

// Polynomial in x and t, truncated at t^N: coefficient k is the t^k part.
class TruncBiv {
public:
    TruncBiv(int trunc) : c_(static_cast<size_t>(trunc)) {
        if (trunc < 1) throw std::invalid_argument("truncation must be >= 1");
    }
    static TruncBiv from_poly(Poly p, int trunc, int tpow = 0);

    int trunc() const { return static_cast<int>(c_.size()); }
    const Poly& coeff(int k) const { return c_.at(static_cast<size_t>(k)); }
    Poly& coeff(int k) { return c_.at(static_cast<size_t>(k)); }
    bool is_zero() const;

    TruncBiv operator+(const TruncBiv& o) const;
    TruncBiv operator-(const TruncBiv& o) const;
    TruncBiv operator*(const TruncBiv& o) const;
    TruncBiv operator*(const Rational& k) const;
    bool operator==(const TruncBiv& o) const { return c_ == o.c_; }

    TruncBiv times_t() const;
    // Strips one power of t; requires the constant coefficient to vanish.
    TruncBiv div_t() const;
    TruncBiv truncated(int trunc) const;
    std::vector<Rational> eval_x(const Rational& x0) const; // t-polynomial
    // Exact division by a polynomial in x (throws if any coefficient fails).
    TruncBiv exact_div_poly(const Poly& d) const;

    std::string str() const;

private:
    std::vector<Poly> c_;
};

struct ExampleModel {
    std::vector<Rational> points; // distinct marked points P_i
    int trunc = 4;

    Poly lambda() const; // prod (x - P_i)
};

struct ExampleModelElement {
    TruncBiv phi1, phi2;
};

// Membership in O of the gluing: agreement on C (t = 0) and along each
// vertical line {P_i} x A^1, all modulo t^N.
bool example_model_membership(const ExampleModel& model, const ExampleModelElement& e);

struct IdealStructureReport {
    bool ok = false;
    int p = 0;                       // order of the one-sided generator
    std::string lambda;              // prod (x - P_i)
    bool generator_member = false;   // (t lambda, 0) and (0, t lambda) lie in O
    bool order_minimal = false;      // no member (u, 0) with u|_C != 0
    bool uniqueness = false;         // lambda divides every (0, t lambda')
    bool q_equals_p = false;
    bool j1_in_pi = false;           // t^2-divisible members are pi * member
    std::map<std::string, int> point_multiplicity; // m_x at each marked point
    std::string str() const;
};

// Verifies the local structure of the ideal of C in the gluing model at the
// given truncation, on deterministic randomized samples.
IdealStructureReport ideal_structure_check(const ExampleModel& model, Rng& rng,
                                           int samples = 8);

} // namespace pmc

#endif
