#ifndef PMC_SPECTRUM_HPP
#define PMC_SPECTRUM_HPP

#include "pmc/deform.hpp"
#include <optional>

namespace pmc {

// Affine linear form a X + b Y + c on the plane.
struct LinForm {
    Rational a, b, c;

    LinForm() : a(0), b(0), c(0) {}
    LinForm(Rational a_, Rational b_, Rational c_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {}

    bool is_zero() const { return a == 0 && b == 0 && c == 0; }
    LinForm operator-(const LinForm& o) const { return {a - o.a, b - o.b, c - o.c}; }
    Rational eval(const Rational& X, const Rational& Y) const { return a * X + b * Y + c; }
    bool operator==(const LinForm& o) const { return a == o.a && b == o.b && c == o.c; }
    std::string str() const;
};

LinForm parse_linear_form(const std::string& s);

// A family of n moving lines F_i = f + t h_i over the base line C = {f = 0}.
// Each component carries the parametrization
//   P_i(s, t) = p0 + g_i(t) (a, b) + s (b + t b_i, -(a + t a_i)),
// rational in t, which restricts at t = 0 to the common parametrization
// p(s) = p0 + s (b, -a) of C. Functions on a component are polynomials in s
// with t-expansions truncated at t^N.
class PlaneLineFamily {
public:
    PlaneLineFamily(LinForm f, std::vector<LinForm> h);

    int components() const { return static_cast<int>(h_.size()); }
    const LinForm& f() const { return f_; }
    const LinForm& h(int i) const { return h_.at(static_cast<size_t>(i)); }

    // Restriction of a linear form to component i, truncated at t^N; the
    // result is affine in s.
    TruncBiv restrict_linear(int i, const LinForm& w, int trunc) const;
    // Restriction of w to the base curve C: an affine polynomial in s.
    Poly restrict_to_base(const LinForm& w) const;

    // The parameter on C of the plane point (X, Y); fails off the base line.
    Rational base_parameter(const Rational& X, const Rational& Y) const;

    // Intersection branch of components i and j away from C: the branch is
    // parametrized by t; finite = false means it stays at infinity (the two
    // moving lines are parallel), imposing no condition at finite points.
    struct Branch {
        bool finite = false;
        Point base;                     // branch point on C at t = 0
        std::vector<Rational> s_on_i;   // parameter series on component i
        std::vector<Rational> s_on_j;   // parameter series on component j
    };
    Branch intersection_branch(int i, int j, int trunc) const;

private:
    LinForm f_;
    std::vector<LinForm> h_;
    Rational p0x_, p0y_; // base point of C
};

// A tuple (alpha_1, ..., alpha_n) of functions on the components, mod t^N.
struct TruncatedTuple {
    std::vector<TruncBiv> alpha;

    int trunc() const { return alpha.empty() ? 0 : alpha.front().trunc(); }
    int order_of(int i) const; // t-adic order of coordinate i (trunc if zero)
};

TruncatedTuple tuple_add(const TruncatedTuple& u, const TruncatedTuple& v);
TruncatedTuple tuple_mul(const TruncatedTuple& u, const TruncatedTuple& v);

// Membership of the tuple in the structure ring at the finite point of C
// with parameter x: agreement on C for every pair, and agreement along every
// intersection branch through x, all mod t^N.
bool membership_oracle(const PlaneLineFamily& fam, const TruncatedTuple& tuple,
                       const Point& x);

struct SpectrumResult {
    std::vector<std::vector<int>> p; // the spectrum matrix
    std::vector<int> q;              // q_i = sum_k p_ik
    struct Witness {
        int i = 0, j = 0;
        Poly lambda_on_base;  // (h_j - h_i)|_C in the parameter s
        Point branch_point;   // the single point of Z_ij on C
        int r = 1;            // its multiplicity
        std::string witness;  // the pair (t lambda, 0) in printable form
    };
    std::vector<Witness> witnesses;
    std::string str() const;
};

// Spectrum of the family: p_ij is witnessed by the restriction pair
// (F_j|_{C_i}, F_j|_{C_j}) = (t (h_j - h_i)|_{C_i}, 0), of t-order 1.
SpectrumResult compute_spectrum(const PlaneLineFamily& fam, int trunc = 4);

struct UltrametricReport {
    bool ok = true;
    int i = -1, j = -1, k = -1; // first violating triple when !ok
};

UltrametricReport ultrametric_check(const std::vector<std::vector<int>>& p);

// The generator u_i = (0, ..., t (h_k - h_i)|_k, ...) and products
// u_I = prod_{i in I} u_i for a proper subset I.
TruncatedTuple generator_u(const PlaneLineFamily& fam, int i, int trunc);

struct GeneratorProduct {
    TruncatedTuple tuple;
    std::vector<int> order;       // per-coordinate t-order
    std::vector<Poly> leading;    // leading units v_j (in the parameter s)
};
GeneratorProduct generator_products(const PlaneLineFamily& fam, const std::vector<int>& I,
                                    int trunc);

struct ObstructionCertificate {
    int base = 0, vanishing = 0, nonvanishing = 0;
    Rational value_nonvanishing;
    std::string str() const;
};

// The fragmented-lift obstruction at a point x of C: a certificate exists
// exactly when some difference h_i - h_k vanishes at x while another
// h_j - h_k does not; a fragmented lift would force
// (h_i - h_k)|_C = unit * (h_j - h_k)|_C near x, impossible at x.
std::optional<ObstructionCertificate> fragmented_obstruction(const PlaneLineFamily& fam,
                                                             const Point& x);

// Members whose coordinate t-orders all exceed q_i are divisible by pi:
// dividing every coordinate by t yields a member mod t^{N-1}.
bool pi_divisibility_check(const PlaneLineFamily& fam, const TruncatedTuple& tuple,
                           const Point& x);

// Division lemma: u a member with coordinates alpha_i t^{m_i} (alpha_i a unit
// along C, coprime to the A-products), beta a member with beta_i divisible by
// alpha_i; then (beta_i/alpha_i t^{M - m_i}) is a member, M = sum m_i.
// Hypothesis violations throw std::invalid_argument.
bool division_lemma_check(const PlaneLineFamily& fam, const TruncatedTuple& u,
                          const TruncatedTuple& beta, const Point& x);

// Relatively-prime cancellation: if beta*u is a member mod t^N and the u_i
// are units at x, then beta must be a member mod t^N. Returns false only on
// a counterexample.
bool cancellation_check(const PlaneLineFamily& fam, const TruncatedTuple& u,
                        const TruncatedTuple& beta, const Point& x);

} // namespace pmc

#endif
