#ifndef PMC_JETS_HPP
#define PMC_JETS_HPP

#include "pmc/funcring.hpp"
#include <map>
#include <vector>

namespace pmc {

// An element of O(U)[t]/(t^n): coefficient i is the coefficient of t^i.
// Truncation is strict; every operation truncates immediately.
class JetElement {
public:
    JetElement(Chart home, int order);
    JetElement(Chart home, std::vector<RationalFunction> coeffs);

    static JetElement from_function(RationalFunction f, int order);
    static JetElement constant(Rational c, Chart home, int order);
    static JetElement t(Chart home, int order);
    static JetElement x(Chart home, int order) {
        return from_function(RationalFunction::x(home), order);
    }

    int order() const { return static_cast<int>(c_.size()); }
    const Chart& home() const { return home_; }
    const RationalFunction& coeff(int i) const { return c_.at(static_cast<size_t>(i)); }
    const std::vector<RationalFunction>& coeffs() const { return c_; }
    bool is_zero() const;

    JetElement operator+(const JetElement& o) const;
    JetElement operator-(const JetElement& o) const;
    JetElement operator-() const;
    JetElement operator*(const JetElement& o) const;
    JetElement operator*(const RationalFunction& f) const;
    JetElement operator*(const Rational& k) const;
    bool operator==(const JetElement& o) const;
    bool operator!=(const JetElement& o) const { return !(*this == o); }

    // Multiplication by t (shifts coefficients up, truncating at the order).
    JetElement times_t() const;
    // Coefficient-wise d/dx.
    JetElement derivative() const;
    JetElement truncated(int order) const;
    JetElement extended(int order) const;
    JetElement restricted(const Chart& sub) const;
    JetElement pow(int e) const;

    // Inverse in O(U)[t]/(t^n); the constant term must be a unit on U.
    JetElement inverse() const;

    // The restriction to the reduced curve: the degree-0 coefficient.
    const RationalFunction& restrict_to_C() const { return c_.front(); }

    std::string str() const;

private:
    Chart home_;
    std::vector<RationalFunction> c_;
};

// A C-automorphism phi of O(U)[t]/(t^n), determined by jets mu, nu of order
// n-1 with nu invertible:
//   phi(alpha) = sum_i (mu t)^i (d^i alpha / dx^i) / i!      for alpha in O(U)
//   phi(t)     = nu t
// For n = 2 this is the matrix [[1,0],[mu d/dx, nu]]. The displayed sum
// carries the 1/i! Taylor factors; without them phi would fail to be a ring
// homomorphism for n >= 3 (checked by the property suite).
class JetAutomorphism {
public:
    JetAutomorphism(JetElement mu, JetElement nu);

    static JetAutomorphism identity(Chart home, int order);
    // Convenience for n = 2 data given by plain functions.
    static JetAutomorphism order2(RationalFunction mu, RationalFunction nu);

    int order() const { return mu_.order() + 1; }
    const Chart& home() const { return mu_.home(); }
    const JetElement& mu() const { return mu_; }
    const JetElement& nu() const { return nu_; }

    JetElement apply(const JetElement& g) const;
    // apply(phi(alpha)) for a plain function alpha.
    JetElement apply_function(const RationalFunction& alpha) const;

    JetAutomorphism restricted(const Chart& sub) const;
    bool operator==(const JetAutomorphism& o) const { return mu_ == o.mu_ && nu_ == o.nu_; }
    bool operator!=(const JetAutomorphism& o) const { return !(*this == o); }

    std::string str() const;

private:
    JetElement mu_, nu_; // order n-1
};

// phi2 after phi1. The composite's mu, nu are extracted from the action on
// the generators x and t; for n = 2 this reduces to (mu' + nu' mu, nu nu').
JetAutomorphism compose(const JetAutomorphism& phi2, const JetAutomorphism& phi1);
JetAutomorphism invert(const JetAutomorphism& phi);

struct CochainViolation {
    int i, j, k;            // failing triple
    std::string mu_residual; // difference of the two sides' mu
    std::string nu_residual; // difference of the two sides' nu
};

struct CochainReport {
    bool ok = true;
    std::vector<CochainViolation> violations;
    std::vector<std::pair<int, int>> missing;
    std::string str() const;
};

// Checks Psi_ik = Psi_jk o Psi_ij on every ordered triple of distinct chart
// indices, comparing on the triple overlap. Also verifies Psi_ji = Psi_ij^-1.
CochainReport check_cochain(const std::vector<Chart>& charts,
                            const std::map<std::pair<int, int>, JetAutomorphism>& psi);

} // namespace pmc

#endif
