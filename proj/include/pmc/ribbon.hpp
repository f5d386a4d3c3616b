#ifndef PMC_RIBBON_HPP
#define PMC_RIBBON_HPP

#include "pmc/cech.hpp"
#include "pmc/jets.hpp"

namespace pmc {

// Classification of a primitive double curve: Trivial, or the point of
// P(H^1(T_C tensor L)) given by the window representative normalized so its
// first nonzero coordinate is 1.
struct Classification {
    bool trivial = true;
    int window_degree = 0;        // degree of the twisted sheaf
    std::vector<Rational> rep;    // normalized window vector when nontrivial

    bool operator==(const Classification& o) const {
        return trivial == o.trivial &&
               (trivial || (window_degree == o.window_degree && rep == o.rep));
    }
    bool operator!=(const Classification& o) const { return !(*this == o); }
    std::string str() const;
};

// A primitive double curve presented by gluing data on a cover: the unit
// cocycle nu (defining the associated line bundle L) and the additive data
// mu, subject to the matrix cochain condition of the order-2 automorphisms
// [[1,0],[mu d/dx, nu]].
//
// Internally the mu data is also stored as an AdditiveCocycle whose twist is
// the T_C-twisted combination W_ij = nu_ij h_i / h_j, with h_j = (x-a_j)^2 on
// charts containing infinity (a_j an excluded point of the chart) and h_j = 1
// otherwise, and whose entries are mu_ij / h_j. On a chart containing
// infinity the derivations are g d/dx with g allowed a double pole at
// infinity, i.e. g in h_j * O(U_j); the reweighting turns that allowance into
// the plain "poles at excluded points" discipline of the coboundary solver,
// so the solver computes H^1(T_C tensor L) on the nose.
class DoubleCurve {
public:
    DoubleCurve(Cover cover, std::map<PairKey, RationalFunction> nu_entries,
                std::map<PairKey, RationalFunction> mu_entries);

    const Cover& cover() const { return cover_; }
    const UnitCocycle& nu() const { return nu_; }
    const RationalFunction& mu_raw(int i, int j) const;
    const std::map<PairKey, RationalFunction>& mu_raw_entries() const { return mu_raw_; }
    const AdditiveCocycle& twisted_mu() const { return *twisted_; }

    // The order-2 automorphism cocycle induced by (mu, nu).
    std::map<PairKey, JetAutomorphism> induced_automorphisms() const;

private:
    Cover cover_;
    UnitCocycle nu_;
    std::map<PairKey, RationalFunction> mu_raw_; // all ordered pairs
    std::optional<AdditiveCocycle> twisted_;
};

// The per-chart tangent weight h_j described above.
Poly tangent_weight(const Chart& chart);

DoubleCurve build_double_curve(const Cover& cover,
                               std::map<PairKey, RationalFunction> nu_entries,
                               std::map<PairKey, RationalFunction> mu_entries);

// The trivial primitive double curve for the bundle defined by nu: all mu = 0.
DoubleCurve trivial_curve(const Cover& cover, const UnitCocycle& nu);

bool is_trivial(const DoubleCurve& D);
Classification classify(const DoubleCurve& D);

// (nu restricted to C, its degree).
std::pair<UnitCocycle, int> associated_bundle(const DoubleCurve& D);

// Conjugation by the chartwise automorphisms phi_{g_j,1}: replaces mu_ij by
// mu_ij + g_j - nu_ij g_i. Produces an isomorphic double curve with the same
// nu cocycle.
DoubleCurve conjugate(const DoubleCurve& D, const std::vector<RationalFunction>& g);

} // namespace pmc

#endif
