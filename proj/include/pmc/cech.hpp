#ifndef PMC_CECH_HPP
#define PMC_CECH_HPP

#include "pmc/funcring.hpp"
#include <map>
#include <optional>
#include <vector>

namespace pmc {

// An ordered affine open cover of the projective line by complements of
// finite point sets. Charts pairwise intersect automatically; covering means
// the excluded sets have empty intersection.
class Cover {
public:
    explicit Cover(std::vector<Chart> charts);

    int size() const { return static_cast<int>(charts_.size()); }
    const Chart& chart(int i) const { return charts_.at(static_cast<size_t>(i)); }
    const std::vector<Chart>& charts() const { return charts_; }
    Chart overlap(int i, int j) const;

    // Index of the first chart containing p.
    int chart_containing(const Point& p) const;

    bool operator==(const Cover& o) const { return charts_ == o.charts_; }
    bool operator!=(const Cover& o) const { return !(*this == o); }

private:
    std::vector<Chart> charts_;
};

struct CoverReport {
    bool ok = true;
    std::vector<std::string> problems;
};

// True iff the excluded sets have empty intersection (the charts cover the
// line) and charts pairwise intersect (automatic for finite exclusions, but
// reported if a chart list is degenerate).
CoverReport validate_cover(const std::vector<Chart>& charts);

using PairKey = std::pair<int, int>;

// A multiplicative 1-cocycle of units: c_ji = 1/c_ij and c_ik = c_jk * c_ij.
// Defines a line bundle on the projective line.
class UnitCocycle {
public:
    UnitCocycle(Cover cover, std::map<PairKey, RationalFunction> upper_entries);

    const Cover& cover() const { return cover_; }
    const RationalFunction& entry(int i, int j) const;
    const std::map<PairKey, RationalFunction>& entries() const { return entries_; }

    static UnitCocycle trivial(const Cover& cover);
    UnitCocycle entrywise_product(const UnitCocycle& o) const;

    bool same_entries(const UnitCocycle& o) const;

private:
    Cover cover_;
    std::map<PairKey, RationalFunction> entries_; // all ordered pairs
};

// Degree of the line bundle defined by the cocycle. Convention calibrated so
// that a divisor-induced cocycle (rho_j / rho_k), with rho data vanishing to
// total order r at its marked points, has degree -r. Concretely: the section
// chain s_j = c_{j0} (s_0 = 1) is consistent by the cocycle identity, and
// degree = -(sum over points p of ord_p(s_{j(p)})), which reduces to a sum
// over the points excluded from chart 0 because the divisor of s_0 = 1 is
// empty and ord_p(s_j) is chart-independent where several charts contain p.
int degree(const UnitCocycle& c);

// A twisted additive 1-cocycle: mu_ik = mu_jk + W_jk mu_ij and
// mu_ji = -mu_ij / W_ij, where W is the twist cocycle.
class AdditiveCocycle {
public:
    AdditiveCocycle(UnitCocycle twist, std::map<PairKey, RationalFunction> upper_entries);

    const Cover& cover() const { return twist_.cover(); }
    const UnitCocycle& twist() const { return twist_; }
    const RationalFunction& entry(int i, int j) const;
    const std::map<PairKey, RationalFunction>& entries() const { return entries_; }

    AdditiveCocycle scaled(const Rational& k) const;
    bool is_zero() const;

private:
    UnitCocycle twist_;
    std::map<PairKey, RationalFunction> entries_;
};

// Certificate for the coboundary decision. Split carries an exact splitting
// 0-cochain; NonSplit carries the canonical representative of the class in
// the Laurent-monomial window {x^{k+1}, ..., x^{-1}} of the standard
// two-chart model, k = degree(twist).
struct ClassCertificate {
    bool split = false;
    std::vector<RationalFunction> splitting; // one g_j per chart when split
    int window_degree = 0;                   // k
    std::vector<Rational> window;            // size max(0, -k-1) when non-split
};

// Decides whether mu is a twisted coboundary mu_ij = g_j - W_ij g_i with the
// g_j regular on their charts (poles confined to excluded points). The
// search iterates the pole budget upward from max(pole_bound, largest pole
// order in the inputs); the hard stop is the total pole order of all entries
// plus |degree(twist)| + 4. Nontriviality is certified independently of the
// bound via the window representative, so a nonzero window short-circuits to
// NonSplit and a zero window guarantees a splitting exists.
ClassCertificate solve_coboundary(const AdditiveCocycle& m, int pole_bound = 0);

// The canonical window vector of the class of m (empty when h^1 = 0). Zero
// vector iff the class is trivial.
std::vector<Rational> window_vector(const AdditiveCocycle& m);

struct ScalarWitness {
    bool equal = false;
    Rational lambda; // m1 ~ lambda * m2 modulo coboundaries
};

// Projective comparison of two non-split classes over bitwise-identical
// twists: exists lambda != 0 with mu1 - lambda mu2 a twisted coboundary.
ScalarWitness class_equal_up_to_scalar(const AdditiveCocycle& m1, const AdditiveCocycle& m2);

// Dimension of H^1 for the given twist: cokernel rank of the twisted
// coboundary map at the completeness bound. Agrees with max(0, -deg - 1).
int h1_dimension(const UnitCocycle& twist);

// Exact dense linear algebra over the rationals, shared by the solvers.
struct LinearSystem {
    int nvars = 0;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;

    void add_row(std::vector<Rational> row, Rational b);
};

struct GaussResult {
    bool consistent = false;
    std::vector<Rational> solution; // free variables set to zero
    int rank = 0;
};

GaussResult gauss_solve(const LinearSystem& sys);

} // namespace pmc

#endif
