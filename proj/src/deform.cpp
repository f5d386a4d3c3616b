#include "pmc/deform.hpp"

#include <sstream>

namespace pmc {

FactorDatum FactorDatum::at(int chart, Rational point, int mult) {
    std::vector<Rational> ls;
    for (int m = 1; m <= mult; ++m) ls.emplace_back(m);
    return at(chart, std::move(point), mult, std::move(ls));
}

FactorDatum FactorDatum::at(int chart, Rational point, int mult,
                            std::vector<Rational> lambdas) {
    if (mult < 1) throw std::invalid_argument("factor multiplicity must be >= 1");
    if (static_cast<int>(lambdas.size()) != mult)
        throw std::invalid_argument("need one lambda per factor");
    for (size_t i = 0; i < lambdas.size(); ++i) {
        if (lambdas[i] == 0) throw std::invalid_argument("lambdas must be nonzero");
        for (size_t j = i + 1; j < lambdas.size(); ++j)
            if (lambdas[i] == lambdas[j])
                throw std::invalid_argument("lambdas must be distinct");
    }
    FactorDatum f;
    f.chart = chart;
    f.marked = true;
    f.point = std::move(point);
    f.mult = mult;
    f.lambdas = std::move(lambdas);
    return f;
}

Poly FactorDatum::rho() const {
    if (!marked) return Poly::one();
    return Poly::linear_root(point).pow(mult);
}

PairElement PairElement::pi(const Chart& home, int chart) {
    PairElement u;
    u.chart = chart;
    u.a = RationalFunction::constant(Rational(0), home);
    u.b = RationalFunction::constant(Rational(1), home);
    u.beta = RationalFunction::constant(Rational(0), home);
    return u;
}

PairElement PairElement::one(const Chart& home, int chart) {
    PairElement u;
    u.chart = chart;
    u.a = RationalFunction::constant(Rational(1), home);
    u.b = RationalFunction::constant(Rational(0), home);
    u.beta = RationalFunction::constant(Rational(0), home);
    return u;
}

std::string PairElement::str() const {
    return "(" + a.str() + ", " + b.str() + ", " + beta.str() + ")";
}

PairElement pair_add(const PairElement& u, const PairElement& v) {
    if (u.chart != v.chart) throw chart_mismatch("pair addition across charts");
    return {u.chart, u.a + v.a, u.b + v.b, u.beta + v.beta};
}

PairElement pair_mul(const PairElement& u, const PairElement& v) {
    if (u.chart != v.chart) throw chart_mismatch("pair multiplication across charts");
    // (a + bt, a + (b + r beta) t) * (a' + b't, ...) with t^2 = 0.
    return {u.chart, u.a * v.a, u.a * v.b + v.a * u.b, u.a * v.beta + v.a * u.beta};
}

LocalDeformationDatum::LocalDeformationDatum(Cover cover, std::vector<FactorDatum> factors,
                                             std::map<PairKey, RationalFunction> mu1,
                                             std::map<PairKey, RationalFunction> mu2)
    : cover_(std::move(cover)),
      factors_(std::move(factors)),
      mu1_(UnitCocycle::trivial(cover_), std::move(mu1)),
      mu2_(UnitCocycle::trivial(cover_), std::move(mu2)) {
    if (static_cast<int>(factors_.size()) != cover_.size())
        throw std::invalid_argument("need exactly one factor per chart");
    for (int j = 0; j < cover_.size(); ++j) {
        const FactorDatum& f = factors_[static_cast<size_t>(j)];
        if (f.chart != j) throw std::invalid_argument("factor chart indices out of order");
        if (!f.marked) continue;
        Point xj(f.point);
        for (int k = 0; k < cover_.size(); ++k) {
            bool contains = cover_.chart(k).contains(xj);
            if (k == j && !contains)
                throw std::invalid_argument("marked point " + xj.str() +
                                            " is not in its own chart");
            if (k != j && contains)
                throw std::invalid_argument("marked point " + xj.str() +
                                            " must be confined to a single chart");
        }
    }
}

RationalFunction LocalDeformationDatum::rho(int chart, const Chart& home) const {
    return RationalFunction(factors_.at(static_cast<size_t>(chart)).rho(), Poly::one(), home);
}

int LocalDeformationDatum::divisor_degree() const {
    int s = 0;
    for (const auto& f : factors_)
        if (f.marked) s += f.mult;
    return s;
}

PairElement glue_transition(const LocalDeformationDatum& d, int j, int k,
                            const PairElement& u) {
    if (u.chart != j) throw chart_mismatch("transition applied to the wrong chart");
    Chart ov = d.cover().overlap(j, k);
    RationalFunction a = u.a.restricted(ov), b = u.b.restricted(ov),
                     beta = u.beta.restricted(ov);
    RationalFunction m1 = d.mu1().entry(j, k).restricted(ov);
    RationalFunction m2 = d.mu2().entry(j, k).restricted(ov);
    RationalFunction rj = d.rho(j, ov), rk = d.rho(k, ov);
    RationalFunction ax = a.derivative();
    PairElement out;
    out.chart = k;
    out.a = a;
    out.b = m1 * ax + b;
    out.beta = ((m2 - m1) * ax + rj * beta) / rk;
    return out;
}

DoubleCurve quotient_by_pi(const LocalDeformationDatum& d) {
    const Cover& cov = d.cover();
    std::map<PairKey, RationalFunction> nue, mue;
    for (int j = 0; j < cov.size(); ++j)
        for (int k = j + 1; k < cov.size(); ++k) {
            Chart ov = cov.overlap(j, k);
            RationalFunction rj = d.rho(j, ov), rk = d.rho(k, ov);
            nue.emplace(PairKey{j, k}, rj / rk);
            mue.emplace(PairKey{j, k},
                        (d.mu2().entry(j, k).restricted(ov) -
                         d.mu1().entry(j, k).restricted(ov)) / rk);
        }
    return DoubleCurve(cov, std::move(nue), std::move(mue));
}

LocalDeformationDatum build_local_deformation(const DoubleCurve& target) {
    const Cover& cov = target.cover();
    // Recover the divisor data: with rho_0 = 1, the entries nu_{j0} must be
    // the polynomials rho_j = (x - x_j)^{p_j} (or 1), each marked point lying
    // in its own chart only. Anything else is not divisor normal form.
    std::vector<FactorDatum> factors;
    factors.push_back(FactorDatum::unit(0));
    for (int j = 1; j < cov.size(); ++j) {
        const RationalFunction& nj0 = target.nu().entry(j, 0);
        if (nj0.den().degree() != 0)
            throw std::invalid_argument("target not in divisor normal form: nu_" +
                                        std::to_string(j) + "0 is not polynomial");
        Poly rho = nj0.num();
        if (rho.degree() == 0) {
            if (rho != Poly::one())
                throw std::invalid_argument("target not in divisor normal form: rho_" +
                                            std::to_string(j) + " != 1");
            factors.push_back(FactorDatum::unit(j));
            continue;
        }
        // rho must be (x - x_j)^p: its squarefree part is linear.
        Poly sf = squarefree_part(rho);
        if (sf.degree() != 1)
            throw std::invalid_argument("target not in divisor normal form: rho_" +
                                        std::to_string(j) + " has several roots");
        Rational xj = -sf.coeff(0) / sf.coeff(1);
        int p = rho.degree();
        if (rho != Poly::linear_root(xj).pow(p))
            throw std::invalid_argument("target not in divisor normal form");
        factors.push_back(FactorDatum::at(j, xj, p));
    }
    std::map<PairKey, RationalFunction> mu1, mu2;
    for (int j = 0; j < cov.size(); ++j)
        for (int k = j + 1; k < cov.size(); ++k) {
            Chart ov = cov.overlap(j, k);
            mu1.emplace(PairKey{j, k}, RationalFunction::constant(Rational(0), ov));
            RationalFunction rk(factors[static_cast<size_t>(k)].rho(), Poly::one(), ov);
            mu2.emplace(PairKey{j, k}, rk * target.mu_raw(j, k));
        }
    return LocalDeformationDatum(cov, std::move(factors), std::move(mu1), std::move(mu2));
}

Cover divisor_cover(const std::vector<std::pair<Rational, int>>& divisor) {
    std::vector<Chart> charts;
    std::set<Point> support;
    for (const auto& [x, p] : divisor) support.insert(Point(x));
    if (support.size() != divisor.size())
        throw std::invalid_argument("divisor points must be distinct");
    charts.emplace_back("U0", support);
    for (size_t j = 0; j < divisor.size(); ++j) {
        std::set<Point> ex;
        for (size_t k = 0; k < divisor.size(); ++k)
            if (k != j) ex.insert(Point(divisor[k].first));
        ex.insert(Point::infinity());
        charts.emplace_back("U" + std::to_string(j + 1), std::move(ex));
    }
    return Cover(charts);
}

DoubleCurve divisor_ribbon(const std::vector<std::pair<Rational, int>>& divisor,
                           const std::vector<RationalFunction>& mu_chain) {
    Cover cov = divisor_cover(divisor);
    const int m = static_cast<int>(divisor.size());
    if (static_cast<int>(mu_chain.size()) != m)
        throw std::invalid_argument("need one chain entry per marked chart");
    std::vector<Poly> rho = {Poly::one()};
    for (const auto& [x, p] : divisor) rho.push_back(Poly::linear_root(x).pow(p));
    std::map<PairKey, RationalFunction> nue, mue;
    for (int i = 0; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            Chart ov = cov.overlap(i, j);
            RationalFunction nij(rho[static_cast<size_t>(i)], rho[static_cast<size_t>(j)], ov);
            nue.emplace(PairKey{i, j}, nij);
            RationalFunction mij = (i == 0)
                ? mu_chain[static_cast<size_t>(j - 1)].restricted(ov)
                : mu_chain[static_cast<size_t>(j - 1)].restricted(ov) -
                      nij * mu_chain[static_cast<size_t>(i - 1)].restricted(ov);
            mue.emplace(PairKey{i, j}, mij);
        }
    return DoubleCurve(cov, std::move(nue), std::move(mue));
}

// ---------------------------------------------------------------------------
// Truncated bivariate arithmetic and the gluing model

TruncBiv TruncBiv::from_poly(Poly p, int trunc, int tpow) {
    TruncBiv f(trunc);
    if (tpow >= 0 && tpow < trunc) f.c_[static_cast<size_t>(tpow)] = std::move(p);
    return f;
}

bool TruncBiv::is_zero() const {
    for (const auto& p : c_)
        if (!p.is_zero()) return false;
    return true;
}

TruncBiv TruncBiv::operator+(const TruncBiv& o) const {
    if (trunc() != o.trunc()) throw std::invalid_argument("truncation mismatch");
    TruncBiv r = *this;
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = r.c_[k] + o.c_[k];
    return r;
}

TruncBiv TruncBiv::operator-(const TruncBiv& o) const {
    if (trunc() != o.trunc()) throw std::invalid_argument("truncation mismatch");
    TruncBiv r = *this;
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = r.c_[k] - o.c_[k];
    return r;
}

TruncBiv TruncBiv::operator*(const TruncBiv& o) const {
    if (trunc() != o.trunc()) throw std::invalid_argument("truncation mismatch");
    TruncBiv r(trunc());
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; i + j < c_.size(); ++j)
            r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    return r;
}

TruncBiv TruncBiv::operator*(const Rational& k) const {
    TruncBiv r = *this;
    for (auto& p : r.c_) p = p * k;
    return r;
}

TruncBiv TruncBiv::times_t() const {
    TruncBiv r(trunc());
    for (size_t k = 0; k + 1 < c_.size(); ++k) r.c_[k + 1] = c_[k];
    return r;
}

TruncBiv TruncBiv::div_t() const {
    if (!c_.front().is_zero())
        throw std::domain_error("not divisible by t");
    TruncBiv r(trunc() - 1);
    for (size_t k = 1; k < c_.size(); ++k) r.c_[k - 1] = c_[k];
    return r;
}

TruncBiv TruncBiv::truncated(int trunc) const {
    TruncBiv r(trunc);
    for (int k = 0; k < std::min(trunc, this->trunc()); ++k) r.c_[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)];
    return r;
}

std::vector<Rational> TruncBiv::eval_x(const Rational& x0) const {
    std::vector<Rational> out;
    out.reserve(c_.size());
    for (const auto& p : c_) out.push_back(p.eval(x0));
    return out;
}

TruncBiv TruncBiv::exact_div_poly(const Poly& d) const {
    TruncBiv r(trunc());
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k].exact_div(d);
    return r;
}

std::string TruncBiv::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t k = 0; k < c_.size(); ++k) {
        if (k) os << ", ";
        os << poly_to_string(c_[k]);
    }
    os << "]";
    return os.str();
}

Poly ExampleModel::lambda() const {
    Poly l = Poly::one();
    for (const auto& p : points) l = l * Poly::linear_root(p);
    return l;
}

bool example_model_membership(const ExampleModel& model, const ExampleModelElement& e) {
    if (e.phi1.trunc() != model.trunc || e.phi2.trunc() != model.trunc)
        throw std::invalid_argument("element truncation does not match the model");
    if (e.phi1.coeff(0) != e.phi2.coeff(0)) return false; // agreement on C
    for (const auto& P : model.points)
        if (e.phi1.eval_x(P) != e.phi2.eval_x(P)) return false; // on {P} x A^1
    return true;
}

std::string IdealStructureReport::str() const {
    std::ostringstream os;
    os << "p=" << p << " lambda=" << lambda << " generator=" << generator_member
       << " minimal=" << order_minimal << " unique=" << uniqueness
       << " q=p:" << q_equals_p << " J1<=(pi):" << j1_in_pi;
    return os.str();
}

namespace {

Poly random_poly(Rng& rng, int maxdeg) {
    std::vector<Rational> cs;
    int d = static_cast<int>(rng.range(0, maxdeg));
    for (int i = 0; i <= d; ++i) cs.push_back(rng.rational(4, 2));
    return Poly(std::move(cs));
}

TruncBiv random_biv(Rng& rng, int trunc, int maxdeg = 3) {
    TruncBiv f(trunc);
    for (int k = 0; k < trunc; ++k) f.coeff(k) = random_poly(rng, maxdeg);
    return f;
}

// A random member of the gluing model: phi2 = phi1 + t * (lambda * g + t^{N-2} h)
// vanishes on C and along every marked vertical line.
ExampleModelElement random_member(const ExampleModel& model, Rng& rng) {
    const int N = model.trunc;
    TruncBiv phi1 = random_biv(rng, N);
    TruncBiv diff = random_biv(rng, N);
    TruncBiv corr(N);
    for (int k = 0; k < N; ++k) corr.coeff(k) = diff.coeff(k) * model.lambda();
    if (N >= 2) corr.coeff(N - 1) = corr.coeff(N - 1) + random_poly(rng, 3);
    return {phi1, phi1 + corr.times_t()};
}

} // namespace

IdealStructureReport ideal_structure_check(const ExampleModel& model, Rng& rng, int samples) {
    const int N = model.trunc;
    if (N < 3) throw std::invalid_argument("ideal structure check needs truncation >= 3");
    IdealStructureReport rep;
    rep.p = 1;
    Poly lam = model.lambda();
    rep.lambda = poly_to_string(lam);

    // (t lambda, 0) and (0, t lambda) are members.
    TruncBiv tl = TruncBiv::from_poly(lam, N, 1);
    TruncBiv zero(N);
    rep.generator_member = example_model_membership(model, {tl, zero}) &&
                           example_model_membership(model, {zero, tl});

    // Minimality of p = 1: a member (u, 0) forces u|_C = 0. Structural, and
    // probed on random candidates.
    rep.order_minimal = true;
    for (int s = 0; s < samples; ++s) {
        TruncBiv u = random_biv(rng, N);
        if (example_model_membership(model, {u, zero}) && !u.coeff(0).is_zero())
            rep.order_minimal = false;
    }

    // Uniqueness up to unit: every member (0, t lambda') has lambda | lambda'
    // as series mod t^{N-1}.
    rep.uniqueness = true;
    for (int s = 0; s < samples; ++s) {
        TruncBiv g = random_biv(rng, N - 1);
        TruncBiv lamp(N - 1);
        for (int k = 0; k < N - 1; ++k) lamp.coeff(k) = g.coeff(k) * lam;
        TruncBiv w(N);
        for (int k = 0; k < N - 1; ++k) w.coeff(k + 1) = lamp.coeff(k);
        if (!example_model_membership(model, {zero, w})) { rep.uniqueness = false; break; }
        try {
            (void)lamp.exact_div_poly(lam);
        } catch (const std::domain_error&) {
            rep.uniqueness = false;
            break;
        }
    }
    // And the division genuinely fails for a non-member candidate when m >= 2
    // (a factor of lambda is missing).
    if (model.points.size() >= 2) {
        Poly partial = Poly::one();
        for (size_t i = 0; i + 1 < model.points.size(); ++i)
            partial = partial * Poly::linear_root(model.points[i]);
        TruncBiv w = TruncBiv::from_poly(partial, N, 1);
        if (example_model_membership(model, {zero, w})) rep.uniqueness = false;
    }

    rep.q_equals_p = rep.generator_member;

    // J_1 in (pi): members with both coordinates divisible by t^2 are pi
    // times a member (checked at truncation N-1 after the division).
    rep.j1_in_pi = true;
    for (int s = 0; s < samples; ++s) {
        TruncBiv a = random_biv(rng, N - 2);
        TruncBiv g = random_biv(rng, N - 2);
        TruncBiv b = a;
        for (int k = 0; k < N - 2; ++k) b.coeff(k) = b.coeff(k) + g.coeff(k) * lam;
        if (N >= 3) b.coeff(N - 3) = b.coeff(N - 3) + random_poly(rng, 2) * lam;
        auto lift = [&](const TruncBiv& f, int tpow) {
            TruncBiv r(N);
            for (int k = 0; k + tpow < N && k < f.trunc(); ++k)
                r.coeff(k + tpow) = f.coeff(k);
            return r;
        };
        ExampleModelElement e{lift(a, 2), lift(b, 2)};
        if (!example_model_membership(model, e)) { rep.j1_in_pi = false; break; }
        ExampleModel reduced{model.points, N - 1};
        ExampleModelElement div{e.phi1.div_t().truncated(N - 1), e.phi2.div_t().truncated(N - 1)};
        if (!example_model_membership(reduced, div)) { rep.j1_in_pi = false; break; }
    }

    for (const auto& P : model.points)
        rep.point_multiplicity[to_string(P)] = lam.root_multiplicity(P);

    rep.ok = rep.generator_member && rep.order_minimal && rep.uniqueness &&
             rep.q_equals_p && rep.j1_in_pi;
    return rep;
}

} // namespace pmc
