#include "pmc/jets.hpp"

#include <sstream>

namespace pmc {

JetElement::JetElement(Chart home, int order) : home_(std::move(home)) {
    if (order < 1) throw std::invalid_argument("jet order must be >= 1");
    c_.assign(static_cast<size_t>(order), RationalFunction::constant(Rational(0), home_));
}

JetElement::JetElement(Chart home, std::vector<RationalFunction> coeffs)
    : home_(std::move(home)), c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("jet needs at least one coefficient");
    for (const auto& f : c_)
        if (f.home() != home_) throw chart_mismatch("jet coefficient on a different chart");
}

JetElement JetElement::from_function(RationalFunction f, int order) {
    JetElement j(f.home(), order);
    j.c_[0] = std::move(f);
    return j;
}

JetElement JetElement::constant(Rational c, Chart home, int order) {
    return from_function(RationalFunction::constant(std::move(c), home), order);
}

JetElement JetElement::t(Chart home, int order) {
    JetElement j(home, order);
    if (order >= 2) j.c_[1] = RationalFunction::constant(Rational(1), j.home_);
    return j;
}

bool JetElement::is_zero() const {
    for (const auto& f : c_)
        if (!f.is_zero()) return false;
    return true;
}

JetElement JetElement::operator+(const JetElement& o) const {
    if (home_ != o.home_) throw chart_mismatch("jet addition across charts");
    if (order() != o.order()) throw std::invalid_argument("jet order mismatch");
    JetElement r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = r.c_[i] + o.c_[i];
    return r;
}

JetElement JetElement::operator-(const JetElement& o) const { return *this + (-o); }

JetElement JetElement::operator-() const {
    JetElement r = *this;
    for (auto& f : r.c_) f = -f;
    return r;
}

JetElement JetElement::operator*(const JetElement& o) const {
    if (home_ != o.home_) throw chart_mismatch("jet multiplication across charts");
    if (order() != o.order()) throw std::invalid_argument("jet order mismatch");
    JetElement r(home_, order());
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; i + j < c_.size(); ++j)
            r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    return r;
}

JetElement JetElement::operator*(const RationalFunction& f) const {
    JetElement r = *this;
    for (auto& g : r.c_) g = g * f;
    return r;
}

JetElement JetElement::operator*(const Rational& k) const {
    JetElement r = *this;
    for (auto& g : r.c_) g = g * k;
    return r;
}

bool JetElement::operator==(const JetElement& o) const {
    if (home_ != o.home_) throw chart_mismatch("jet comparison across charts");
    if (order() != o.order()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

JetElement JetElement::times_t() const {
    JetElement r(home_, order());
    for (size_t i = 0; i + 1 < c_.size(); ++i) r.c_[i + 1] = c_[i];
    return r;
}

JetElement JetElement::derivative() const {
    JetElement r = *this;
    for (auto& f : r.c_) f = f.derivative();
    return r;
}

JetElement JetElement::truncated(int order) const {
    if (order >= this->order()) return extended(order);
    std::vector<RationalFunction> v(c_.begin(), c_.begin() + order);
    return JetElement(home_, std::move(v));
}

JetElement JetElement::extended(int order) const {
    if (order <= this->order()) return truncated(order);
    JetElement r(home_, order);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i];
    return r;
}

JetElement JetElement::restricted(const Chart& sub) const {
    std::vector<RationalFunction> v;
    v.reserve(c_.size());
    for (const auto& f : c_) v.push_back(f.restricted(sub));
    return JetElement(sub, std::move(v));
}

JetElement JetElement::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    JetElement r = constant(Rational(1), home_, order());
    JetElement b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

JetElement JetElement::inverse() const {
    if (!c_[0].is_unit())
        throw std::domain_error("jet inverse: constant term is not a unit on the chart");
    // Series inversion: b_0 = 1/a_0, b_k = -(sum_{i=1..k} a_i b_{k-i}) / a_0.
    JetElement r(home_, order());
    RationalFunction one = RationalFunction::constant(Rational(1), home_);
    r.c_[0] = one / c_[0];
    for (size_t k = 1; k < c_.size(); ++k) {
        RationalFunction acc = RationalFunction::constant(Rational(0), home_);
        for (size_t i = 1; i <= k; ++i) acc = acc + c_[i] * r.c_[k - i];
        r.c_[k] = -(acc / c_[0]);
    }
    return r;
}

std::string JetElement::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ", ";
        os << c_[i].str();
    }
    os << "]";
    return os.str();
}

JetAutomorphism::JetAutomorphism(JetElement mu, JetElement nu)
    : mu_(std::move(mu)), nu_(std::move(nu)) {
    if (mu_.home() != nu_.home()) throw chart_mismatch("mu and nu on different charts");
    if (mu_.order() != nu_.order()) throw std::invalid_argument("mu/nu order mismatch");
    if (!nu_.coeff(0).is_unit())
        throw std::invalid_argument("nu is not invertible on the chart");
}

JetAutomorphism JetAutomorphism::identity(Chart home, int order) {
    if (order < 2) throw std::invalid_argument("automorphism order must be >= 2");
    return JetAutomorphism(JetElement(home, order - 1),
                           JetElement::constant(Rational(1), home, order - 1));
}

JetAutomorphism JetAutomorphism::order2(RationalFunction mu, RationalFunction nu) {
    return JetAutomorphism(JetElement::from_function(std::move(mu), 1),
                           JetElement::from_function(std::move(nu), 1));
}

JetElement JetAutomorphism::apply_function(const RationalFunction& alpha) const {
    const int n = order();
    JetElement mt = mu_.extended(n).times_t(); // mu t, order n
    JetElement acc = JetElement::from_function(alpha, n);
    JetElement mt_pow = JetElement::constant(Rational(1), home(), n);
    RationalFunction d = alpha;
    Rational fact(1);
    for (int i = 1; i < n; ++i) {
        mt_pow = mt_pow * mt;
        if (mt_pow.is_zero()) break;
        d = d.derivative();
        fact *= i;
        acc = acc + mt_pow * d * (Rational(1) / fact);
    }
    return acc;
}

JetElement JetAutomorphism::apply(const JetElement& g) const {
    if (g.home() != home()) throw chart_mismatch("applying automorphism across charts");
    if (g.order() != order()) throw std::invalid_argument("automorphism/jet order mismatch");
    const int n = order();
    JetElement nt = nu_.extended(n).times_t(); // nu t
    JetElement acc(home(), n);
    JetElement nt_pow = JetElement::constant(Rational(1), home(), n);
    for (int k = 0; k < n; ++k) {
        if (k > 0) nt_pow = nt_pow * nt;
        acc = acc + apply_function(g.coeff(k)) * nt_pow;
    }
    return acc;
}

JetAutomorphism JetAutomorphism::restricted(const Chart& sub) const {
    return JetAutomorphism(mu_.restricted(sub), nu_.restricted(sub));
}

std::string JetAutomorphism::str() const {
    return "phi{mu=" + mu_.str() + ", nu=" + nu_.str() + "}";
}

JetAutomorphism compose(const JetAutomorphism& phi2, const JetAutomorphism& phi1) {
    if (phi2.home() != phi1.home()) throw chart_mismatch("composing across charts");
    if (phi2.order() != phi1.order()) throw std::invalid_argument("composition order mismatch");
    const int n = phi2.order();
    const Chart& U = phi2.home();
    // The composite fixes C, so it is phi_{mu'', nu''}; extract the data from
    // the images of the generators: composite(x) = x + mu'' t, composite(t) = nu'' t.
    JetElement cx = phi2.apply(phi1.apply(JetElement::x(U, n)));
    JetElement ct = phi2.apply(phi1.apply(JetElement::t(U, n)));
    std::vector<RationalFunction> mu(cx.coeffs().begin() + 1, cx.coeffs().end());
    std::vector<RationalFunction> nu(ct.coeffs().begin() + 1, ct.coeffs().end());
    return JetAutomorphism(JetElement(U, std::move(mu)), JetElement(U, std::move(nu)));
}

JetAutomorphism invert(const JetAutomorphism& phi) {
    const int n = phi.order();
    const Chart& U = phi.home();
    const JetElement& nu = phi.nu();
    // Solve phi o psi = id on the generators x and t. Writing psi = phi_{m,v},
    // the defect of a candidate is phi(psi(x)) - x (resp. phi(psi(t)) - t);
    // dividing the defect by t and by nu gives a correction whose error term
    // has strictly higher t-order, so the iteration settles in < n steps.
    RationalFunction nu0_inv =
        RationalFunction::constant(Rational(1), U) / nu.coeff(0);
    auto shift_down = [&](const JetElement& j) {
        std::vector<RationalFunction> v(j.coeffs().begin() + 1, j.coeffs().end());
        return JetElement(U, std::move(v));
    };
    // The defect is linear in the candidate data; its diagonal part at the
    // t^k coefficient is multiplication by nu_0^{k+1}, everything else raises
    // the lowest erroneous t-order. Dividing the defect coefficient-wise by
    // nu_0^{k+1} therefore pins one more coefficient per pass.
    auto correct = [&](const JetElement& m, const JetElement& resid) {
        std::vector<RationalFunction> v;
        RationalFunction w = nu0_inv;
        for (int k = 0; k < resid.order(); ++k) {
            v.push_back(m.coeff(k) - resid.coeff(k) * w);
            w = w * nu0_inv;
        }
        return JetElement(U, std::move(v));
    };
    auto solve = [&](const JetElement& seed_base, const JetElement& target_n, bool on_x) {
        JetElement m(U, n - 1); // zero
        for (int it = 0; it <= n; ++it) {
            JetElement mt = m.extended(n).times_t();
            JetElement candidate = on_x ? seed_base + mt : mt;
            JetElement resid = shift_down(phi.apply(candidate) - target_n);
            if (resid.is_zero()) break;
            m = correct(m, resid);
        }
        return m;
    };
    JetElement xj = JetElement::x(U, n);
    JetElement tj = JetElement::t(U, n);
    JetElement m = solve(xj, xj, true);
    JetElement v = solve(tj, tj, false);
    return JetAutomorphism(m, v);
}

std::string CochainReport::str() const {
    if (ok) return "cochain condition holds";
    std::ostringstream os;
    for (const auto& [i, j] : missing) os << "missing pair (" << i << "," << j << ")\n";
    for (const auto& v : violations)
        os << "triple (" << v.i << "," << v.j << "," << v.k << "): mu residual "
           << v.mu_residual << ", nu residual " << v.nu_residual << "\n";
    return os.str();
}

CochainReport check_cochain(const std::vector<Chart>& charts,
                            const std::map<std::pair<int, int>, JetAutomorphism>& psi) {
    CochainReport rep;
    const int n = static_cast<int>(charts.size());
    auto get = [&](int i, int j) -> const JetAutomorphism* {
        auto it = psi.find({i, j});
        return it == psi.end() ? nullptr : &it->second;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto* pij = get(i, j);
            const auto* pji = get(j, i);
            if (!pij || !pji) {
                rep.ok = false;
                if (!pij) rep.missing.push_back({i, j});
                continue;
            }
            Chart ov = charts[static_cast<size_t>(i)].intersect(charts[static_cast<size_t>(j)]);
            if (compose(pji->restricted(ov), pij->restricted(ov)) !=
                JetAutomorphism::identity(ov, pij->order())) {
                rep.ok = false;
                rep.violations.push_back({i, j, -1, "Psi_ji != Psi_ij^-1", ""});
            }
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                const auto* pik = get(i, k);
                const auto* pjk = get(j, k);
                const auto* pij = get(i, j);
                if (!pik || !pjk || !pij) continue; // already reported
                Chart ov = charts[static_cast<size_t>(i)]
                               .intersect(charts[static_cast<size_t>(j)])
                               .intersect(charts[static_cast<size_t>(k)]);
                JetAutomorphism lhs = pik->restricted(ov);
                JetAutomorphism rhs = compose(pjk->restricted(ov), pij->restricted(ov));
                if (lhs != rhs) {
                    rep.ok = false;
                    rep.violations.push_back(
                        {i, j, k, (lhs.mu() - rhs.mu()).str(), (lhs.nu() - rhs.nu()).str()});
                }
            }
    return rep;
}

} // namespace pmc
