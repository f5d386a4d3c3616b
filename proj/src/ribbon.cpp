#include "pmc/ribbon.hpp"

#include <sstream>

namespace pmc {

std::string Classification::str() const {
    if (trivial) return "trivial";
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < rep.size(); ++i) {
        if (i) os << ", ";
        os << rep[i];
    }
    os << "]";
    return os.str();
}

Poly tangent_weight(const Chart& chart) {
    if (!chart.contains_infinity()) return Poly::one();
    for (const auto& p : chart.excluded())
        if (!p.is_infinity()) return Poly::linear_root(p.value()).pow(2);
    throw std::invalid_argument(
        "chart containing infinity needs a finite excluded point to anchor the "
        "tangent weight: " + chart.str());
}

DoubleCurve::DoubleCurve(Cover cover, std::map<PairKey, RationalFunction> nu_entries,
                         std::map<PairKey, RationalFunction> mu_entries)
    : cover_(std::move(cover)), nu_(cover_, std::move(nu_entries)) {
    const int n = cover_.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto it = mu_entries.find({i, j});
            if (it == mu_entries.end())
                throw std::invalid_argument("missing mu entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            Chart ov = cover_.overlap(i, j);
            RationalFunction m = it->second;
            if (m.home() != ov) m = m.restricted(ov);
            mu_raw_.emplace(PairKey{i, j}, m);
            mu_raw_.emplace(PairKey{j, i}, -(m / nu_.entry(i, j).restricted(ov)));
        }

    // Matrix cochain condition, checked through the induced order-2
    // automorphisms (rejects with the failing triple).
    auto rep = check_cochain(cover_.charts(), induced_automorphisms());
    if (!rep.ok) throw std::invalid_argument("cochain violation: " + rep.str());

    // Equivalent twisted-cocycle presentation used by the classification
    // machinery; its constructor revalidates the twisted identity.
    std::map<PairKey, RationalFunction> w, m;
    std::vector<Poly> h;
    for (int j = 0; j < n; ++j) h.push_back(tangent_weight(cover_.chart(j)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Chart ov = cover_.overlap(i, j);
            RationalFunction hi(h[static_cast<size_t>(i)], h[static_cast<size_t>(j)], ov);
            w.emplace(PairKey{i, j}, nu_.entry(i, j) * hi);
            m.emplace(PairKey{i, j},
                      RationalFunction(mu_raw(i, j).num(),
                                       mu_raw(i, j).den() * h[static_cast<size_t>(j)], ov));
        }
    twisted_.emplace(UnitCocycle(cover_, std::move(w)), std::move(m));
}

const RationalFunction& DoubleCurve::mu_raw(int i, int j) const {
    auto it = mu_raw_.find({i, j});
    if (it == mu_raw_.end()) throw std::invalid_argument("no mu entry");
    return it->second;
}

std::map<PairKey, JetAutomorphism> DoubleCurve::induced_automorphisms() const {
    std::map<PairKey, JetAutomorphism> psi;
    for (const auto& [key, m] : mu_raw_) {
        Chart ov = cover_.overlap(key.first, key.second);
        psi.emplace(key, JetAutomorphism::order2(
                             m, nu_.entry(key.first, key.second).restricted(ov)));
    }
    return psi;
}

DoubleCurve build_double_curve(const Cover& cover,
                               std::map<PairKey, RationalFunction> nu_entries,
                               std::map<PairKey, RationalFunction> mu_entries) {
    return DoubleCurve(cover, std::move(nu_entries), std::move(mu_entries));
}

DoubleCurve trivial_curve(const Cover& cover, const UnitCocycle& nu) {
    std::map<PairKey, RationalFunction> nue, mue;
    for (int i = 0; i < cover.size(); ++i)
        for (int j = i + 1; j < cover.size(); ++j) {
            nue.emplace(PairKey{i, j}, nu.entry(i, j));
            mue.emplace(PairKey{i, j},
                        RationalFunction::constant(Rational(0), cover.overlap(i, j)));
        }
    return DoubleCurve(cover, std::move(nue), std::move(mue));
}

bool is_trivial(const DoubleCurve& D) {
    return solve_coboundary(D.twisted_mu()).split;
}

Classification classify(const DoubleCurve& D) {
    Classification out;
    out.window_degree = degree(D.twisted_mu().twist());
    std::vector<Rational> win = window_vector(D.twisted_mu());
    bool zero = true;
    for (const auto& c : win)
        if (c != 0) { zero = false; break; }
    if (zero) return out; // trivial
    out.trivial = false;
    // Projective normalization: first nonzero coordinate scaled to 1.
    Rational lead(0);
    for (const auto& c : win)
        if (c != 0) { lead = c; break; }
    for (auto& c : win) c /= lead;
    out.rep = std::move(win);
    return out;
}

std::pair<UnitCocycle, int> associated_bundle(const DoubleCurve& D) {
    return {D.nu(), degree(D.nu())};
}

DoubleCurve conjugate(const DoubleCurve& D, const std::vector<RationalFunction>& g) {
    const Cover& cov = D.cover();
    if (static_cast<int>(g.size()) != cov.size())
        throw std::invalid_argument("one conjugating function per chart required");
    std::map<PairKey, RationalFunction> nue, mue;
    for (int i = 0; i < cov.size(); ++i)
        for (int j = i + 1; j < cov.size(); ++j) {
            Chart ov = cov.overlap(i, j);
            nue.emplace(PairKey{i, j}, D.nu().entry(i, j));
            mue.emplace(PairKey{i, j},
                        D.mu_raw(i, j) + g[static_cast<size_t>(j)].restricted(ov) -
                            D.nu().entry(i, j) * g[static_cast<size_t>(i)].restricted(ov));
        }
    return DoubleCurve(cov, std::move(nue), std::move(mue));
}

} // namespace pmc
