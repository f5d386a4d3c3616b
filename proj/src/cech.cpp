#include "pmc/cech.hpp"

#include <algorithm>
#include <sstream>

namespace pmc {

// ---------------------------------------------------------------------------
// Cover

Cover::Cover(std::vector<Chart> charts) : charts_(std::move(charts)) {
    auto rep = validate_cover(charts_);
    if (!rep.ok) {
        std::string msg = "invalid cover:";
        for (const auto& p : rep.problems) msg += " " + p;
        throw std::invalid_argument(msg);
    }
}

Chart Cover::overlap(int i, int j) const {
    return chart(i).intersect(chart(j));
}

int Cover::chart_containing(const Point& p) const {
    for (int i = 0; i < size(); ++i)
        if (chart(i).contains(p)) return i;
    throw std::logic_error("point not covered"); // unreachable for valid covers
}

CoverReport validate_cover(const std::vector<Chart>& charts) {
    CoverReport rep;
    if (charts.size() < 2) {
        rep.ok = false;
        rep.problems.push_back("need at least 2 charts");
        return rep;
    }
    // Intersection of the excluded sets must be empty.
    std::set<Point> common = charts.front().excluded();
    for (size_t i = 1; i < charts.size() && !common.empty(); ++i) {
        std::set<Point> nxt;
        for (const auto& p : common)
            if (charts[i].excluded().count(p)) nxt.insert(p);
        common = std::move(nxt);
    }
    if (!common.empty()) {
        rep.ok = false;
        for (const auto& p : common) rep.problems.push_back("uncovered point " + p.str());
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Unit cocycles

UnitCocycle::UnitCocycle(Cover cover, std::map<PairKey, RationalFunction> upper)
    : cover_(std::move(cover)) {
    const int n = cover_.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto it = upper.find({i, j});
            if (it == upper.end())
                throw std::invalid_argument("missing cocycle entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            Chart ov = cover_.overlap(i, j);
            RationalFunction c = it->second;
            if (c.home() != ov) c = c.restricted(ov);
            if (!c.is_unit())
                throw std::invalid_argument("cocycle entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") = " + c.str() +
                                            " is not a unit on " + ov.str());
            entries_.emplace(PairKey{i, j}, c);
            entries_.emplace(PairKey{j, i},
                             RationalFunction(c.den(), c.num(), ov));
        }
    // Multiplicative cocycle condition on all triples, as an identity in the
    // function field (cross-multiplied to avoid chart plumbing).
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                const auto& cik = entry(i, k);
                const auto& cjk = entry(j, k);
                const auto& cij = entry(i, j);
                if (cik.num() * cjk.den() * cij.den() != cik.den() * cjk.num() * cij.num())
                    throw std::invalid_argument(
                        "multiplicative cocycle condition fails on triple (" + std::to_string(i) +
                        "," + std::to_string(j) + "," + std::to_string(k) + ")");
            }
}

const RationalFunction& UnitCocycle::entry(int i, int j) const {
    auto it = entries_.find({i, j});
    if (it == entries_.end()) throw std::invalid_argument("no cocycle entry");
    return it->second;
}

UnitCocycle UnitCocycle::trivial(const Cover& cover) {
    std::map<PairKey, RationalFunction> m;
    for (int i = 0; i < cover.size(); ++i)
        for (int j = i + 1; j < cover.size(); ++j)
            m.emplace(PairKey{i, j},
                      RationalFunction::constant(Rational(1), cover.overlap(i, j)));
    return UnitCocycle(cover, std::move(m));
}

UnitCocycle UnitCocycle::entrywise_product(const UnitCocycle& o) const {
    if (cover_ != o.cover_) throw std::invalid_argument("cocycle product across covers");
    std::map<PairKey, RationalFunction> m;
    for (int i = 0; i < cover_.size(); ++i)
        for (int j = i + 1; j < cover_.size(); ++j)
            m.emplace(PairKey{i, j}, entry(i, j) * o.entry(i, j));
    return UnitCocycle(cover_, std::move(m));
}

bool UnitCocycle::same_entries(const UnitCocycle& o) const {
    if (cover_ != o.cover_) return false;
    for (const auto& [key, f] : entries_)
        if (!f.same_function(o.entry(key.first, key.second))) return false;
    return true;
}

int degree(const UnitCocycle& c) {
    // Section chain s_j = c_{j0}, s_0 = 1; only points excluded from chart 0
    // can contribute, since div(s_0) = 0 and the order is chart-independent.
    const Cover& cov = c.cover();
    int sum = 0;
    for (const auto& p : cov.chart(0).excluded()) {
        int j = cov.chart_containing(p);
        sum += c.entry(j, 0).vanishing_order(p);
    }
    return -sum;
}

// ---------------------------------------------------------------------------
// Additive cocycles

AdditiveCocycle::AdditiveCocycle(UnitCocycle twist, std::map<PairKey, RationalFunction> upper)
    : twist_(std::move(twist)) {
    const Cover& cov = twist_.cover();
    const int n = cov.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto it = upper.find({i, j});
            if (it == upper.end())
                throw std::invalid_argument("missing additive entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            Chart ov = cov.overlap(i, j);
            RationalFunction m = it->second;
            if (m.home() != ov) m = m.restricted(ov);
            entries_.emplace(PairKey{i, j}, m);
            entries_.emplace(PairKey{j, i}, -(m / twist_.entry(i, j).restricted(ov)));
        }
    // Twisted cocycle condition mu_ik = mu_jk + W_jk mu_ij on all triples.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                const auto& mik = entry(i, k);
                const auto& mjk = entry(j, k);
                const auto& mij = entry(i, j);
                const auto& w = twist_.entry(j, k);
                // mik - mjk - w*mij = 0, cross-multiplied.
                Poly lhs = mik.num() * mjk.den() * w.den() * mij.den();
                Poly rhs = mik.den() * (mjk.num() * w.den() * mij.den() +
                                        w.num() * mij.num() * mjk.den());
                if (lhs != rhs)
                    throw std::invalid_argument(
                        "twisted additive cocycle condition fails on triple (" +
                        std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                        ")");
            }
}

const RationalFunction& AdditiveCocycle::entry(int i, int j) const {
    auto it = entries_.find({i, j});
    if (it == entries_.end()) throw std::invalid_argument("no additive entry");
    return it->second;
}

AdditiveCocycle AdditiveCocycle::scaled(const Rational& k) const {
    std::map<PairKey, RationalFunction> m;
    for (int i = 0; i < cover().size(); ++i)
        for (int j = i + 1; j < cover().size(); ++j)
            m.emplace(PairKey{i, j}, entry(i, j) * k);
    return AdditiveCocycle(twist_, std::move(m));
}

bool AdditiveCocycle::is_zero() const {
    for (const auto& [key, f] : entries_)
        if (!f.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Exact linear algebra

void LinearSystem::add_row(std::vector<Rational> row, Rational b) {
    if (static_cast<int>(row.size()) != nvars) throw std::logic_error("row width mismatch");
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
}

GaussResult gauss_solve(const LinearSystem& sys) {
    GaussResult res;
    auto a = sys.rows;
    auto b = sys.rhs;
    const int m = static_cast<int>(a.size());
    const int n = sys.nvars;
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int sel = -1;
        for (int r = row; r < m; ++r)
            if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(a[static_cast<size_t>(sel)], a[static_cast<size_t>(row)]);
        std::swap(b[static_cast<size_t>(sel)], b[static_cast<size_t>(row)]);
        Rational inv = Rational(1) / a[static_cast<size_t>(row)][static_cast<size_t>(col)];
        for (int c = col; c < n; ++c) a[static_cast<size_t>(row)][static_cast<size_t>(c)] *= inv;
        b[static_cast<size_t>(row)] *= inv;
        for (int r = 0; r < m; ++r) {
            if (r == row) continue;
            Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int c = col; c < n; ++c)
                a[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    f * a[static_cast<size_t>(row)][static_cast<size_t>(c)];
            b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(row)];
        }
        pivot_col.push_back(col);
        ++row;
    }
    res.rank = row;
    for (int r = row; r < m; ++r)
        if (b[static_cast<size_t>(r)] != 0) {
            res.consistent = false;
            return res;
        }
    res.consistent = true;
    res.solution.assign(static_cast<size_t>(n), Rational(0));
    for (int r = 0; r < row; ++r)
        res.solution[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] =
            b[static_cast<size_t>(r)];
    return res;
}

// ---------------------------------------------------------------------------
// Unconstrained fraction arithmetic for the canonical-form pipeline. Keeping
// this separate from RationalFunction avoids chart bookkeeping on
// intermediates whose poles wander outside any one chart.

namespace {

struct Frac {
    Poly n, d; // reduced, monic d

    Frac() : n(), d(Poly::one()) {}
    explicit Frac(Poly num) : n(std::move(num)), d(Poly::one()) {}
    Frac(Poly num, Poly den) : n(std::move(num)), d(std::move(den)) { normalize(); }

    static Frac of(const RationalFunction& f) { return Frac(f.num(), f.den()); }

    void normalize() {
        if (d.is_zero()) throw std::domain_error("zero denominator");
        if (n.is_zero()) { d = Poly::one(); return; }
        Poly g = poly_gcd(n, d);
        if (g.degree() > 0) { n = n.exact_div(g); d = d.exact_div(g); }
        Rational lc = d.leading();
        if (lc != 1) { d = d * (Rational(1) / lc); n = n * (Rational(1) / lc); }
    }

    bool is_zero() const { return n.is_zero(); }
    Frac operator+(const Frac& o) const { return Frac(n * o.d + o.n * d, d * o.d); }
    Frac operator-(const Frac& o) const { return Frac(n * o.d - o.n * d, d * o.d); }
    Frac operator*(const Frac& o) const { return Frac(n * o.n, d * o.d); }
    Frac operator/(const Frac& o) const {
        if (o.is_zero()) throw std::domain_error("division by zero fraction");
        return Frac(n * o.d, d * o.n);
    }
    Frac operator-() const { Frac r = *this; r.n = -r.n; return r; }
};

int ord_at(const Frac& f, const Point& p) {
    if (f.is_zero()) throw std::domain_error("order of zero");
    if (p.is_infinity()) return f.d.degree() - f.n.degree();
    return f.n.root_multiplicity(p.value()) - f.d.root_multiplicity(p.value());
}

// Laurent coefficients of f around the finite point p, for exponents
// lo..hi (inclusive); f may have a pole at p.
std::vector<Rational> laurent_coeffs(const Frac& f, const Rational& p, int lo, int hi) {
    if (f.is_zero()) return std::vector<Rational>(static_cast<size_t>(hi - lo + 1), Rational(0));
    int r = f.d.root_multiplicity(p);
    Poly d1 = f.d;
    for (int i = 0; i < r; ++i) d1 = d1.exact_div(Poly::linear_root(p));
    Poly ns = f.n.shift(p), ds = d1.shift(p);
    int len = hi + r + 1;
    std::vector<Rational> out(static_cast<size_t>(hi - lo + 1), Rational(0));
    if (len <= 0) return out;
    auto inv = series_inverse(ds, len);
    for (int e = lo; e <= hi; ++e) {
        int idx = e + r;
        if (idx < 0) continue;
        Rational c(0);
        for (int i = 0; i <= idx; ++i) c += ns.coeff(i) * inv[static_cast<size_t>(idx - i)];
        out[static_cast<size_t>(e - lo)] = c;
    }
    return out;
}

// Principal part of f at a finite point p (the terms with negative exponent).
Frac principal_tail(const Frac& f, const Rational& p) {
    if (f.is_zero()) return Frac();
    int r = f.d.root_multiplicity(p);
    if (r == 0) return Frac();
    auto cs = laurent_coeffs(f, p, -r, -1);
    Poly num; // sum c_e (x-p)^{e+r} over (x-p)^r
    Poly lin = Poly::linear_root(p);
    for (int e = -r; e <= -1; ++e)
        num = num + lin.pow(e + r) * cs[static_cast<size_t>(e + r)];
    return Frac(num, lin.pow(r));
}

Frac polynomial_part(const Frac& f) {
    return Frac(f.n.divmod(f.d).first);
}

// Total pole order of an entry (finite poles plus the pole at infinity).
int pole_order(const RationalFunction& f) {
    return f.den().degree() + std::max(0, f.num().degree() - f.den().degree());
}

struct SolveShape {
    // Variable layout for the splitting cochain (g_j): per chart, numerator
    // coefficients over the fixed denominator q_j.
    std::vector<Poly> q;      // denominators
    std::vector<int> maxdeg;  // numerator degree bound
    std::vector<int> offset;  // first variable index per chart
    int nvars = 0;
};

SolveShape make_shape(const Cover& cov, int bound) {
    SolveShape sh;
    for (int j = 0; j < cov.size(); ++j) {
        Poly q = Poly::one();
        bool inf_excluded = false;
        for (const auto& p : cov.chart(j).excluded()) {
            if (p.is_infinity()) { inf_excluded = true; continue; }
            q = q * Poly::linear_root(p.value()).pow(bound);
        }
        sh.offset.push_back(sh.nvars);
        sh.q.push_back(q);
        sh.maxdeg.push_back(q.degree() + (inf_excluded ? bound : 0));
        sh.nvars += q.degree() + (inf_excluded ? bound : 0) + 1;
    }
    return sh;
}

void emit_poly_rows(LinearSystem& sys,
                    const std::vector<std::pair<int, Poly>>& var_polys,
                    const Poly& rhs_poly,
                    std::optional<std::pair<int, Poly>> extra = std::nullopt) {
    int maxdeg = rhs_poly.degree();
    for (const auto& [v, p] : var_polys) maxdeg = std::max(maxdeg, p.degree());
    if (extra) maxdeg = std::max(maxdeg, extra->second.degree());
    for (int c = 0; c <= maxdeg; ++c) {
        std::vector<Rational> row(static_cast<size_t>(sys.nvars), Rational(0));
        for (const auto& [v, p] : var_polys) row[static_cast<size_t>(v)] += p.coeff(c);
        if (extra) row[static_cast<size_t>(extra->first)] += extra->second.coeff(c);
        sys.add_row(std::move(row), rhs_poly.coeff(c));
    }
}

// Adds the rows for  g_j - W_ij g_i - lambda*extra_ij = target_ij  for one
// pair. lambda_var < 0 means no lambda column.
void add_pair_rows(LinearSystem& sys, const SolveShape& sh, int i, int j,
                   const RationalFunction& w, const RationalFunction& target,
                   int lambda_var, const RationalFunction* extra) {
    Poly common_wd = w.den();
    Poly common_td = target.den();
    Poly common_ed = extra ? extra->den() : Poly::one();
    // Multiplier q_i q_j wd td ed clears every denominator in the equation.
    Poly mult_base = sh.q[static_cast<size_t>(i)] * sh.q[static_cast<size_t>(j)];
    std::vector<std::pair<int, Poly>> var_polys;
    Poly gj_mult = sh.q[static_cast<size_t>(i)] * common_wd * common_td * common_ed;
    for (int d = 0; d <= sh.maxdeg[static_cast<size_t>(j)]; ++d)
        var_polys.emplace_back(sh.offset[static_cast<size_t>(j)] + d,
                               Poly::monomial(d, Rational(1)) * gj_mult);
    Poly gi_mult = w.num() * sh.q[static_cast<size_t>(j)] * common_td * common_ed;
    for (int d = 0; d <= sh.maxdeg[static_cast<size_t>(i)]; ++d)
        var_polys.emplace_back(sh.offset[static_cast<size_t>(i)] + d,
                               -(Poly::monomial(d, Rational(1)) * gi_mult));
    Poly rhs = target.num() * mult_base * common_wd * common_ed;
    std::optional<std::pair<int, Poly>> lam;
    if (lambda_var >= 0 && extra)
        lam = std::make_pair(lambda_var,
                             extra->num() * mult_base * common_wd * common_td);
    emit_poly_rows(sys, var_polys, rhs, lam);
}

int start_bound(const AdditiveCocycle& m) {
    int b = 0;
    for (const auto& [k, f] : m.entries()) b = std::max(b, pole_order(f));
    for (const auto& [k, f] : m.twist().entries()) b = std::max(b, pole_order(f));
    return b;
}

int hard_stop(const AdditiveCocycle& m, int deg_twist) {
    int total = 0;
    for (const auto& [k, f] : m.entries())
        if (k.first < k.second) total += pole_order(f);
    for (const auto& [k, f] : m.twist().entries())
        if (k.first < k.second) total += pole_order(f);
    return total + std::abs(deg_twist) + 4;
}

std::optional<std::vector<RationalFunction>> try_split(const AdditiveCocycle& m, int bound) {
    const Cover& cov = m.cover();
    SolveShape sh = make_shape(cov, bound);
    LinearSystem sys;
    sys.nvars = sh.nvars;
    for (int i = 0; i < cov.size(); ++i)
        for (int j = i + 1; j < cov.size(); ++j)
            add_pair_rows(sys, sh, i, j, m.twist().entry(i, j), m.entry(i, j), -1, nullptr);
    GaussResult res = gauss_solve(sys);
    if (!res.consistent) return std::nullopt;
    std::vector<RationalFunction> g;
    for (int j = 0; j < cov.size(); ++j) {
        std::vector<Rational> cs(res.solution.begin() + sh.offset[static_cast<size_t>(j)],
                                 res.solution.begin() + sh.offset[static_cast<size_t>(j)] +
                                     sh.maxdeg[static_cast<size_t>(j)] + 1);
        g.emplace_back(Poly(std::move(cs)), sh.q[static_cast<size_t>(j)], cov.chart(j));
    }
    return g;
}

} // namespace

// ---------------------------------------------------------------------------
// Canonical window representative

std::vector<Rational> window_vector(const AdditiveCocycle& m) {
    const Cover& cov = m.cover();
    const UnitCocycle& W = m.twist();
    const int k = degree(W);
    if (k >= -1) return {};
    const int nc = cov.size();

    // De-twisted chain: M_j = m_{0j} * s_j with s_j = W_{j0}. The cocycle is
    // recovered from the chain, and the twisted coboundary action becomes the
    // plain difference action on functions constrained by div >= div(s).
    std::vector<Frac> s, M;
    s.push_back(Frac(Poly::one()));
    M.push_back(Frac());
    for (int j = 1; j < nc; ++j) {
        s.push_back(Frac::of(W.entry(j, 0)));
        M.push_back(Frac::of(m.entry(0, j)) * s.back());
    }

    // Candidate points: all finite excluded points plus 0.
    std::set<Rational> pts;
    pts.insert(Rational(0));
    for (const auto& ch : cov.charts())
        for (const auto& p : ch.excluded())
            if (!p.is_infinity()) pts.insert(p.value());

    // Local allowances d_p = ord_p(s_{j(p)}) and the bridge u with
    // div(u) = sum (d_p - d_p^std) p, where the standard model concentrates
    // the divisor at 0 with multiplicity -k.
    Frac u(Poly::one());
    for (const auto& pv : pts) {
        Point p(pv);
        int dp = 0;
        const Frac& sp = s[static_cast<size_t>(cov.chart_containing(p))];
        if (!sp.is_zero()) dp = ord_at(sp, p);
        int dstd = (pv == 0) ? -k : 0;
        int e = dp - dstd;
        if (e > 0) u = u * Frac(Poly::linear_root(pv).pow(e));
        else if (e < 0) u = u / Frac(Poly::linear_root(pv).pow(-e));
    }

    // Partial-fractions reduction of the adele of the class to 0-support.
    Frac phi;
    for (const auto& pv : pts) {
        if (pv == 0) continue;
        Point p(pv);
        Frac F = M[static_cast<size_t>(cov.chart_containing(p))] / u;
        if (!F.is_zero() && ord_at(F, p) < 0) phi = phi + principal_tail(F, pv);
    }
    {
        Frac Rinf = M[static_cast<size_t>(cov.chart_containing(Point::infinity()))] / u - phi;
        if (!Rinf.is_zero() && ord_at(Rinf, Point::infinity()) < 0)
            phi = phi + polynomial_part(Rinf);
    }

    Frac gamma = M[static_cast<size_t>(cov.chart_containing(Point(Rational(0))))] / u - phi;

    // Window coefficients: in the standard two-chart model the class of the
    // Cech representative x^w corresponds to the exponent w - k at 0, so the
    // window {x^{k+1}, ..., x^{-1}} reads off exponents 1..-k-1 of gamma.
    std::vector<Rational> win(static_cast<size_t>(-k - 1), Rational(0));
    if (!gamma.is_zero()) {
        auto cs = laurent_coeffs(gamma, Rational(0), 1, -k - 1);
        for (int e = 1; e <= -k - 1; ++e) win[static_cast<size_t>(e - 1)] = cs[static_cast<size_t>(e - 1)];
    }
    return win;
}

// ---------------------------------------------------------------------------
// Coboundary decision

ClassCertificate solve_coboundary(const AdditiveCocycle& m, int pole_bound) {
    if (pole_bound < 0) throw std::invalid_argument("pole_bound below 0");
    const int k = degree(m.twist());
    ClassCertificate cert;
    cert.window_degree = k;

    // The window decides triviality independently of any pole budget: a
    // nonzero window certifies NonSplit, a zero window guarantees that a
    // splitting exists and the bounded search below will reach it.
    std::vector<Rational> win = window_vector(m);
    bool win_zero = true;
    for (const auto& c : win)
        if (c != 0) { win_zero = false; break; }
    if (!win_zero) {
        cert.split = false;
        cert.window = std::move(win);
        return cert;
    }

    int b = std::max(pole_bound, start_bound(m));
    const int stop = std::max(b, hard_stop(m, k));
    for (;;) {
        if (auto g = try_split(m, b)) {
            cert.split = true;
            cert.splitting = std::move(*g);
            return cert;
        }
        if (b >= stop) break;
        b = std::min(stop, b + std::max(2, b / 2));
    }
    throw std::logic_error("coboundary search exhausted its completeness bound "
                           "on a class with zero window");
}

ScalarWitness class_equal_up_to_scalar(const AdditiveCocycle& m1, const AdditiveCocycle& m2) {
    if (m1.cover() != m2.cover())
        throw std::invalid_argument("class comparison across covers");
    if (!m1.twist().same_entries(m2.twist()))
        throw std::invalid_argument("class comparison requires identical twist cocycles");
    const Cover& cov = m1.cover();
    const int k = degree(m1.twist());

    int b = std::max(start_bound(m1), start_bound(m2));
    const int stop = std::max(b, hard_stop(m1, k) + hard_stop(m2, k));
    for (;;) {
        SolveShape sh = make_shape(cov, b);
        LinearSystem sys;
        sys.nvars = sh.nvars + 1;
        const int lambda_var = sh.nvars;
        for (int i = 0; i < cov.size(); ++i)
            for (int j = i + 1; j < cov.size(); ++j) {
                const RationalFunction& extra = m2.entry(i, j);
                add_pair_rows(sys, sh, i, j, m1.twist().entry(i, j), m1.entry(i, j),
                              lambda_var, &extra);
            }
        GaussResult res = gauss_solve(sys);
        if (res.consistent) {
            Rational lambda = res.solution[static_cast<size_t>(lambda_var)];
            if (lambda == 0) {
                // mu1 splits on its own; the preconditions exclude this.
                throw std::logic_error("scalar comparison hit a split class");
            }
            return {true, lambda};
        }
        if (b >= stop) return {false, Rational(0)};
        b = std::min(stop, b + std::max(2, b / 2));
    }
}

namespace {

int h1_at_bound(const UnitCocycle& twist, int bound, int gbound) {
    const Cover& cov = twist.cover();
    const int nc = cov.size();

    // Cocycles are chain-determined: m_{0j} free on U_{0j}, and
    // m_{jk} = m_{0k} - W_{jk} m_{0j} must be regular on U_{jk}. The h^1
    // value is dim Z - dim (Z  im delta), computed from exact ranks.
    struct ChainShape {
        std::vector<Poly> q;
        std::vector<int> maxdeg, offset;
        int nvars = 0;
    } ch;
    for (int j = 1; j < nc; ++j) {
        Chart ov = cov.overlap(0, j);
        Poly q = Poly::one();
        bool inf_exc = false;
        for (const auto& p : ov.excluded()) {
            if (p.is_infinity()) { inf_exc = true; continue; }
            q = q * Poly::linear_root(p.value()).pow(bound);
        }
        ch.offset.push_back(ch.nvars);
        ch.q.push_back(q);
        ch.maxdeg.push_back(q.degree() + (inf_exc ? bound : 0));
        ch.nvars += q.degree() + (inf_exc ? bound : 0) + 1;
    }

    // Regularity constraints on the chain: for 1 <= j < l, the combination
    // m_{0l} - W_{jl} m_{0j} may only have poles on the overlap's excluded
    // set. Assemble the numerator over a common denominator and require
    // divisibility at every other pole location.
    LinearSystem cons;
    cons.nvars = ch.nvars;
    auto add_regularity_rows = [&](LinearSystem& sys, int j, int l,
                                   int var_base_offset) {
        const RationalFunction& w = twist.entry(j, l);
        Chart ov = cov.overlap(j, l);
        const Poly& qj = ch.q[static_cast<size_t>(j - 1)];
        const Poly& ql = ch.q[static_cast<size_t>(l - 1)];
        Poly D = ql * qj * w.den();
        // Numerator N = p_l * qj * wden - wnum * p_j * ql, linear in coeffs.
        std::vector<std::pair<int, Poly>> terms;
        for (int d = 0; d <= ch.maxdeg[static_cast<size_t>(l - 1)]; ++d)
            terms.emplace_back(var_base_offset + ch.offset[static_cast<size_t>(l - 1)] + d,
                               Poly::monomial(d, Rational(1)) * qj * w.den());
        for (int d = 0; d <= ch.maxdeg[static_cast<size_t>(j - 1)]; ++d)
            terms.emplace_back(var_base_offset + ch.offset[static_cast<size_t>(j - 1)] + d,
                               -(Poly::monomial(d, Rational(1)) * w.num() * ql));
        // Finite illegal points.
        std::set<Rational> denpts;
        {
            Poly sf = squarefree_part(D);
            for (const auto& chx : cov.charts())
                for (const auto& p : chx.excluded())
                    if (!p.is_infinity() && sf.eval(p.value()) == 0) denpts.insert(p.value());
        }
        for (const auto& pv : denpts) {
            if (!ov.contains(Point(pv))) continue; // excluded on the overlap: pole allowed
            int r = D.root_multiplicity(pv);
            for (int o = 0; o < r; ++o) {
                std::vector<Rational> row(static_cast<size_t>(sys.nvars), Rational(0));
                for (const auto& [v, p] : terms) row[static_cast<size_t>(v)] += p.shift(pv).coeff(o);
                sys.add_row(std::move(row), Rational(0));
            }
        }
        // Pole at infinity: only allowed if infinity is excluded from the overlap.
        if (ov.contains_infinity()) {
            int degD = D.degree();
            int maxN = 0;
            for (const auto& [v, p] : terms) maxN = std::max(maxN, p.degree());
            for (int c = degD + 1; c <= maxN; ++c) {
                std::vector<Rational> row(static_cast<size_t>(sys.nvars), Rational(0));
                for (const auto& [v, p] : terms) row[static_cast<size_t>(v)] += p.coeff(c);
                sys.add_row(std::move(row), Rational(0));
            }
        }
    };
    for (int j = 1; j < nc; ++j)
        for (int l = j + 1; l < nc; ++l) add_regularity_rows(cons, j, l, 0);
    int dimZ = ch.nvars - gauss_solve(cons).rank;

    // Joint system: chain(a) = delta(g) plus the regularity constraints.
    SolveShape gs = make_shape(cov, gbound);
    LinearSystem joint;
    joint.nvars = ch.nvars + gs.nvars;
    for (int j = 1; j < nc; ++j) {
        // a-representation of m_{0j} minus (g_j - W_{0j} g_0) = 0, cleared by
        // q_{0j} * qg_0 * qg_j * wden.
        const RationalFunction& w = twist.entry(0, j);
        const Poly& qa = ch.q[static_cast<size_t>(j - 1)];
        const Poly& q0 = gs.q[0];
        const Poly& qj = gs.q[static_cast<size_t>(j)];
        std::vector<std::pair<int, Poly>> terms;
        for (int d = 0; d <= ch.maxdeg[static_cast<size_t>(j - 1)]; ++d)
            terms.emplace_back(ch.offset[static_cast<size_t>(j - 1)] + d,
                               Poly::monomial(d, Rational(1)) * q0 * qj * w.den());
        for (int d = 0; d <= gs.maxdeg[static_cast<size_t>(j)]; ++d)
            terms.emplace_back(ch.nvars + gs.offset[static_cast<size_t>(j)] + d,
                               -(Poly::monomial(d, Rational(1)) * qa * q0 * w.den()));
        for (int d = 0; d <= gs.maxdeg[0]; ++d)
            terms.emplace_back(ch.nvars + gs.offset[0] + d,
                               Poly::monomial(d, Rational(1)) * w.num() * qa * qj);
        int maxdeg = 0;
        for (const auto& [v, p] : terms) maxdeg = std::max(maxdeg, p.degree());
        for (int c = 0; c <= maxdeg; ++c) {
            std::vector<Rational> row(static_cast<size_t>(joint.nvars), Rational(0));
            for (const auto& [v, p] : terms) row[static_cast<size_t>(v)] += p.coeff(c);
            joint.add_row(std::move(row), Rational(0));
        }
    }
    for (int j = 1; j < nc; ++j)
        for (int l = j + 1; l < nc; ++l) add_regularity_rows(joint, j, l, 0);
    int dimS = joint.nvars - gauss_solve(joint).rank;

    // Kernel of delta on the bounded cochains: g_j = W_{0j} g_0 for all j.
    LinearSystem kerd;
    kerd.nvars = gs.nvars;
    for (int j = 1; j < nc; ++j) {
        const RationalFunction& w = twist.entry(0, j);
        std::vector<std::pair<int, Poly>> terms;
        for (int d = 0; d <= gs.maxdeg[static_cast<size_t>(j)]; ++d)
            terms.emplace_back(gs.offset[static_cast<size_t>(j)] + d,
                               Poly::monomial(d, Rational(1)) * gs.q[0] * w.den());
        for (int d = 0; d <= gs.maxdeg[0]; ++d)
            terms.emplace_back(gs.offset[0] + d,
                               -(Poly::monomial(d, Rational(1)) * w.num() *
                                 gs.q[static_cast<size_t>(j)]));
        int maxdeg = 0;
        for (const auto& [v, p] : terms) maxdeg = std::max(maxdeg, p.degree());
        for (int c = 0; c <= maxdeg; ++c) {
            std::vector<Rational> row(static_cast<size_t>(kerd.nvars), Rational(0));
            for (const auto& [v, p] : terms) row[static_cast<size_t>(v)] += p.coeff(c);
            kerd.add_row(std::move(row), Rational(0));
        }
    }
    int dimKer = gs.nvars - gauss_solve(kerd).rank;

    return dimZ - (dimS - dimKer);
}

} // namespace

int h1_dimension(const UnitCocycle& twist) {
    const int k = degree(twist);
    int maxpole = 0, total = 0;
    for (const auto& [key, f] : twist.entries())
        if (key.first < key.second) {
            maxpole = std::max(maxpole, pole_order(f));
            total += pole_order(f);
        }
    // Completeness bound for the cokernel rank; the value is evaluated at
    // increasing budgets and accepted once two consecutive budgets agree.
    // For a twist of negative degree the splitting of a bounded cocycle is
    // unique, with cochain poles bounded by the chain budget plus twice the
    // largest entry pole order plus |deg|; the cochain side carries that
    // slack on top of the chain budget.
    const int cap = total + std::abs(k) + 4;
    const int slack = maxpole + std::abs(k) + 2;
    int prev = -1;
    for (int b = std::max(2, maxpole); b <= cap; ++b) {
        int cur = h1_at_bound(twist, b, b + slack);
        if (cur == prev) return cur;
        prev = cur;
    }
    return h1_at_bound(twist, cap, cap + slack);
}

} // namespace pmc
