#include "pmc/spectrum.hpp"

#include <algorithm>
#include <sstream>

namespace pmc {

namespace {

std::vector<Rational> series_mul(const std::vector<Rational>& a,
                                 const std::vector<Rational>& b, int n) {
    std::vector<Rational> r(static_cast<size_t>(n), Rational(0));
    for (int i = 0; i < std::min<int>(n, static_cast<int>(a.size())); ++i)
        for (int j = 0; i + j < n && j < static_cast<int>(b.size()); ++j)
            r[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    return r;
}

// Value of the function f(s, t) along a t-series s(t), as a t-series mod t^N.
std::vector<Rational> substitute_parameter(const TruncBiv& f,
                                           const std::vector<Rational>& s_series) {
    const int n = f.trunc();
    int sdeg = 0;
    for (int k = 0; k < n; ++k) sdeg = std::max(sdeg, f.coeff(k).degree());
    std::vector<Rational> res(static_cast<size_t>(n), Rational(0));
    for (int d = sdeg; d >= 0; --d) {
        res = series_mul(res, s_series, n);
        for (int k = 0; k < n; ++k) res[static_cast<size_t>(k)] += f.coeff(k).coeff(d);
    }
    return res;
}

} // namespace

std::string LinForm::str() const {
    std::ostringstream os;
    bool first = true;
    auto term = [&](const Rational& cf, const char* var) {
        if (cf == 0) return;
        if (!first && cf > 0) os << "+";
        if (cf == -1 && *var) os << "-";
        else if (cf != 1 || !*var) os << cf;
        os << var;
        first = false;
    };
    term(a, "X");
    term(b, "Y");
    term(c, "");
    if (first) os << "0";
    return os.str();
}

LinForm parse_linear_form(const std::string& s) {
    LinForm out;
    size_t i = 0;
    auto skip = [&]() { while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i; };
    skip();
    bool any = false;
    while (i < s.size()) {
        skip();
        Rational sign(1);
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
            skip();
        }
        if (i >= s.size()) break;
        // optional coefficient
        Rational coef(1);
        bool saw_num = false;
        size_t j = i;
        while (j < s.size() && (isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
        if (j > i) {
            coef = parse_rational(s.substr(i, j - i));
            saw_num = true;
            i = j;
        }
        skip();
        if (i < s.size() && s[i] == '*') { ++i; skip(); }
        if (i < s.size() && (s[i] == 'X' || s[i] == 'x')) {
            out.a += sign * coef;
            ++i;
        } else if (i < s.size() && (s[i] == 'Y' || s[i] == 'y')) {
            out.b += sign * coef;
            ++i;
        } else if (saw_num) {
            out.c += sign * coef;
        } else {
            throw std::invalid_argument("bad linear form: " + s);
        }
        any = true;
        skip();
    }
    if (!any && s.find('0') == std::string::npos)
        throw std::invalid_argument("bad linear form: " + s);
    return out;
}

PlaneLineFamily::PlaneLineFamily(LinForm f, std::vector<LinForm> h)
    : f_(std::move(f)), h_(std::move(h)), p0x_(0), p0y_(0) {
    if (f_.a == 0 && f_.b == 0)
        throw std::invalid_argument("the base form must define a line");
    if (h_.size() < 2) throw std::invalid_argument("need at least two components");
    if (f_.b != 0) {
        p0x_ = Rational(0);
        p0y_ = -f_.c / f_.b;
    } else {
        p0x_ = -f_.c / f_.a;
        p0y_ = Rational(0);
    }
    for (size_t i = 0; i < h_.size(); ++i) {
        // Reject h_i = c f with c != 0 (the component would degenerate at
        // t = -1/c); h_i = 0 is the constant family C x A^1 and is fine.
        const LinForm& hi = h_[i];
        if (!hi.is_zero()) {
            bool prop = (hi.a * f_.b == hi.b * f_.a) && (hi.a * f_.c == hi.c * f_.a) &&
                        (hi.b * f_.c == hi.c * f_.b);
            if (prop)
                throw std::invalid_argument("component " + std::to_string(i) +
                                            " is proportional to the base line");
        }
        for (size_t j = i + 1; j < h_.size(); ++j)
            if (restrict_to_base(h_[i] - h_[j]).is_zero())
                throw std::invalid_argument("degenerate family: h_" + std::to_string(i) +
                                            " - h_" + std::to_string(j) +
                                            " vanishes on the base line");
    }
}

Poly PlaneLineFamily::restrict_to_base(const LinForm& w) const {
    // w(p0 + s (b, -a)) = w(p0) + s (w.a b - w.b a)
    return Poly(std::vector<Rational>{w.eval(p0x_, p0y_), w.a * f_.b - w.b * f_.a});
}

TruncBiv PlaneLineFamily::restrict_linear(int i, const LinForm& w, int trunc) const {
    const LinForm& hi = h_.at(static_cast<size_t>(i));
    Rational n2 = f_.a * f_.a + f_.b * f_.b;
    Rational di = f_.a * hi.a + f_.b * hi.b;
    Rational hp = hi.eval(p0x_, p0y_);
    // g_i(t) = -hp t / (n2 + di t)
    std::vector<Rational> g(static_cast<size_t>(trunc), Rational(0));
    {
        Rational cur = -hp / n2;
        for (int k = 1; k < trunc; ++k) {
            g[static_cast<size_t>(k)] = cur;
            cur *= -di / n2;
        }
    }
    TruncBiv out(trunc);
    // t = 0 part: w(p(s)).
    out.coeff(0) = restrict_to_base(w);
    Rational normal = w.a * f_.a + w.b * f_.b;       // pairing with (a, b)
    Rational drift = w.a * hi.b - w.b * hi.a;        // s-direction drift
    for (int k = 1; k < trunc; ++k) {
        Poly pk(std::vector<Rational>{normal * g[static_cast<size_t>(k)],
                                      k == 1 ? drift : Rational(0)});
        out.coeff(k) = pk;
    }
    return out;
}

Rational PlaneLineFamily::base_parameter(const Rational& X, const Rational& Y) const {
    if (f_.eval(X, Y) != 0)
        throw std::invalid_argument("point is not on the base line");
    if (f_.b != 0) return (X - p0x_) / f_.b;
    return -(Y - p0y_) / f_.a;
}

PlaneLineFamily::Branch PlaneLineFamily::intersection_branch(int i, int j, int trunc) const {
    LinForm w = h_.at(static_cast<size_t>(i)) - h_.at(static_cast<size_t>(j));
    Branch br;
    Poly base = restrict_to_base(w);
    if (base.coeff(1) == 0) {
        // The moving lines are parallel at t = 0 (or always); the branch
        // meets the special fiber at infinity.
        br.finite = false;
        br.base = Point::infinity();
        return br;
    }
    br.finite = true;
    auto solve_on = [&](int comp) {
        TruncBiv r = restrict_linear(comp, w, trunc);
        // r = A(t) s + B(t)
        Poly acoef, bcoef;
        std::vector<Rational> A(static_cast<size_t>(trunc)), B(static_cast<size_t>(trunc));
        for (int k = 0; k < trunc; ++k) {
            A[static_cast<size_t>(k)] = r.coeff(k).coeff(1);
            B[static_cast<size_t>(k)] = r.coeff(k).coeff(0);
        }
        auto inv = series_inverse(Poly(A), trunc);
        std::vector<Rational> s = series_mul(B, inv, trunc);
        for (auto& cc : s) cc = -cc;
        return s;
    };
    br.s_on_i = solve_on(i);
    br.s_on_j = solve_on(j);
    br.base = Point(br.s_on_i.front());
    if (br.s_on_i.front() != br.s_on_j.front())
        throw std::logic_error("branch base parameter mismatch");
    return br;
}

int TruncatedTuple::order_of(int i) const {
    const TruncBiv& f = alpha.at(static_cast<size_t>(i));
    for (int k = 0; k < f.trunc(); ++k)
        if (!f.coeff(k).is_zero()) return k;
    return f.trunc();
}

TruncatedTuple tuple_add(const TruncatedTuple& u, const TruncatedTuple& v) {
    if (u.alpha.size() != v.alpha.size()) throw std::invalid_argument("tuple size mismatch");
    TruncatedTuple r;
    for (size_t i = 0; i < u.alpha.size(); ++i) r.alpha.push_back(u.alpha[i] + v.alpha[i]);
    return r;
}

TruncatedTuple tuple_mul(const TruncatedTuple& u, const TruncatedTuple& v) {
    if (u.alpha.size() != v.alpha.size()) throw std::invalid_argument("tuple size mismatch");
    TruncatedTuple r;
    for (size_t i = 0; i < u.alpha.size(); ++i) r.alpha.push_back(u.alpha[i] * v.alpha[i]);
    return r;
}

bool membership_oracle(const PlaneLineFamily& fam, const TruncatedTuple& tuple,
                       const Point& x) {
    if (x.is_infinity())
        throw std::invalid_argument("membership is checked at finite points of C");
    const int n = fam.components();
    if (static_cast<int>(tuple.alpha.size()) != n)
        throw std::invalid_argument("tuple size does not match the family");
    const int N = tuple.trunc();
    if (N < 2) throw std::invalid_argument("truncation must be >= 2");
    for (const auto& a : tuple.alpha)
        if (a.trunc() != N) throw std::invalid_argument("mixed truncations in tuple");

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // Agreement on C.
            if (tuple.alpha[static_cast<size_t>(i)].coeff(0) !=
                tuple.alpha[static_cast<size_t>(j)].coeff(0))
                return false;
            // Agreement along the intersection branch through x, if any.
            auto br = fam.intersection_branch(i, j, N);
            if (!br.finite || br.base != x) continue;
            auto vi = substitute_parameter(tuple.alpha[static_cast<size_t>(i)], br.s_on_i);
            auto vj = substitute_parameter(tuple.alpha[static_cast<size_t>(j)], br.s_on_j);
            if (vi != vj) return false;
        }
    return true;
}

std::string SpectrumResult::str() const {
    std::ostringstream os;
    os << "p = [";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) os << "; ";
        for (size_t j = 0; j < p[i].size(); ++j) {
            if (j) os << " ";
            os << p[i][j];
        }
    }
    os << "], q = [";
    for (size_t i = 0; i < q.size(); ++i) {
        if (i) os << " ";
        os << q[i];
    }
    os << "]";
    return os.str();
}

SpectrumResult compute_spectrum(const PlaneLineFamily& fam, int trunc) {
    const int n = fam.components();
    SpectrumResult out;
    out.p.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // Witness (F_j|_{C_i}, F_j|_{C_j}) = (t (h_j - h_i)|_{C_i}, 0):
            // t-order exactly 1 with lambda|_C != 0, and no member of order 0
            // can exist because agreement on C forces the pair (lambda, 0) to
            // have lambda|_C = 0. Hence p_ij = 1.
            TruncBiv lam = fam.restrict_linear(i, fam.h(j) - fam.h(i), trunc);
            SpectrumResult::Witness w;
            w.i = i;
            w.j = j;
            w.lambda_on_base = fam.restrict_to_base(fam.h(j) - fam.h(i));
            auto br = fam.intersection_branch(i, j, trunc);
            w.branch_point = br.finite ? br.base : Point::infinity();
            w.r = 1;
            w.witness = "(t*(" + poly_to_string(lam.coeff(0), "s") + " + O(t)), 0)";
            if (br.finite) {
                // The witness vanishes along the branch by construction.
                auto v = substitute_parameter(lam.times_t(), br.s_on_i);
                for (const auto& cc : v)
                    if (cc != 0) throw std::logic_error("spectrum witness fails on the branch");
            }
            out.p[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
            out.p[static_cast<size_t>(j)][static_cast<size_t>(i)] = 1;
            out.witnesses.push_back(std::move(w));
        }
    for (int i = 0; i < n; ++i) {
        int s = 0;
        for (int j = 0; j < n; ++j) s += out.p[static_cast<size_t>(i)][static_cast<size_t>(j)];
        out.q.push_back(s);
    }
    return out;
}

UltrametricReport ultrametric_check(const std::vector<std::vector<int>>& p) {
    const int n = static_cast<int>(p.size());
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(p[static_cast<size_t>(i)].size()) != n)
            throw std::invalid_argument("spectrum matrix is not square");
        if (p[static_cast<size_t>(i)][static_cast<size_t>(i)] != 0)
            throw std::invalid_argument("spectrum diagonal must be zero");
        for (int j = 0; j < n; ++j)
            if (p[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                p[static_cast<size_t>(j)][static_cast<size_t>(i)])
                throw std::invalid_argument("spectrum matrix must be symmetric");
    }
    UltrametricReport rep;
    for (int i = 0; i < n && rep.ok; ++i)
        for (int j = i + 1; j < n && rep.ok; ++j)
            for (int k = j + 1; k < n && rep.ok; ++k) {
                int a = p[static_cast<size_t>(i)][static_cast<size_t>(j)];
                int b = p[static_cast<size_t>(j)][static_cast<size_t>(k)];
                int c = p[static_cast<size_t>(i)][static_cast<size_t>(k)];
                std::array<int, 3> v = {a, b, c};
                std::sort(v.begin(), v.end());
                if (v[0] != v[1]) {
                    rep.ok = false;
                    rep.i = i;
                    rep.j = j;
                    rep.k = k;
                }
            }
    return rep;
}

TruncatedTuple generator_u(const PlaneLineFamily& fam, int i, int trunc) {
    TruncatedTuple u;
    for (int k = 0; k < fam.components(); ++k) {
        if (k == i) {
            u.alpha.emplace_back(TruncBiv(trunc));
        } else {
            u.alpha.push_back(fam.restrict_linear(k, fam.h(k) - fam.h(i), trunc).times_t());
        }
    }
    return u;
}

GeneratorProduct generator_products(const PlaneLineFamily& fam, const std::vector<int>& I,
                                    int trunc) {
    const int n = fam.components();
    if (static_cast<int>(I.size()) >= n)
        throw std::invalid_argument("I must be a proper subset of the components");
    GeneratorProduct out;
    TruncatedTuple acc;
    for (int k = 0; k < n; ++k)
        acc.alpha.push_back(TruncBiv::from_poly(Poly::one(), trunc));
    for (int i : I) acc = tuple_mul(acc, generator_u(fam, i, trunc));
    out.tuple = acc;
    for (int k = 0; k < n; ++k) {
        int m = acc.order_of(k);
        out.order.push_back(m);
        out.leading.push_back(m < trunc ? acc.alpha[static_cast<size_t>(k)].coeff(m) : Poly());
    }
    return out;
}

std::string ObstructionCertificate::str() const {
    std::ostringstream os;
    os << "no fragmented lift: (h_" << vanishing + 1 << " - h_" << base + 1
       << ") vanishes at x while (h_" << nonvanishing + 1 << " - h_" << base + 1
       << ")(x) = " << value_nonvanishing
       << "; a lift would force the two restrictions to agree at x up to a unit";
    return os.str();
}

std::optional<ObstructionCertificate> fragmented_obstruction(const PlaneLineFamily& fam,
                                                             const Point& x) {
    if (fam.components() < 3)
        throw std::invalid_argument("the obstruction needs at least three components");
    if (x.is_infinity()) throw std::invalid_argument("x must be a finite point of C");
    const int n = fam.components();
    bool any_zero = false, any_nonzero = false;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rational v = fam.restrict_to_base(fam.h(i) - fam.h(j)).eval(x.value());
            (v == 0 ? any_zero : any_nonzero) = true;
        }
    if (!any_zero || !any_nonzero) return std::nullopt;
    // A common-base witness always exists once both kinds occur.
    for (int k = 0; k < n; ++k) {
        int zi = -1, nz = -1;
        Rational nzval(0);
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            Rational v = fam.restrict_to_base(fam.h(i) - fam.h(k)).eval(x.value());
            if (v == 0 && zi < 0) zi = i;
            if (v != 0 && nz < 0) { nz = i; nzval = v; }
        }
        if (zi >= 0 && nz >= 0) {
            ObstructionCertificate cert;
            cert.base = k;
            cert.vanishing = zi;
            cert.nonvanishing = nz;
            cert.value_nonvanishing = nzval;
            return cert;
        }
    }
    throw std::logic_error("witness search failed despite mixed evaluations");
}

bool pi_divisibility_check(const PlaneLineFamily& fam, const TruncatedTuple& tuple,
                           const Point& x) {
    if (!membership_oracle(fam, tuple, x))
        throw std::invalid_argument("pi divisibility requires a member");
    auto spec = compute_spectrum(fam, tuple.trunc());
    for (int i = 0; i < fam.components(); ++i)
        if (tuple.order_of(i) <= spec.q[static_cast<size_t>(i)])
            throw std::invalid_argument("coordinate t-orders must exceed q_i");
    TruncatedTuple shifted;
    for (const auto& a : tuple.alpha) shifted.alpha.push_back(a.div_t());
    return membership_oracle(fam, shifted, x);
}

namespace {

// t-adic division of b by a over Q[s]; a's constant coefficient must be a
// nonzero polynomial dividing exactly at every step.
TruncBiv series_div(const TruncBiv& b, const TruncBiv& a) {
    const int n = b.trunc();
    if (a.coeff(0).is_zero()) throw std::invalid_argument("division by a non-unit series");
    TruncBiv q(n);
    for (int k = 0; k < n; ++k) {
        Poly acc = b.coeff(k);
        for (int l = 1; l <= k; ++l) acc = acc - a.coeff(l) * q.coeff(k - l);
        q.coeff(k) = acc.exact_div(a.coeff(0)); // throws when not a multiple
    }
    return q;
}

} // namespace

bool division_lemma_check(const PlaneLineFamily& fam, const TruncatedTuple& u,
                          const TruncatedTuple& beta, const Point& x) {
    const int n = fam.components();
    const int N = u.trunc();
    if (!membership_oracle(fam, u, x) || !membership_oracle(fam, beta, x))
        throw std::invalid_argument("division lemma requires member tuples");
    std::vector<int> m;
    std::vector<TruncBiv> alpha;
    int M = 0;
    for (int i = 0; i < n; ++i) {
        int mi = u.order_of(i);
        if (mi >= N)
            throw std::invalid_argument("u has a zero coordinate; alpha_i|_C would vanish");
        TruncBiv ai = u.alpha[static_cast<size_t>(i)];
        for (int s = 0; s < mi; ++s) ai = ai.div_t();
        ai = ai.truncated(N);
        if (ai.coeff(0).is_zero())
            throw std::invalid_argument("alpha_i restricts to zero on C");
        m.push_back(mi);
        alpha.push_back(ai);
        M += mi;
    }
    // Sufficient coprimality probe at x for i >= 2: alpha_i and the product
    // of the (h_i - h_k)|_C, k < i, must not vanish simultaneously at x.
    for (int i = 1; i < n; ++i) {
        Rational av = alpha[static_cast<size_t>(i)].coeff(0).eval(x.value());
        Rational pv(1);
        for (int k = 0; k < i; ++k)
            pv *= fam.restrict_to_base(fam.h(i) - fam.h(k)).eval(x.value());
        if (av == 0 && pv == 0)
            throw std::invalid_argument("coprimality hypothesis fails at x");
    }
    TruncatedTuple quot;
    for (int i = 0; i < n; ++i) {
        TruncBiv gi(N);
        try {
            gi = series_div(beta.alpha[static_cast<size_t>(i)], alpha[static_cast<size_t>(i)]);
        } catch (const std::domain_error&) {
            throw std::invalid_argument("beta_" + std::to_string(i) +
                                        " is not a multiple of alpha_" + std::to_string(i));
        }
        int shift = M - m[static_cast<size_t>(i)];
        TruncBiv lifted(N);
        for (int k = 0; k + shift < N; ++k) lifted.coeff(k + shift) = gi.coeff(k);
        quot.alpha.push_back(lifted);
    }
    return membership_oracle(fam, quot, x);
}

bool cancellation_check(const PlaneLineFamily& fam, const TruncatedTuple& u,
                        const TruncatedTuple& beta, const Point& x) {
    if (!membership_oracle(fam, u, x))
        throw std::invalid_argument("cancellation requires u to be a member");
    for (int i = 0; i < fam.components(); ++i)
        if (u.alpha[static_cast<size_t>(i)].coeff(0).eval(x.value()) == 0)
            throw std::invalid_argument("u_i must be a unit at x");
    bool prod_member = membership_oracle(fam, tuple_mul(beta, u), x);
    if (!prod_member) return true; // hypothesis empty, nothing to contradict
    return membership_oracle(fam, beta, x);
}

} // namespace pmc
