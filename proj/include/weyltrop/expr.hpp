#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "weyltrop/poly.hpp"

namespace weyltrop {

// Fraction of Laurent polynomials. No reduction to lowest terms is ever
// performed; equality is semantic via cross multiplication. The
// subtraction-free flag is structural: set for positive-coefficient atoms,
// propagated through add/mul/div, cleared by sub.
struct RationalExpression {
    LaurentPoly num;
    LaurentPoly den = LaurentPoly::one();
    bool sub_free = true;

    RationalExpression() : num(LaurentPoly::zero()) {}
    explicit RationalExpression(LaurentPoly p)
        : num(std::move(p)) {
        sub_free = num.all_coeffs_positive();
    }
    RationalExpression(LaurentPoly n, LaurentPoly d, bool sf)
        : num(std::move(n)), den(std::move(d)), sub_free(sf) {
        if (den.is_zero()) throw DivisionByZero("zero denominator");
    }

    static RationalExpression variable(VarId x) {
        return RationalExpression(LaurentPoly::variable(x));
    }
    static RationalExpression constant(const Rat& c) {
        return RationalExpression(LaurentPoly(c));
    }
    static RationalExpression from_coeff(const CoeffElement& c) {
        return RationalExpression(LaurentPoly(c));
    }
    static RationalExpression from_monomial(const CoeffMonomial& m) {
        return RationalExpression(LaurentPoly(CoeffElement(m)));
    }

    bool is_zero() const { return num.is_zero(); }
};

inline RationalExpression expr_add(const RationalExpression& a, const RationalExpression& b) {
    return RationalExpression(a.num * b.den + b.num * a.den, a.den * b.den,
                              a.sub_free && b.sub_free);
}

inline RationalExpression expr_sub(const RationalExpression& a, const RationalExpression& b) {
    return RationalExpression(a.num * b.den - b.num * a.den, a.den * b.den, false);
}

inline RationalExpression expr_mul(const RationalExpression& a, const RationalExpression& b) {
    return RationalExpression(a.num * b.num, a.den * b.den, a.sub_free && b.sub_free);
}

inline RationalExpression expr_div(const RationalExpression& a, const RationalExpression& b) {
    if (b.num.is_zero()) throw DivisionByZero("expr_div by zero expression");
    return RationalExpression(a.num * b.den, a.den * b.num, a.sub_free && b.sub_free);
}

inline RationalExpression expr_pow(const RationalExpression& a, int e) {
    if (e >= 0) return RationalExpression(pow(a.num, e), pow(a.den, e), a.sub_free);
    if (a.num.is_zero()) throw DivisionByZero("negative power of zero expression");
    return RationalExpression(pow(a.den, -e), pow(a.num, -e), a.sub_free);
}

inline bool expr_equals(const RationalExpression& a, const RationalExpression& b) {
    return a.num * b.den == b.num * a.den;
}

using VarBindings = std::map<VarId, RationalExpression>;
using ParamBindings = std::map<ParamId, CoeffMonomial>;

// Substitute variables (by rational expressions) and parameters (by
// monomials) into a Laurent polynomial. Bound variables are brought to a
// single common denominator so the result does not blow up term by term.
inline RationalExpression subst_poly(const LaurentPoly& p, const VarBindings& vars,
                                     const ParamBindings& params = {}) {
    if (p.is_zero()) return RationalExpression();

    // exponent range per bound variable
    std::map<VarId, std::pair<int, int>> range;
    for (const auto& [e, c] : p.terms)
        for (const auto& [v, x] : e) {
            if (!vars.count(v)) continue;
            auto [it, fresh] = range.emplace(v, std::make_pair(std::min(x, 0), std::max(x, 0)));
            if (!fresh) {
                it->second.first = std::min(it->second.first, x);
                it->second.second = std::max(it->second.second, x);
            }
        }
    for (auto& [v, r] : range) {
        r.first = std::min(r.first, 0);
        r.second = std::max(r.second, 0);
    }

    // cached powers of each binding's num/den
    struct Cached {
        std::vector<LaurentPoly> npow, dpow;  // [0 .. hi-lo]
        int lo, hi;
    };
    std::map<VarId, Cached> cache;
    bool sf = true;
    for (const auto& [v, r] : range) {
        const RationalExpression& b = vars.at(v);
        sf = sf && b.sub_free;
        Cached c;
        c.lo = r.first;
        c.hi = r.second;
        int span = r.second - r.first;
        c.npow.resize(static_cast<size_t>(span) + 1);
        c.dpow.resize(static_cast<size_t>(span) + 1);
        c.npow[0] = LaurentPoly::one();
        c.dpow[0] = LaurentPoly::one();
        for (int i = 1; i <= span; ++i) {
            c.npow[static_cast<size_t>(i)] = c.npow[static_cast<size_t>(i) - 1] * b.num;
            c.dpow[static_cast<size_t>(i)] = c.dpow[static_cast<size_t>(i) - 1] * b.den;
        }
        cache.emplace(v, std::move(c));
    }

    LaurentPoly nout;
    for (const auto& [e, c] : p.terms) {
        CoeffElement cc = params.empty() ? c : subst_params(c, params);
        LaurentPoly term(cc);
        VarExps passthrough;
        for (const auto& [v, x] : e) {
            auto it = cache.find(v);
            if (it == cache.end()) {
                passthrough[v] = x;
                continue;
            }
            const Cached& cp = it->second;
            // binding^x times the global clearing factor n^{-lo} d^{hi}
            term = term * cp.npow[static_cast<size_t>(x - cp.lo)] *
                   cp.dpow[static_cast<size_t>(cp.hi - x)];
        }
        for (const auto& [v, cp] : cache)
            if (!e.count(v))
                term = term * cp.npow[static_cast<size_t>(-cp.lo)] *
                       cp.dpow[static_cast<size_t>(cp.hi)];
        if (!passthrough.empty())
            term = term * LaurentPoly::monomial(passthrough, CoeffElement::one());
        nout = nout + term;
    }

    LaurentPoly dout = LaurentPoly::one();
    for (const auto& [v, cp] : cache)
        dout = dout * cp.npow[static_cast<size_t>(-cp.lo)] * cp.dpow[static_cast<size_t>(cp.hi)];

    return RationalExpression(std::move(nout), std::move(dout),
                              sf && p.all_coeffs_positive());
}

inline RationalExpression substitute(const RationalExpression& e, const VarBindings& vars,
                                     const ParamBindings& params = {}) {
    RationalExpression n = subst_poly(e.num, vars, params);
    RationalExpression d = subst_poly(e.den, vars, params);
    if (d.is_zero()) throw DivisionByZero("substitution produced zero denominator");
    RationalExpression r = expr_div(n, d);
    r.sub_free = r.sub_free && e.sub_free;
    return r;
}

// ---------------------------------------------------------------------------
// Numeric specialization

using ParamValues = std::map<ParamId, Rat>;  // values assigned to the D-th roots
using VarValues = std::map<VarId, Rat>;

inline Rat eval_coeff(const CoeffElement& c, long D, const ParamValues& roots) {
    Rat out = 0;
    for (const auto& [e, k] : c.terms) {
        Rat m = k;
        for (const auto& [p, x] : e) {
            Rat scaled = x * D;
            if (denominator(scaled) != 1)
                throw NonClearedExponent("exponent not cleared by root order D");
            auto it = roots.find(p);
            if (it == roots.end()) throw DegenerateSpecialization("missing parameter value");
            m *= rat_pow(it->second, static_cast<long>(numerator(scaled)));
        }
        out += m;
    }
    return out;
}

inline Rat eval_poly(const LaurentPoly& p, long D, const ParamValues& roots,
                     const VarValues& vals) {
    Rat out = 0;
    for (const auto& [e, c] : p.terms) {
        Rat m = eval_coeff(c, D, roots);
        for (const auto& [v, x] : e) {
            auto it = vals.find(v);
            if (it == vals.end()) throw DegenerateSpecialization("missing variable value");
            m *= rat_pow(it->second, x);
        }
        out += m;
    }
    return out;
}

inline Rat specialize_numeric(const RationalExpression& e, long D, const ParamValues& roots,
                              const VarValues& vals) {
    Rat d = eval_poly(e.den, D, roots, vals);
    if (d == 0) throw PoleAtPoint("denominator vanishes at the point");
    return eval_poly(e.num, D, roots, vals) / d;
}

// Smallest D clearing every parameter-exponent denominator in e.
inline long clearing_root_order(const RationalExpression& e) {
    Int L = 1;
    auto scan = [&L](const LaurentPoly& p) {
        for (const auto& [ve, c] : p.terms)
            for (const auto& [pe, k] : c.terms)
                for (const auto& [pid, x] : pe) L = int_lcm(L, denominator(x));
    };
    scan(e.num);
    scan(e.den);
    return static_cast<long>(L);
}

// ---------------------------------------------------------------------------
// Ultra-discretization: a*b -> a+b, a/b -> a-b, a+b -> min(a,b).

using ParamPoint = std::map<ParamId, Rat>;
using VarPoint = std::map<VarId, Rat>;

inline Rat ud_poly(const LaurentPoly& p, const ParamPoint& pp, const VarPoint& vp) {
    if (p.is_zero()) throw NotSubtractionFree("ultra-discretization of zero");
    bool first = true;
    Rat best = 0;
    for (const auto& [ve, c] : p.terms) {
        Rat base = 0;
        for (const auto& [v, x] : ve) base += Rat(x) * vp.at(v);
        for (const auto& [pe, k] : c.terms) {
            if (k <= 0) throw NotSubtractionFree("negative coefficient");
            Rat t = base;
            for (const auto& [pid, x] : pe) t += x * pp.at(pid);
            if (first || t < best) {
                best = t;
                first = false;
            }
        }
    }
    return best;
}

inline Rat ultradiscrete_eval(const RationalExpression& e, const ParamPoint& pp,
                              const VarPoint& vp) {
    if (!e.sub_free) throw NotSubtractionFree();
    return ud_poly(e.num, pp, vp) - ud_poly(e.den, pp, vp);
}

// ---------------------------------------------------------------------------
// Univariate polynomials over the rationals (degree measurement support).

struct UniPoly {
    std::vector<Rat> c;  // c[i] coefficient of x^i

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }

    static UniPoly constant(const Rat& k) {
        UniPoly p;
        if (k != 0) p.c.push_back(k);
        return p;
    }

    UniPoly operator+(const UniPoly& o) const {
        UniPoly r;
        r.c.resize(std::max(c.size(), o.c.size()), Rat(0));
        for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
        r.trim();
        return r;
    }
    UniPoly operator-(const UniPoly& o) const {
        UniPoly r;
        r.c.resize(std::max(c.size(), o.c.size()), Rat(0));
        for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
        r.trim();
        return r;
    }
    UniPoly operator*(const UniPoly& o) const {
        UniPoly r;
        if (is_zero() || o.is_zero()) return r;
        r.c.resize(c.size() + o.c.size() - 1, Rat(0));
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
        r.trim();
        return r;
    }

    void make_monic() {
        if (is_zero()) return;
        Rat lead = c.back();
        for (auto& k : c) k /= lead;
    }
};

inline UniPoly uni_rem(UniPoly a, const UniPoly& b) {
    while (!a.is_zero() && a.degree() >= b.degree()) {
        Rat f = a.c.back() / b.c.back();
        int shift = a.degree() - b.degree();
        for (size_t i = 0; i < b.c.size(); ++i)
            a.c[static_cast<size_t>(shift) + i] -= f * b.c[i];
        a.trim();
    }
    return a;
}

inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
    a.make_monic();
    b.make_monic();
    while (!b.is_zero()) {
        UniPoly r = uni_rem(a, b);
        r.make_monic();
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) a = UniPoly::constant(Rat(1));
    return a;
}

inline UniPoly uni_div_exact(const UniPoly& a, const UniPoly& b) {
    UniPoly q, r = a;
    q.c.assign(a.c.size(), Rat(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        Rat f = r.c.back() / b.c.back();
        int shift = r.degree() - b.degree();
        q.c[static_cast<size_t>(shift)] = f;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[static_cast<size_t>(shift) + i] -= f * b.c[i];
        r.trim();
    }
    q.trim();
    return q;
}

// Reduced fraction of univariate polynomials.
struct UniRat {
    UniPoly num, den = UniPoly::constant(Rat(1));

    void reduce() {
        if (num.is_zero()) {
            den = UniPoly::constant(Rat(1));
            return;
        }
        UniPoly g = uni_gcd(num, den);
        if (g.degree() > 0) {
            num = uni_div_exact(num, g);
            den = uni_div_exact(den, g);
        }
        // normalize by the denominator's leading coefficient
        Rat lead = den.c.back();
        for (auto& k : num.c) k /= lead;
        for (auto& k : den.c) k /= lead;
    }

    int degree() const { return std::max(num.degree(), den.degree()); }

    static UniRat constant(const Rat& k) {
        UniRat r;
        r.num = UniPoly::constant(k);
        return r;
    }
    static UniRat identity_var() {
        UniRat r;
        r.num.c = {Rat(0), Rat(1)};
        return r;
    }
};

inline UniRat uni_add(const UniRat& a, const UniRat& b) {
    UniRat r;
    r.num = a.num * b.den + b.num * a.den;
    r.den = a.den * b.den;
    r.reduce();
    return r;
}
inline UniRat uni_mul(const UniRat& a, const UniRat& b) {
    UniRat r;
    r.num = a.num * b.num;
    r.den = a.den * b.den;
    r.reduce();
    return r;
}
inline UniRat uni_div(const UniRat& a, const UniRat& b) {
    if (b.num.is_zero()) throw DivisionByZero("univariate division by zero");
    UniRat r;
    r.num = a.num * b.den;
    r.den = a.den * b.num;
    r.reduce();
    return r;
}
inline UniRat uni_pow(const UniRat& a, int e) {
    UniRat acc = UniRat::constant(Rat(1));
    UniRat base = e < 0 ? uni_div(acc, a) : a;
    int n = e < 0 ? -e : e;
    while (n) {
        if (n & 1) acc = uni_mul(acc, base);
        base = uni_mul(base, base);
        n >>= 1;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Random rationals and generic degree measurement.

inline Rat random_rational(std::mt19937_64& rng, long hi = 10000) {
    std::uniform_int_distribution<long> dist(1, hi);
    return Rat(dist(rng), dist(rng));
}

// Evaluate a polynomial keeping one variable symbolic.
inline UniPoly eval_poly_univariate(const LaurentPoly& p, VarId x, long D,
                                    const ParamValues& roots, const VarValues& vals,
                                    int& min_exp) {
    auto [lo, hi] = p.degree_range(x);
    min_exp = std::min(lo, 0);
    UniPoly out;
    out.c.assign(static_cast<size_t>(std::max(hi, 0) - min_exp) + 1, Rat(0));
    for (const auto& [e, c] : p.terms) {
        Rat m = eval_coeff(c, D, roots);
        int xe = 0;
        for (const auto& [v, k] : e) {
            if (v == x) {
                xe = k;
                continue;
            }
            m *= rat_pow(vals.at(v), k);
        }
        out.c[static_cast<size_t>(xe - min_exp)] += m;
    }
    out.trim();
    return out;
}

// Algebraic degree of e in v, measured at random points: specialize every
// other symbol, reduce the univariate fraction by gcd, take the max over
// trials.
inline int reduced_degree_in(const RationalExpression& e, VarId v, int trials,
                             std::mt19937_64& rng) {
    if (trials < 3) throw DegenerateSpecialization("trials must be >= 3");
    long D = clearing_root_order(e);

    std::set<ParamId> pids;
    std::set<VarId> vids;
    auto scan = [&](const LaurentPoly& p) {
        for (const auto& [ve, c] : p.terms) {
            for (const auto& [vid, x] : ve) vids.insert(vid);
            for (const auto& [pe, k] : c.terms)
                for (const auto& [pid, x] : pe) pids.insert(pid);
        }
    };
    scan(e.num);
    scan(e.den);

    int best = -1;
    for (int t = 0; t < trials; ++t) {
        ParamValues roots;
        VarValues vals;
        for (ParamId p : pids) roots[p] = random_rational(rng);
        for (VarId x : vids)
            if (x != v) vals[x] = random_rational(rng);
        try {
            int sn = 0, sd = 0;
            UniRat f;
            f.num = eval_poly_univariate(e.num, v, D, roots, vals, sn);
            f.den = eval_poly_univariate(e.den, v, D, roots, vals, sd);
            if (f.den.is_zero()) continue;
            // account for the Laurent shifts x^{sn}/x^{sd}
            int shift = sn - sd;
            if (shift > 0) {
                UniPoly xs;
                xs.c.assign(static_cast<size_t>(shift) + 1, Rat(0));
                xs.c.back() = 1;
                f.num = f.num * xs;
            } else if (shift < 0) {
                UniPoly xs;
                xs.c.assign(static_cast<size_t>(-shift) + 1, Rat(0));
                xs.c.back() = 1;
                f.den = f.den * xs;
            }
            f.reduce();
            best = std::max(best, f.degree());
        } catch (const Error&) {
            continue;
        }
    }
    if (best < 0) throw DegenerateSpecialization("all trials hit a pole");
    return best;
}

}  // namespace weyltrop
