#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "weyltrop/errors.hpp"
#include "weyltrop/rational.hpp"
#include "weyltrop/symbols.hpp"

namespace weyltrop {

// Exponent map of a monomial in the named parameters; exponents are rational
// (fractional powers of root variables), zero entries are never stored.
using ParamExps = std::map<ParamId, Rat>;

struct CoeffMonomial {
    Rat coeff = 0;
    ParamExps exps;

    CoeffMonomial() = default;
    explicit CoeffMonomial(Rat c) : coeff(std::move(c)) {}
    CoeffMonomial(Rat c, ParamExps e) : coeff(std::move(c)), exps(std::move(e)) {
        normalize();
    }

    void normalize() {
        for (auto it = exps.begin(); it != exps.end();) {
            if (it->second == 0)
                it = exps.erase(it);
            else
                ++it;
        }
        if (coeff == 0) exps.clear();
    }

    bool is_one() const { return coeff == 1 && exps.empty(); }

    CoeffMonomial operator*(const CoeffMonomial& o) const {
        CoeffMonomial r;
        r.coeff = coeff * o.coeff;
        if (r.coeff == 0) return r;
        r.exps = exps;
        for (const auto& [p, e] : o.exps) {
            Rat& slot = r.exps[p];
            slot += e;
            if (slot == 0) r.exps.erase(p);
        }
        return r;
    }

    // Monomial to a rational power; requires a positive rational coefficient
    // whose power stays rational (in practice the coefficient is 1).
    CoeffMonomial pow(const Rat& e) const {
        if (coeff == 0) throw DivisionByZero("pow of zero monomial");
        CoeffMonomial r;
        if (denominator(e) == 1) {
            r.coeff = rat_pow(coeff, static_cast<long>(numerator(e)));
        } else if (coeff == 1) {
            r.coeff = 1;
        } else {
            throw NonClearedExponent("fractional power of non-monic monomial");
        }
        for (const auto& [p, x] : exps) {
            Rat ne = x * e;
            if (ne != 0) r.exps[p] = ne;
        }
        return r;
    }

    CoeffMonomial inverse() const { return pow(Rat(-1)); }

    bool operator==(const CoeffMonomial& o) const = default;
};

inline CoeffMonomial param_monomial(ParamId p) {
    CoeffMonomial m(Rat(1));
    m.exps[p] = 1;
    return m;
}

// Substitute each parameter by a monomial image (exponent-linear).
inline CoeffMonomial subst_params(const CoeffMonomial& m,
                                  const std::map<ParamId, CoeffMonomial>& bindings) {
    CoeffMonomial r(m.coeff);
    for (const auto& [p, e] : m.exps) {
        auto it = bindings.find(p);
        if (it == bindings.end()) {
            Rat& slot = r.exps[p];
            slot += e;
            if (slot == 0) r.exps.erase(p);
        } else {
            r = r * it->second.pow(e);
        }
    }
    r.normalize();
    return r;
}

// Finite sum of monomials with pairwise-distinct exponent maps, kept in the
// canonical map order.
class CoeffElement {
public:
    std::map<ParamExps, Rat> terms;

    CoeffElement() = default;
    explicit CoeffElement(const Rat& c) {
        if (c != 0) terms.emplace(ParamExps{}, c);
    }
    explicit CoeffElement(const CoeffMonomial& m) {
        if (m.coeff != 0) terms.emplace(m.exps, m.coeff);
    }

    static CoeffElement zero() { return CoeffElement(); }
    static CoeffElement one() { return CoeffElement(Rat(1)); }

    bool is_zero() const { return terms.empty(); }
    bool is_one() const {
        return terms.size() == 1 && terms.begin()->first.empty() && terms.begin()->second == 1;
    }
    bool is_monomial() const { return terms.size() == 1; }

    CoeffMonomial as_monomial() const {
        if (!is_monomial()) throw NonMonomialCoefficient();
        return CoeffMonomial(terms.begin()->second, terms.begin()->first);
    }

    bool all_coeffs_positive() const {
        for (const auto& [e, c] : terms)
            if (c <= 0) return false;
        return true;
    }

    void add_term(const ParamExps& e, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    CoeffElement operator+(const CoeffElement& o) const {
        CoeffElement r = *this;
        for (const auto& [e, c] : o.terms) r.add_term(e, c);
        return r;
    }

    CoeffElement operator-() const {
        CoeffElement r = *this;
        for (auto& [e, c] : r.terms) c = -c;
        return r;
    }

    CoeffElement operator-(const CoeffElement& o) const { return *this + (-o); }

    CoeffElement operator*(const CoeffElement& o) const {
        CoeffElement r;
        for (const auto& [ea, ca] : terms)
            for (const auto& [eb, cb] : o.terms) {
                ParamExps e = ea;
                for (const auto& [p, x] : eb) {
                    Rat& slot = e[p];
                    slot += x;
                    if (slot == 0) e.erase(p);
                }
                r.add_term(e, ca * cb);
            }
        return r;
    }

    CoeffElement operator*(const CoeffMonomial& m) const { return *this * CoeffElement(m); }

    bool operator==(const CoeffElement& o) const = default;

    std::string str() const;
};

inline CoeffElement subst_params(const CoeffElement& a,
                                 const std::map<ParamId, CoeffMonomial>& bindings) {
    CoeffElement r;
    for (const auto& [e, c] : a.terms) {
        CoeffMonomial m = subst_params(CoeffMonomial(c, e), bindings);
        r.add_term(m.exps, m.coeff);
    }
    return r;
}

namespace detail {

// Lexicographic comparison of sparse exponent maps with absent keys read as
// zero; earlier-created symbols are more significant. Unlike the raw
// std::map order this is compatible with monomial multiplication.
template <typename K, typename E>
int sparse_lex_cmp(const std::map<K, E>& a, const std::map<K, E>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            if (ia->second != 0) return ia->second > 0 ? 1 : -1;
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            if (ib->second != 0) return ib->second > 0 ? -1 : 1;
            ++ib;
        } else {
            if (ia->second != ib->second) return ia->second > ib->second ? 1 : -1;
            ++ia;
            ++ib;
        }
    }
    return 0;
}

// Integer exponent maps under graded lex, a well order on nonnegative
// exponents; used only inside exact division after scaling/shifting.
using IExps = std::map<ParamId, Int>;

inline bool graded_lex_less(const IExps& a, const IExps& b) {
    Int da = 0, db = 0;
    for (const auto& [p, e] : a) da += e;
    for (const auto& [p, e] : b) db += e;
    if (da != db) return da < db;
    return sparse_lex_cmp(a, b) < 0;
}

inline bool divides(const IExps& d, const IExps& n) {
    for (const auto& [p, e] : d) {
        auto it = n.find(p);
        if ((it == n.end() ? Int(0) : it->second) < e) return false;
    }
    return true;
}

inline IExps iexps_sub(const IExps& a, const IExps& b) {
    IExps r = a;
    for (const auto& [p, e] : b) {
        Int& slot = r[p];
        slot -= e;
        if (slot == 0) r.erase(p);
    }
    return r;
}

inline IExps iexps_add(const IExps& a, const IExps& b) {
    IExps r = a;
    for (const auto& [p, e] : b) {
        Int& slot = r[p];
        slot += e;
        if (slot == 0) r.erase(p);
    }
    return r;
}

}  // namespace detail

// Exact division in the coefficient ring: returns q with q*d == n, or nullopt
// when no such element exists. Rational exponents are cleared by a common
// denominator and shifted to be nonnegative first.
inline std::optional<CoeffElement> exact_div(const CoeffElement& n, const CoeffElement& d) {
    if (d.is_zero()) throw DivisionByZero("exact_div by zero coefficient");
    if (n.is_zero()) return CoeffElement::zero();
    if (d.is_monomial()) {
        CoeffMonomial inv = d.as_monomial().inverse();
        CoeffElement r;
        for (const auto& [e, c] : n.terms) {
            CoeffMonomial m = CoeffMonomial(c, e) * inv;
            r.add_term(m.exps, m.coeff);
        }
        return r;
    }

    using detail::IExps;
    Int L = 1;
    auto scan = [&L](const CoeffElement& a) {
        for (const auto& [e, c] : a.terms)
            for (const auto& [p, x] : e) L = int_lcm(L, denominator(x));
    };
    scan(n);
    scan(d);

    auto scaled = [&L](const CoeffElement& a, ParamExps& shift) {
        shift.clear();
        for (const auto& [e, c] : a.terms)
            for (const auto& [p, x] : e) {
                auto it = shift.find(p);
                if (it == shift.end())
                    shift[p] = x;
                else if (x < it->second)
                    it->second = x;
            }
        // parameters absent from some term have exponent 0 there
        for (auto& [p, m] : shift)
            if (m > 0) {
                for (const auto& [e, c] : a.terms)
                    if (!e.count(p)) {
                        m = 0;
                        break;
                    }
            }
        std::map<IExps, Rat> out;
        for (const auto& [e, c] : a.terms) {
            IExps ie;
            for (const auto& [p, x] : e) {
                Rat v = (x - shift[p]) * L;
                if (v != 0) ie[p] = numerator(v);
            }
            for (const auto& [p, m] : shift)
                if (m != 0 && !e.count(p)) {
                    Rat v = -m * L;
                    if (v != 0) ie[p] = numerator(v);
                }
            out.emplace(std::move(ie), c);
        }
        return out;
    };

    ParamExps sn, sd;
    auto rn = scaled(n, sn);
    auto rd = scaled(d, sd);

    auto lead = [](const std::map<IExps, Rat>& a) {
        auto best = a.begin();
        for (auto it = std::next(a.begin()); it != a.end(); ++it)
            if (detail::graded_lex_less(best->first, it->first)) best = it;
        return best;
    };

    std::map<IExps, Rat> quot;
    auto rem = rn;
    auto dl = lead(rd);
    while (!rem.empty()) {
        auto rl = lead(rem);
        if (!detail::divides(dl->first, rl->first)) return std::nullopt;
        IExps qe = detail::iexps_sub(rl->first, dl->first);
        Rat qc = rl->second / dl->second;
        quot.emplace(qe, qc);
        for (const auto& [e, c] : rd) {
            IExps pe = detail::iexps_add(qe, e);
            Rat pc = qc * c;
            auto [it, inserted] = rem.emplace(pe, -pc);
            if (!inserted) {
                it->second -= pc;
                if (it->second == 0) rem.erase(it);
            }
        }
    }

    CoeffElement q;
    for (const auto& [ie, c] : quot) {
        ParamExps e;
        for (const auto& [p, x] : ie) e[p] = Rat(x) / L;
        for (const auto& [p, m] : sn) {
            Rat& slot = e[p];
            slot += m;
            if (slot == 0) e.erase(p);
        }
        for (const auto& [p, m] : sd) {
            Rat& slot = e[p];
            slot -= m;
            if (slot == 0) e.erase(p);
        }
        q.add_term(e, c);
    }
    return q;
}

inline std::string CoeffElement::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << c;
        for (const auto& [p, x] : e) os << "*" << param_name(p) << "^(" << x << ")";
    }
    return os.str();
}

}  // namespace weyltrop
