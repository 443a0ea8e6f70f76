#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "weyltrop/coeff.hpp"

namespace weyltrop {

// Integer exponent vector of a Laurent monomial in the dynamical variables;
// zero entries are never stored, exponents may be negative.
using VarExps = std::map<VarId, int>;

namespace detail {

// Graded lex over the creation-order variable ids. On nonnegative exponent
// vectors (after shifting) this is the admissible order used for division.
struct GradedLexLess {
    bool operator()(const VarExps& a, const VarExps& b) const {
        long da = 0, db = 0;
        for (const auto& [v, e] : a) da += e;
        for (const auto& [v, e] : b) db += e;
        if (da != db) return da < db;
        return sparse_lex_cmp(a, b) < 0;
    }
};

inline VarExps vexps_add(const VarExps& a, const VarExps& b) {
    VarExps r = a;
    for (const auto& [v, e] : b) {
        int& slot = r[v];
        slot += e;
        if (slot == 0) r.erase(v);
    }
    return r;
}

inline VarExps vexps_sub(const VarExps& a, const VarExps& b) {
    VarExps r = a;
    for (const auto& [v, e] : b) {
        int& slot = r[v];
        slot -= e;
        if (slot == 0) r.erase(v);
    }
    return r;
}

inline bool vexps_divides(const VarExps& d, const VarExps& n) {
    for (const auto& [v, e] : d) {
        auto it = n.find(v);
        if ((it == n.end() ? 0 : it->second) < e) return false;
    }
    return true;
}

}  // namespace detail

class LaurentPoly {
public:
    using Terms = std::map<VarExps, CoeffElement, detail::GradedLexLess>;
    Terms terms;

    LaurentPoly() = default;
    explicit LaurentPoly(const CoeffElement& c) {
        if (!c.is_zero()) terms.emplace(VarExps{}, c);
    }
    explicit LaurentPoly(const Rat& c) : LaurentPoly(CoeffElement(c)) {}

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return LaurentPoly(Rat(1)); }
    static LaurentPoly variable(VarId x, int exp = 1) {
        LaurentPoly p;
        VarExps e;
        if (exp != 0) e[x] = exp;
        p.terms.emplace(std::move(e), CoeffElement::one());
        return p;
    }
    static LaurentPoly monomial(const VarExps& e, const CoeffElement& c) {
        LaurentPoly p;
        if (!c.is_zero()) p.terms.emplace(e, c);
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    bool is_one() const {
        return terms.size() == 1 && terms.begin()->first.empty() && terms.begin()->second.is_one();
    }
    bool is_monomial() const { return terms.size() == 1; }

    size_t term_count() const { return terms.size(); }

    bool all_coeffs_positive() const {
        for (const auto& [e, c] : terms)
            if (!c.all_coeffs_positive()) return false;
        return true;
    }

    void add_term(const VarExps& e, const CoeffElement& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms.emplace(e, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.terms) r.add_term(e, c);
        return r;
    }

    LaurentPoly operator-() const {
        LaurentPoly r = *this;
        for (auto& [e, c] : r.terms) c = -c;
        return r;
    }

    LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }

    LaurentPoly operator*(const LaurentPoly& o) const {
        LaurentPoly r;
        for (const auto& [ea, ca] : terms)
            for (const auto& [eb, cb] : o.terms)
                r.add_term(detail::vexps_add(ea, eb), ca * cb);
        return r;
    }

    LaurentPoly operator*(const CoeffElement& c) const { return *this * LaurentPoly(c); }

    bool operator==(const LaurentPoly& o) const { return terms == o.terms; }

    // Degree range of a single variable across the support.
    std::pair<int, int> degree_range(VarId x) const {
        int lo = 0, hi = 0;
        bool first = true;
        for (const auto& [e, c] : terms) {
            auto it = e.find(x);
            int d = it == e.end() ? 0 : it->second;
            if (first) {
                lo = hi = d;
                first = false;
            } else {
                if (d < lo) lo = d;
                if (d > hi) hi = d;
            }
        }
        return {lo, hi};
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")";
            for (const auto& [v, x] : e) os << "*" << var_name(v) << "^" << x;
        }
        return os.str();
    }
};

inline LaurentPoly pow(const LaurentPoly& p, int e) {
    if (e == 0) return LaurentPoly::one();
    if (e < 0) {
        if (!p.is_monomial()) throw DivisionByZero("negative power of non-monomial poly");
        const auto& [me, mc] = *p.terms.begin();
        VarExps ie;
        for (const auto& [v, x] : me) ie[v] = -x;
        CoeffMonomial inv = mc.as_monomial().inverse();
        LaurentPoly unit = LaurentPoly::monomial(ie, CoeffElement(inv));
        return pow(unit, -e);
    }
    LaurentPoly acc = LaurentPoly::one(), base = p;
    int n = e;
    while (n) {
        if (n & 1) acc = acc * base;
        if (n >>= 1) base = base * base;
    }
    return acc;
}

// Exact division: q with q*d == n, or nullopt. Both sides are shifted to
// nonnegative exponents, divided by graded-lex long division with exact
// coefficient division, then unshifted.
inline std::optional<LaurentPoly> exact_divide(const LaurentPoly& n, const LaurentPoly& d) {
    if (d.is_zero()) throw DivisionByZero("exact_divide by zero poly");
    if (n.is_zero()) return LaurentPoly::zero();

    // Per-variable minimum exponent (absent occurrences count as zero).
    // Shifting by the true minimum keeps Laurent quotients reachable: the
    // minimal slice in each variable multiplies, so min degrees are additive.
    auto shift_of = [](const LaurentPoly& a) {
        VarExps shift;
        bool first = true;
        for (const auto& [e, c] : a.terms) {
            if (first) {
                shift = e;
                first = false;
                continue;
            }
            for (auto it = shift.begin(); it != shift.end();) {
                auto je = e.find(it->first);
                int x = je == e.end() ? 0 : je->second;
                if (x < it->second) it->second = x;
                if (it->second == 0)
                    it = shift.erase(it);
                else
                    ++it;
            }
            for (const auto& [v, x] : e)
                if (x < 0 && !shift.count(v)) {
                    // seen a zero occurrence earlier, so the minimum is x < 0
                    shift[v] = x;
                }
        }
        return shift;
    };
    VarExps sn = shift_of(n), sd = shift_of(d);

    auto shifted = [](const LaurentPoly& a, const VarExps& s) {
        LaurentPoly::Terms out;
        for (const auto& [e, c] : a.terms) out.emplace(detail::vexps_sub(e, s), c);
        return out;
    };
    auto rem = shifted(n, sn);
    auto dd = shifted(d, sd);

    const auto& dl = *dd.rbegin();  // leading term under graded lex
    LaurentPoly q;
    while (!rem.empty()) {
        const auto& rl = *rem.rbegin();
        if (!detail::vexps_divides(dl.first, rl.first)) return std::nullopt;
        auto qc = exact_div(rl.second, dl.second);
        if (!qc) return std::nullopt;
        VarExps qe = detail::vexps_sub(rl.first, dl.first);
        q.add_term(detail::vexps_add(qe, detail::vexps_sub(sn, sd)), *qc);
        for (const auto& [e, c] : dd) {
            VarExps pe = detail::vexps_add(qe, e);
            CoeffElement pc = *qc * c;
            auto [it, inserted] = rem.emplace(pe, -pc);
            if (!inserted) {
                it->second = it->second - pc;
                if (it->second.is_zero()) rem.erase(it);
            }
        }
    }
    return q;
}

}  // namespace weyltrop
