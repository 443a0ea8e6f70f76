#pragma once

#include <map>
#include <utility>
#include <vector>

#include "weyltrop/errors.hpp"
#include "weyltrop/rational.hpp"

namespace weyltrop {

// The shape data (N; k_1..k_N; l_1..l_N) of the rational surface, with the
// derived multiplicities theta and weights omega used by the omega-form of
// the birational action. All node indices are cyclic mod N.
struct ShapeConfig {
    int N = 0;
    std::vector<int> k;  // k[n-1] stores k_n, n = 1..N
    std::vector<int> l;

    ShapeConfig() = default;
    ShapeConfig(std::vector<int> kk, std::vector<int> ll) : k(std::move(kk)), l(std::move(ll)) {
        N = static_cast<int>(k.size());
        if (N < 3 || l.size() != static_cast<size_t>(N)) throw BadShape("need N >= 3 and |k| == |l|");
        for (int v : k)
            if (v < 1) throw BadShape("k entries must be positive");
        for (int v : l)
            if (v < 1) throw BadShape("l entries must be positive");
    }

    int mod(int n) const { return ((n % N) + N) % N; }
    int k_at(int n) const { return k[mod(n - 1)]; }  // 1-based node index
    int l_at(int n) const { return l[mod(n - 1)]; }

    int theta0(int n) const { return k_at(n + 1) + l_at(n - 1); }
    int theta_inf(int n) const { return k_at(n - 1) + l_at(n + 1); }
    Rat omega(int n) const { return Rat(theta0(n), theta0(n) + theta_inf(n)); }

    // The simplifying balance condition on the omega-form of the action.
    bool balanced_at(int n) const { return k_at(n - 1) * k_at(n + 1) == l_at(n - 1) * l_at(n + 1); }

    bool operator==(const ShapeConfig& o) const { return N == o.N && k == o.k && l == o.l; }
};

// Index of a simple root: node n (1-based mod N) and layer i with
// -l_n+1 <= i <= k_n-1. i = 0 is the node root, i > 0 indexes the upper
// chain, i < 0 the lower chain.
struct RootIndex {
    int n = 1;
    int i = 0;
    auto operator<=>(const RootIndex&) const = default;
};

inline void check_root_index(const ShapeConfig& cfg, const RootIndex& idx) {
    if (idx.i > cfg.k_at(idx.n) - 1 || idx.i < -cfg.l_at(idx.n) + 1)
        throw IndexOutOfRange("root layer out of range for node");
}

namespace detail {
struct DivisorTag {};
struct CurveTag {};
}  // namespace detail

// Integer vector over the basis {H_n} u {E_n^i} (divisor side) or
// {h_n} u {e_n^i} (curve side); E_n^i with i >= 1 are the upper exceptional
// classes and i <= -1 the lower ones.
template <typename Tag>
struct LatticeVector {
    std::vector<Int> h;                     // h[n-1] = coefficient of H_n / h_n
    std::map<std::pair<int, int>, Int> e;   // (n, i) -> coefficient of E_n^i / e_n^i

    LatticeVector() = default;
    explicit LatticeVector(int N) : h(N, Int(0)) {}

    static LatticeVector basis_h(int N, int n) {
        LatticeVector v(N);
        v.h[((n - 1) % N + N) % N] = 1;
        return v;
    }
    static LatticeVector basis_e(int N, int n, int i) {
        LatticeVector v(N);
        v.e[{((n - 1) % N + N) % N + 1, i}] = 1;
        return v;
    }

    void add_e(int n, int i, const Int& c) {
        auto key = std::pair<int, int>{n, i};
        Int& slot = e[key];
        slot += c;
        if (slot == 0) e.erase(key);
    }

    LatticeVector operator+(const LatticeVector& o) const {
        if (h.size() != o.h.size()) throw ShapeMismatch("lattice vector size mismatch");
        LatticeVector r = *this;
        for (size_t n = 0; n < h.size(); ++n) r.h[n] += o.h[n];
        for (const auto& [key, c] : o.e) r.add_e(key.first, key.second, c);
        return r;
    }
    LatticeVector operator-() const {
        LatticeVector r = *this;
        for (auto& c : r.h) c = -c;
        for (auto& [key, c] : r.e) c = -c;
        return r;
    }
    LatticeVector operator-(const LatticeVector& o) const { return *this + (-o); }
    LatticeVector operator*(const Int& s) const {
        if (s == 0) return LatticeVector(static_cast<int>(h.size()));
        LatticeVector r = *this;
        for (auto& c : r.h) c *= s;
        for (auto& [key, c] : r.e) c *= s;
        return r;
    }

    bool is_zero() const {
        for (const auto& c : h)
            if (c != 0) return false;
        return e.empty();
    }
    bool operator==(const LatticeVector& o) const { return h == o.h && e == o.e; }
};

using DivisorClass = LatticeVector<detail::DivisorTag>;
using CurveClass = LatticeVector<detail::CurveTag>;

// <H_m, h_n> = delta_{mn}, <E_m^i, e_n^j> = -delta_{mn}delta_{ij}, cross 0.
inline Int pairing(const DivisorClass& L, const CurveClass& lam) {
    if (L.h.size() != lam.h.size()) throw ShapeMismatch("pairing across different shapes");
    Int s = 0;
    for (size_t n = 0; n < L.h.size(); ++n) s += L.h[n] * lam.h[n];
    for (const auto& [key, c] : L.e) {
        auto it = lam.e.find(key);
        if (it != lam.e.end()) s -= c * it->second;
    }
    return s;
}

inline DivisorClass root(const ShapeConfig& cfg, const RootIndex& idx) {
    check_root_index(cfg, idx);
    int n = cfg.mod(idx.n - 1) + 1;
    DivisorClass r(cfg.N);
    if (idx.i == 0) {
        r.h[n - 1] = 1;
        r.add_e(n, 1, -1);
        r.add_e(n, -1, -1);
    } else if (idx.i > 0) {
        r.add_e(n, idx.i, 1);
        r.add_e(n, idx.i + 1, -1);
    } else {
        r.add_e(n, idx.i, 1);
        r.add_e(n, idx.i - 1, -1);
    }
    return r;
}

inline CurveClass coroot(const ShapeConfig& cfg, const RootIndex& idx) {
    check_root_index(cfg, idx);
    int n = cfg.mod(idx.n - 1) + 1;
    CurveClass r(cfg.N);
    if (idx.i == 0) {
        r.h[cfg.mod(n - 2)] += 1;  // h_{n-1}
        r.h[cfg.mod(n)] += 1;      // h_{n+1}
        r.add_e(n, 1, -1);
        r.add_e(n, -1, -1);
    } else if (idx.i > 0) {
        r.add_e(n, idx.i, 1);
        r.add_e(n, idx.i + 1, -1);
    } else {
        r.add_e(n, idx.i, 1);
        r.add_e(n, idx.i - 1, -1);
    }
    return r;
}

inline DivisorClass reflect(const ShapeConfig& cfg, const RootIndex& idx, const DivisorClass& v) {
    return v + root(cfg, idx) * pairing(v, coroot(cfg, idx));
}
inline CurveClass reflect(const ShapeConfig& cfg, const RootIndex& idx, const CurveClass& v) {
    return v + coroot(cfg, idx) * pairing(root(cfg, idx), v);
}

// The anticanonical-type invariant classes and their node decompositions.
struct InvariantClasses {
    DivisorClass delta;              // -K_X/2
    CurveClass delta_check;          // -k_X/2
    std::vector<DivisorClass> D0, Dinf;  // D_n^0, D_n^inf (index n-1)
    std::vector<CurveClass> d0, dinf;
};

inline InvariantClasses invariant_classes(const ShapeConfig& cfg) {
    InvariantClasses inv;
    inv.delta = DivisorClass(cfg.N);
    inv.delta_check = CurveClass(cfg.N);
    for (int n = 1; n <= cfg.N; ++n) {
        inv.delta.h[n - 1] = 1;
        inv.delta_check.h[n - 1] = 2;
        for (int i = 1; i <= cfg.k_at(n); ++i) {
            inv.delta.add_e(n, i, -1);
            inv.delta_check.add_e(n, i, -1);
        }
        for (int j = 1; j <= cfg.l_at(n); ++j) {
            inv.delta.add_e(n, -j, -1);
            inv.delta_check.add_e(n, -j, -1);
        }

        int np = cfg.mod(n) + 1, nm = cfg.mod(n - 2) + 1;  // n+1, n-1 as 1-based
        DivisorClass D0(cfg.N), Dinf(cfg.N);
        CurveClass d0(cfg.N), dinf(cfg.N);
        D0.h[n - 1] = 1;
        Dinf.h[n - 1] = 1;
        d0.h[nm - 1] += 1;
        d0.h[np - 1] += 1;
        dinf.h[nm - 1] += 1;
        dinf.h[np - 1] += 1;
        for (int i = 1; i <= cfg.k_at(n + 1); ++i) {
            D0.add_e(np, i, -1);
            d0.add_e(np, i, -1);
        }
        for (int j = 1; j <= cfg.l_at(n - 1); ++j) {
            D0.add_e(nm, -j, -1);
            d0.add_e(nm, -j, -1);
        }
        for (int i = 1; i <= cfg.k_at(n - 1); ++i) {
            Dinf.add_e(nm, i, -1);
            dinf.add_e(nm, i, -1);
        }
        for (int j = 1; j <= cfg.l_at(n + 1); ++j) {
            Dinf.add_e(np, -j, -1);
            dinf.add_e(np, -j, -1);
        }
        inv.D0.push_back(std::move(D0));
        inv.Dinf.push_back(std::move(Dinf));
        inv.d0.push_back(std::move(d0));
        inv.dinf.push_back(std::move(dinf));
    }
    return inv;
}

// Generalized Cartan matrix entry C_{ab} = -<alpha_a, alpha_b-check>.
inline Int cartan_entry(const ShapeConfig& cfg, const RootIndex& a, const RootIndex& b) {
    return -pairing(root(cfg, a), coroot(cfg, b));
}

// All simple root indices of the shape, in node-major order.
inline std::vector<RootIndex> all_root_indices(const ShapeConfig& cfg) {
    std::vector<RootIndex> out;
    for (int n = 1; n <= cfg.N; ++n)
        for (int i = -cfg.l_at(n) + 1; i <= cfg.k_at(n) - 1; ++i) out.push_back({n, i});
    return out;
}

// A root-lattice element together with the matching coroot combination
// (same integer coefficients over the index-aligned coroot basis).
struct RootLatticeElement {
    DivisorClass alpha;
    CurveClass alpha_check;
};

inline RootLatticeElement root_combination(const ShapeConfig& cfg,
                                           const std::vector<std::pair<RootIndex, Int>>& comb) {
    RootLatticeElement r{DivisorClass(cfg.N), CurveClass(cfg.N)};
    for (const auto& [idx, c] : comb) {
        r.alpha = r.alpha + root(cfg, idx) * c;
        r.alpha_check = r.alpha_check + coroot(cfg, idx) * c;
    }
    return r;
}

// The null pair (delta, delta-check) a translation formula runs against.
// For all-ones shapes this is the anticanonical pair; embedded affine
// subsystems (e.g. the D-type subdiagram) supply their own marks
// combination.
struct NullPair {
    DivisorClass delta;
    CurveClass delta_check;
};

inline NullPair anticanonical_null_pair(const ShapeConfig& cfg) {
    InvariantClasses inv = invariant_classes(cfg);
    return {inv.delta, inv.delta_check};
}

// Translations only commute and add when the null pair is isotropic and
// orthogonal to the translating element; verified computationally.
inline void check_affine(const RootLatticeElement& a, const NullPair& np) {
    if (pairing(np.delta, np.delta_check) != 0)
        throw NotAffine("null pair is not isotropic");
    if (pairing(np.delta, a.alpha_check) != 0 || pairing(a.alpha, np.delta_check) != 0)
        throw NotAffine("translating element is not orthogonal to the null pair");
}

// Translation by a root-lattice element alpha via the Kac formula.
inline DivisorClass kac_translate(const ShapeConfig& cfg, const RootLatticeElement& a,
                                  const DivisorClass& L, const NullPair& np) {
    check_affine(a, np);
    Int ld = pairing(L, np.delta_check);
    Int la = pairing(L, a.alpha_check);
    Int aa = pairing(a.alpha, a.alpha_check);
    if ((aa * ld) % 2 != 0) throw HalfIntegerResult("Kac translation produced half-integers");
    return L - a.alpha * ld + np.delta * (la - aa * ld / 2);
}

inline CurveClass kac_translate(const ShapeConfig& cfg, const RootLatticeElement& a,
                                const CurveClass& lam, const NullPair& np) {
    check_affine(a, np);
    Int dl = pairing(np.delta, lam);
    Int al = pairing(a.alpha, lam);
    Int aa = pairing(a.alpha, a.alpha_check);
    if ((aa * dl) % 2 != 0) throw HalfIntegerResult("Kac translation produced half-integers");
    return lam - a.alpha_check * dl + np.delta_check * (al - aa * dl / 2);
}

inline DivisorClass kac_translate(const ShapeConfig& cfg, const RootLatticeElement& a,
                                  const DivisorClass& L) {
    return kac_translate(cfg, a, L, anticanonical_null_pair(cfg));
}
inline CurveClass kac_translate(const ShapeConfig& cfg, const RootLatticeElement& a,
                                const CurveClass& lam) {
    return kac_translate(cfg, a, lam, anticanonical_null_pair(cfg));
}

// A word in the simple reflections; applied rightmost-generator-first.
using WeylWord = std::vector<RootIndex>;

template <typename V>
V apply_word_lattice(const ShapeConfig& cfg, const WeylWord& word, V v) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = reflect(cfg, *it, v);
    return v;
}

// All basis classes of a side, for exhaustive identity checks.
inline std::vector<DivisorClass> divisor_basis(const ShapeConfig& cfg) {
    std::vector<DivisorClass> out;
    for (int n = 1; n <= cfg.N; ++n) out.push_back(DivisorClass::basis_h(cfg.N, n));
    for (int n = 1; n <= cfg.N; ++n) {
        for (int i = 1; i <= cfg.k_at(n); ++i) out.push_back(DivisorClass::basis_e(cfg.N, n, i));
        for (int j = 1; j <= cfg.l_at(n); ++j) out.push_back(DivisorClass::basis_e(cfg.N, n, -j));
    }
    return out;
}
inline std::vector<CurveClass> curve_basis(const ShapeConfig& cfg) {
    std::vector<CurveClass> out;
    for (int n = 1; n <= cfg.N; ++n) out.push_back(CurveClass::basis_h(cfg.N, n));
    for (int n = 1; n <= cfg.N; ++n) {
        for (int i = 1; i <= cfg.k_at(n); ++i) out.push_back(CurveClass::basis_e(cfg.N, n, i));
        for (int j = 1; j <= cfg.l_at(n); ++j) out.push_back(CurveClass::basis_e(cfg.N, n, -j));
    }
    return out;
}

}  // namespace weyltrop
