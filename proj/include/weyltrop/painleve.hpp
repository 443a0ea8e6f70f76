#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "weyltrop/weyl.hpp"

namespace weyltrop {

// ---------------------------------------------------------------------------
// The A_{N-1}^{(1)} specialization: all-ones shape with the parameter split
// u_n = a_n b_1/b_0, v_n = a_n b_0/b_1, extended by pi, iota, r_0, r_1 to
// W~(A_{N-1}^{(1)}) x W~(A_1^{(1)}).
//
// The constraint prod_n a_n = (b_0 b_1)^N = q^N is baked into the coefficient
// algebra: the free parameters are a_1..a_{N-1}, b_0, b_1, and a_N stands for
// the monomial q^N (a_1...a_{N-1})^{-1}. The extended group relations hold
// identically only on this constraint subvariety, so eliminating a_N makes
// them exact symbol-level identities.

struct AffineConfigA {
    ShapeConfig cfg;
    int N;

    explicit AffineConfigA(int n)
        : cfg(std::vector<int>(static_cast<size_t>(n), 1),
              std::vector<int>(static_cast<size_t>(n), 1)),
          N(n) {}

    int node(int n) const { return cfg.mod(n - 1) + 1; }  // cyclic 1-based

    ParamId a(int n) const {
        if (node(n) == N) throw IndexOutOfRange("a_N is eliminated by the constraint");
        return param("a" + std::to_string(node(n)));
    }
    ParamId b(int i) const {
        if (i != 0 && i != 1) throw IndexOutOfRange("b index must be 0 or 1");
        return param(i == 0 ? "b0" : "b1");
    }
    CoeffMonomial a_mon(int n) const {
        if (node(n) != N) return param_monomial(a(n));
        CoeffMonomial m = q().pow(Rat(N));
        for (int j = 1; j <= N - 1; ++j) m = m * param_monomial(a(j)).inverse();
        return m;
    }
    CoeffMonomial b_mon(int i) const { return param_monomial(b(i)); }
    CoeffMonomial q() const { return b_mon(0) * b_mon(1); }
    CoeffMonomial u(int n) const { return a_mon(n) * b_mon(1) * b_mon(0).inverse(); }
    CoeffMonomial v(int n) const { return a_mon(n) * b_mon(0) * b_mon(1).inverse(); }
};

// Generator of the extended group. r_0 = iota o r_1 o iota is always expanded
// into that word before acting.
struct AGen {
    enum Kind { S, PI, IOTA, R0, R1 };
    Kind kind = S;
    int n = 0;  // node index, used by S only

    bool operator==(const AGen&) const = default;
};

using AWord = std::vector<AGen>;

inline AWord expand_extended(const AWord& w) {
    AWord out;
    for (const AGen& g : w) {
        if (g.kind == AGen::R0) {
            out.push_back({AGen::IOTA, 0});
            out.push_back({AGen::R1, 0});
            out.push_back({AGen::IOTA, 0});
        } else {
            out.push_back(g);
        }
    }
    return out;
}

// Formal inverse: reverse the word; every generator except pi is an
// involution, pi^{-1} = pi^{N-1}.
inline AWord inverse_word_A(const AffineConfigA& A, const AWord& w) {
    AWord e = expand_extended(w), out;
    for (auto it = e.rbegin(); it != e.rend(); ++it) {
        if (it->kind == AGen::PI)
            for (int t = 0; t < A.N - 1; ++t) out.push_back(*it);
        else
            out.push_back(*it);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parameter substitutions.

inline ParamBindings a_param_bindings(const AffineConfigA& A, const AGen& g) {
    ParamBindings out;
    switch (g.kind) {
        case AGen::S: {
            // s_n(a_n) = 1/a_n, s_n(a_{n+-1}) = a_n a_{n+-1}; the eliminated
            // a_N transforms consistently through its defining monomial.
            for (int m : {g.n - 1, g.n, g.n + 1}) {
                if (A.node(m) == A.N) continue;
                out.emplace(A.a(m), A.a_mon(m) *
                                        (A.node(m) == A.node(g.n)
                                             ? A.a_mon(g.n).pow(Rat(-2))
                                             : A.a_mon(g.n)));
            }
            break;
        }
        case AGen::PI:
            for (int n = 1; n <= A.N - 1; ++n) out.emplace(A.a(n), A.a_mon(n + 1));
            break;
        case AGen::IOTA:
            out.emplace(A.b(0), A.b_mon(1));
            out.emplace(A.b(1), A.b_mon(0));
            break;
        case AGen::R1:
            out.emplace(A.b(1), A.b_mon(1).inverse());
            out.emplace(A.b(0), A.b_mon(1).pow(Rat(2)) * A.b_mon(0));
            break;
        case AGen::R0:
            out.emplace(A.b(0), A.b_mon(0).inverse());
            out.emplace(A.b(1), A.b_mon(0).pow(Rat(2)) * A.b_mon(1));
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// tau-frame images.

namespace detail {

// zeta_n^0 = tau_{n+1}^1 tau_{n-1}^{-1} and zeta_n^inf = tau_{n-1}^1
// tau_{n+1}^{-1} as monomials in the all-ones tau-variables.
inline LaurentPoly a_zeta0(const AffineConfigA& A, int n) {
    return xi_poly(A.cfg, n + 1) * eta_poly(A.cfg, n - 1);
}
inline LaurentPoly a_zetainf(const AffineConfigA& A, int n) {
    return xi_poly(A.cfg, n - 1) * eta_poly(A.cfg, n + 1);
}

// The polynomial G_n in tau-variables, cleared of f-denominators:
// prod_k (u_{n+k})^{-1+k/N} [ prod_k zeta_{n+k}^0
//   + sum_j prod_{i<=j} u_{n+i} zeta_{n+i}^inf prod_{i>j} zeta_{n+i}^0 ].
inline LaurentPoly a_G_poly(const AffineConfigA& A, int n) {
    int N = A.N;
    CoeffMonomial pref(Rat(1));
    for (int k = 1; k <= N - 1; ++k)
        pref = pref * A.u(n + k).pow(Rat(k - N, N));
    LaurentPoly sum = LaurentPoly::one();
    for (int k = 1; k <= N - 1; ++k) sum = sum * a_zeta0(A, n + k);
    for (int j = 1; j <= N - 1; ++j) {
        LaurentPoly term(CoeffElement::one());
        for (int i = 1; i <= j; ++i)
            term = term * a_zetainf(A, n + i) * CoeffElement(A.u(n + i));
        for (int i = j + 1; i <= N - 1; ++i) term = term * a_zeta0(A, n + i);
        sum = sum + term;
    }
    return sum * CoeffElement(pref);
}

}  // namespace detail

inline VarBindings a_tau_bindings(const AffineConfigA& A, const AGen& g) {
    const ShapeConfig& cfg = A.cfg;
    VarBindings out;
    switch (g.kind) {
        case AGen::S: {
            int n = g.n;
            LaurentPoly zp = detail::a_zeta0(A, n), zm = detail::a_zetainf(A, n);
            CoeffMonomial u = A.u(n), v = A.v(n);
            out.emplace(tau_var_id(cfg, n, 1),
                        RationalExpression(zp * CoeffElement(v.pow(Rat(1, 2))) +
                                               zm * CoeffElement(v.pow(Rat(-1, 2))),
                                           LaurentPoly::variable(tau_var_id(cfg, n, -1)), true));
            out.emplace(tau_var_id(cfg, n, -1),
                        RationalExpression(zp * CoeffElement(u.pow(Rat(-1, 2))) +
                                               zm * CoeffElement(u.pow(Rat(1, 2))),
                                           LaurentPoly::variable(tau_var_id(cfg, n, 1)), true));
            break;
        }
        case AGen::PI:
            for (int n = 1; n <= A.N; ++n) {
                out.emplace(tau_var_id(cfg, n, 1),
                            RationalExpression::variable(tau_var_id(cfg, n + 1, 1)));
                out.emplace(tau_var_id(cfg, n, -1),
                            RationalExpression::variable(tau_var_id(cfg, n + 1, -1)));
            }
            break;
        case AGen::IOTA:
            for (int n = 1; n <= A.N; ++n) {
                out.emplace(tau_var_id(cfg, n, 1),
                            RationalExpression::variable(tau_var_id(cfg, n, -1)));
                out.emplace(tau_var_id(cfg, n, -1),
                            RationalExpression::variable(tau_var_id(cfg, n, 1)));
            }
            break;
        case AGen::R1:
            for (int n = 1; n <= A.N; ++n) {
                LaurentPoly den = LaurentPoly::one();
                for (int j = 1; j <= A.N; ++j)
                    den = den * LaurentPoly::variable(tau_var_id(cfg, j, 1));
                for (int k = 1; k <= A.N; ++k) {
                    if (k == A.node(n) || k == A.node(n - 1) || k == A.node(n + 1)) continue;
                    den = den * LaurentPoly::variable(tau_var_id(cfg, k, -1));
                }
                out.emplace(tau_var_id(cfg, n, 1),
                            RationalExpression(detail::a_G_poly(A, n), den, true));
            }
            break;
        case AGen::R0:
            throw IndexOutOfRange("r_0 acts only through its expansion iota r_1 iota");
    }
    return out;
}

// ---------------------------------------------------------------------------
// f-frame images.

// g_n(f) = (1 + sum_j prod_{i<=j} u_{n+i}/f_{n+i}) prod_k (u_{n+k})^{-1+k/N}
// as a cleared fraction of polynomials.
inline RationalExpression a_g_expr(const AffineConfigA& A, int n) {
    int N = A.N;
    const ShapeConfig& cfg = A.cfg;
    CoeffMonomial pref(Rat(1));
    for (int k = 1; k <= N - 1; ++k)
        pref = pref * A.u(n + k).pow(Rat(k - N, N));
    LaurentPoly num = LaurentPoly::one(), den = LaurentPoly::one();
    for (int i = 1; i <= N - 1; ++i)
        den = den * LaurentPoly::variable(f_var_id(cfg, n + i));
    num = den;
    for (int j = 1; j <= N - 1; ++j) {
        LaurentPoly term(CoeffElement::one());
        for (int i = 1; i <= j; ++i) term = term * CoeffElement(A.u(n + i));
        for (int i = j + 1; i <= N - 1; ++i)
            term = term * LaurentPoly::variable(f_var_id(cfg, n + i));
        num = num + term;
    }
    return RationalExpression(num * CoeffElement(pref), den, true);
}

inline VarBindings a_f_bindings(const AffineConfigA& A, const AGen& g) {
    const ShapeConfig& cfg = A.cfg;
    VarBindings out;
    switch (g.kind) {
        case AGen::S: {
            int n = g.n;
            LaurentPoly fn = LaurentPoly::variable(f_var_id(cfg, n));
            LaurentPoly fn_u = fn + LaurentPoly(CoeffElement(A.u(n)));
            LaurentPoly fn_vinv = fn + LaurentPoly(CoeffElement(A.v(n).inverse()));
            LaurentPoly fm = LaurentPoly::variable(f_var_id(cfg, n - 1));
            LaurentPoly fp = LaurentPoly::variable(f_var_id(cfg, n + 1));
            out.emplace(f_var_id(cfg, n - 1),
                        RationalExpression(fm * CoeffElement(A.a_mon(n)) * fn_vinv, fn_u, true));
            out.emplace(f_var_id(cfg, n + 1),
                        RationalExpression(fp * CoeffElement(A.a_mon(n).inverse()) * fn_u,
                                           fn_vinv, true));
            break;
        }
        case AGen::PI:
            for (int n = 1; n <= A.N; ++n)
                out.emplace(f_var_id(cfg, n),
                            RationalExpression::variable(f_var_id(cfg, n + 1)));
            break;
        case AGen::IOTA:
            for (int n = 1; n <= A.N; ++n)
                out.emplace(f_var_id(cfg, n),
                            RationalExpression(LaurentPoly::one(),
                                               LaurentPoly::variable(f_var_id(cfg, n)), true));
            break;
        case AGen::R1:
            for (int n = 1; n <= A.N; ++n) {
                RationalExpression img = expr_div(
                    a_g_expr(A, n + 1),
                    expr_mul(RationalExpression::variable(f_var_id(cfg, n + 1)),
                             a_g_expr(A, n - 1)));
                out.emplace(f_var_id(cfg, n), img);
            }
            break;
        case AGen::R0:
            throw IndexOutOfRange("r_0 acts only through its expansion iota r_1 iota");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Acting on expression maps and applying words.

namespace detail {

inline ExprMap act_gen_A(const AffineConfigA& A, FrameKind frame, const AGen& g,
                         const ExprMap& exprs) {
    if (frame != FrameKind::F && frame != FrameKind::TAU)
        throw IndexOutOfRange("extended action is defined on the f- and tau-frames");
    if (g.kind == AGen::R0) {
        ExprMap e = exprs;
        for (AGen h : {AGen{AGen::IOTA, 0}, AGen{AGen::R1, 0}, AGen{AGen::IOTA, 0}})
            e = act_gen_A(A, frame, h, e);
        return e;
    }
    VarBindings vb = frame == FrameKind::F ? a_f_bindings(A, g) : a_tau_bindings(A, g);
    ParamBindings pb = a_param_bindings(A, g);
    ExprMap out;
    for (const auto& [v, e] : exprs) out.emplace(v, substitute(e, vb, pb));
    return out;
}

}  // namespace detail

inline ExprMap act_extended_A(const AffineConfigA& A, const AGen& g, const ExprMap& tauExprs) {
    return detail::act_gen_A(A, FrameKind::TAU, g, tauExprs);
}
inline ExprMap act_extended_A_f(const AffineConfigA& A, const AGen& g, const ExprMap& fExprs) {
    return detail::act_gen_A(A, FrameKind::F, g, fExprs);
}

struct AWordResult {
    std::map<ParamId, CoeffMonomial> params;  // images of a_1..a_N, b_0, b_1
    ExprMap exprs;
};

inline AWordResult apply_word_A(const AffineConfigA& A, FrameKind frame, const AWord& word) {
    if (frame != FrameKind::F && frame != FrameKind::TAU)
        throw IndexOutOfRange("extended action is defined on the f- and tau-frames");
    AWordResult r;
    for (int n = 1; n <= A.N - 1; ++n) r.params.emplace(A.a(n), A.a_mon(n));
    r.params.emplace(A.b(0), A.b_mon(0));
    r.params.emplace(A.b(1), A.b_mon(1));
    r.exprs = identity_exprs(make_frame(A.cfg, frame));
    AWord w = expand_extended(word);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        VarBindings vb = frame == FrameKind::F ? a_f_bindings(A, *it) : a_tau_bindings(A, *it);
        ParamBindings pb = a_param_bindings(A, *it);
        for (auto& [v, e] : r.exprs) e = substitute(e, vb, pb);
        for (auto& [p, m] : r.params) m = subst_params(m, pb);
    }
    return r;
}

// Parameter image of a word without threading the (possibly large) variable
// expressions; cheap monomial substitution only.
inline std::map<ParamId, CoeffMonomial> apply_word_params_A(const AffineConfigA& A,
                                                            const AWord& word) {
    std::map<ParamId, CoeffMonomial> params;
    for (int n = 1; n <= A.N - 1; ++n) params.emplace(A.a(n), A.a_mon(n));
    params.emplace(A.b(0), A.b_mon(0));
    params.emplace(A.b(1), A.b_mon(1));
    AWord w = expand_extended(word);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        ParamBindings pb = a_param_bindings(A, *it);
        for (auto& [p, m] : params) m = subst_params(m, pb);
    }
    return params;
}

// ---------------------------------------------------------------------------
// Extended action on the lattice. gamma_{1,n} = delta - H_n - E_n^1
// + E_{n-1}^{-1} + E_n^{-1} + E_{n+1}^{-1} and gamma-check_{1,n} = h_n - e_n^1
// are mutually orthogonal (-2)-pairs; r_1 is the product of their reflections.

inline RootLatticeElement gamma1_pair(const AffineConfigA& A, int n) {
    int N = A.N;
    DivisorClass d = invariant_classes(A.cfg).delta;
    d = d - DivisorClass::basis_h(N, A.node(n)) - DivisorClass::basis_e(N, n, 1) +
        DivisorClass::basis_e(N, n - 1, -1) + DivisorClass::basis_e(N, n, -1) +
        DivisorClass::basis_e(N, n + 1, -1);
    CurveClass c = CurveClass::basis_h(N, A.node(n)) - CurveClass::basis_e(N, n, 1);
    return {d, c};
}

inline RootLatticeElement beta1_pair(const AffineConfigA& A) {
    RootLatticeElement out{DivisorClass(A.N), CurveClass(A.N)};
    for (int n = 1; n <= A.N; ++n) {
        RootLatticeElement g = gamma1_pair(A, n);
        out.alpha = out.alpha + g.alpha;
        out.alpha_check = out.alpha_check + g.alpha_check;
    }
    return out;
}

inline CurveClass beta0_check(const AffineConfigA& A) {
    CurveClass r(A.N);
    for (int n = 1; n <= A.N; ++n)
        r = r + CurveClass::basis_h(A.N, n) - CurveClass::basis_e(A.N, n, -1);
    return r;
}

namespace detail {

template <typename V>
V shift_index_A(const AffineConfigA& A, const V& x) {
    V r(A.N);
    for (int n = 1; n <= A.N; ++n) r.h[static_cast<size_t>(A.cfg.mod(n))] = x.h[n - 1];
    for (const auto& [k, c] : x.e) r.add_e(A.cfg.mod(k.first) + 1, k.second, c);
    return r;
}

template <typename V>
V swap_layers_A(const AffineConfigA& A, const V& x) {
    V r(A.N);
    r.h = x.h;
    for (const auto& [k, c] : x.e) r.add_e(k.first, -k.second, c);
    return r;
}

}  // namespace detail

inline DivisorClass act_lattice_A(const AffineConfigA& A, const AGen& g, const DivisorClass& L) {
    switch (g.kind) {
        case AGen::S: return reflect(A.cfg, {g.n, 0}, L);
        case AGen::PI: return detail::shift_index_A(A, L);
        case AGen::IOTA: return detail::swap_layers_A(A, L);
        case AGen::R1: {
            DivisorClass r = L;
            for (int n = 1; n <= A.N; ++n) {
                RootLatticeElement gp = gamma1_pair(A, n);
                r = r + gp.alpha * pairing(L, gp.alpha_check);
            }
            return r;
        }
        case AGen::R0:
            return detail::swap_layers_A(
                A, act_lattice_A(A, {AGen::R1, 0}, detail::swap_layers_A(A, L)));
    }
    throw IndexOutOfRange("unknown generator");
}

inline CurveClass act_lattice_A(const AffineConfigA& A, const AGen& g, const CurveClass& lam) {
    switch (g.kind) {
        case AGen::S: return reflect(A.cfg, {g.n, 0}, lam);
        case AGen::PI: return detail::shift_index_A(A, lam);
        case AGen::IOTA: return detail::swap_layers_A(A, lam);
        case AGen::R1: {
            CurveClass r = lam;
            for (int n = 1; n <= A.N; ++n) {
                RootLatticeElement gp = gamma1_pair(A, n);
                r = r + gp.alpha_check * pairing(gp.alpha, lam);
            }
            return r;
        }
        case AGen::R0:
            return detail::swap_layers_A(
                A, act_lattice_A(A, {AGen::R1, 0}, detail::swap_layers_A(A, lam)));
    }
    throw IndexOutOfRange("unknown generator");
}

template <typename V>
V act_word_lattice_A(const AffineConfigA& A, const AWord& word, V v) {
    AWord w = expand_extended(word);
    for (auto it = w.rbegin(); it != w.rend(); ++it) v = act_lattice_A(A, *it, v);
    return v;
}

// ---------------------------------------------------------------------------
// Translations and the (nu, kappa) indexing of the tau-orbit.

// T_n = pi o s_{n+N-2} o ... o s_{n+1} o s_n ; T~ = r_1 o iota.
inline AWord translation_word_A(const AffineConfigA& A, int n) {
    AWord w{AGen{AGen::PI, 0}};
    for (int m = n + A.N - 2; m >= n; --m) w.push_back(AGen{AGen::S, A.node(m)});
    return w;
}

inline AWord kappa_translation_word_A() {
    return {AGen{AGen::R1, 0}, AGen{AGen::IOTA, 0}};
}

struct TranslationsA {
    std::vector<AWord> T;  // T[n-1] shifts nu by e_n
    AWord Ttilde;          // shifts kappa by 1
};

inline TranslationsA translations_A(const AffineConfigA& A) {
    TranslationsA out;
    for (int n = 1; n <= A.N; ++n) out.T.push_back(translation_word_A(A, n));
    out.Ttilde = kappa_translation_word_A();
    return out;
}

// The q-Painleve step (4.8): one application of r_1 o iota on the f-frame.
inline AWord qp_word_A() { return kappa_translation_word_A(); }

inline AWordResult qpA_step(const AffineConfigA& A) {
    return apply_word_A(A, FrameKind::F, qp_word_A());
}

struct NuKappa {
    std::vector<Int> nu;  // size N, normalized so nu[N-1] == 0
    Int kappa = 0;
    bool operator==(const NuKappa&) const = default;
};

// nu_i - nu_{i+1} = <L, alpha-check_i> (i < N), nu_N - nu_1 + 1 =
// <L, alpha-check_N>, kappa = <L, beta-check_0>; representative with nu_N = 0.
inline NuKappa nu_kappa_of(const AffineConfigA& A, const DivisorClass& L) {
    int N = A.N;
    NuKappa nk;
    nk.nu.assign(static_cast<size_t>(N), Int(0));
    for (int i = N - 1; i >= 1; --i)
        nk.nu[static_cast<size_t>(i - 1)] =
            nk.nu[static_cast<size_t>(i)] + pairing(L, coroot(A.cfg, {i, 0}));
    if (pairing(L, coroot(A.cfg, {N, 0})) != Int(1) - nk.nu[0])
        throw NonIntegralSolution("pairing equations are inconsistent for this class");
    nk.kappa = pairing(L, beta0_check(A));
    return nk;
}

inline DivisorClass divisor_of(const AffineConfigA& A, const NuKappa& nk) {
    int N = A.N;
    if (static_cast<int>(nk.nu.size()) != N)
        throw ShapeMismatch("nu vector has wrong length");
    DivisorClass L = DivisorClass::basis_e(N, N, 1);
    auto apply_times = [&](const AWord& w, Int m) {
        AWord word = m < 0 ? inverse_word_A(A, w) : w;
        if (m < 0) m = -m;
        for (Int t = 0; t < m; ++t) L = act_word_lattice_A(A, word, L);
    };
    for (int n = 1; n <= N - 1; ++n)
        apply_times(translation_word_A(A, n),
                    nk.nu[static_cast<size_t>(n - 1)] - nk.nu[static_cast<size_t>(N - 1)]);
    apply_times(kappa_translation_word_A(), nk.kappa);
    return L;
}

// ---------------------------------------------------------------------------
// Degree growth along a word, measured on reduced univariate fractions with
// every other symbol specialized at random points of a large prime field,
// against the lattice bound <w^t(D_i^{0,inf}), h_j>. Working modulo a 61-bit
// prime keeps the gcd reductions at machine-word cost; the measured degree
// can only undercount the rational-coefficient degree, so comparisons against
// the lattice bound remain sound.

namespace detail {

constexpr std::uint64_t kDegreePrime = 2305843009213693951ULL;  // 2^61 - 1

inline std::uint64_t fp_mul(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % kDegreePrime);
}
inline std::uint64_t fp_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    if (s >= kDegreePrime) s -= kDegreePrime;
    return s;
}
inline std::uint64_t fp_sub(std::uint64_t a, std::uint64_t b) {
    return a >= b ? a - b : a + kDegreePrime - b;
}
inline std::uint64_t fp_pow(std::uint64_t a, std::uint64_t e) {
    std::uint64_t acc = 1;
    while (e) {
        if (e & 1) acc = fp_mul(acc, a);
        a = fp_mul(a, a);
        e >>= 1;
    }
    return acc;
}
inline std::uint64_t fp_inv(std::uint64_t a) {
    if (a == 0) throw DivisionByZero("inverse of zero residue");
    return fp_pow(a, kDegreePrime - 2);
}
inline std::uint64_t fp_of_int(const Int& z) {
    Int r = z % Int(kDegreePrime);
    if (r < 0) r += Int(kDegreePrime);
    return static_cast<std::uint64_t>(r);
}
inline std::uint64_t fp_of_rat(const Rat& q) {
    return fp_mul(fp_of_int(numerator(q)), fp_inv(fp_of_int(denominator(q))));
}

struct FpPoly {
    std::vector<std::uint64_t> c;  // c[i] coefficient of x^i

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }

    static FpPoly constant(std::uint64_t k) {
        FpPoly p;
        if (k != 0) p.c.push_back(k);
        return p;
    }
    static FpPoly identity() {
        FpPoly p;
        p.c = {0, 1};
        return p;
    }

    FpPoly operator+(const FpPoly& o) const {
        FpPoly r;
        r.c.resize(std::max(c.size(), o.c.size()), 0);
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] = fp_add(r.c[i], o.c[i]);
        r.trim();
        return r;
    }
    FpPoly operator*(const FpPoly& o) const {
        FpPoly r;
        if (is_zero() || o.is_zero()) return r;
        r.c.assign(c.size() + o.c.size() - 1, 0);
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            for (size_t j = 0; j < o.c.size(); ++j)
                r.c[i + j] = fp_add(r.c[i + j], fp_mul(c[i], o.c[j]));
        }
        r.trim();
        return r;
    }
};

inline FpPoly fp_rem(FpPoly a, const FpPoly& b) {
    std::uint64_t lead_inv = fp_inv(b.c.back());
    while (!a.is_zero() && a.degree() >= b.degree()) {
        std::uint64_t f = fp_mul(a.c.back(), lead_inv);
        size_t shift = static_cast<size_t>(a.degree() - b.degree());
        for (size_t i = 0; i < b.c.size(); ++i)
            a.c[shift + i] = fp_sub(a.c[shift + i], fp_mul(f, b.c[i]));
        a.trim();
    }
    return a;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = fp_rem(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return FpPoly::constant(1);
    return a;
}

inline FpPoly fp_div_exact(const FpPoly& a, const FpPoly& b) {
    FpPoly q, r = a;
    q.c.assign(a.c.size(), 0);
    std::uint64_t lead_inv = fp_inv(b.c.back());
    while (!r.is_zero() && r.degree() >= b.degree()) {
        std::uint64_t f = fp_mul(r.c.back(), lead_inv);
        size_t shift = static_cast<size_t>(r.degree() - b.degree());
        q.c[shift] = f;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[shift + i] = fp_sub(r.c[shift + i], fp_mul(f, b.c[i]));
        r.trim();
    }
    q.trim();
    return q;
}

struct FpPair {
    FpPoly num, den;

    void reduce() {
        if (num.is_zero()) {
            den = FpPoly::constant(1);
            return;
        }
        FpPoly g = fp_gcd(num, den);
        if (g.degree() > 0) {
            num = fp_div_exact(num, g);
            den = fp_div_exact(den, g);
        }
    }
    int degree() const { return std::max(num.degree(), den.degree()); }
};

using FpParamValues = std::map<ParamId, std::uint64_t>;

// D-th-root semantics as in eval_coeff: the stored value is the root itself,
// an exponent x contributes root^{xD}.
inline std::uint64_t fp_eval_coeff(const CoeffElement& c, long D, const FpParamValues& roots) {
    std::uint64_t out = 0;
    for (const auto& [e, k] : c.terms) {
        std::uint64_t m = fp_of_rat(k);
        for (const auto& [p, x] : e) {
            Rat scaled = x * D;
            if (denominator(scaled) != 1)
                throw NonClearedExponent("exponent not cleared by root order D");
            Int ie = numerator(scaled);
            std::uint64_t base = roots.at(p);
            if (ie < 0) {
                base = fp_inv(base);
                ie = -ie;
            }
            m = fp_mul(m, fp_pow(base, static_cast<std::uint64_t>(ie)));
        }
        out = fp_add(out, m);
    }
    return out;
}

inline FpPoly fp_pow_poly(const FpPoly& p, int e) {
    FpPoly acc = FpPoly::constant(1);
    for (int t = 0; t < e; ++t) acc = acc * p;
    return acc;
}

// Evaluate a polynomial with nonnegative variable exponents at unreduced
// fraction values, returning an unreduced fraction.
inline FpPair fp_eval_poly(const LaurentPoly& p, long D, const FpParamValues& roots,
                           const std::map<VarId, FpPair>& vals) {
    std::map<VarId, int> mx;
    for (const auto& [e, c] : p.terms)
        for (const auto& [v, x] : e) {
            if (x < 0) throw DegenerateSpecialization("negative exponent in iterate");
            int& slot = mx[v];
            slot = std::max(slot, x);
        }
    FpPoly num;
    for (const auto& [e, c] : p.terms) {
        FpPoly t = FpPoly::constant(fp_eval_coeff(c, D, roots));
        for (const auto& [v, m] : mx) {
            auto it = e.find(v);
            int x = it == e.end() ? 0 : it->second;
            const FpPair& val = vals.at(v);
            t = t * fp_pow_poly(val.num, x) * fp_pow_poly(val.den, m - x);
        }
        num = num + t;
    }
    FpPoly den = FpPoly::constant(1);
    for (const auto& [v, m] : mx) den = den * fp_pow_poly(vals.at(v).den, m);
    return {num, den};
}

}  // namespace detail

struct DegreeGrowthTable {
    std::vector<int> degrees;            // degree of iterate t in f_j, t = 0..iters
    std::vector<Int> bounds;             // lattice bound per iterate
    std::vector<int> second_differences; // degrees[t+2] - 2 degrees[t+1] + degrees[t]
};

inline DegreeGrowthTable degree_growth_table(const AffineConfigA& A, const AWord& word,
                                             int iters, int i, int j, std::uint64_t seed) {
    if (iters < 2) throw DegenerateSpecialization("need at least two iterates");
    const ShapeConfig& cfg = A.cfg;
    AWordResult step = apply_word_A(A, FrameKind::F, word);

    Int Dlcm = 1;
    for (const auto& [v, e] : step.exprs) Dlcm = int_lcm(Dlcm, Int(clearing_root_order(e)));
    long D = static_cast<long>(Dlcm);

    std::mt19937_64 rng(seed);
    detail::FpParamValues roots;
    for (const auto& [p, m] : step.params) {
        std::uniform_int_distribution<std::uint64_t> dist(2, detail::kDegreePrime - 2);
        roots[p] = dist(rng);
    }

    std::map<VarId, detail::FpPair> cur;
    for (int n = 1; n <= A.N; ++n) {
        detail::FpPair val{detail::FpPoly::constant(1), detail::FpPoly::constant(1)};
        if (n == A.node(j)) {
            val.num = detail::FpPoly::identity();  // the symbolic variable itself
        } else {
            std::uniform_int_distribution<std::uint64_t> dist(2, detail::kDegreePrime - 2);
            val.num = detail::FpPoly::constant(dist(rng));
        }
        cur.emplace(f_var_id(cfg, n), val);
    }

    DegreeGrowthTable out;
    out.degrees.push_back(A.node(i) == A.node(j) ? 1 : 0);

    std::map<ParamId, CoeffMonomial> sigma;  // accumulated parameter image
    for (const auto& [p, m] : step.params) sigma.emplace(p, param_monomial(p));
    ParamBindings step_pb;
    for (const auto& [p, m] : step.params) step_pb.emplace(p, m);

    for (int t = 1; t <= iters; ++t) {
        ParamBindings pb;
        for (const auto& [p, m] : sigma) pb.emplace(p, m);
        std::map<VarId, detail::FpPair> next;
        for (const auto& [v, e] : step.exprs) {
            RationalExpression es = substitute(e, VarBindings{}, pb);
            detail::FpPair np = detail::fp_eval_poly(es.num, D, roots, cur);
            detail::FpPair dp = detail::fp_eval_poly(es.den, D, roots, cur);
            detail::FpPair r{np.num * dp.den, np.den * dp.num};
            if (r.den.is_zero()) throw DegenerateSpecialization("iterate hit a pole");
            r.reduce();
            next.emplace(v, std::move(r));
        }
        cur = std::move(next);
        for (auto& [p, m] : sigma) m = subst_params(m, step_pb);
        out.degrees.push_back(cur.at(f_var_id(cfg, i)).degree());
    }

    // Quadratic certificate: the class of a hyperplane section transported by
    // the lattice action bounds the degree of the transported coordinate.
    DivisorClass hi = DivisorClass::basis_h(A.N, A.node(i));
    CurveClass hj = CurveClass::basis_h(A.N, A.node(j));
    out.bounds.push_back(pairing(hi, hj));
    for (int t = 1; t <= iters; ++t) {
        hi = act_word_lattice_A(A, word, hi);
        out.bounds.push_back(pairing(hi, hj));
    }

    for (size_t t = 0; t + 2 < out.degrees.size(); ++t)
        out.second_differences.push_back(out.degrees[t + 2] - 2 * out.degrees[t + 1] +
                                         out.degrees[t]);
    return out;
}

// ---------------------------------------------------------------------------
// The D_{N+2}^{(1)} specialization: shape k = l = (2,1,...,1,2,1) with the
// N-th node frozen (a_N^0 = 1, tau_N^{+-1} = 1, node reflection ignored) and
// root variables a_0..a_{N+2} indexed by the D-type diagram
//   0 - 1 - 2 - ... - (N-1) - N, with N+2 attached at 1 and N+1 at N-1.

struct AffineConfigD {
    ShapeConfig cfg;
    int N;

    static std::vector<int> d_shape(int n) {
        std::vector<int> s(static_cast<size_t>(n), 1);
        s[0] = 2;
        s[static_cast<size_t>(n - 2)] = 2;
        return s;
    }

    explicit AffineConfigD(int n) : cfg(d_shape(n), d_shape(n)), N(n) {}

    ParamId a(int i) const {
        if (i < 0 || i > N + 2) throw IndexOutOfRange("D-type label out of range");
        return param("a" + std::to_string(i));
    }
    CoeffMonomial a_mon(int i) const { return param_monomial(a(i)); }

    CoeffMonomial u(int n) const {
        if (n == 1) return a_mon(1) * a_mon(0).pow(Rat(-1, 2)) * a_mon(N + 2).pow(Rat(1, 2));
        if (n == N - 1) return a_mon(N - 1) * a_mon(N).pow(Rat(-1, 2)) * a_mon(N + 1).pow(Rat(1, 2));
        if (n >= 2 && n <= N - 2) return a_mon(n);
        throw IndexOutOfRange("u is defined for 1 <= n <= N-1");
    }
    CoeffMonomial v(int n) const {
        if (n == 1) return a_mon(1) * a_mon(0).pow(Rat(1, 2)) * a_mon(N + 2).pow(Rat(-1, 2));
        if (n == N - 1) return a_mon(N - 1) * a_mon(N).pow(Rat(1, 2)) * a_mon(N + 1).pow(Rat(-1, 2));
        if (n >= 2 && n <= N - 2) return a_mon(n);
        throw IndexOutOfRange("v is defined for 1 <= n <= N-1");
    }
};

inline bool d_adjacent(int N, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i == 0 && j == 1) return true;
    if (i == 1 && j == N + 2) return true;
    if (j == i + 1 && i >= 1 && j <= N - 1) return true;
    if (i == N - 1 && (j == N || j == N + 1)) return true;
    return false;
}

inline Int d_cartan(int N, int i, int j) {
    if (i == j) return 2;
    return d_adjacent(N, i, j) ? Int(-1) : Int(0);
}

inline ParamBindings d_param_bindings(const AffineConfigD& Dc, int i) {
    ParamBindings out;
    for (int j = 0; j <= Dc.N + 2; ++j) {
        Int c = d_cartan(Dc.N, i, j);
        if (c == 0) continue;
        out.emplace(Dc.a(j), Dc.a_mon(j) * Dc.a_mon(i).pow(Rat(-c)));
    }
    return out;
}

namespace detail {

// xi_n / eta_n with the frozen node read as 1 (indices taken cyclically;
// n = 0 and n = N both name the frozen node).
inline LaurentPoly d_xi(const AffineConfigD& Dc, int n) {
    int m = Dc.cfg.mod(n);
    if (m == 0) return LaurentPoly::one();
    return xi_poly(Dc.cfg, m);
}
inline LaurentPoly d_eta(const AffineConfigD& Dc, int n) {
    int m = Dc.cfg.mod(n);
    if (m == 0) return LaurentPoly::one();
    return eta_poly(Dc.cfg, m);
}

}  // namespace detail

inline VarBindings d_tau_bindings(const AffineConfigD& Dc, int i) {
    const ShapeConfig& cfg = Dc.cfg;
    int N = Dc.N;
    if (i < 0 || i > N + 2) throw IndexOutOfRange("D-type label out of range");
    VarBindings out;
    auto swap_pair = [&](int node, int sign) {
        VarId x = tau_var_id(cfg, node, sign), y = tau_var_id(cfg, node, 2 * sign);
        out.emplace(x, RationalExpression::variable(y));
        out.emplace(y, RationalExpression::variable(x));
    };
    if (i == 0) {
        swap_pair(1, 1);
    } else if (i == N + 2) {
        swap_pair(1, -1);
    } else if (i == N) {
        swap_pair(N - 1, 1);
    } else if (i == N + 1) {
        swap_pair(N - 1, -1);
    } else {
        int n = i;
        LaurentPoly zp = detail::d_xi(Dc, n + 1) * detail::d_eta(Dc, n - 1);
        LaurentPoly zm = detail::d_xi(Dc, n - 1) * detail::d_eta(Dc, n + 1);
        CoeffMonomial u = Dc.u(n), v = Dc.v(n);
        out.emplace(tau_var_id(cfg, n, 1),
                    RationalExpression(zp * CoeffElement(v.pow(Rat(1, 2))) +
                                           zm * CoeffElement(v.pow(Rat(-1, 2))),
                                       LaurentPoly::variable(tau_var_id(cfg, n, -1)), true));
        out.emplace(tau_var_id(cfg, n, -1),
                    RationalExpression(zp * CoeffElement(u.pow(Rat(-1, 2))) +
                                           zm * CoeffElement(u.pow(Rat(1, 2))),
                                       LaurentPoly::variable(tau_var_id(cfg, n, 1)), true));
    }
    return out;
}

// f_n = xi_{n+1} eta_{n-1} / (xi_{n-1} eta_{n+1}) with the frozen node's
// tau-variables already set to 1.
inline RationalExpression d_f_tau_expr(const AffineConfigD& Dc, int n) {
    return RationalExpression(detail::d_xi(Dc, n + 1) * detail::d_eta(Dc, n - 1),
                              detail::d_xi(Dc, n - 1) * detail::d_eta(Dc, n + 1), true);
}

// f-frame action. Node reflections follow the half-weight form with the
// D-type u, v; the four boundary swaps act trivially on f.
inline VarBindings d_f_bindings(const AffineConfigD& Dc, int i) {
    const ShapeConfig& cfg = Dc.cfg;
    int N = Dc.N;
    if (i < 0 || i > N + 2) throw IndexOutOfRange("D-type label out of range");
    VarBindings out;
    if (i < 1 || i > N - 1) return out;
    int n = i;
    CoeffMonomial u = Dc.u(n), v = Dc.v(n);
    LaurentPoly fn = LaurentPoly::variable(f_var_id(cfg, n));
    LaurentPoly vnum = fn * CoeffElement(v.pow(Rat(1, 2))) +
                       LaurentPoly(CoeffElement(v.pow(Rat(-1, 2))));
    LaurentPoly uden = fn * CoeffElement(u.pow(Rat(-1, 2))) +
                       LaurentPoly(CoeffElement(u.pow(Rat(1, 2))));
    out.emplace(f_var_id(cfg, n - 1),
                RationalExpression(LaurentPoly::variable(f_var_id(cfg, n - 1)) * vnum, uden,
                                   true));
    out.emplace(f_var_id(cfg, n + 1),
                RationalExpression(LaurentPoly::variable(f_var_id(cfg, n + 1)) * uden, vnum,
                                   true));
    return out;
}

// ---------------------------------------------------------------------------
// Words in the D-type generators, their lattice shadow, and degree growth.

using DWord = std::vector<int>;

// The Picard-lattice action of the D-type generator s_i: middle nodes act as
// the node reflection, the four boundary swaps transpose adjacent
// exceptional layers, i.e. reflect in a layer-difference root.
inline RootIndex d_lattice_index(const AffineConfigD& Dc, int i) {
    int N = Dc.N;
    if (i >= 1 && i <= N - 1) return {i, 0};
    if (i == 0) return {1, 1};
    if (i == N + 2) return {1, -1};
    if (i == N) return {N - 1, 1};
    if (i == N + 1) return {N - 1, -1};
    throw IndexOutOfRange("D-type label out of range");
}

inline WeylWord d_shape_word(const AffineConfigD& Dc, const DWord& w) {
    WeylWord out;
    out.reserve(w.size());
    for (int i : w) out.push_back(d_lattice_index(Dc, i));
    return out;
}

struct DWordResult {
    std::map<ParamId, CoeffMonomial> params;  // images of a_0..a_{N+2}
    ExprMap exprs;                            // f-frame images
};

// Apply a word rightmost-generator-first to the f-frame and the parameters.
inline DWordResult apply_word_D(const AffineConfigD& Dc, const DWord& word) {
    DWordResult r;
    for (int i = 0; i <= Dc.N + 2; ++i) r.params.emplace(Dc.a(i), Dc.a_mon(i));
    r.exprs = identity_exprs(make_frame(Dc.cfg, FrameKind::F));
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        VarBindings vb = d_f_bindings(Dc, *it);
        ParamBindings pb = d_param_bindings(Dc, *it);
        for (auto& [v, e] : r.exprs) e = substitute(e, vb, pb);
        for (auto& [p, m] : r.params) m = subst_params(m, pb);
    }
    return r;
}

// Parameter image only; cheap monomial substitution.
inline std::map<ParamId, CoeffMonomial> apply_word_params_D(const AffineConfigD& Dc,
                                                            const DWord& word) {
    std::map<ParamId, CoeffMonomial> params;
    for (int i = 0; i <= Dc.N + 2; ++i) params.emplace(Dc.a(i), Dc.a_mon(i));
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        ParamBindings pb = d_param_bindings(Dc, *it);
        for (auto& [p, m] : params) m = subst_params(m, pb);
    }
    return params;
}

// Diagram marks: 1 on the four degree-one nodes, 2 elsewhere. The null
// monomial prod a_i^{m_i} is fixed by every generator.
inline std::vector<Int> d_marks(const AffineConfigD& Dc) {
    std::vector<Int> marks(static_cast<size_t>(Dc.N + 3));
    for (int i = 0; i <= Dc.N + 2; ++i) {
        int deg = 0;
        for (int j = 0; j <= Dc.N + 2; ++j)
            if (j != i && d_adjacent(Dc.N, i, j)) ++deg;
        marks[static_cast<size_t>(i)] = (deg == 1) ? 1 : 2;
    }
    return marks;
}

// A length-14 translation: every parameter maps to itself times an integer
// power of the null monomial (found by breadth-first search over parameter
// actions; 14 is the minimal translation length in this group).
inline DWord translation_word_D(const AffineConfigD& Dc) {
    if (Dc.N != 3) throw IndexOutOfRange("translation word tabulated for N = 3 only");
    return {0, 1, 0, 2, 3, 4, 2, 1, 5, 1, 2, 3, 4, 2};
}

// Degree of the t-th image of f_i as a polynomial in f_j, measured by
// threading one symbolic variable through the iteration with all other
// quantities specialized to random residues mod a large prime, next to the
// lattice-transported intersection bound.
inline DegreeGrowthTable degree_growth_table_D(const AffineConfigD& Dc, const DWord& word,
                                               int iters, int i, int j, std::uint64_t seed) {
    if (iters < 2) throw DegenerateSpecialization("need at least two iterates");
    if (i < 1 || i > Dc.N || j < 1 || j > Dc.N) throw IndexOutOfRange("coordinate index");
    const ShapeConfig& cfg = Dc.cfg;

    // Composing the whole word symbolically swells; instead thread the
    // specialized state through the word one generator at a time, applied
    // rightmost-generator-first like apply_word_D. Parameter roots evolve by
    // the (integer-exponent) monomial images of each generator.
    struct GenStep {
        VarBindings vb;
        ParamBindings pb;
    };
    std::vector<GenStep> steps;  // in application order
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        steps.push_back({d_f_bindings(Dc, *it), d_param_bindings(Dc, *it)});

    Int Dlcm = 1;
    for (const auto& s : steps)
        for (const auto& [v, e] : s.vb) Dlcm = int_lcm(Dlcm, Int(clearing_root_order(e)));
    long D = static_cast<long>(Dlcm);

    std::mt19937_64 rng(seed);
    detail::FpParamValues roots;
    for (int n = 0; n <= Dc.N + 2; ++n) {
        std::uniform_int_distribution<std::uint64_t> dist(2, detail::kDegreePrime - 2);
        roots[Dc.a(n)] = dist(rng);
    }

    std::map<VarId, detail::FpPair> cur;
    for (int n = 1; n <= Dc.N; ++n) {
        detail::FpPair val{detail::FpPoly::constant(1), detail::FpPoly::constant(1)};
        if (n == j) {
            val.num = detail::FpPoly::identity();
        } else {
            std::uniform_int_distribution<std::uint64_t> dist(2, detail::kDegreePrime - 2);
            val.num = detail::FpPoly::constant(dist(rng));
        }
        cur.emplace(f_var_id(cfg, n), val);
    }

    DegreeGrowthTable out;
    out.degrees.push_back(i == j ? 1 : 0);

    for (int t = 1; t <= iters; ++t) {
        for (const GenStep& s : steps) {
            std::map<VarId, detail::FpPair> next = cur;
            for (const auto& [v, e] : s.vb) {
                detail::FpPair np = detail::fp_eval_poly(e.num, D, roots, cur);
                detail::FpPair dp = detail::fp_eval_poly(e.den, D, roots, cur);
                detail::FpPair r{np.num * dp.den, np.den * dp.num};
                if (r.den.is_zero()) throw DegenerateSpecialization("iterate hit a pole");
                r.reduce();
                next[v] = std::move(r);
            }
            cur = std::move(next);
            detail::FpParamValues nr = roots;
            for (const auto& [p, m] : s.pb) {
                std::uint64_t val = detail::fp_of_rat(m.coeff);
                for (const auto& [pp, x] : m.exps) {
                    if (denominator(x) != 1)
                        throw NonClearedExponent("fractional parameter image");
                    Int ie = numerator(x);
                    std::uint64_t base = roots.at(pp);
                    if (ie < 0) {
                        base = detail::fp_inv(base);
                        ie = -ie;
                    }
                    val = detail::fp_mul(val, detail::fp_pow(base, static_cast<std::uint64_t>(ie)));
                }
                nr[p] = val;
            }
            roots = std::move(nr);
        }
        out.degrees.push_back(cur.at(f_var_id(cfg, i)).degree());
    }

    // The specialized state evolves by the inverse substitution direction, so
    // transport the hyperplane class by the reversed word (every generator is
    // an involution, making the reversal the group inverse).
    WeylWord sw = d_shape_word(Dc, word);
    std::reverse(sw.begin(), sw.end());
    DivisorClass hi = DivisorClass::basis_h(Dc.N, i);
    CurveClass hj = CurveClass::basis_h(Dc.N, j);
    out.bounds.push_back(pairing(hi, hj));
    for (int t = 1; t <= iters; ++t) {
        hi = apply_word_lattice(cfg, sw, hi);
        out.bounds.push_back(pairing(hi, hj));
    }

    for (size_t t = 0; t + 2 < out.degrees.size(); ++t)
        out.second_differences.push_back(out.degrees[t + 2] - 2 * out.degrees[t + 1] +
                                         out.degrees[t]);
    return out;
}

// Conserved quantities of the D-type dynamics, as f-frame expressions:
// prod_n f_n for odd N; the two parity products for even N.
inline std::vector<RationalExpression> conserved_quantities_D(const AffineConfigD& Dc) {
    if (Dc.N % 2 == 1) {
        LaurentPoly p = LaurentPoly::one();
        for (int n = 1; n <= Dc.N; ++n) p = p * LaurentPoly::variable(f_var_id(Dc.cfg, n));
        return {RationalExpression(p)};
    }
    LaurentPoly even = LaurentPoly::one(), odd = LaurentPoly::one();
    for (int n = 2; n <= Dc.N; n += 2) even = even * LaurentPoly::variable(f_var_id(Dc.cfg, n));
    for (int n = 1; n <= Dc.N; n += 2) odd = odd * LaurentPoly::variable(f_var_id(Dc.cfg, n));
    return {RationalExpression(even), RationalExpression(odd)};
}

}  // namespace weyltrop
