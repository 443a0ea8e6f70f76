#pragma once

#include <string>

#include "weyltrop/expr.hpp"
#include "weyltrop/lattice.hpp"

namespace weyltrop {

// ---------------------------------------------------------------------------
// Symbol naming for one shape. Names encode node and layer, so repeated
// construction for the same shape re-interns the same ids.

inline ParamId root_var_id(const ShapeConfig& cfg, const RootIndex& idx) {
    check_root_index(cfg, idx);
    int n = cfg.mod(idx.n - 1) + 1;
    return param("a" + std::to_string(n) + "^" + std::to_string(idx.i));
}

inline VarId f_var_id(const ShapeConfig& cfg, int n) {
    return var("f" + std::to_string(cfg.mod(n - 1) + 1));
}
inline VarId x_var_id(const ShapeConfig& cfg, int n) {
    return var("x" + std::to_string(cfg.mod(n - 1) + 1));
}
inline VarId tau_var_id(const ShapeConfig& cfg, int n, int i) {
    int nn = cfg.mod(n - 1) + 1;
    if (i == 0 || i > cfg.k_at(nn) || i < -cfg.l_at(nn))
        throw IndexOutOfRange("tau layer out of range");
    return var("tau" + std::to_string(nn) + "^" + std::to_string(i));
}
inline VarId zeta_var_id(const ShapeConfig& cfg, int n, bool at_zero) {
    return var("zeta" + std::to_string(cfg.mod(n - 1) + 1) + (at_zero ? "^0" : "^inf"));
}

// ---------------------------------------------------------------------------
// Multiplicative root variables and the subvariety parameters u, v.

// State of the parameter field: current images of the root variables as
// monomials in the base symbols. The group acts by monomial substitutions.
struct ParamState {
    ShapeConfig cfg;
    std::map<ParamId, CoeffMonomial> images;  // identity when empty

    explicit ParamState(ShapeConfig c) : cfg(std::move(c)) {
        for (const RootIndex& idx : all_root_indices(cfg)) {
            ParamId p = root_var_id(cfg, idx);
            images.emplace(p, param_monomial(p));
        }
    }

    const CoeffMonomial& image(const RootIndex& idx) const {
        return images.at(root_var_id(cfg, idx));
    }
};

// Base-symbol monomial for a_n^i.
inline CoeffMonomial a_monomial(const ShapeConfig& cfg, const RootIndex& idx) {
    return param_monomial(root_var_id(cfg, idx));
}

// The parameters u_n, v_n of the blow-up centers, as monomials in the base
// root variables with rational exponents.
inline CoeffMonomial u_monomial(const ShapeConfig& cfg, int n) {
    int k = cfg.k_at(n), l = cfg.l_at(n);
    Rat outer(l, k + l);
    CoeffMonomial m = a_monomial(cfg, {n, 0}).pow(outer);
    for (int j = 1; j <= l - 1; ++j)
        m = m * a_monomial(cfg, {n, -j}).pow((1 - Rat(j, l)) * outer);
    Rat inner(k, k + l);
    for (int i = 1; i <= k - 1; ++i)
        m = m * a_monomial(cfg, {n, i}).pow(-(1 - Rat(i, k)) * inner);
    return m;
}

inline CoeffMonomial v_monomial(const ShapeConfig& cfg, int n) {
    int k = cfg.k_at(n), l = cfg.l_at(n);
    Rat inner(k, k + l);
    CoeffMonomial m = a_monomial(cfg, {n, 0}).pow(inner);
    for (int i = 1; i <= k - 1; ++i)
        m = m * a_monomial(cfg, {n, i}).pow((1 - Rat(i, k)) * inner);
    Rat outer(l, k + l);
    for (int j = 1; j <= l - 1; ++j)
        m = m * a_monomial(cfg, {n, -j}).pow(-(1 - Rat(j, l)) * outer);
    return m;
}

// u_n^i (1 <= i <= k_n) and v_n^{-j} (1 <= j <= l_n) via the recursions
// u_n^i = a_n^{i-1} u_n^{i-1}, v_n^{-j} = a_n^{-j+1} v_n^{-j+1}.
inline CoeffMonomial u_chain_monomial(const ShapeConfig& cfg, int n, int i) {
    if (i < 1 || i > cfg.k_at(n)) throw IndexOutOfRange("u chain index");
    CoeffMonomial m = u_monomial(cfg, n);
    for (int t = 2; t <= i; ++t) m = m * a_monomial(cfg, {n, t - 1});
    return m;
}
inline CoeffMonomial v_chain_monomial(const ShapeConfig& cfg, int n, int j) {
    if (j < 1 || j > cfg.l_at(n)) throw IndexOutOfRange("v chain index");
    CoeffMonomial m = v_monomial(cfg, n);
    for (int t = 2; t <= j; ++t) m = m * a_monomial(cfg, {n, -(t - 1)});
    return m;
}

// Substitution map of a simple reflection on the base root variables:
// a_b -> a_b * a_g^{-C_{gb}}.
inline ParamBindings param_bindings(const ShapeConfig& cfg, const RootIndex& g) {
    check_root_index(cfg, g);
    ParamBindings out;
    for (const RootIndex& b : all_root_indices(cfg)) {
        Int c = cartan_entry(cfg, g, b);
        if (c == 0) continue;
        out.emplace(root_var_id(cfg, b),
                    a_monomial(cfg, b) * a_monomial(cfg, g).pow(Rat(-c)));
    }
    return out;
}

inline ParamState act_params(const ParamState& st, const RootIndex& g) {
    ParamState out = st;
    ParamBindings pb = param_bindings(st.cfg, g);
    for (auto& [p, m] : out.images) m = subst_params(m, pb);
    return out;
}

// ---------------------------------------------------------------------------
// Variable frames and generator formulas.

enum class FrameKind { F, X, TAU, ZETA };

struct VariableFrame {
    FrameKind kind;
    std::vector<VarId> vars;
};

inline VariableFrame make_frame(const ShapeConfig& cfg, FrameKind kind) {
    VariableFrame fr{kind, {}};
    for (int n = 1; n <= cfg.N; ++n) {
        switch (kind) {
            case FrameKind::F: fr.vars.push_back(f_var_id(cfg, n)); break;
            case FrameKind::X: fr.vars.push_back(x_var_id(cfg, n)); break;
            case FrameKind::TAU:
                for (int i = 1; i <= cfg.k_at(n); ++i) fr.vars.push_back(tau_var_id(cfg, n, i));
                for (int j = 1; j <= cfg.l_at(n); ++j) fr.vars.push_back(tau_var_id(cfg, n, -j));
                break;
            case FrameKind::ZETA:
                fr.vars.push_back(zeta_var_id(cfg, n, true));
                fr.vars.push_back(zeta_var_id(cfg, n, false));
                break;
        }
    }
    return fr;
}

namespace detail {

inline RationalExpression monomial_expr(const CoeffMonomial& m) {
    return RationalExpression::from_monomial(m);
}

// xi_n and eta_n as monomials in the tau-variables.
inline LaurentPoly xi_poly(const ShapeConfig& cfg, int n) {
    VarExps e;
    for (int i = 1; i <= cfg.k_at(n); ++i) e[tau_var_id(cfg, n, i)] += 1;
    return LaurentPoly::monomial(e, CoeffElement::one());
}
inline LaurentPoly eta_poly(const ShapeConfig& cfg, int n) {
    VarExps e;
    for (int j = 1; j <= cfg.l_at(n); ++j) e[tau_var_id(cfg, n, -j)] += 1;
    return LaurentPoly::monomial(e, CoeffElement::one());
}

inline void require_balanced(const ShapeConfig& cfg, int n) {
    if (!cfg.balanced_at(n))
        throw AssumptionViolated("k_{n-1}k_{n+1} != l_{n-1}l_{n+1} at this node");
}

}  // namespace detail

// f-frame action of a node reflection, exact form with fractional powers of
// a_n^0 in front.
inline VarBindings f_bindings(const ShapeConfig& cfg, const RootIndex& g) {
    check_root_index(cfg, g);
    if (g.i != 0) return {};
    int n = g.n;
    LaurentPoly fn = LaurentPoly::variable(f_var_id(cfg, n));
    LaurentPoly u(CoeffElement(u_monomial(cfg, n)));
    LaurentPoly vinv(CoeffElement(v_monomial(cfg, n).inverse()));
    LaurentPoly fn_u = fn + u;
    LaurentPoly fn_vinv = fn + vinv;
    CoeffMonomial a0 = a_monomial(cfg, g);

    VarBindings out;
    {
        int km = cfg.k_at(n - 1), lm = cfg.l_at(n - 1);
        CoeffMonomial pre = a0.pow(Rat(lm, km + lm));
        LaurentPoly num = LaurentPoly::variable(f_var_id(cfg, n - 1)) * CoeffElement(pre) * fn_vinv;
        out.emplace(f_var_id(cfg, n - 1), RationalExpression(num, fn_u, true));
    }
    {
        int kp = cfg.k_at(n + 1), lp = cfg.l_at(n + 1);
        CoeffMonomial pre = a0.pow(Rat(-kp, kp + lp));
        LaurentPoly num = LaurentPoly::variable(f_var_id(cfg, n + 1)) * CoeffElement(pre) * fn_u;
        out.emplace(f_var_id(cfg, n + 1), RationalExpression(num, fn_vinv, true));
    }
    return out;
}

// The omega-form of the f-action, defined under the balance condition.
inline VarBindings f_omega_bindings(const ShapeConfig& cfg, const RootIndex& g) {
    check_root_index(cfg, g);
    if (g.i != 0) return {};
    int n = g.n;
    detail::require_balanced(cfg, n);
    Rat w = cfg.omega(n);
    LaurentPoly fn = LaurentPoly::variable(f_var_id(cfg, n));
    CoeffMonomial u = u_monomial(cfg, n), v = v_monomial(cfg, n);
    LaurentPoly vnum = fn * CoeffElement(v.pow(w)) + LaurentPoly(CoeffElement(v.pow(w - 1)));
    LaurentPoly uden = fn * CoeffElement(u.pow(-w)) + LaurentPoly(CoeffElement(u.pow(1 - w)));

    VarBindings out;
    out.emplace(f_var_id(cfg, n - 1),
                RationalExpression(LaurentPoly::variable(f_var_id(cfg, n - 1)) * vnum, uden, true));
    out.emplace(f_var_id(cfg, n + 1),
                RationalExpression(LaurentPoly::variable(f_var_id(cfg, n + 1)) * uden, vnum, true));
    return out;
}

// x-frame action: only x_n moves under the node reflection.
inline VarBindings x_bindings(const ShapeConfig& cfg, const RootIndex& g) {
    check_root_index(cfg, g);
    if (g.i != 0) return {};
    int n = g.n;
    detail::require_balanced(cfg, n);
    Rat w = cfg.omega(n);
    CoeffMonomial u = u_monomial(cfg, n), v = v_monomial(cfg, n);
    LaurentPoly xp = LaurentPoly::variable(x_var_id(cfg, n + 1));
    LaurentPoly xm = LaurentPoly::variable(x_var_id(cfg, n - 1));
    LaurentPoly num = xp * CoeffElement(v.pow(w)) + xm * CoeffElement(v.pow(w - 1));
    LaurentPoly den = xp * CoeffElement(u.pow(-w)) + xm * CoeffElement(u.pow(1 - w));
    VarBindings out;
    out.emplace(x_var_id(cfg, n),
                RationalExpression(LaurentPoly::variable(x_var_id(cfg, n)) * num, den, true));
    return out;
}

// tau-frame action: node reflections act on tau_n^{+-1}; chain reflections
// swap adjacent tau's.
inline VarBindings tau_bindings(const ShapeConfig& cfg, const RootIndex& g) {
    check_root_index(cfg, g);
    int n = g.n;
    VarBindings out;
    if (g.i > 0) {
        out.emplace(tau_var_id(cfg, n, g.i),
                    RationalExpression::variable(tau_var_id(cfg, n, g.i + 1)));
        out.emplace(tau_var_id(cfg, n, g.i + 1),
                    RationalExpression::variable(tau_var_id(cfg, n, g.i)));
        return out;
    }
    if (g.i < 0) {
        out.emplace(tau_var_id(cfg, n, g.i),
                    RationalExpression::variable(tau_var_id(cfg, n, g.i - 1)));
        out.emplace(tau_var_id(cfg, n, g.i - 1),
                    RationalExpression::variable(tau_var_id(cfg, n, g.i)));
        return out;
    }
    detail::require_balanced(cfg, n);
    Rat w = cfg.omega(n);
    CoeffMonomial u = u_monomial(cfg, n), v = v_monomial(cfg, n);
    LaurentPoly zp = detail::xi_poly(cfg, n + 1) * detail::eta_poly(cfg, n - 1);
    LaurentPoly zm = detail::xi_poly(cfg, n - 1) * detail::eta_poly(cfg, n + 1);
    LaurentPoly num1 = zp * CoeffElement(v.pow(w)) + zm * CoeffElement(v.pow(w - 1));
    LaurentPoly num2 = zp * CoeffElement(u.pow(-w)) + zm * CoeffElement(u.pow(1 - w));
    out.emplace(tau_var_id(cfg, n, 1),
                RationalExpression(num1, LaurentPoly::variable(tau_var_id(cfg, n, -1)), true));
    out.emplace(tau_var_id(cfg, n, -1),
                RationalExpression(num2, LaurentPoly::variable(tau_var_id(cfg, n, 1)), true));
    return out;
}

inline VarBindings frame_bindings(const ShapeConfig& cfg, FrameKind kind, const RootIndex& g) {
    switch (kind) {
        case FrameKind::F: return f_bindings(cfg, g);
        case FrameKind::X: return x_bindings(cfg, g);
        case FrameKind::TAU: return tau_bindings(cfg, g);
        case FrameKind::ZETA: throw IndexOutOfRange("no direct generator action on zeta");
    }
    return {};
}

// ---------------------------------------------------------------------------
// Single-generator actions on expression maps.

using ExprMap = std::map<VarId, RationalExpression>;

inline ExprMap identity_exprs(const VariableFrame& fr) {
    ExprMap m;
    for (VarId v : fr.vars) m.emplace(v, RationalExpression::variable(v));
    return m;
}

namespace detail {

inline ExprMap act_with(const ShapeConfig& cfg, const VarBindings& vb, const RootIndex& g,
                        const ExprMap& exprs) {
    ParamBindings pb = param_bindings(cfg, g);
    ExprMap out;
    for (const auto& [v, e] : exprs) out.emplace(v, substitute(e, vb, pb));
    return out;
}

}  // namespace detail

inline ExprMap act_f(const ParamState& st, const RootIndex& g, const ExprMap& exprs) {
    return detail::act_with(st.cfg, f_bindings(st.cfg, g), g, exprs);
}
inline ExprMap act_f_omega(const ParamState& st, const RootIndex& g, const ExprMap& exprs) {
    return detail::act_with(st.cfg, f_omega_bindings(st.cfg, g), g, exprs);
}
inline ExprMap act_x(const ParamState& st, const RootIndex& g, const ExprMap& exprs) {
    return detail::act_with(st.cfg, x_bindings(st.cfg, g), g, exprs);
}
inline ExprMap act_tau(const ParamState& st, const RootIndex& g, const ExprMap& exprs) {
    return detail::act_with(st.cfg, tau_bindings(st.cfg, g), g, exprs);
}

// ---------------------------------------------------------------------------
// Change-of-frame substitutions.

struct FrameMaps {
    VarBindings tau_to_f;   // f_n -> tau expression
    VarBindings tau_to_x;   // x_n -> tau expression
    VarBindings x_to_f;     // f_n -> x expression
    VarBindings tau_to_zeta;  // zeta_n^{0,inf} -> tau expression
};

inline FrameMaps frame_maps(const ShapeConfig& cfg) {
    FrameMaps fm;
    for (int n = 1; n <= cfg.N; ++n) {
        LaurentPoly zp = detail::xi_poly(cfg, n + 1) * detail::eta_poly(cfg, n - 1);
        LaurentPoly zm = detail::xi_poly(cfg, n - 1) * detail::eta_poly(cfg, n + 1);
        fm.tau_to_f.emplace(f_var_id(cfg, n), RationalExpression(zp, zm, true));
        fm.tau_to_x.emplace(x_var_id(cfg, n),
                            RationalExpression(detail::xi_poly(cfg, n), detail::eta_poly(cfg, n), true));
        fm.x_to_f.emplace(f_var_id(cfg, n),
                          RationalExpression(LaurentPoly::variable(x_var_id(cfg, n + 1)),
                                             LaurentPoly::variable(x_var_id(cfg, n - 1)), true));
        fm.tau_to_zeta.emplace(zeta_var_id(cfg, n, true), RationalExpression(zp));
        fm.tau_to_zeta.emplace(zeta_var_id(cfg, n, false), RationalExpression(zm));
    }
    return fm;
}

// ---------------------------------------------------------------------------
// Word application: rightmost generator first, each step substituting the
// generator's base-symbol formulas into the accumulated images.

struct WordResult {
    ParamState params;
    ExprMap exprs;
};

inline WordResult apply_word(const ParamState& st, FrameKind frame, const WeylWord& word) {
    WordResult r{st, identity_exprs(make_frame(st.cfg, frame))};
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        VarBindings vb = frame_bindings(st.cfg, frame, *it);
        ParamBindings pb = param_bindings(st.cfg, *it);
        for (auto& [v, e] : r.exprs) e = substitute(e, vb, pb);
        for (auto& [p, m] : r.params.images) m = subst_params(m, pb);
    }
    return r;
}

}  // namespace weyltrop
