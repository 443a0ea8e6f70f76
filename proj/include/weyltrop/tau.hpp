#pragma once

#include <deque>
#include <optional>

#include "weyltrop/weyl.hpp"

namespace weyltrop {

// An element of the Weyl orbit of the exceptional classes, together with a
// witness word: divisor == apply_word_lattice(witness, E_base).
struct OrbitElement {
    DivisorClass divisor;
    WeylWord witness;
    int base_n = 1;
    int base_i = 1;  // layer of the seed exceptional class (nonzero)
};

inline OrbitElement orbit_seed(const ShapeConfig& cfg, int n, int i) {
    if (i == 0 || i > cfg.k_at(n) || i < -cfg.l_at(n)) throw IndexOutOfRange("seed layer");
    OrbitElement el;
    el.base_n = cfg.mod(n - 1) + 1;
    el.base_i = i;
    el.divisor = DivisorClass::basis_e(cfg.N, el.base_n, i);
    return el;
}

// Breadth-first sweep of the orbit up to the given witness length; one
// element per divisor class, shortest witness kept (first found).
inline std::vector<OrbitElement> enumerate_orbit(const ShapeConfig& cfg, int max_len) {
    std::vector<OrbitElement> out;
    std::map<std::pair<std::vector<Int>, std::map<std::pair<int, int>, Int>>, size_t> seen;
    std::deque<OrbitElement> queue;
    auto key = [](const DivisorClass& d) { return std::make_pair(d.h, d.e); };

    for (int n = 1; n <= cfg.N; ++n) {
        for (int i = 1; i <= cfg.k_at(n); ++i) queue.push_back(orbit_seed(cfg, n, i));
        for (int j = 1; j <= cfg.l_at(n); ++j) queue.push_back(orbit_seed(cfg, n, -j));
    }
    auto gens = all_root_indices(cfg);
    while (!queue.empty()) {
        OrbitElement el = std::move(queue.front());
        queue.pop_front();
        if (!seen.emplace(key(el.divisor), out.size()).second) continue;
        out.push_back(el);
        if (static_cast<int>(el.witness.size()) >= max_len) continue;
        for (const RootIndex& g : gens) {
            OrbitElement next;
            next.base_n = el.base_n;
            next.base_i = el.base_i;
            next.divisor = reflect(cfg, g, el.divisor);
            if (seen.count(key(next.divisor))) continue;
            next.witness = el.witness;
            next.witness.insert(next.witness.begin(), g);
            queue.push_back(std::move(next));
        }
    }
    return out;
}

struct TauValue {
    RationalExpression expr;  // in the tau frame
    OrbitElement element;
};

// tau of an orbit element: image of the seed tau-variable under the witness.
inline TauValue tau_of(const ParamState& st, const OrbitElement& el) {
    WordResult r = apply_word(st, FrameKind::TAU, el.witness);
    return {r.exprs.at(tau_var_id(st.cfg, el.base_n, el.base_i)), el};
}

// Clear the denominator by exact division; success certifies that tau is a
// Laurent polynomial in the tau-variables.
inline std::optional<LaurentPoly> laurent_certificate(const TauValue& tv) {
    return exact_divide(tv.expr.num, tv.expr.den);
}

// A polynomial in the homogeneous coordinates zeta_n^{0,inf}, with its
// multidegree and the multiplicities of the blow-up centers.
struct NormalizedPolynomial {
    LaurentPoly zeta_poly;  // nonnegative exponents in the zeta variables
    std::vector<Int> degree;
    std::map<std::pair<int, int>, Int> mult;  // (n, i) -> mu_n^i
};

namespace detail {

inline std::map<std::pair<int, int>, Int> multiplicities_of(const ShapeConfig& cfg,
                                                            const DivisorClass& L) {
    std::map<std::pair<int, int>, Int> mu;
    for (int n = 1; n <= cfg.N; ++n)
        for (int i = -cfg.l_at(n); i <= cfg.k_at(n); ++i) {
            if (i == 0) continue;
            auto it = L.e.find({n, i});
            mu[{n, i}] = it == L.e.end() ? Int(0) : -it->second;
        }
    return mu;
}

// Extract a Laurent polynomial from an expression or fail loudly.
inline LaurentPoly as_polynomial(const RationalExpression& e, const char* what) {
    auto q = exact_divide(e.num, e.den);
    if (!q) throw NotZetaExpressible(what);
    return *q;
}

}  // namespace detail

// Defining polynomial of the divisor in the inhomogeneous coordinates f,
// built by induction along the witness word: seeds have phi = 1, chain
// reflections substitute parameters only, and a node reflection s_n^0 maps
//   phi' = c^{-1} (f_n+u_n)^{d_{n-1}-mu_n^{-1}} (f_n+1/v_n)^{d_{n+1}-mu_n^1}
//          * s_n^0(phi),
// with c = (u_n^{d_{n-1}-mu_n^{-1}} v_n^{-d_{n+1}+mu_n^1})^{omega_n} and
// d, mu read from the pre-reflection divisor class. The f-variables are free
// here, so the construction is independent of the tau-frame representation.
inline LaurentPoly phi_inhomogeneous_via_transform(const ParamState& st, const OrbitElement& el) {
    const ShapeConfig& cfg = st.cfg;
    DivisorClass L = DivisorClass::basis_e(cfg.N, el.base_n, el.base_i);
    LaurentPoly phi = LaurentPoly::one();
    for (auto it = el.witness.rbegin(); it != el.witness.rend(); ++it) {
        const RootIndex& g = *it;
        ParamBindings pb = param_bindings(cfg, g);
        if (g.i != 0) {
            LaurentPoly next;
            for (const auto& [e, c] : phi.terms) next.add_term(e, subst_params(c, pb));
            phi = std::move(next);
        } else {
            int n = g.n;
            int nm = cfg.mod(n - 2), p = cfg.mod(n);
            auto mu = detail::multiplicities_of(cfg, L);
            Int em = L.h[nm] - mu.at({cfg.mod(n - 1) + 1, -1});  // d_{n-1} - mu_n^{-1}
            Int ep = L.h[p] - mu.at({cfg.mod(n - 1) + 1, 1});    // d_{n+1} - mu_n^1
            CoeffMonomial u = u_monomial(cfg, n), v = v_monomial(cfg, n);
            Rat w = cfg.omega(n);
            CoeffMonomial cinv = u.pow(-Rat(em) * w) * v.pow(Rat(ep) * w);

            RationalExpression img = substitute(RationalExpression(phi),
                                                f_omega_bindings(cfg, g), pb);
            LaurentPoly fn = LaurentPoly::variable(f_var_id(cfg, n));
            RationalExpression fu(fn + LaurentPoly(CoeffElement(u)));
            RationalExpression fv(fn + LaurentPoly(CoeffElement(v.inverse())));
            RationalExpression full =
                expr_mul(RationalExpression::from_monomial(cinv),
                         expr_mul(expr_pow(fu, static_cast<int>(em)),
                                  expr_mul(expr_pow(fv, static_cast<int>(ep)), img)));
            phi = detail::as_polynomial(full, "transform image is not polynomial");
        }
        L = reflect(cfg, g, L);
    }
    return phi;
}

// Homogenize the f-polynomial to the zeta coordinates with the multidegree
// read from the divisor class: f_n^e -> (zeta_n^0)^e (zeta_n^inf)^{d_n - e}.
inline NormalizedPolynomial homogenize_phi(const ShapeConfig& cfg, const LaurentPoly& phi,
                                           const DivisorClass& L) {
    NormalizedPolynomial np;
    np.degree.assign(L.h.begin(), L.h.end());
    np.mult = detail::multiplicities_of(cfg, L);
    for (const auto& [fe, c] : phi.terms) {
        VarExps ze;
        for (int n = 1; n <= cfg.N; ++n) {
            auto it = fe.find(f_var_id(cfg, n));
            Int e = it == fe.end() ? Int(0) : Int(it->second);
            if (e < 0 || e > L.h[n - 1])
                throw NotZetaExpressible("f-degree exceeds the divisor degree vector");
            if (e != 0) ze[zeta_var_id(cfg, n, true)] = static_cast<int>(e);
            Int minf = L.h[n - 1] - e;
            if (minf != 0) ze[zeta_var_id(cfg, n, false)] = static_cast<int>(minf);
        }
        np.zeta_poly.add_term(ze, c);
    }
    return np;
}

// Substitute zeta_n^0 = xi_{n+1}eta_{n-1}, zeta_n^inf = xi_{n-1}eta_{n+1}
// into a zeta-polynomial, producing a tau-polynomial.
inline LaurentPoly zeta_to_tau(const ShapeConfig& cfg, const LaurentPoly& zp) {
    LaurentPoly out;
    for (const auto& [ze, c] : zp.terms) {
        VarExps te;
        auto add = [&te](const LaurentPoly& mono, int mult) {
            for (const auto& [v, x] : mono.terms.begin()->first) te[v] += x * mult;
        };
        for (int n = 1; n <= cfg.N; ++n) {
            auto i0 = ze.find(zeta_var_id(cfg, n, true));
            auto ii = ze.find(zeta_var_id(cfg, n, false));
            if (i0 != ze.end()) {
                add(detail::xi_poly(cfg, n + 1), i0->second);
                add(detail::eta_poly(cfg, n - 1), i0->second);
            }
            if (ii != ze.end()) {
                add(detail::xi_poly(cfg, n - 1), ii->second);
                add(detail::eta_poly(cfg, n + 1), ii->second);
            }
        }
        for (auto it = te.begin(); it != te.end();)
            it = it->second == 0 ? te.erase(it) : std::next(it);
        out.add_term(te, c);
    }
    return out;
}

// The defining polynomial of an orbit element, certified against the
// tau-frame representation: the transform-built Phi must satisfy
// tau(Lambda) * prod tau^mu == Phi(zeta(tau)) exactly.
inline NormalizedPolynomial phi_from_tau(const ParamState& st, const OrbitElement& el) {
    const ShapeConfig& cfg = st.cfg;
    TauValue tv = tau_of(st, el);
    auto laurent = laurent_certificate(tv);
    if (!laurent) throw NotZetaExpressible("tau value is not Laurent");

    LaurentPoly phi = phi_inhomogeneous_via_transform(st, el);
    NormalizedPolynomial np = homogenize_phi(cfg, phi, el.divisor);

    VarExps mu_exps;
    for (const auto& [key, m] : np.mult)
        if (m != 0) mu_exps[tau_var_id(cfg, key.first, key.second)] = static_cast<int>(m);
    LaurentPoly tau_side = *laurent * LaurentPoly::monomial(mu_exps, CoeffElement::one());
    if (!(tau_side == zeta_to_tau(cfg, np.zeta_poly)))
        throw NotZetaExpressible("tau product disagrees with the defining polynomial");
    return np;
}

// The normalization of the defining polynomial: the (1/theta)^m - weighted
// sum of root-variable exponent vectors over all monic terms vanishes. A
// coefficient r * monomial with positive integer r counts as r copies of the
// monic term; any other rational coefficient is rejected.
inline bool check_normalization(const NormalizedPolynomial& np, const ShapeConfig& cfg) {
    std::map<ParamId, Rat> acc;
    for (const auto& [ze, coeff] : np.zeta_poly.terms) {
        Rat w = 1;
        for (int n = 1; n <= cfg.N; ++n) {
            auto i0 = ze.find(zeta_var_id(cfg, n, true));
            auto ii = ze.find(zeta_var_id(cfg, n, false));
            if (i0 != ze.end()) w *= rat_pow(Rat(1, cfg.theta0(n)), i0->second);
            if (ii != ze.end()) w *= rat_pow(Rat(1, cfg.theta_inf(n)), ii->second);
        }
        for (const auto& [exps, r] : coeff.terms) {
            if (r <= 0 || denominator(r) != 1) throw NonMonomialCoefficient();
            for (const auto& [p, x] : exps) acc[p] += w * x * r;
        }
    }
    for (const auto& [p, s] : acc)
        if (s != 0) return false;
    return true;
}

// The inhomogeneous form phi(f) = Phi(zeta) prod (zeta_n^inf)^{-d_n}: each
// zeta-term maps to the f-monomial with exponents m_n^0.
inline RationalExpression phi_inhomogeneous(const ShapeConfig& cfg, const NormalizedPolynomial& np) {
    LaurentPoly out;
    for (const auto& [ze, coeff] : np.zeta_poly.terms) {
        VarExps fe;
        for (int n = 1; n <= cfg.N; ++n) {
            auto i0 = ze.find(zeta_var_id(cfg, n, true));
            if (i0 != ze.end() && i0->second != 0) fe[f_var_id(cfg, n)] = i0->second;
        }
        out.add_term(fe, coeff);
    }
    return RationalExpression(out);
}

// Verify the transformation law between two independently supplied defining
// polynomials: s_n^0(phi_L) == c (f_n+u_n)^{-d_{n-1}+mu_n^{-1}}
// (f_n+1/v_n)^{-d_{n+1}+mu_n^1} phi_{s.L}.
inline bool check_claim_transform(const ParamState& st, const NormalizedPolynomial& np,
                                  const NormalizedPolynomial& np_reflected, int n) {
    const ShapeConfig& cfg = st.cfg;
    RationalExpression lhs = substitute(phi_inhomogeneous(cfg, np),
                                        f_omega_bindings(cfg, {n, 0}), param_bindings(cfg, {n, 0}));

    int nm = cfg.mod(n - 2), p = cfg.mod(n);
    Int dm = np.degree[nm], dp = np.degree[p];
    Int mu_m = np.mult.at({cfg.mod(n - 1) + 1, -1});
    Int mu_p = np.mult.at({cfg.mod(n - 1) + 1, 1});

    CoeffMonomial u = u_monomial(cfg, n), v = v_monomial(cfg, n);
    Rat w = cfg.omega(n);
    CoeffMonomial c = u.pow(Rat(dm - mu_m) * w) * v.pow(Rat(-dp + mu_p) * w);

    LaurentPoly fn = LaurentPoly::variable(f_var_id(cfg, n));
    RationalExpression fu(fn + LaurentPoly(CoeffElement(u)));
    RationalExpression fv(fn + LaurentPoly(CoeffElement(v.inverse())));
    RationalExpression rhs =
        expr_mul(RationalExpression::from_monomial(c),
                 expr_mul(expr_pow(fu, static_cast<int>(-dm + mu_m)),
                          expr_mul(expr_pow(fv, static_cast<int>(-dp + mu_p)),
                                   phi_inhomogeneous(cfg, np_reflected))));
    return expr_equals(lhs, rhs);
}

// Convenience overload using the certified polynomials of an orbit element
// and its reflected image.
inline bool check_claim_transform(const ParamState& st, const OrbitElement& el, int n) {
    NormalizedPolynomial np = phi_from_tau(st, el);
    OrbitElement refl = el;
    refl.divisor = reflect(st.cfg, {n, 0}, el.divisor);
    refl.witness.insert(refl.witness.begin(), {n, 0});
    NormalizedPolynomial np2 = phi_from_tau(st, refl);
    return check_claim_transform(st, np, np2, n);
}

}  // namespace weyltrop
