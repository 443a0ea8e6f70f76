#include <catch2/catch_amalgamated.hpp>

#include "weyltrop/expr.hpp"

using namespace weyltrop;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng, const std::vector<VarId>& vars,
                        const std::vector<ParamId>& params) {
    std::uniform_int_distribution<int> nterms(1, 4), expd(-2, 3), coefd(-5, 5);
    LaurentPoly p;
    for (int t = 0; t < nterms(rng); ++t) {
        VarExps e;
        for (VarId v : vars) {
            int x = expd(rng);
            if (x != 0 && rng() % 2) e[v] = x;
        }
        CoeffMonomial m(Rat(coefd(rng)));
        for (ParamId q : params)
            if (rng() % 3 == 0) m.exps[q] = Rat(expd(rng), 2);
        m.normalize();
        p.add_term(e, CoeffElement(m));
    }
    return p;
}

}  // namespace

TEST_CASE("poly arithmetic basics") {
    VarId t = var("core.t");
    LaurentPoly a = LaurentPoly::variable(t, 1);
    LaurentPoly b = LaurentPoly::variable(t, -1);

    SECTION("monomial product cancels exponents") {
        LaurentPoly p = a * b;
        REQUIRE(p.is_one());
    }
    SECTION("additive identity") {
        LaurentPoly p = a + LaurentPoly::zero();
        REQUIRE(p == a);
    }
    SECTION("hand expansion of (f+u)(f+1/v)") {
        VarId f = var("core.f");
        ParamId u = param("core.u"), v = param("core.v");
        LaurentPoly fp = LaurentPoly::variable(f);
        LaurentPoly up(CoeffElement(param_monomial(u)));
        LaurentPoly vinv(CoeffElement(param_monomial(v).inverse()));
        LaurentPoly prod = (fp + up) * (fp + vinv);
        REQUIRE(prod.term_count() == 3);  // f^2, f*(u + 1/v), u/v
        // f coefficient is u + v^{-1}
        VarExps fe{{f, 1}};
        CoeffElement want = CoeffElement(param_monomial(u)) + CoeffElement(param_monomial(v).inverse());
        REQUIRE(prod.terms.at(fe) == want);
        VarExps ce{};
        REQUIRE(prod.terms.at(ce) == CoeffElement(param_monomial(u) * param_monomial(v).inverse()));
    }
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937_64 rng(7);
    std::vector<VarId> vars{var("core.x1"), var("core.x2")};
    std::vector<ParamId> params{param("core.p1"), param("core.p2")};
    for (int i = 0; i < 25; ++i) {
        LaurentPoly a = random_poly(rng, vars, params);
        LaurentPoly b = random_poly(rng, vars, params);
        LaurentPoly c = random_poly(rng, vars, params);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a * b == b * a);
        REQUIRE(a + b == b + a);
    }
}

TEST_CASE("expression arithmetic and equality") {
    VarId t = var("core.tau");
    RationalExpression tau = RationalExpression::variable(t);
    RationalExpression one = RationalExpression::constant(Rat(1));

    SECTION("(1/tau) * tau is semantically one") {
        RationalExpression r = expr_mul(expr_div(one, tau), tau);
        REQUIRE(expr_equals(r, one));
        REQUIRE_FALSE(r.num.is_one());  // no reduction performed
    }
    SECTION("fraction addition") {
        VarId a = var("core.a"), b = var("core.b"), c = var("core.c"), d = var("core.d");
        auto A = RationalExpression::variable(a), B = RationalExpression::variable(b);
        auto C = RationalExpression::variable(c), Dv = RationalExpression::variable(d);
        RationalExpression s = expr_add(expr_div(A, B), expr_div(C, Dv));
        LaurentPoly want = LaurentPoly::variable(a) * LaurentPoly::variable(d) +
                           LaurentPoly::variable(c) * LaurentPoly::variable(b);
        REQUIRE(s.num == want);
        REQUIRE(s.den == LaurentPoly::variable(b) * LaurentPoly::variable(d));
    }
    SECTION("division by zero expression") {
        REQUIRE_THROWS_AS(expr_div(tau, RationalExpression()), DivisionByZero);
    }
    SECTION("equivalence on proportional triples") {
        std::mt19937_64 rng(11);
        std::vector<VarId> vars{var("core.x1"), var("core.x2")};
        for (int i = 0; i < 10; ++i) {
            LaurentPoly n = random_poly(rng, vars, {});
            LaurentPoly d = random_poly(rng, vars, {});
            LaurentPoly m1 = random_poly(rng, vars, {});
            LaurentPoly m2 = random_poly(rng, vars, {});
            if (d.is_zero() || m1.is_zero() || m2.is_zero()) continue;
            RationalExpression e1(n, d, false);
            RationalExpression e2(n * m1, d * m1, false);
            RationalExpression e3(n * m2, d * m2, false);
            REQUIRE(expr_equals(e1, e1));
            REQUIRE(expr_equals(e1, e2));
            REQUIRE(expr_equals(e2, e1));
            REQUIRE((expr_equals(e1, e2) && expr_equals(e2, e3) && expr_equals(e1, e3)));
        }
    }
}

TEST_CASE("exact division") {
    VarId x = var("core.dx"), y = var("core.dy");
    LaurentPoly X = LaurentPoly::variable(x), Y = LaurentPoly::variable(y);

    SECTION("(x^2 - y^2) / (x - y) = x + y") {
        auto q = exact_divide(X * X - Y * Y, X - Y);
        REQUIRE(q.has_value());
        REQUIRE(*q == X + Y);
    }
    SECTION("p / 1 = p") {
        std::mt19937_64 rng(3);
        LaurentPoly p = random_poly(rng, {x, y}, {});
        auto q = exact_divide(p, LaurentPoly::one());
        REQUIRE(q.has_value());
        REQUIRE(*q == p);
    }
    SECTION("non-divisible returns absent") {
        auto q = exact_divide(X * X + LaurentPoly::one(), X + Y);
        REQUIRE_FALSE(q.has_value());
    }
    SECTION("exact_divide(n*d, d) == n randomized") {
        std::mt19937_64 rng(5);
        std::vector<VarId> vars{x, y};
        std::vector<ParamId> params{param("core.p1")};
        for (int i = 0; i < 20; ++i) {
            LaurentPoly n = random_poly(rng, vars, params);
            LaurentPoly d = random_poly(rng, vars, params);
            if (d.is_zero()) continue;
            auto q = exact_divide(n * d, d);
            REQUIRE(q.has_value());
            REQUIRE(*q == n);
        }
    }
}

TEST_CASE("substitution") {
    VarId f = var("core.sf"), g = var("core.sg"), h = var("core.sh");
    auto F = RationalExpression::variable(f);

    SECTION("identity bindings") {
        VarBindings id{{f, RationalExpression::variable(f)}};
        RationalExpression e = expr_add(F, RationalExpression::constant(Rat(2)));
        REQUIRE(expr_equals(substitute(e, id), e));
    }
    SECTION("composition of substitutions") {
        std::mt19937_64 rng(9);
        for (int i = 0; i < 8; ++i) {
            LaurentPoly pn = random_poly(rng, {f, g}, {});
            LaurentPoly pd = random_poly(rng, {f, g}, {});
            if (pd.is_zero()) continue;
            RationalExpression e(pn, pd, false);
            // sigma: f -> g + 1 ; rho: g -> h^2
            VarBindings sigma{{f, RationalExpression(LaurentPoly::variable(g) + LaurentPoly::one())}};
            VarBindings rho{{g, RationalExpression(LaurentPoly::variable(h) * LaurentPoly::variable(h))}};
            VarBindings composed = sigma;
            for (auto& [v, b] : composed) b = substitute(b, rho);
            composed.insert(*rho.begin());
            RationalExpression lhs = substitute(substitute(e, sigma), rho);
            RationalExpression rhs = substitute(e, composed);
            REQUIRE(expr_equals(lhs, rhs));
        }
    }
}

TEST_CASE("numeric specialization") {
    VarId t = var("core.nt");
    ParamId u = param("core.nu");

    SECTION("tau/tau evaluates to 1") {
        auto tau = RationalExpression::variable(t);
        auto r = expr_div(tau, tau);
        REQUIRE(specialize_numeric(r, 1, {}, {{t, Rat(7, 3)}}) == 1);
    }
    SECTION("square root assignment") {
        CoeffMonomial m(Rat(1));
        m.exps[u] = Rat(1, 2);
        auto e = RationalExpression::from_monomial(m);
        REQUIRE(specialize_numeric(e, 2, {{u, Rat(3)}}, {}) == 3);
    }
    SECTION("uncleared exponent") {
        CoeffMonomial m(Rat(1));
        m.exps[u] = Rat(1, 3);
        auto e = RationalExpression::from_monomial(m);
        REQUIRE_THROWS_AS(specialize_numeric(e, 2, {{u, Rat(3)}}, {}), NonClearedExponent);
    }
    SECTION("ring homomorphism on random instances") {
        std::mt19937_64 rng(13);
        std::vector<VarId> vars{var("core.x1"), var("core.x2")};
        std::vector<ParamId> params{param("core.p1")};
        for (int i = 0; i < 10; ++i) {
            LaurentPoly a = random_poly(rng, vars, params);
            LaurentPoly b = random_poly(rng, vars, params);
            ParamValues roots{{params[0], random_rational(rng, 20)}};
            VarValues vals{{vars[0], random_rational(rng, 20)}, {vars[1], random_rational(rng, 20)}};
            Rat va = eval_poly(a, 2, roots, vals);
            Rat vb = eval_poly(b, 2, roots, vals);
            REQUIRE(eval_poly(a * b, 2, roots, vals) == va * vb);
            REQUIRE(eval_poly(a + b, 2, roots, vals) == va + vb);
        }
    }
    SECTION("pole detection") {
        auto tau = RationalExpression::variable(t);
        auto r = expr_div(RationalExpression::constant(Rat(1)),
                          expr_sub(tau, RationalExpression::constant(Rat(1))));
        REQUIRE_THROWS_AS(specialize_numeric(r, 1, {}, {{t, Rat(1)}}), PoleAtPoint);
    }
}

TEST_CASE("reduced degree measurement") {
    std::mt19937_64 rng(17);
    VarId f = var("core.degf");
    auto F = RationalExpression::variable(f);
    REQUIRE(reduced_degree_in(F, f, 3, rng) == 1);

    // (f^2 + 1)/(f + 1) has degree 2
    RationalExpression e(LaurentPoly::variable(f) * LaurentPoly::variable(f) + LaurentPoly::one(),
                         LaurentPoly::variable(f) + LaurentPoly::one(), false);
    REQUIRE(reduced_degree_in(e, f, 3, rng) == 2);

    // (f^2 - 1)/(f - 1) reduces to degree 1
    RationalExpression r(LaurentPoly::variable(f) * LaurentPoly::variable(f) - LaurentPoly::one(),
                         LaurentPoly::variable(f) - LaurentPoly::one(), false);
    REQUIRE(reduced_degree_in(r, f, 3, rng) == 1);
}

TEST_CASE("ultra-discretization") {
    VarId a = var("core.ua"), b = var("core.ub");
    auto A = RationalExpression::variable(a), B = RationalExpression::variable(b);
    VarPoint pt{{a, Rat(1)}, {b, Rat(2)}};

    REQUIRE(ultradiscrete_eval(expr_mul(A, B), {}, pt) == 3);
    REQUIRE(ultradiscrete_eval(expr_add(A, B), {}, pt) == 1);
    REQUIRE(ultradiscrete_eval(expr_div(A, B), {}, pt) == -1);
    REQUIRE_THROWS_AS(ultradiscrete_eval(expr_sub(A, B), {}, pt), NotSubtractionFree);
}
