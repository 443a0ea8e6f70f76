#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "weyltrop/weyl.hpp"

using namespace weyltrop;

namespace {

ShapeConfig shape_a(int N) { return ShapeConfig(std::vector<int>(N, 1), std::vector<int>(N, 1)); }
ShapeConfig shape_d3() { return ShapeConfig({2, 2, 1}, {2, 2, 1}); }

bool maps_equal(const ExprMap& a, const ExprMap& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [v, e] : a)
        if (!expr_equals(e, b.at(v))) return false;
    return true;
}

bool params_equal(const ParamState& a, const ParamState& b) { return a.images == b.images; }

}  // namespace

TEST_CASE("root variable action") {
    ShapeConfig cfg = shape_d3();
    ParamState st(cfg);

    SECTION("a_g inverts, neighbours multiply") {
        ParamState img = act_params(st, {1, 0});
        CoeffMonomial a10 = a_monomial(cfg, {1, 0});
        REQUIRE(img.image({1, 0}) == a10.inverse());
        REQUIRE(img.image({2, 0}) == a_monomial(cfg, {2, 0}) * a10);
        REQUIRE(img.image({3, 0}) == a_monomial(cfg, {3, 0}) * a10);
        REQUIRE(img.image({1, 1}) == a_monomial(cfg, {1, 1}) * a10);
        REQUIRE(img.image({1, -1}) == a_monomial(cfg, {1, -1}) * a10);
        REQUIRE(img.image({2, 1}) == a_monomial(cfg, {2, 1}));  // disconnected
    }
    SECTION("involution on the parameter field") {
        for (const RootIndex& g : all_root_indices(cfg))
            REQUIRE(params_equal(act_params(act_params(st, g), g), st));
    }
    SECTION("node reflection swaps u_n and 1/v_n") {
        for (int n = 1; n <= cfg.N; ++n) {
            ParamBindings pb = param_bindings(cfg, {n, 0});
            REQUIRE(subst_params(u_monomial(cfg, n), pb) == v_monomial(cfg, n).inverse());
            REQUIRE(subst_params(v_monomial(cfg, n), pb) == u_monomial(cfg, n).inverse());
        }
    }
    SECTION("chain reflections permute the u and v ladders") {
        for (int n = 1; n <= cfg.N; ++n) {
            for (int i = 1; i <= cfg.k_at(n) - 1; ++i) {
                ParamBindings pb = param_bindings(cfg, {n, i});
                REQUIRE(subst_params(u_chain_monomial(cfg, n, i), pb) ==
                        u_chain_monomial(cfg, n, i + 1));
                REQUIRE(subst_params(u_chain_monomial(cfg, n, i + 1), pb) ==
                        u_chain_monomial(cfg, n, i));
            }
            for (int j = 1; j <= cfg.l_at(n) - 1; ++j) {
                ParamBindings pb = param_bindings(cfg, {n, -j});
                REQUIRE(subst_params(v_chain_monomial(cfg, n, j), pb) ==
                        v_chain_monomial(cfg, n, j + 1));
            }
        }
    }
    SECTION("parameter web invariants") {
        for (int n = 1; n <= cfg.N; ++n) {
            // u_n v_n = a_n^0
            REQUIRE(u_monomial(cfg, n) * v_monomial(cfg, n) == a_monomial(cfg, {n, 0}));
            // the ladder recursions
            for (int i = 2; i <= cfg.k_at(n); ++i)
                REQUIRE(u_chain_monomial(cfg, n, i) ==
                        a_monomial(cfg, {n, i - 1}) * u_chain_monomial(cfg, n, i - 1));
            for (int j = 2; j <= cfg.l_at(n); ++j)
                REQUIRE(v_chain_monomial(cfg, n, j) ==
                        a_monomial(cfg, {n, -(j - 1)}) * v_chain_monomial(cfg, n, j - 1));
        }
    }
}

TEST_CASE("f-frame action") {
    SECTION("all-ones shape: explicit half-power form") {
        ShapeConfig cfg = shape_a(3);
        ParamState st(cfg);
        // u_n = v_n = (a_n^0)^{1/2}
        REQUIRE(u_monomial(cfg, 1) == a_monomial(cfg, {1, 0}).pow(Rat(1, 2)));
        REQUIRE(v_monomial(cfg, 1) == a_monomial(cfg, {1, 0}).pow(Rat(1, 2)));

        ExprMap id = identity_exprs(make_frame(cfg, FrameKind::F));
        ExprMap img = act_f(st, {1, 0}, id);
        CoeffMonomial a10 = a_monomial(cfg, {1, 0});
        LaurentPoly f1 = LaurentPoly::variable(f_var_id(cfg, 1));
        LaurentPoly f3 = LaurentPoly::variable(f_var_id(cfg, 3));
        LaurentPoly u(CoeffElement(a10.pow(Rat(1, 2))));
        LaurentPoly vinv(CoeffElement(a10.pow(Rat(-1, 2))));
        RationalExpression want(f3 * CoeffElement(a10.pow(Rat(1, 2))) * (f1 + vinv), f1 + u, true);
        REQUIRE(expr_equals(img.at(f_var_id(cfg, 3)), want));
        REQUIRE(expr_equals(img.at(f_var_id(cfg, 1)), RationalExpression::variable(f_var_id(cfg, 1))));
    }
    SECTION("chain reflections fix f") {
        ShapeConfig cfg = shape_d3();
        ParamState st(cfg);
        ExprMap id = identity_exprs(make_frame(cfg, FrameKind::F));
        REQUIRE(maps_equal(act_f(st, {1, 1}, id), id));
        REQUIRE(maps_equal(act_f(st, {2, -1}, id), id));
    }
    SECTION("node reflections are involutions") {
        for (const ShapeConfig& cfg : {shape_a(3), shape_d3()}) {
            ParamState st(cfg);
            ExprMap id = identity_exprs(make_frame(cfg, FrameKind::F));
            for (int n = 1; n <= cfg.N; ++n) {
                WordResult r = apply_word(st, FrameKind::F, {{n, 0}, {n, 0}});
                REQUIRE(maps_equal(r.exprs, id));
                REQUIRE(params_equal(r.params, st));
            }
        }
    }
    SECTION("omega form agrees with the exact form") {
        for (const ShapeConfig& cfg : {shape_a(3), shape_d3()}) {
            ParamState st(cfg);
            ExprMap id = identity_exprs(make_frame(cfg, FrameKind::F));
            for (int n = 1; n <= cfg.N; ++n) {
                ExprMap a = act_f(st, {n, 0}, id);
                ExprMap b = act_f_omega(st, {n, 0}, id);
                REQUIRE(maps_equal(a, b));
            }
        }
    }
    SECTION("unbalanced node is rejected by the omega form") {
        ShapeConfig cfg({2, 1, 1}, {1, 1, 1});
        ParamState st(cfg);
        ExprMap id = identity_exprs(make_frame(cfg, FrameKind::F));
        REQUIRE_FALSE(cfg.balanced_at(2));
        REQUIRE_THROWS_AS(act_f_omega(st, {2, 0}, id), AssumptionViolated);
        // exact form still works there
        REQUIRE_NOTHROW(act_f(st, {2, 0}, id));
    }
}

TEST_CASE("x-frame action") {
    ShapeConfig cfg = shape_a(3);
    ParamState st(cfg);
    ExprMap id = identity_exprs(make_frame(cfg, FrameKind::X));

    SECTION("involution and fixed variables") {
        for (int n = 1; n <= 3; ++n) {
            WordResult r = apply_word(st, FrameKind::X, {{n, 0}, {n, 0}});
            REQUIRE(maps_equal(r.exprs, id));
            ExprMap one = act_x(st, {n, 0}, id);
            for (int m = 1; m <= 3; ++m)
                if (m != n)
                    REQUIRE(expr_equals(one.at(x_var_id(cfg, m)),
                                        RationalExpression::variable(x_var_id(cfg, m))));
        }
    }
    SECTION("f = x ratio intertwines the two actions") {
        FrameMaps fm = frame_maps(cfg);
        for (int n = 1; n <= 3; ++n) {
            ExprMap xi = act_x(st, {n, 0}, id);
            ExprMap fid = identity_exprs(make_frame(cfg, FrameKind::F));
            ExprMap ff = act_f_omega(st, {n, 0}, fid);
            for (int m = 1; m <= 3; ++m) {
                RationalExpression lhs =
                    expr_div(xi.at(x_var_id(cfg, m + 1 > 3 ? m - 2 : m + 1)),
                             xi.at(x_var_id(cfg, m - 1 < 1 ? m + 2 : m - 1)));
                RationalExpression rhs = substitute(ff.at(f_var_id(cfg, m)), fm.x_to_f);
                REQUIRE(expr_equals(lhs, rhs));
            }
        }
    }
}

TEST_CASE("tau-frame action") {
    SECTION("all-ones shape: explicit node image") {
        ShapeConfig cfg = shape_a(3);
        ParamState st(cfg);
        ExprMap id = identity_exprs(make_frame(cfg, FrameKind::TAU));
        ExprMap img = act_tau(st, {2, 0}, id);
        CoeffMonomial v = v_monomial(cfg, 2);
        auto T = [&](int n, int i) { return LaurentPoly::variable(tau_var_id(cfg, n, i)); };
        LaurentPoly num = T(3, 1) * T(1, -1) * CoeffElement(v.pow(Rat(1, 2))) +
                          T(1, 1) * T(3, -1) * CoeffElement(v.pow(Rat(-1, 2)));
        RationalExpression want(num, T(2, -1), true);
        REQUIRE(expr_equals(img.at(tau_var_id(cfg, 2, 1)), want));

        CoeffMonomial u = u_monomial(cfg, 2);
        LaurentPoly num2 = T(3, 1) * T(1, -1) * CoeffElement(u.pow(Rat(-1, 2))) +
                           T(1, 1) * T(3, -1) * CoeffElement(u.pow(Rat(1, 2)));
        RationalExpression want2(num2, T(2, 1), true);
        REQUIRE(expr_equals(img.at(tau_var_id(cfg, 2, -1)), want2));
    }
    SECTION("chain reflections swap adjacent tau variables") {
        ShapeConfig cfg = shape_d3();
        ParamState st(cfg);
        ExprMap id = identity_exprs(make_frame(cfg, FrameKind::TAU));
        ExprMap img = act_tau(st, {1, 1}, id);
        REQUIRE(expr_equals(img.at(tau_var_id(cfg, 1, 1)),
                            RationalExpression::variable(tau_var_id(cfg, 1, 2))));
        REQUIRE(expr_equals(img.at(tau_var_id(cfg, 1, 2)),
                            RationalExpression::variable(tau_var_id(cfg, 1, 1))));
        REQUIRE(expr_equals(img.at(tau_var_id(cfg, 1, -1)),
                            RationalExpression::variable(tau_var_id(cfg, 1, -1))));
    }
    SECTION("involutions in the tau frame") {
        for (const ShapeConfig& cfg : {shape_a(3), shape_d3()}) {
            ParamState st(cfg);
            ExprMap id = identity_exprs(make_frame(cfg, FrameKind::TAU));
            for (const RootIndex& g : all_root_indices(cfg)) {
                WordResult r = apply_word(st, FrameKind::TAU, {g, g});
                REQUIRE(maps_equal(r.exprs, id));
                REQUIRE(params_equal(r.params, st));
            }
        }
    }
    SECTION("tau-to-f intertwining") {
        for (const ShapeConfig& cfg : {shape_a(3), shape_d3()}) {
            ParamState st(cfg);
            FrameMaps fm = frame_maps(cfg);
            ExprMap tid = identity_exprs(make_frame(cfg, FrameKind::TAU));
            ExprMap fid = identity_exprs(make_frame(cfg, FrameKind::F));
            for (const RootIndex& g : all_root_indices(cfg)) {
                ExprMap ff = act_f(st, g, fid);
                ParamBindings pb = param_bindings(cfg, g);
                VarBindings vb = tau_bindings(cfg, g);
                for (int n = 1; n <= cfg.N; ++n) {
                    RationalExpression lhs =
                        substitute(fm.tau_to_f.at(f_var_id(cfg, n)), vb, pb);
                    RationalExpression rhs = substitute(ff.at(f_var_id(cfg, n)), fm.tau_to_f);
                    REQUIRE(expr_equals(lhs, rhs));
                }
            }
        }
    }
    SECTION("tau-to-x intertwining") {
        ShapeConfig cfg = shape_a(3);
        ParamState st(cfg);
        FrameMaps fm = frame_maps(cfg);
        ExprMap xid = identity_exprs(make_frame(cfg, FrameKind::X));
        for (const RootIndex& g : all_root_indices(cfg)) {
            ExprMap xx = act_x(st, g, xid);
            ParamBindings pb = param_bindings(cfg, g);
            VarBindings vb = tau_bindings(cfg, g);
            for (int n = 1; n <= cfg.N; ++n) {
                RationalExpression lhs = substitute(fm.tau_to_x.at(x_var_id(cfg, n)), vb, pb);
                RationalExpression rhs = substitute(xx.at(x_var_id(cfg, n)), fm.tau_to_x);
                REQUIRE(expr_equals(lhs, rhs));
            }
        }
    }
}

TEST_CASE("group relations in the expression frames") {
    for (const ShapeConfig& cfg : {shape_a(3), shape_d3()}) {
        ParamState st(cfg);
        auto gens = all_root_indices(cfg);
        for (FrameKind frame : {FrameKind::F, FrameKind::TAU}) {
            for (const RootIndex& a : gens)
                for (const RootIndex& b : gens) {
                    if (!(a < b)) continue;
                    Int c = cartan_entry(cfg, a, b);
                    WeylWord lhs, rhs;
                    if (c == -1) {
                        lhs = {a, b, a};
                        rhs = {b, a, b};
                    } else {
                        lhs = {a, b};
                        rhs = {b, a};
                    }
                    WordResult rl = apply_word(st, frame, lhs);
                    WordResult rr = apply_word(st, frame, rhs);
                    REQUIRE(params_equal(rl.params, rr.params));
                    REQUIRE(maps_equal(rl.exprs, rr.exprs));
                }
        }
    }
}

TEST_CASE("subtraction-free images and min-plus relations") {
    ShapeConfig cfg = shape_a(3);
    ParamState st(cfg);
    auto gens = all_root_indices(cfg);

    SECTION("generator images carry the subtraction-free flag") {
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
        for (int t = 0; t < 10; ++t) {
            WeylWord w;
            for (int i = 0; i < 4; ++i) w.push_back(gens[pick(rng)]);
            WordResult r = apply_word(st, FrameKind::TAU, w);
            for (const auto& [v, e] : r.exprs) REQUIRE(e.sub_free);
        }
    }
    SECTION("min-plus involution and braid pointwise") {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<long> pt(-50, 50);
        ExprMap id = identity_exprs(make_frame(cfg, FrameKind::F));
        for (int t = 0; t < 100; ++t) {
            ParamPoint pp;
            VarPoint vp;
            for (const RootIndex& g : gens) pp[root_var_id(cfg, g)] = Rat(pt(rng), 7);
            for (int n = 1; n <= 3; ++n) vp[f_var_id(cfg, n)] = Rat(pt(rng), 7);
            WordResult sq = apply_word(st, FrameKind::F, {{1, 0}, {1, 0}});
            WordResult bl = apply_word(st, FrameKind::F, {{1, 0}, {2, 0}, {1, 0}});
            WordResult br = apply_word(st, FrameKind::F, {{2, 0}, {1, 0}, {2, 0}});
            for (int n = 1; n <= 3; ++n) {
                VarId fv = f_var_id(cfg, n);
                REQUIRE(ultradiscrete_eval(sq.exprs.at(fv), pp, vp) ==
                        ultradiscrete_eval(id.at(fv), pp, vp));
                REQUIRE(ultradiscrete_eval(bl.exprs.at(fv), pp, vp) ==
                        ultradiscrete_eval(br.exprs.at(fv), pp, vp));
            }
        }
    }
}
