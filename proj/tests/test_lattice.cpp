#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "weyltrop/lattice.hpp"

using namespace weyltrop;

namespace {

ShapeConfig shape_a(int N) { return ShapeConfig(std::vector<int>(N, 1), std::vector<int>(N, 1)); }

// The balanced shape with two doubled nodes used by the D-type dynamics.
ShapeConfig shape_d3() { return ShapeConfig({2, 2, 1}, {2, 2, 1}); }

WeylWord random_word(std::mt19937_64& rng, const std::vector<RootIndex>& gens, int len) {
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    WeylWord w;
    for (int i = 0; i < len; ++i) w.push_back(gens[pick(rng)]);
    return w;
}

}  // namespace

TEST_CASE("roots and coroots expand in the lattice basis") {
    ShapeConfig cfg({2, 1, 1}, {1, 2, 1});

    SECTION("node root and coroot at n") {
        DivisorClass a = root(cfg, {2, 0});
        DivisorClass want = DivisorClass::basis_h(3, 2) - DivisorClass::basis_e(3, 2, 1) -
                            DivisorClass::basis_e(3, 2, -1);
        REQUIRE(a == want);
        CurveClass ac = coroot(cfg, {2, 0});
        CurveClass wantc = CurveClass::basis_h(3, 1) + CurveClass::basis_h(3, 3) -
                           CurveClass::basis_e(3, 2, 1) - CurveClass::basis_e(3, 2, -1);
        REQUIRE(ac == wantc);
    }
    SECTION("chain roots are exceptional differences") {
        REQUIRE(root(cfg, {1, 1}) ==
                DivisorClass::basis_e(3, 1, 1) - DivisorClass::basis_e(3, 1, 2));
        REQUIRE(root(cfg, {2, -1}) ==
                DivisorClass::basis_e(3, 2, -1) - DivisorClass::basis_e(3, 2, -2));
        REQUIRE(coroot(cfg, {1, 1}) ==
                CurveClass::basis_e(3, 1, 1) - CurveClass::basis_e(3, 1, 2));
    }
    SECTION("out-of-range layer") {
        REQUIRE_THROWS_AS(root(cfg, {2, 1}), IndexOutOfRange);   // k_2 = 1: no upper chain
        REQUIRE_THROWS_AS(coroot(cfg, {1, -1}), IndexOutOfRange);  // l_1 = 1: no lower chain
    }
}

TEST_CASE("intersection pairing") {
    ShapeConfig cfg = shape_a(4);

    REQUIRE(pairing(DivisorClass::basis_h(4, 1), CurveClass::basis_h(4, 2)) == 0);
    REQUIRE(pairing(DivisorClass::basis_h(4, 3), CurveClass::basis_h(4, 3)) == 1);
    REQUIRE(pairing(DivisorClass::basis_e(4, 2, 1), CurveClass::basis_e(4, 2, 1)) == -1);
    REQUIRE(pairing(DivisorClass::basis_e(4, 2, 1), CurveClass::basis_e(4, 2, -1)) == 0);

    for (int n = 1; n <= 4; ++n) {
        REQUIRE(pairing(root(cfg, {n, 0}), coroot(cfg, {n, 0})) == -2);
        REQUIRE(pairing(root(cfg, {n, 0}), coroot(cfg, {n + 1, 0})) == 1);
        REQUIRE(pairing(root(cfg, {n, 0}), coroot(cfg, {n - 1, 0})) == 1);
    }
}

TEST_CASE("simple reflections on classes") {
    ShapeConfig cfg = shape_a(3);

    SECTION("node reflection moves exceptional classes across the fibre") {
        DivisorClass img = reflect(cfg, {2, 0}, DivisorClass::basis_e(3, 2, 1));
        REQUIRE(img == DivisorClass::basis_h(3, 2) - DivisorClass::basis_e(3, 2, -1));
        DivisorClass img2 = reflect(cfg, {2, 0}, DivisorClass::basis_h(3, 3));
        REQUIRE(img2 == DivisorClass::basis_h(3, 3) + root(cfg, {2, 0}));
    }
    SECTION("reflections are involutions on random classes") {
        std::mt19937_64 rng(21);
        std::uniform_int_distribution<int> cd(-4, 4);
        ShapeConfig d = shape_d3();
        auto gens = all_root_indices(d);
        auto basis = divisor_basis(d);
        auto cbasis = curve_basis(d);
        for (int trial = 0; trial < 30; ++trial) {
            DivisorClass v(d.N);
            CurveClass w(d.N);
            for (const auto& b : basis) v = v + b * cd(rng);
            for (const auto& b : cbasis) w = w + b * cd(rng);
            RootIndex g = gens[rng() % gens.size()];
            REQUIRE(reflect(d, g, reflect(d, g, v)) == v);
            REQUIRE(reflect(d, g, reflect(d, g, w)) == w);
        }
    }
}

TEST_CASE("invariant classes") {
    SECTION("null divisor class for the all-ones shape") {
        ShapeConfig cfg = shape_a(3);
        auto inv = invariant_classes(cfg);
        DivisorClass want(3);
        for (int n = 1; n <= 3; ++n)
            want = want + DivisorClass::basis_h(3, n) - DivisorClass::basis_e(3, n, 1) -
                   DivisorClass::basis_e(3, n, -1);
        REQUIRE(inv.delta == want);
    }
    SECTION("node decompositions sum to the null classes") {
        for (const ShapeConfig& cfg : {shape_a(3), shape_a(5), shape_d3()}) {
            auto inv = invariant_classes(cfg);
            DivisorClass s0(cfg.N), si(cfg.N);
            CurveClass c0(cfg.N), ci(cfg.N);
            for (int n = 0; n < cfg.N; ++n) {
                s0 = s0 + inv.D0[n];
                si = si + inv.Dinf[n];
                c0 = c0 + inv.d0[n];
                ci = ci + inv.dinf[n];
            }
            REQUIRE(s0 == inv.delta);
            REQUIRE(si == inv.delta);
            REQUIRE(c0 == inv.delta_check);
            REQUIRE(ci == inv.delta_check);
        }
    }
    SECTION("self-pairing of the null classes matches the closed count") {
        // <delta, delta_check> = sum_n (1*2 - k_n - l_n), independently of
        // the pairing routine.
        for (const ShapeConfig& cfg : {shape_a(3), shape_d3(), ShapeConfig({3, 1, 2}, {1, 2, 1})}) {
            Int expect = 0;
            for (int n = 1; n <= cfg.N; ++n) expect += 2 - cfg.k_at(n) - cfg.l_at(n);
            auto inv = invariant_classes(cfg);
            REQUIRE(pairing(inv.delta, inv.delta_check) == expect);
        }
        auto inv = invariant_classes(shape_a(3));
        REQUIRE(pairing(inv.delta, inv.delta_check) == 0);
    }
    SECTION("root lattice is orthogonal to the node classes") {
        for (const ShapeConfig& cfg : {shape_a(4), shape_d3()}) {
            auto inv = invariant_classes(cfg);
            for (const RootIndex& idx : all_root_indices(cfg))
                for (int m = 0; m < cfg.N; ++m) {
                    REQUIRE(pairing(root(cfg, idx), inv.d0[m]) == 0);
                    REQUIRE(pairing(root(cfg, idx), inv.dinf[m]) == 0);
                    REQUIRE(pairing(inv.D0[m], coroot(cfg, idx)) == 0);
                    REQUIRE(pairing(inv.Dinf[m], coroot(cfg, idx)) == 0);
                }
        }
    }
}

TEST_CASE("Cartan matrix entries") {
    ShapeConfig cfg = shape_d3();
    auto gens = all_root_indices(cfg);
    for (const RootIndex& a : gens) REQUIRE(cartan_entry(cfg, a, a) == 2);
    for (int n = 1; n <= 3; ++n) {
        REQUIRE(cartan_entry(cfg, {n, 0}, {n + 1, 0}) == -1);
        REQUIRE(cartan_entry(cfg, {n, 0}, {n - 1, 0}) == -1);
    }
    // different nodes, opposite chains: disconnected
    REQUIRE(cartan_entry(cfg, {1, 1}, {2, -1}) == 0);
    REQUIRE(cartan_entry(cfg, {1, 1}, {1, -1}) == 0);
    // a chain root neighbours its node root
    REQUIRE(cartan_entry(cfg, {1, 0}, {1, 1}) == -1);
    REQUIRE(cartan_entry(cfg, {1, 0}, {1, -1}) == -1);
    // symmetric in this simply-laced setting
    for (const RootIndex& a : gens)
        for (const RootIndex& b : gens) REQUIRE(cartan_entry(cfg, a, b) == cartan_entry(cfg, b, a));
}

TEST_CASE("word action and group relations on the lattice") {
    SECTION("empty and squared words") {
        ShapeConfig cfg = shape_a(3);
        DivisorClass v = DivisorClass::basis_h(3, 1) - DivisorClass::basis_e(3, 2, -1) * 3;
        REQUIRE(apply_word_lattice(cfg, {}, v) == v);
        REQUIRE(apply_word_lattice(cfg, {{2, 0}, {2, 0}}, v) == v);
    }
    SECTION("braid and commutation relations on all basis classes") {
        for (const ShapeConfig& cfg : {shape_a(3), shape_a(4), shape_d3()}) {
            auto gens = all_root_indices(cfg);
            auto basis = divisor_basis(cfg);
            auto cbasis = curve_basis(cfg);
            for (const RootIndex& a : gens)
                for (const RootIndex& b : gens) {
                    if (a == b) continue;
                    Int c = cartan_entry(cfg, a, b);
                    WeylWord lhs, rhs;
                    if (c == -1) {
                        lhs = {a, b, a};
                        rhs = {b, a, b};
                    } else if (c == 0) {
                        lhs = {a, b};
                        rhs = {b, a};
                    } else {
                        continue;
                    }
                    for (const auto& v : basis)
                        REQUIRE(apply_word_lattice(cfg, lhs, v) == apply_word_lattice(cfg, rhs, v));
                    for (const auto& v : cbasis)
                        REQUIRE(apply_word_lattice(cfg, lhs, v) == apply_word_lattice(cfg, rhs, v));
                }
        }
    }
    SECTION("random words preserve the pairing and fix the null classes") {
        std::mt19937_64 rng(33);
        std::uniform_int_distribution<int> lend(0, 12);
        for (const ShapeConfig& cfg : {shape_a(3), shape_d3()}) {
            auto gens = all_root_indices(cfg);
            auto basis = divisor_basis(cfg);
            auto cbasis = curve_basis(cfg);
            auto inv = invariant_classes(cfg);
            for (int t = 0; t < 100; ++t) {
                WeylWord w = random_word(rng, gens, lend(rng));
                const DivisorClass& L = basis[rng() % basis.size()];
                const CurveClass& lam = cbasis[rng() % cbasis.size()];
                REQUIRE(pairing(apply_word_lattice(cfg, w, L), apply_word_lattice(cfg, w, lam)) ==
                        pairing(L, lam));
                REQUIRE(apply_word_lattice(cfg, w, inv.delta) == inv.delta);
                REQUIRE(apply_word_lattice(cfg, w, inv.delta_check) == inv.delta_check);
            }
        }
    }
}

TEST_CASE("translations by root-lattice elements") {
    std::mt19937_64 rng(45);
    std::uniform_int_distribution<int> cd(-2, 2);

    SECTION("zero element is the identity") {
        ShapeConfig cfg = shape_a(3);
        auto t0 = root_combination(cfg, {});
        for (const auto& v : divisor_basis(cfg)) REQUIRE(kac_translate(cfg, t0, v) == v);
    }
    SECTION("the null divisor class is fixed") {
        ShapeConfig cfg = shape_a(4);
        auto gens = all_root_indices(cfg);
        auto inv = invariant_classes(cfg);
        for (const RootIndex& g : gens) {
            auto a = root_combination(cfg, {{g, Int(1)}});
            REQUIRE(kac_translate(cfg, a, inv.delta) == inv.delta);
            REQUIRE(kac_translate(cfg, a, inv.delta_check) == inv.delta_check);
        }
    }
    SECTION("additivity and commutativity") {
        // For the doubled shape the affine subsystem spanned by the first two
        // nodes' roots carries its own isotropic null pair (the marks
        // combination of the five-node D diagram).
        ShapeConfig d = shape_d3();
        std::vector<RootIndex> dgens{{1, 0}, {2, 0}, {1, 1}, {1, -1}, {2, 1}, {2, -1}};
        auto dnull = root_combination(
            d, {{{1, 0}, Int(2)}, {{2, 0}, Int(2)}, {{1, 1}, Int(1)}, {{1, -1}, Int(1)},
                {{2, 1}, Int(1)}, {{2, -1}, Int(1)}});
        NullPair dpair{dnull.alpha, dnull.alpha_check};

        for (const ShapeConfig& cfg : {shape_a(3), shape_a(4), shape_d3()}) {
            bool doubled = cfg == d;
            auto gens = doubled ? dgens : all_root_indices(cfg);
            NullPair np = doubled ? dpair : anticanonical_null_pair(cfg);
            auto basis = divisor_basis(cfg);
            auto cbasis = curve_basis(cfg);
            for (int t = 0; t < 10; ++t) {
                std::vector<std::pair<RootIndex, Int>> ca, cb, cab;
                for (const RootIndex& g : gens) {
                    Int x = cd(rng), y = cd(rng);
                    if (x != 0) ca.push_back({g, x});
                    if (y != 0) cb.push_back({g, y});
                    if (x + y != 0) cab.push_back({g, x + y});
                }
                auto a = root_combination(cfg, ca);
                auto b = root_combination(cfg, cb);
                auto ab = root_combination(cfg, cab);
                for (const auto& v : basis) {
                    DivisorClass tatb = kac_translate(cfg, a, kac_translate(cfg, b, v, np), np);
                    REQUIRE(tatb == kac_translate(cfg, b, kac_translate(cfg, a, v, np), np));
                    REQUIRE(tatb == kac_translate(cfg, ab, v, np));
                }
                for (const auto& v : cbasis) {
                    CurveClass tatb = kac_translate(cfg, a, kac_translate(cfg, b, v, np), np);
                    REQUIRE(tatb == kac_translate(cfg, b, kac_translate(cfg, a, v, np), np));
                    REQUIRE(tatb == kac_translate(cfg, ab, v, np));
                }
            }
        }
    }
    SECTION("iterated translation grows quadratically") {
        ShapeConfig cfg = shape_a(3);
        auto a = root_combination(cfg, {{{1, 0}, Int(1)}, {{2, 0}, Int(2)}});
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                std::vector<Int> seq;
                DivisorClass v = DivisorClass::basis_h(3, i);
                for (int n = 0; n <= 8; ++n) {
                    seq.push_back(pairing(v, CurveClass::basis_h(3, j)));
                    v = kac_translate(cfg, a, v);
                }
                // constant second difference
                Int d2 = seq[2] - 2 * seq[1] + seq[0];
                for (size_t n = 0; n + 2 < seq.size(); ++n)
                    REQUIRE(seq[n + 2] - 2 * seq[n + 1] + seq[n] == d2);
            }
    }
    SECTION("non-affine shapes are rejected") {
        // k_n + l_n != 2 breaks orthogonality of the null classes
        ShapeConfig cfg({2, 1, 1}, {1, 1, 1});
        auto a = root_combination(cfg, {{{1, 0}, Int(1)}});
        REQUIRE_THROWS_AS(kac_translate(cfg, a, DivisorClass::basis_h(3, 1)), NotAffine);
    }
}
