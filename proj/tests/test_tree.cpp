#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "modp/tree.hpp"
#include "util.hpp"

using namespace modp;

namespace {

const std::vector<std::pair<int, int>> SCOPE = {{2, 1}, {3, 1}, {2, 2}, {5, 1},
                                                {7, 1}, {2, 3}, {3, 2}};

LaurentSeries rnd_poly(const FieldCtx &F, std::mt19937_64 &rng, long long lo, long long hi)
{
    std::vector<std::pair<long long, int>> terms;
    for (long long e = lo; e <= hi; ++e) terms.push_back({e, (int)(rng() % F.q)});
    return ls_from_terms(F, terms);
}

GL2Local rnd_K(const FieldCtx &F, std::mt19937_64 &rng)
{
    for (;;) {
        try {
            GL2Local g = gl2_make(F, rnd_poly(F, rng, 0, 2), rnd_poly(F, rng, 0, 2),
                                  rnd_poly(F, rng, 0, 2), rnd_poly(F, rng, 0, 2));
            if (in_K(g)) return g;
        } catch (const Error &) {
        }
    }
}

GL2Local rnd_I(const FieldCtx &F, std::mt19937_64 &rng)
{
    for (;;) {
        try {
            GL2Local g = gl2_make(F, rnd_poly(F, rng, 0, 2), rnd_poly(F, rng, 0, 2),
                                  rnd_poly(F, rng, 1, 2), rnd_poly(F, rng, 0, 2));
            if (in_I(g)) return g;
        } catch (const Error &) {
        }
    }
}

GL2Local rnd_I1(const FieldCtx &F, std::mt19937_64 &rng)
{
    LaurentSeries one = ls_const(F, 1);
    for (;;) {
        try {
            GL2Local g = gl2_make(F, ls_add(one, rnd_poly(F, rng, 1, 2)),
                                  rnd_poly(F, rng, 0, 2), rnd_poly(F, rng, 1, 2),
                                  ls_add(one, rnd_poly(F, rng, 1, 2)));
            if (in_I1(g)) return g;
        } catch (const Error &) {
        }
    }
}

GL2Local rnd_G(const FieldCtx &F, std::mt19937_64 &rng)
{
    GL2Local g = rnd_K(F, rng);
    int e = (int)(rng() % 3);
    for (int i = 0; i < e; ++i) g = gl2_mul(g, gl2_Pi(F));
    g = gl2_mul(g, rnd_K(F, rng));
    long long j = (long long)(rng() % 5) - 2;
    return gl2_scalar_mul(ls_monomial(F, 1, j), g);
}

GL2Local rnd_FxK(const FieldCtx &F, std::mt19937_64 &rng)
{
    long long j = (long long)(rng() % 5) - 2;
    return gl2_scalar_mul(ls_monomial(F, 1, j), rnd_K(F, rng));
}

std::string vkey(const Vertex &v) { return vertex_str(v); }

}

TEST_CASE("laurent arithmetic")
{
    for (auto [p, n] : SCOPE) {
        FieldCtx F = field_init(p, n);
        CAPTURE(p);
        CAPTURE(n);
        LaurentSeries one = ls_const(F, 1);
        LaurentSeries t = ls_monomial(F, 1, 1);
        LaurentSeries tinv = ls_monomial(F, 1, -1);

        CHECK(ls_eq(ls_mul(t, tinv), one));
        CHECK(ls_eq(ls_mul(t, ls_inv(t)), one));
        CHECK(ls_inv(t).exact);
        CHECK(ls_eq(ls_inv(ls_monomial(F, F.q - 1, 3)),
                    ls_monomial(F, F.inv(F.q - 1), -3)));

        // geometric series oracle: (1+t)^{-1} = sum (-t)^k
        LaurentSeries a = ls_add(one, t);
        LaurentSeries ai = ls_inv(a);
        CHECK_FALSE(ai.exact);
        CHECK(ai.prec == 64);
        std::vector<std::pair<long long, int>> geo;
        for (long long k = 0; k < 64; ++k) geo.push_back({k, k % 2 ? F.neg(1) : 1});
        CHECK(ls_agree(ai, ls_from_terms(F, geo)));
        CHECK(ls_agree(ls_mul(a, ai), one));
        if (p == 3 && n == 1) {
            for (long long k = 0; k < 6; ++k) CHECK(ls_coeff(ai, k) == (k % 2 ? 2 : 1));
        }

        std::mt19937_64 rng(2026);
        for (int it = 0; it < 20; ++it) {
            LaurentSeries x = rnd_poly(F, rng, -2, 3);
            LaurentSeries y = rnd_poly(F, rng, -1, 2);
            if (ls_is_zero(x) || ls_is_zero(y)) continue;
            CHECK(ls_val(ls_mul(x, y)) == ls_val(x) + ls_val(y));
            CHECK(ls_eq(ls_add(x, y), ls_add(y, x)));
            CHECK(ls_eq(ls_sub(ls_add(x, y), y), x));
        }

        CHECK(thrown_code([&] { ls_inv(ls_zero(F)); }) == "DivisionByZero");
        LaurentSeries fuzz = ls_sub(ai, ai);
        CHECK_FALSE(fuzz.exact);
        CHECK(fuzz.c.empty());
        CHECK(thrown_code([&] { ls_val(fuzz); }) == "PrecisionExhausted");
        CHECK(thrown_code([&] { ls_inv(fuzz); }) == "PrecisionExhausted");
        CHECK(thrown_code([&] { ls_coeff(ai, 100); }) == "PrecisionExhausted");
        CHECK(thrown_code([&] { ls_truncate(ai, 65); }) == "PrecisionExhausted");
        CHECK(ls_truncate(ai, 10).exact);
        CHECK(ls_eq(ls_truncate(ls_from_terms(F, {{0, 1}, {1, 1}, {3, 1}}), 2),
                    ls_add(one, t)));
        CHECK(ls_val_at_least(ls_mul(t, ai), 1));
        CHECK_FALSE(ls_val_at_least(ai, 1));

        // precision bookkeeping through products
        LaurentSeries prod = ls_mul(ai, ai);
        CHECK(prod.prec == 64);
        CHECK(ls_val(prod) == 0);
        LaurentSeries shifted = ls_mul(t, ai);
        CHECK(shifted.prec == 65);
    }
}

TEST_CASE("vertex normal forms")
{
    for (auto [p, n] : SCOPE) {
        FieldCtx F = field_init(p, n);
        CAPTURE(p);
        CAPTURE(n);
        Vertex base = vertex_base(F);
        CHECK(vertex_eq(vertex_normalize(gl2_id(F)), base));

        Vertex pi0 = vertex_normalize(gl2_Pi(F));
        CHECK(pi0.m == -1);
        CHECK(ls_is_zero(pi0.u));

        std::mt19937_64 rng(77);
        for (int it = 0; it < 20; ++it) {
            GL2Local k = rnd_K(F, rng);
            CHECK(vertex_eq(vertex_normalize(k), base));
        }
        for (int x = 0; x < F.q; ++x) {
            GL2Local g = gl2_mul(gl2_u(F, x), gl2_inv(gl2_ns(F)));
            CHECK(vertex_eq(vertex_normalize(g), base));
        }

        GL2Local shear =
            gl2_make(F, ls_const(F, 1), ls_monomial(F, 1, -1), ls_zero(F), ls_const(F, 1));
        Vertex sv = vertex_normalize(shear);
        CHECK(sv.m == 0);
        CHECK(ls_terms(sv.u) == std::vector<std::pair<long long, int>>{{-1, 1}});

        GL2Local d2 = gl2_make(F, ls_monomial(F, 1, 2), ls_zero(F), ls_zero(F),
                               ls_const(F, 1));
        Vertex v2 = vertex_normalize(d2);
        CHECK(v2.m == 2);
        CHECK(ls_is_zero(v2.u));

        // output depends only on the coset g F^x K
        for (int it = 0; it < 10; ++it) {
            GL2Local g = rnd_G(F, rng);
            Vertex v = vertex_normalize(g);
            GL2Local g2 = gl2_mul(g, rnd_FxK(F, rng));
            CHECK(vertex_eq(vertex_normalize(g2), v));
            CHECK(vertex_eq(vertex_normalize(vertex_matrix(v)), v));
        }
    }
}

TEST_CASE("action on vertices")
{
    for (auto [p, n] : SCOPE) {
        FieldCtx F = field_init(p, n);
        CAPTURE(p);
        CAPTURE(n);
        Vertex base = vertex_base(F);
        GL2Local Pi = gl2_Pi(F);
        CHECK(vertex_eq(act_on_vertex(gl2_mul(Pi, Pi), base), base));
        Vertex pib = act_on_vertex(Pi, base);
        CHECK(pib.m == -1);
        CHECK(vertex_eq(act_on_vertex(Pi, pib), base));

        std::mt19937_64 rng(11);
        for (int it = 0; it < 8; ++it) {
            GL2Local g = rnd_G(F, rng), h = rnd_G(F, rng);
            Vertex v = act_on_vertex(rnd_G(F, rng), base);
            CHECK(vertex_eq(act_on_vertex(gl2_mul(g, h), v),
                            act_on_vertex(g, act_on_vertex(h, v))));
        }
    }
}

TEST_CASE("neighbors adjacency geodesics")
{
    for (auto [p, n] : SCOPE) {
        FieldCtx F = field_init(p, n);
        CAPTURE(p);
        CAPTURE(n);
        Vertex base = vertex_base(F);
        std::vector<Vertex> nb = neighbors(base);
        CHECK((int)nb.size() == F.q + 1);
        std::set<std::string> keys;
        bool has_pi = false;
        for (const Vertex &w : nb) {
            keys.insert(vkey(w));
            CHECK(vertex_adjacent(base, w));
            CHECK(tree_distance(base, w) == 1);
            if (w.m == -1 && ls_is_zero(w.u)) has_pi = true;
            bool back = false;
            for (const Vertex &z : neighbors(w)) back = back || vertex_eq(z, base);
            CHECK(back);
        }
        CHECK((int)keys.size() == F.q + 1);
        CHECK(has_pi);

        CHECK(geodesic(base, base).size() == 1);
        Vertex two{2, ls_zero(F)};
        CHECK(tree_distance(two, base) == 2);
        std::vector<Vertex> path = geodesic(two, base);
        REQUIRE(path.size() == 3);
        CHECK(path[1].m == 1);
        CHECK(ls_is_zero(path[1].u));

        std::mt19937_64 rng(5);
        for (int it = 0; it < 6; ++it) {
            Vertex v = act_on_vertex(rnd_G(F, rng), base);
            Vertex w = act_on_vertex(rnd_G(F, rng), base);
            long long d = tree_distance(v, w);
            CHECK(d == tree_distance(w, v));
            std::vector<Vertex> gp = geodesic(v, w);
            CHECK((long long)gp.size() == d + 1);
            CHECK(vertex_eq(gp.front(), v));
            CHECK(vertex_eq(gp.back(), w));
            for (size_t i = 0; i + 1 < gp.size(); ++i)
                CHECK(vertex_adjacent(gp[i], gp[i + 1]));
            GL2Local g = rnd_G(F, rng);
            CHECK(tree_distance(act_on_vertex(g, v), act_on_vertex(g, w)) == d);
        }
    }
}

TEST_CASE("ball of radius three is a tree")
{
    for (auto [p, n] : SCOPE) {
        FieldCtx F = field_init(p, n);
        CAPTURE(p);
        CAPTURE(n);
        Vertex base = vertex_base(F);
        std::map<std::string, long long> seen{{vkey(base), 0}};
        std::vector<Vertex> level{base};
        long long expected = 1;
        for (int r = 1; r <= 3; ++r) {
            std::vector<Vertex> next;
            for (const Vertex &v : level)
                for (const Vertex &w : neighbors(v)) {
                    auto it = seen.find(vkey(w));
                    if (it != seen.end()) {
                        CHECK(std::llabs(it->second - (r - 1)) == 1);
                        continue;
                    }
                    seen[vkey(w)] = r;
                    CHECK(tree_distance(base, w) == r);
                    next.push_back(w);
                }
            expected = r == 1 ? F.q + 1 : expected * F.q;
            CHECK((long long)next.size() == expected);
            level = next;
        }
    }
}

TEST_CASE("membership predicates")
{
    for (auto [p, n] : SCOPE) {
        FieldCtx F = field_init(p, n);
        CAPTURE(p);
        CAPTURE(n);
        GL2Local Pi = gl2_Pi(F);
        CHECK(in_K(gl2_ns(F)));
        CHECK(in_K(gl2_s(F)));
        CHECK_FALSE(in_K(Pi));
        CHECK_FALSE(in_FxK(Pi));
        CHECK(in_Ksigma1(Pi));
        CHECK(in_FxK(gl2_scalar(F, ls_monomial(F, 1, 1))));
        CHECK(in_I(gl2_u(F, 1 % F.q)));
        CHECK_FALSE(in_I(gl2_s(F)));
        CHECK(in_I1(gl2_id(F)));

        std::mt19937_64 rng(13);
        for (int it = 0; it < 10; ++it) {
            CHECK(in_K(rnd_K(F, rng)));
            CHECK(in_I(rnd_I(F, rng)));
            GL2Local i1 = rnd_I1(F, rng);
            CHECK(in_I1(i1));
            CHECK(in_Ksigma1(i1));
        }
    }
}

TEST_CASE("stabilizer factorizations")
{
    for (auto [p, n] : SCOPE) {
        FieldCtx F = field_init(p, n);
        CAPTURE(p);
        CAPTURE(n);
        GL2Local Pi = gl2_Pi(F);
        GammaElt id{};

        StabFactor f = factor_in_stabilizer(gl2_scalar(F, ls_monomial(F, 1, 3)),
                                            StabSimplex::sigma0);
        CHECK(f.a == 3);
        CHECK(f.eps == 0);
        CHECK(f.residue == id);

        StabFactor fp = factor_in_stabilizer(Pi, StabSimplex::sigma1);
        CHECK(fp.eps == 1);
        CHECK(fp.a == 0);
        CHECK(fp.residue == id);

        std::mt19937_64 rng(21);
        for (int it = 0; it < 12; ++it) {
            GL2Local k = rnd_K(F, rng);
            long long j = (long long)(rng() % 5) - 2;
            StabFactor fk = factor_in_stabilizer(
                gl2_scalar_mul(ls_monomial(F, 1, j), k), StabSimplex::sigma0);
            CHECK(fk.a == j);
            CHECK(fk.residue == gl2_red(k));

            GL2Local i = rnd_I(F, rng);
            StabFactor fi = factor_in_stabilizer(i, StabSimplex::sigma1);
            CHECK(fi.eps == 0);
            CHECK(fi.a == 0);
            CHECK(fi.residue.c == 0);
            StabFactor fpi = factor_in_stabilizer(gl2_mul(Pi, i), StabSimplex::sigma1);
            CHECK(fpi.eps == 1);
        }

        // factorization succeeds exactly on the stabilizer
        CHECK(thrown_code([&] { factor_in_stabilizer(Pi, StabSimplex::sigma0); }) ==
              "NotInStabilizer");
        CHECK(thrown_code([&] { factor_in_stabilizer(gl2_ns(F), StabSimplex::sigma1); }) ==
              "NotInStabilizer");
        GL2Local shear =
            gl2_make(F, ls_const(F, 1), ls_monomial(F, 1, -1), ls_zero(F), ls_const(F, 1));
        CHECK(thrown_code([&] { factor_in_stabilizer(shear, StabSimplex::sigma0); }) ==
              "NotInStabilizer");
        CHECK(thrown_code([&] { factor_in_stabilizer(shear, StabSimplex::sigma1); }) ==
              "NotInStabilizer");
        GL2Local d2 =
            gl2_make(F, ls_monomial(F, 1, 1), ls_zero(F), ls_zero(F), ls_const(F, 1));
        CHECK(thrown_code([&] { factor_in_stabilizer(d2, StabSimplex::sigma0); }) ==
              "NotInStabilizer");

        // edge stabilizer fixes or swaps the endpoints of sigma_1
        Vertex base = vertex_base(F);
        Vertex pib = act_on_vertex(Pi, base);
        std::mt19937_64 rng2(22);
        for (int it = 0; it < 6; ++it) {
            GL2Local i = rnd_I(F, rng2);
            CHECK(vertex_eq(act_on_vertex(i, base), base));
            CHECK(vertex_eq(act_on_vertex(i, pib), pib));
            GL2Local w = gl2_mul(Pi, i);
            CHECK(vertex_eq(act_on_vertex(w, base), pib));
            CHECK(vertex_eq(act_on_vertex(w, pib), base));
        }
    }
}

TEST_CASE("Pi normalizes I1")
{
    for (auto [p, n] : SCOPE) {
        FieldCtx F = field_init(p, n);
        CAPTURE(p);
        CAPTURE(n);
        GL2Local Pi = gl2_Pi(F);
        GL2Local Pinv = gl2_inv(Pi);
        for (int x = 0; x < F.q; ++x) {
            GL2Local c = gl2_mul(gl2_mul(Pi, gl2_u(F, x)), Pinv);
            CHECK(in_I1(c));
        }
        std::mt19937_64 rng(31);
        for (int it = 0; it < 8; ++it) {
            GL2Local c = gl2_mul(gl2_mul(Pi, rnd_I1(F, rng)), Pinv);
            CHECK(in_I1(c));
        }
    }
}
