#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <set>

#include "modp/hecke.hpp"
#include "util.hpp"

using namespace modp;

// ---- oracle: Hecke module realized on invariants of induced representations

namespace oracle {

// matrix of an operator on a stable subspace, rows = images of basis vectors
Mat op_matrix(const GammaRep &R, const std::vector<Vec> &basis,
              const std::function<Vec(const Vec &)> &op)
{
    const FieldCtx &F = *R.F;
    int k = (int)basis.size();
    Mat rows = from_rows(F, R.dim, basis);
    Mat M(F, k, k);
    for (int i = 0; i < k; ++i) {
        auto c = coordinates_in(rows, op(basis[i]));
        REQUIRE(c.has_value());
        for (int j = 0; j < k; ++j) M.at(i, j) = (*c)[j];
    }
    return M;
}

// the H_K-module on the U-invariants of Ind_B(chi), basis {phi, T phi}
HKModule induced_invariants(const FieldCtx &F, const TorusChar &chi)
{
    Vec phi;
    GammaRep R = induced_from_B(F, chi, &phi);
    std::vector<Vec> basis{phi, hecke_tns(R, phi)};
    HKModule M;
    M.F = &F;
    M.dim = 2;
    M.Tns = op_matrix(R, basis, [&](const Vec &v) { return hecke_tns(R, v); });
    for (auto &ch : all_chars(F)) {
        Mat E = op_matrix(R, basis, [&](const Vec &v) { return e_chi_project(R, v, ch); });
        if (!is_zero_mat(E)) M.e[ch] = E;
    }
    return M;
}

HKModule hk_direct_sum(const HKModule &A, const HKModule &B)
{
    const FieldCtx &F = *A.F;
    int n = A.dim + B.dim;
    HKModule M;
    M.F = &F;
    M.dim = n;
    auto block = [&](const Mat &X, const Mat &Y) {
        Mat Z(F, n, n);
        for (int i = 0; i < X.rows; ++i)
            for (int j = 0; j < X.cols; ++j) Z.at(i, j) = X.at(i, j);
        for (int i = 0; i < Y.rows; ++i)
            for (int j = 0; j < Y.cols; ++j) Z.at(A.dim + i, A.dim + j) = Y.at(i, j);
        return Z;
    };
    M.Tns = block(A.Tns, B.Tns);
    for (auto &chi : all_chars(F)) {
        Mat E = block(A.e_mat(chi), B.e_mat(chi));
        if (!is_zero_mat(E)) M.e[chi] = E;
    }
    return M;
}

} // namespace oracle

static std::vector<std::pair<int, int>> sizes()
{
    return {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}};
}

TEST_CASE("orbit census")
{
    for (auto [p, n] : sizes()) {
        FieldCtx F = field_init(p, n);
        auto orbits = all_orbits(F);
        CHECK((int)orbits.size() == F.q * (F.q - 1) / 2);
        int regular = 0;
        for (auto &g : orbits) {
            CHECK(make_orbit(g.lo) == g);
            CHECK(make_orbit(g.hi) == g);
            if (g.regular) ++regular;
        }
        CHECK(regular == (F.q - 1) * (F.q - 2) / 2);
    }
}

TEST_CASE("constructed modules pass the relation audit")
{
    for (auto [p, n] : sizes()) {
        FieldCtx F = field_init(p, n);
        for (auto &g : all_orbits(F)) {
            for (int lam : {1, F.g}) {
                if (lam == 0) continue;
                CHECK(check_relations(make_M_gamma(F, g, lam)).all_pass);
                if (g.regular) CHECK(check_relations(make_L_gamma(F, g, lam)).all_pass);
            }
            CHECK(check_relations_hk(make_M_chiJ(F, g.lo, false)).all_pass);
            if (!g.regular) CHECK(check_relations_hk(make_M_chiJ(F, g.lo, true)).all_pass);
        }
    }
}

TEST_CASE("M_chiJ action values")
{
    FieldCtx F = field_init(5, 1);
    TorusChar self = make_char(F, 2, 2), reg = make_char(F, 1, 0);
    CHECK(make_M_chiJ(F, self, false).Tns.at(0, 0) == F.neg(1));
    CHECK(make_M_chiJ(F, self, true).Tns.at(0, 0) == 0);
    CHECK(make_M_chiJ(F, reg, false).Tns.at(0, 0) == 0);
    CHECK(thrown_code([&] { make_M_chiJ(F, reg, true); }) == "InvalidJ");
    CHECK(thrown_code([&] { make_M_gamma(F, make_orbit(reg), 0); }) == "ZeroLambda");
    CHECK(thrown_code([&] { make_L_gamma(F, make_orbit(self), 1); }) == "IwahoriOrbit");
}

TEST_CASE("corrupted TPi fails only the targeted relations")
{
    FieldCtx F = field_init(5, 1);
    HModule M = make_M_gamma(F, make_orbit(make_char(F, 1, 0)), 1);
    M.TPi = identity(F, 2);
    M.TPiInv = identity(F, 2);
    RelationAudit a = check_relations(M);
    CHECK(a.passed("orthogonality"));
    CHECK(a.passed("idempotency"));
    CHECK_FALSE(a.passed("tpi-conjugation"));
    CHECK_FALSE(a.all_pass);
}

TEST_CASE("M_gamma has no 1-dim stable subspace")
{
    for (auto [p, n] : sizes()) {
        FieldCtx F = field_init(p, n);
        for (auto &g : all_orbits(F)) {
            HModule M = make_M_gamma(F, g, 1);
            auto gens = M.gens();
            // projective lines in F_q^2
            std::vector<Vec> lines;
            for (int x = 0; x < F.q; ++x) lines.push_back({1, x});
            lines.push_back({0, 1});
            for (auto &v : lines) {
                bool stable = true;
                for (auto &A : gens) {
                    Vec w = vec_mat(v, A);
                    // w must be a multiple of v
                    int c = v[0] ? F.div(w[0], v[0]) : F.div(w[1], v[1]);
                    if (!(w == vec_scale(F, c, v))) stable = false;
                }
                CHECK_FALSE(stable);
            }
        }
    }
}

TEST_CASE("module_iso separates orbits and lambda")
{
    FieldCtx F = field_init(5, 1);
    auto orbits = all_orbits(F);
    for (size_t i = 0; i < orbits.size(); ++i) {
        HModule A = make_M_gamma(F, orbits[i], 1);
        CHECK(module_iso(A, A).has_value());
        for (size_t j = i + 1; j < orbits.size(); ++j)
            CHECK_FALSE(module_iso(A, make_M_gamma(F, orbits[j], 1)).has_value());
        CHECK_FALSE(module_iso(A, make_M_gamma(F, orbits[i], 2)).has_value());
        Mat P = *module_iso(A, make_M_gamma(F, orbits[i], 1));
        for (size_t k = 0; k < A.gens().size(); ++k)
            CHECK(mat_mul(A.gens()[k], P) == mat_mul(P, A.gens()[k]));
    }
}

TEST_CASE("L_gamma extension structure")
{
    for (auto [p, n] : sizes()) {
        FieldCtx F = field_init(p, n);
        for (auto &g : all_orbits(F)) {
            if (!g.regular) continue;
            HModule L = make_L_gamma(F, g, 1);
            CHECK(L.dim == 4);
            // explicit stable subspace on the last two basis vectors
            Mat sub(F, 2, 4);
            sub.at(0, 2) = sub.at(1, 3) = 1;
            HModule M = make_M_gamma(F, g, 1);
            for (auto &A : L.gens()) {
                Mat img = mat_mul(sub, A);
                for (int i = 0; i < 2; ++i) {
                    CHECK(img.at(i, 0) == 0);
                    CHECK(img.at(i, 1) == 0);
                }
            }
            // submodule and quotient both isomorphic to M_gamma
            auto corner = [&](const Mat &A, int off) {
                Mat B(F, 2, 2);
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) B.at(i, j) = A.at(off + i, off + j);
                return B;
            };
            HModule S, Q;
            S.F = Q.F = &F;
            S.dim = Q.dim = 2;
            S.Tns = corner(L.Tns, 2);
            S.TPi = corner(L.TPi, 2);
            S.TPiInv = corner(L.TPiInv, 2);
            Q.Tns = corner(L.Tns, 0);
            Q.TPi = corner(L.TPi, 0);
            Q.TPiInv = corner(L.TPiInv, 0);
            for (auto &chi : all_chars(F)) {
                Mat Es = corner(L.e_mat(chi), 2), Eq = corner(L.e_mat(chi), 0);
                if (!is_zero_mat(Es)) S.e[chi] = Es;
                if (!is_zero_mat(Eq)) Q.e[chi] = Eq;
            }
            CHECK(module_iso(S, M).has_value());
            CHECK(module_iso(Q, M).has_value());
        }
    }
}

TEST_CASE("restriction to H_K of the standard modules")
{
    for (auto [p, n] : sizes()) {
        FieldCtx F = field_init(p, n);
        for (auto &g : all_orbits(F)) {
            auto parts = restrict_to_HK(make_M_gamma(F, g, 1));
            REQUIRE(parts.size() == 2);
            std::set<std::string> tags;
            for (auto &s : parts) {
                CHECK(s.mod.dim == 1);
                tags.insert(s.tag);
            }
            std::set<std::string> want;
            auto cs = [](const TorusChar &c) {
                return std::to_string(c.c) + "," + std::to_string(c.d);
            };
            if (g.regular) {
                want = {"M(" + cs(g.lo) + ";-)", "M(" + cs(g.hi) + ";-)"};
            } else {
                want = {"M(" + cs(g.lo) + ";S)", "M(" + cs(g.lo) + ";-)"};
            }
            CHECK(tags == want);
            if (g.regular) {
                auto lparts = restrict_to_HK(make_L_gamma(F, g, 1));
                REQUIRE(lparts.size() == 2);
                for (auto &s : lparts) CHECK(s.mod.dim == 2);
                std::set<std::string> ltags{lparts[0].tag, lparts[1].tag};
                std::set<std::string> lwant{"ind(" + cs(g.lo) + ")", "ind(" + cs(g.hi) + ")"};
                CHECK(ltags == lwant);
            }
        }
    }
}

TEST_CASE("restriction of L_gamma matches the induced-invariants oracle")
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        FieldCtx F = field_init(p, n);
        for (auto &g : all_orbits(F)) {
            if (!g.regular) continue;
            HKModule want = oracle::hk_direct_sum(oracle::induced_invariants(F, g.lo),
                                                  oracle::induced_invariants(F, g.hi));
            CHECK(check_relations_hk(want).all_pass);
            CHECK(module_iso_hk(forget_to_HK(make_L_gamma(F, g, 1)), want).has_value());
        }
        // self-dual induced invariants decompose as the two characters
        for (auto &g : all_orbits(F)) {
            if (g.regular) continue;
            HKModule inv = oracle::induced_invariants(F, g.lo);
            HKModule want = oracle::hk_direct_sum(make_M_chiJ(F, g.lo, true),
                                                  make_M_chiJ(F, g.lo, false));
            CHECK(module_iso_hk(inv, want).has_value());
        }
    }
}

TEST_CASE("trivial character module restricts to itself")
{
    FieldCtx F = field_init(3, 1);
    HModule T;
    T.F = &F;
    T.dim = 1;
    T.Tns = Mat(F, 1, 1);
    T.TPi = identity(F, 1);
    T.TPiInv = identity(F, 1);
    T.e[make_char(F, 0, 0)] = identity(F, 1);
    CHECK(check_relations(T).all_pass);
    auto parts = restrict_to_HK(T);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].tag == "M(0,0;S)");
    CHECK(classify(T).kind == "trivial-type");
}

TEST_CASE("unramified twist")
{
    FieldCtx F = field_init(5, 1);
    CharOrbit g = make_orbit(make_char(F, 1, 0));
    HModule M = make_M_gamma(F, g, 1);
    CHECK(module_iso(twist_unramified(M, 1), M).has_value());
    CHECK(twist_unramified(M, 1).TPi == M.TPi);
    CHECK(module_iso(twist_unramified(M, F.neg(1)), M).has_value());
    int gi2 = F.inv(F.mul(F.g, F.g));
    HModule tw = twist_unramified(M, F.g);
    CHECK(check_relations(tw).all_pass);
    CHECK(module_iso(tw, make_M_gamma(F, g, gi2)).has_value());
    CHECK_FALSE(module_iso(tw, M).has_value());
    CHECK(thrown_code([&] { twist_unramified(M, 0); }) == "ZeroXi");
}

TEST_CASE("classification tags")
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {2, 2}}) {
        FieldCtx F = field_init(p, n);
        for (auto &g : all_orbits(F)) {
            ClassifyTag t = classify(make_M_gamma(F, g, 1));
            CHECK(t.kind == "supersingular");
            CHECK(t.orbit == g);
            CHECK(t.lambda == 1);
            if (g.regular) {
                ClassifyTag l = classify(make_L_gamma(F, g, F.g));
                CHECK(l.kind == "L");
                CHECK(l.orbit == g);
                CHECK(l.lambda == F.g);
                REQUIRE(l.sub_embed.has_value());
                CHECK(l.sub_embed->rows == 2);
            }
        }
    }
    FieldCtx F = field_init(3, 1);
    HKModule flat = make_M_chiJ(F, make_char(F, 1, 1), true);
    HModule one;
    one.F = &F;
    one.dim = 1;
    one.Tns = flat.Tns;
    one.TPi = identity(F, 1);
    one.TPiInv = identity(F, 1);
    one.e = flat.e;
    CHECK(classify(one).kind == "HK-character");
}
