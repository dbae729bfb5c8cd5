#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <set>

#include "modp/gamma.hpp"
#include "modp/binom.hpp"
#include "modp/rng.hpp"
#include "util.hpp"

using namespace modp;

// ---- oracles ----------------------------------------------------------------

namespace oracle {

// homogeneous degree-d polynomial model of V_d for d <= p-1, coefficients on
// the monomial basis X^{d-j} Y^j; gamma sends X -> aX + cY, Y -> bX + dY
Mat poly_action(const FieldCtx &F, int d, const GammaElt &g)
{
    Mat M(F, d + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
        // expand (aX+cY)^{d-i} (bX+dY)^i
        Vec acc(d + 1, 0); // by Y-degree
        acc[0] = 1;
        auto mul_lin = [&](int x, int y) { // multiply by xX + yY
            Vec nxt(d + 1, 0);
            for (int j = 0; j <= d; ++j) {
                if (!acc[j]) continue;
                nxt[j] = F.add(nxt[j], F.mul(acc[j], x));
                if (j + 1 <= d) nxt[j + 1] = F.add(nxt[j + 1], F.mul(acc[j], y));
            }
            acc = nxt;
        };
        for (int t = 0; t < d - i; ++t) mul_lin(g.a, g.c);
        for (int t = 0; t < i; ++t) mul_lin(g.b, g.d);
        for (int j = 0; j <= d; ++j) M.at(j, i) = acc[j];
    }
    return M;
}

GammaElt frob_elt(const FieldCtx &F, const GammaElt &g)
{
    return {F.frob(g.a), F.frob(g.b), F.frob(g.c), F.frob(g.d)};
}

GammaElt random_elt(const FieldCtx &F, Rng &rng)
{
    while (true) {
        GammaElt g{rng.below(F.q), rng.below(F.q), rng.below(F.q), rng.below(F.q)};
        if (gdet(F, g) != 0) return g;
    }
}

} // namespace oracle

static Mat word_product(const FieldCtx &F, const GammaElt &g)
{
    Mat M = identity(F, 2);
    for (int s : word_for(F, g)) {
        GammaElt e = gen_elt(F, s);
        Mat G(F, 2, 2);
        G.at(0, 0) = e.a;
        G.at(0, 1) = e.b;
        G.at(1, 0) = e.c;
        G.at(1, 1) = e.d;
        M = mat_mul(M, G);
    }
    return M;
}

TEST_CASE("word factorization covers the group")
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        FieldCtx F = field_init(p, n);
        for (auto &g : all_gamma(F)) {
            Mat M = word_product(F, g);
            CHECK(M.at(0, 0) == g.a);
            CHECK(M.at(0, 1) == g.b);
            CHECK(M.at(1, 0) == g.c);
            CHECK(M.at(1, 1) == g.d);
        }
        CHECK((long long)all_gamma(F).size() == gamma_order(F));
    }
    for (auto [p, n] : std::vector<std::pair<int, int>>{{7, 1}, {2, 3}, {3, 2}}) {
        FieldCtx F = field_init(p, n);
        Rng rng(17);
        for (int t = 0; t < 300; ++t) {
            GammaElt g = oracle::random_elt(F, rng);
            Mat M = word_product(F, g);
            CHECK(M.at(0, 0) == g.a);
            CHECK(M.at(0, 1) == g.b);
            CHECK(M.at(1, 0) == g.c);
            CHECK(M.at(1, 1) == g.d);
        }
        CHECK(thrown_code([&] { word_for(F, GammaElt{1, 1, 1, 1}); }) == "SingularElement");
    }
}

TEST_CASE("symmetric powers match the polynomial model for d < p")
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
        FieldCtx F = field_init(p, n);
        Rng rng(29);
        for (int d = 0; d <= p - 1; ++d) {
            GammaRep R = symmetric_power_rep(F, d);
            // change of basis m_i = C(d,i) X^{d-i} Y^i
            Mat D(F, d + 1, d + 1), Di(F, d + 1, d + 1);
            for (int i = 0; i <= d; ++i) {
                D.at(i, i) = binom_mod_p(F, d, i);
                Di.at(i, i) = F.inv(D.at(i, i));
            }
            for (int t = 0; t < 25; ++t) {
                GammaElt g = oracle::random_elt(F, rng);
                Mat expect = mat_mul(Di, mat_mul(oracle::poly_action(F, d, g), D));
                CHECK(rep_matrix(R, g) == expect);
            }
        }
    }
}

TEST_CASE("symmetric powers for p <= d <= 2p-2 embed into the tensor model")
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {3, 2}, {2, 2}}) {
        FieldCtx F = field_init(p, n);
        for (int d = p; d <= 2 * p - 2; ++d) {
            int r = 2 * p - 2 - d; // 0..p-2
            GammaRep Vd = symmetric_power_rep(F, d);
            GammaRep T = tensor_rep(symmetric_power_rep(F, p - 1 - r),
                                    symmetric_power_rep(F, p - 1));
            // E_i = sum_{k+l=i} v_k (x) w_l; m_i -> E_i intertwines
            Mat E(F, T.dim, Vd.dim);
            int bd = p; // dim V_{p-1}
            for (int i = 0; i <= d; ++i)
                for (int k = 0; k <= p - 1 - r; ++k) {
                    int l = i - k;
                    if (l < 0 || l > p - 1) continue;
                    E.at(k * bd + l, i) = 1;
                }
            for (int s = 0; s < gen_count(F); ++s)
                CHECK(mat_mul(E, Vd.gen[s]) == mat_mul(T.gen[s], E));
        }
    }
}

TEST_CASE("representations are homomorphisms on sampled pairs")
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {2, 2}, {5, 1}, {3, 2}}) {
        FieldCtx F = field_init(p, n);
        Rng rng(41);
        std::vector<GammaRep> reps;
        reps.push_back(symmetric_power_rep(F, 2 * p - 2));
        reps.push_back(build_v_tuple(F, std::vector<int>(F.n, 1), 1));
        reps.push_back(induced_from_B(F, make_char(F, 1, 0)));
        if (F.q <= 5) reps.push_back(induced_from_U(F));
        for (auto &R : reps)
            for (int t = 0; t < 12; ++t) {
                GammaElt x = oracle::random_elt(F, rng), y = oracle::random_elt(F, rng);
                CHECK(rep_matrix(R, gmul(F, x, y)) ==
                      mat_mul(rep_matrix(R, x), rep_matrix(R, y)));
            }
    }
}

TEST_CASE("frobenius twist")
{
    FieldCtx F = field_init(3, 2);
    Rng rng(43);
    GammaRep R = symmetric_power_rep(F, 2);
    GammaRep T = frobenius_twist_rep(R, 1);
    for (int t = 0; t < 30; ++t) {
        GammaElt g = oracle::random_elt(F, rng);
        CHECK(rep_matrix(T, g) == rep_matrix(R, oracle::frob_elt(F, g)));
    }
    // twisting n times returns the original on group elements
    GammaRep T2 = frobenius_twist_rep(T, 1);
    for (int t = 0; t < 10; ++t) {
        GammaElt g = oracle::random_elt(F, rng);
        CHECK(rep_matrix(T2, g) == rep_matrix(R, g));
    }
}

TEST_CASE("induced from U: dimension, cyclicity, projector image")
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        FieldCtx F = field_init(p, n);
        Vec phi;
        GammaRep W = induced_from_U(F, &phi);
        CHECK((long long)W.dim * F.q == gamma_order(F));
        for (int lam = 0; lam < F.q; ++lam) CHECK(mat_vec(W.gen[lam], phi) == phi);
        CHECK(generated_subrep(W, {phi}).rep.dim == W.dim);
        // e_chi image is Ind_B(chi): dimension q+1 and isomorphic
        for (auto &chi : all_chars(F)) {
            Vec pc = e_chi_project(W, phi, chi);
            SubRep S = generated_subrep(W, {pc});
            CHECK(S.rep.dim == F.q + 1);
            GammaRep IB = induced_from_B(F, chi);
            CHECK(hom_space(S.rep.gen, IB.gen).is_isomorphic);
        }
    }
}

TEST_CASE("induced from B: invariants and their characters")
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}}) {
        FieldCtx F = field_init(p, n);
        for (auto &chi : all_chars(F)) {
            Vec phi;
            GammaRep R = induced_from_B(F, conj_char(chi), &phi);
            CHECK(R.dim == F.q + 1);
            UInvariants inv = u_invariants(R);
            CHECK(inv.space.dim() == 2);
            if (char_regular(chi)) {
                // two eigenlines, characters chi and chi^s
                std::set<std::pair<int, int>> got, want;
                for (auto &[ch, rowsM] : inv.lines) {
                    CHECK(rowsM.rows == 1);
                    got.insert({ch.c, ch.d});
                }
                want.insert({chi.c, chi.d});
                want.insert({chi.d, chi.c});
                CHECK(got == want);
            } else {
                CHECK(inv.lines.size() == 1);
                CHECK(inv.lines[0].first == chi);
                CHECK(inv.lines[0].second.rows == 2);
            }
            // phi is an H-eigenvector of character chi^s
            TorusChar cs = conj_char(chi);
            CHECK(mat_vec(R.gen[2 * F.q], phi) == vec_scale(F, F.exp(cs.c), phi));
            CHECK(mat_vec(R.gen[2 * F.q + 1], phi) == vec_scale(F, F.exp(cs.d), phi));
        }
    }
}

// matrices of the finite Hecke operators acting on a stable subspace, columns
// indexed by the subspace basis
static Mat op_matrix(const GammaRep &R, const std::vector<Vec> &basis,
                     const std::function<Vec(const Vec &)> &op)
{
    const FieldCtx &F = *R.F;
    int k = (int)basis.size();
    Mat rows = from_rows(F, R.dim, basis);
    Mat M(F, k, k);
    for (int j = 0; j < k; ++j) {
        auto c = coordinates_in(rows, op(basis[j]));
        REQUIRE(c.has_value());
        for (int i = 0; i < k; ++i) M.at(i, j) = (*c)[i];
    }
    return M;
}

TEST_CASE("finite hecke relations on the invariants of Ind_B")
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}}) {
        FieldCtx F = field_init(p, n);
        auto chars = all_chars(F);
        for (auto &chi : chars) {
            GammaRep R = induced_from_B(F, chi);
            UInvariants inv = u_invariants(R);
            std::vector<Vec> basis;
            for (int i = 0; i < inv.space.dim(); ++i) {
                Vec v(R.dim);
                for (int j = 0; j < R.dim; ++j) v[j] = inv.space.basis.at(i, j);
                basis.push_back(v);
            }
            int k = (int)basis.size();
            Mat T = op_matrix(R, basis, [&](const Vec &v) { return hecke_tns(R, v); });
            std::vector<Mat> E;
            for (auto &ch : chars)
                E.push_back(op_matrix(R, basis,
                                      [&](const Vec &v) { return e_chi_project(R, v, ch); }));
            // right action: v.(AB) means apply A then B, so matrices compose
            // as M_B * M_A on coordinates
            Mat sum(F, k, k);
            for (size_t i = 0; i < chars.size(); ++i) {
                sum = mat_add(sum, E[i]);
                CHECK(mat_mul(E[i], E[i]) == E[i]);
                for (size_t j = 0; j < chars.size(); ++j)
                    if (i != j) CHECK(is_zero_mat(mat_mul(E[i], E[j])));
                // T e_chi = e_{chi^s} T
                size_t is = 0;
                while (!(chars[is] == conj_char(chars[i]))) ++is;
                CHECK(mat_mul(E[i], T) == mat_mul(T, E[is]));
                // quadratic relation T^2 e_chi
                Mat t2e = mat_mul(E[i], mat_mul(T, T));
                if (is == i)
                    CHECK(t2e == mat_scale(F.neg(1), mat_mul(E[i], T)));
                else
                    CHECK(is_zero_mat(t2e));
            }
            CHECK(sum == identity(F, k));
        }
    }
}

TEST_CASE("hecke_tns rejects non-invariant input")
{
    FieldCtx F = field_init(3, 1);
    GammaRep R = induced_from_B(F, make_char(F, 1, 0));
    Vec v(R.dim, 0);
    v[0] = 1;
    bool invariant = true;
    for (int lam = 0; lam < F.q; ++lam)
        if (!(mat_vec(R.gen[lam], v) == v)) invariant = false;
    if (!invariant) CHECK(thrown_code([&] { hecke_tns(R, v); }) == "NotUInvariant");
}

TEST_CASE("carter_lusztig irreducibles: dimensions and special cases")
{
    for (int p : {2, 3, 5}) {
        FieldCtx F = field_init(p, 1);
        for (int a = 0; a < F.q - 1; ++a) {
            TorusChar chi = make_char(F, a, a);
            CLIrrep triv = carter_lusztig_irrep(F, {chi, true});
            CLIrrep st = carter_lusztig_irrep(F, {chi, false});
            CHECK(triv.rep.dim == 1);
            CHECK(st.rep.dim == F.q);
            CHECK(hom_space(triv.rep.gen, det_power_rep(F, a).gen).is_isomorphic);
            CHECK(triv.rep.dim + st.rep.dim == F.q + 1);
            CHECK(is_irreducible(st.rep));
        }
        for (auto &chi : all_chars(F)) {
            if (!char_regular(chi)) continue;
            CLIrrep r1 = carter_lusztig_irrep(F, {chi, false});
            CLIrrep r2 = carter_lusztig_irrep(F, {conj_char(chi), false});
            CHECK(r1.rep.dim + r2.rep.dim == F.q + 1); // q = p only
            CHECK(is_irreducible(r1.rep));
        }
    }
    // strict drop below q+1 exists at q = 4
    FieldCtx F = field_init(2, 2);
    bool strict = false;
    for (auto &chi : all_chars(F)) {
        if (!char_regular(chi)) continue;
        int d1 = carter_lusztig_irrep(F, {chi, false}).rep.dim;
        int d2 = carter_lusztig_irrep(F, {conj_char(chi), false}).rep.dim;
        CHECK(d1 + d2 <= F.q + 1);
        if (d1 + d2 < F.q + 1) strict = true;
    }
    CHECK(strict);
    CHECK(thrown_code([&] {
              carter_lusztig_irrep(F, {make_char(F, 1, 0), true});
          }) == "InvalidJ");
}

TEST_CASE("dictionary round trips and weight realization")
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}}) {
        FieldCtx F = field_init(p, n);
        auto labels = all_labels(F);
        CHECK((int)labels.size() == F.q * (F.q - 1));
        std::set<std::pair<int, std::vector<int>>> weights;
        for (auto &lab : labels) {
            WeightLabel w = dictionary(F, lab);
            CHECK(dictionary_back(F, w) == lab);
            weights.insert({w.a, w.r});
            IrrepLabel bb = bar_label(F, bar_label(F, lab));
            CHECK(bb == lab);
        }
        CHECK((int)weights.size() == F.q * (F.q - 1)); // injective
        // bar label in weight coordinates: (a, r) -> (a + r, p-1-r digits)
        for (auto &lab : labels) {
            WeightLabel w = dictionary(F, lab);
            WeightLabel wb = dictionary(F, bar_label(F, lab));
            int r = 0, scale = 1;
            for (int i = 0; i < F.n; ++i, scale *= F.p) r += w.r[i] * scale;
            int m = F.q - 1;
            int expect_a = ((w.a + r) % m + m) % m;
            if (expect_a == 0) expect_a = m;
            CHECK(wb.a == expect_a);
            for (int i = 0; i < F.n; ++i) CHECK(wb.r[i] == F.p - 1 - w.r[i]);
        }
    }
}

TEST_CASE("carter_lusztig matches the weight module")
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        FieldCtx F = field_init(p, n);
        for (auto &lab : all_labels(F)) {
            WeightLabel w = dictionary(F, lab);
            CLIrrep rho = carter_lusztig_irrep(F, lab);
            GammaRep V = build_v_tuple(F, w.r, w.a);
            CHECK(rho.rep.dim == V.dim);
            HomSpace H = hom_space(rho.rep.gen, V.gen);
            CHECK(H.is_isomorphic);
            CHECK((int)H.basis.size() == 1); // Schur
        }
    }
}

TEST_CASE("u_invariants of weight modules")
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 2}, {2, 2}}) {
        FieldCtx F = field_init(p, n);
        Rng rng(59);
        for (int t = 0; t < 6; ++t) {
            std::vector<int> r(F.n);
            for (auto &x : r) x = rng.below(F.p);
            int a = rng.below(F.q - 1);
            GammaRep V = build_v_tuple(F, r, a);
            UInvariants inv = u_invariants(V);
            CHECK(inv.space.dim() == 1);
            int rint = 0, scale = 1;
            for (int i = 0; i < F.n; ++i, scale *= F.p) rint += r[i] * scale;
            CHECK(inv.lines.size() == 1);
            CHECK(inv.lines[0].first == make_char(F, a + rint, a));
        }
    }
}

TEST_CASE("is_irreducible flags proper submodules")
{
    FieldCtx F = field_init(3, 1);
    CHECK_FALSE(is_irreducible(induced_from_B(F, make_char(F, 0, 0))));
    CHECK_FALSE(is_irreducible(induced_from_B(F, make_char(F, 1, 0))));
    CHECK(is_irreducible(symmetric_power_rep(F, 1)));
    CHECK(is_irreducible(trivial_rep(F)));
    SubRep zero = generated_subrep(symmetric_power_rep(F, 1), {Vec{0, 0}});
    CHECK(zero.rep.dim == 0);
    CHECK(thrown_code([&] { is_irreducible(zero.rep); }) == "ZeroRep");
}

TEST_CASE("e_chi projector properties on random vectors")
{
    for (auto [p, n] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 2}}) {
        FieldCtx F = field_init(p, n);
        Rng rng(61);
        GammaRep R = induced_from_B(F, make_char(F, 1, 0));
        for (int t = 0; t < 5; ++t) {
            Vec v(R.dim);
            for (auto &x : v) x = rng.below(F.q);
            Vec acc(R.dim, 0);
            for (auto &chi : all_chars(F)) {
                Vec e = e_chi_project(R, v, chi);
                CHECK(e_chi_project(R, e, chi) == e);
                // image lies in the chi-eigenspace of the torus generators
                CHECK(mat_vec(R.gen[2 * F.q], e) == vec_scale(F, F.exp(chi.c), e));
                CHECK(mat_vec(R.gen[2 * F.q + 1], e) == vec_scale(F, F.exp(chi.d), e));
                acc = vec_add(F, acc, e);
            }
            CHECK(acc == v);
        }
    }
}
