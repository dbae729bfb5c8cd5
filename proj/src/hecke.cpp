#include "modp/hecke.hpp"

#include <algorithm>

#include "modp/error.hpp"

namespace modp {

static Mat zero_mat(const FieldCtx &F, int n) { return Mat(F, n, n); }

Mat HKModule::e_mat(const TorusChar &chi) const
{
    auto it = e.find(chi);
    return it == e.end() ? zero_mat(*F, dim) : it->second;
}

Mat HModule::e_mat(const TorusChar &chi) const
{
    auto it = e.find(chi);
    return it == e.end() ? zero_mat(*F, dim) : it->second;
}

std::vector<Mat> HKModule::gens() const
{
    std::vector<Mat> out{Tns};
    for (auto &chi : all_chars(*F)) out.push_back(e_mat(chi));
    return out;
}

std::vector<Mat> HModule::gens() const
{
    std::vector<Mat> out{Tns, TPi, TPiInv};
    for (auto &chi : all_chars(*F)) out.push_back(e_mat(chi));
    return out;
}

CharOrbit make_orbit(const TorusChar &chi)
{
    TorusChar cs = conj_char(chi);
    CharOrbit g;
    g.lo = std::min(chi, cs);
    g.hi = std::max(chi, cs);
    g.regular = char_regular(chi);
    return g;
}

std::vector<CharOrbit> all_orbits(const FieldCtx &F)
{
    std::vector<CharOrbit> out;
    for (auto &chi : all_chars(F)) {
        CharOrbit g = make_orbit(chi);
        if (g.lo == chi) out.push_back(g);
    }
    return out;
}

HKModule make_M_chiJ(const FieldCtx &F, const TorusChar &chi, bool J_full)
{
    require(!(J_full && char_regular(chi)), "InvalidJ",
            "J = S requires chi = chi^s");
    HKModule M;
    M.F = &F;
    M.dim = 1;
    M.Tns = Mat(F, 1, 1);
    if (!char_regular(chi) && !J_full) M.Tns.at(0, 0) = F.neg(1);
    Mat one(F, 1, 1);
    one.at(0, 0) = 1;
    M.e[chi] = one;
    return M;
}

HModule make_M_gamma(const FieldCtx &F, const CharOrbit &g, int lambda)
{
    require(lambda != 0, "ZeroLambda", "lambda must be invertible");
    HModule M;
    M.F = &F;
    M.dim = 2;
    M.Tns = Mat(F, 2, 2);
    M.TPi = Mat(F, 2, 2);
    M.TPi.at(0, 1) = 1;
    M.TPi.at(1, 0) = lambda;
    M.TPiInv = *inverse(M.TPi);
    if (g.regular) {
        Mat e1(F, 2, 2), e2(F, 2, 2);
        e1.at(0, 0) = 1;
        e2.at(1, 1) = 1;
        M.e[g.lo] = e1;
        M.e[g.hi] = e2;
    } else {
        M.Tns.at(0, 0) = F.neg(1);
        M.e[g.lo] = identity(F, 2);
    }
    return M;
}

HModule make_L_gamma(const FieldCtx &F, const CharOrbit &g, int lambda)
{
    require(g.regular, "IwahoriOrbit", "L_gamma requires chi != chi^s");
    require(lambda != 0, "ZeroLambda", "lambda must be invertible");
    // basis: images of e_chi, e_chi TPi, e_chi Tns, e_chi Tns TPi
    HModule M;
    M.F = &F;
    M.dim = 4;
    M.Tns = Mat(F, 4, 4);
    M.Tns.at(0, 2) = 1;
    M.Tns.at(1, 3) = 1;
    M.TPi = Mat(F, 4, 4);
    M.TPi.at(0, 1) = 1;
    M.TPi.at(1, 0) = lambda;
    M.TPi.at(2, 3) = 1;
    M.TPi.at(3, 2) = lambda;
    M.TPiInv = *inverse(M.TPi);
    Mat e1(F, 4, 4), e2(F, 4, 4);
    e1.at(0, 0) = e1.at(3, 3) = 1;
    e2.at(1, 1) = e2.at(2, 2) = 1;
    M.e[g.lo] = e1;
    M.e[g.hi] = e2;
    return M;
}

namespace {

struct AuditBuilder {
    RelationAudit audit;
    void add(const std::string &name, bool ok)
    {
        audit.items.push_back({name, ok});
        if (!ok) audit.all_pass = false;
    }
};

void audit_idempotents(AuditBuilder &ab, const FieldCtx &F, int dim,
                       const std::vector<Mat> &E)
{
    bool idem = true, orth = true;
    Mat sum(F, dim, dim);
    for (size_t i = 0; i < E.size(); ++i) {
        if (!(mat_mul(E[i], E[i]) == E[i])) idem = false;
        for (size_t j = 0; j < E.size(); ++j)
            if (i != j && !is_zero_mat(mat_mul(E[i], E[j]))) orth = false;
        sum = mat_add(sum, E[i]);
    }
    ab.add("idempotency", idem);
    ab.add("orthogonality", orth);
    ab.add("completeness", sum == identity(F, dim));
}

void audit_tns(AuditBuilder &ab, const FieldCtx &F, const Mat &Tns,
               const std::vector<TorusChar> &chars, const std::vector<Mat> &E,
               const std::vector<int> &conj_idx)
{
    bool conj = true, quad = true;
    Mat T2 = mat_mul(Tns, Tns);
    for (size_t i = 0; i < chars.size(); ++i) {
        if (!(mat_mul(Tns, E[i]) == mat_mul(E[conj_idx[i]], Tns))) conj = false;
        Mat lhs = mat_mul(T2, E[i]);
        if ((size_t)conj_idx[i] == i) {
            if (!(lhs == mat_scale(F.neg(1), mat_mul(Tns, E[i])))) quad = false;
        } else if (!is_zero_mat(lhs)) {
            quad = false;
        }
    }
    ab.add("tns-conjugation", conj);
    ab.add("quadratic", quad);
}

std::vector<int> conj_indices(const std::vector<TorusChar> &chars)
{
    std::vector<int> idx(chars.size());
    for (size_t i = 0; i < chars.size(); ++i) {
        TorusChar cs = conj_char(chars[i]);
        idx[i] = (int)(std::find(chars.begin(), chars.end(), cs) - chars.begin());
    }
    return idx;
}

} // namespace

bool RelationAudit::passed(const std::string &name) const
{
    for (auto &[n, ok] : items)
        if (n == name) return ok;
    return false;
}

RelationAudit check_relations(const HModule &M)
{
    const FieldCtx &F = *M.F;
    auto chars = all_chars(F);
    auto cidx = conj_indices(chars);
    std::vector<Mat> E;
    for (auto &chi : chars) E.push_back(M.e_mat(chi));

    AuditBuilder ab;
    audit_idempotents(ab, F, M.dim, E);
    audit_tns(ab, F, M.Tns, chars, E, cidx);
    bool pconj = true;
    for (size_t i = 0; i < chars.size(); ++i)
        if (!(mat_mul(M.TPi, E[i]) == mat_mul(E[cidx[i]], M.TPi))) pconj = false;
    ab.add("tpi-conjugation", pconj);
    Mat id = identity(F, M.dim);
    ab.add("tpi-invertible",
           mat_mul(M.TPi, M.TPiInv) == id && mat_mul(M.TPiInv, M.TPi) == id);
    Mat P2 = mat_mul(M.TPi, M.TPi);
    bool central = mat_mul(P2, M.Tns) == mat_mul(M.Tns, P2);
    for (auto &Ei : E)
        if (!(mat_mul(P2, Ei) == mat_mul(Ei, P2))) central = false;
    ab.add("tpi-square-central", central);
    return ab.audit;
}

RelationAudit check_relations_hk(const HKModule &M)
{
    const FieldCtx &F = *M.F;
    auto chars = all_chars(F);
    auto cidx = conj_indices(chars);
    std::vector<Mat> E;
    for (auto &chi : chars) E.push_back(M.e_mat(chi));
    AuditBuilder ab;
    audit_idempotents(ab, F, M.dim, E);
    audit_tns(ab, F, M.Tns, chars, E, cidx);
    return ab.audit;
}

HKModule forget_to_HK(const HModule &M)
{
    HKModule K;
    K.F = M.F;
    K.dim = M.dim;
    K.Tns = M.Tns;
    K.e = M.e;
    return K;
}

namespace {

std::string char_str(const TorusChar &chi)
{
    return std::to_string(chi.c) + "," + std::to_string(chi.d);
}

Vec row_of(const Mat &M, int i)
{
    Vec v(M.cols);
    for (int j = 0; j < M.cols; ++j) v[j] = M.at(i, j);
    return v;
}

HKSummand line_summand(const FieldCtx &F, const TorusChar &chi, bool J_full,
                       const Vec &v)
{
    HKSummand s;
    s.mod = make_M_chiJ(F, chi, J_full);
    s.embed = from_rows(F, (int)v.size(), {v});
    s.tag = "M(" + char_str(chi) + (J_full ? ";S)" : ";-)");
    return s;
}

// two dimensional block on (x, xT): e-characters chi then chi^s, T sends the
// first basis vector to the second and kills it
HKSummand ind_block(const FieldCtx &F, const TorusChar &chi, const Vec &x,
                    const Vec &xt)
{
    HKSummand s;
    s.mod.F = &F;
    s.mod.dim = 2;
    s.mod.Tns = Mat(F, 2, 2);
    s.mod.Tns.at(0, 1) = 1;
    Mat e1(F, 2, 2), e2(F, 2, 2);
    e1.at(0, 0) = 1;
    e2.at(1, 1) = 1;
    s.mod.e[chi] = e1;
    s.mod.e[conj_char(chi)] = e2;
    s.embed = from_rows(F, (int)x.size(), {x, xt});
    s.tag = "ind(" + char_str(chi) + ")";
    return s;
}

} // namespace

std::vector<HKSummand> restrict_to_HK(const HModule &M)
{
    const FieldCtx &F = *M.F;
    std::vector<HKSummand> out;
    auto act = [&](const Vec &v, const Mat &A) { return vec_mat(v, A); };

    for (auto &orbit : all_orbits(F)) {
        Subspace Ulo = span_rows(M.e_mat(orbit.lo));
        if (!orbit.regular) {
            // vT^2 = -vT on this block: split into ker T and ker(T + 1)
            SpinBasis fixed(F, M.dim), anti(F, M.dim);
            for (int i = 0; i < Ulo.dim(); ++i) {
                Vec v = row_of(Ulo.basis, i);
                Vec vt = act(v, M.Tns);
                fixed.add(vec_add(F, v, vt));
                anti.add(vt);
            }
            require(fixed.dim() + anti.dim() == Ulo.dim(), "DecompositionFailure",
                    "self-dual block did not split");
            for (auto &v : fixed.ech) out.push_back(line_summand(F, orbit.lo, true, v));
            for (auto &v : anti.ech) out.push_back(line_summand(F, orbit.lo, false, v));
            continue;
        }
        Subspace Uhi = span_rows(M.e_mat(orbit.hi));
        // T swaps the two character spaces and squares to zero; peel off
        // 2-dim blocks from vectors not killed by T, then leaf lines
        auto side = [&](const Subspace &U, const Subspace &V, const TorusChar &chi) {
            // kernel of T restricted to U, in coefficient space
            Mat UT = mat_mul(U.basis, M.Tns);
            Mat coeffs = kernel(transpose(UT));
            SpinBasis kerT(F, M.dim);
            std::vector<Vec> kerT_rows;
            for (int i = 0; i < coeffs.rows; ++i) {
                Vec v(M.dim, 0);
                for (int k = 0; k < U.dim(); ++k)
                    v = vec_add(F, v, vec_scale(F, coeffs.at(i, k), row_of(U.basis, k)));
                kerT.add(v);
                kerT_rows.push_back(v);
            }
            // blocks from a complement of ker T
            SpinBasis ext = kerT;
            for (int i = 0; i < U.dim(); ++i) {
                Vec v = row_of(U.basis, i);
                if (ext.add(v)) out.push_back(ind_block(F, chi, v, act(v, M.Tns)));
            }
            // leaf lines: complement of T(V) inside ker T
            SpinBasis imgV(F, M.dim);
            for (int i = 0; i < V.dim(); ++i) imgV.add(act(row_of(V.basis, i), M.Tns));
            SpinBasis ext2 = imgV;
            for (auto &v : kerT_rows)
                if (ext2.add(v)) out.push_back(line_summand(F, chi, false, v));
        };
        side(Ulo, Uhi, orbit.lo);
        side(Uhi, Ulo, orbit.hi);
    }

    // audit: summand bases fill the space and reproduce the action
    std::vector<Vec> all;
    for (auto &s : out) {
        for (int i = 0; i < s.embed.rows; ++i) all.push_back(row_of(s.embed, i));
        require(mat_mul(s.embed, M.Tns) == mat_mul(s.mod.Tns, s.embed),
                "DecompositionFailure", "summand not T-stable");
        for (auto &chi : all_chars(F))
            require(mat_mul(s.embed, M.e_mat(chi)) == mat_mul(s.mod.e_mat(chi), s.embed),
                    "DecompositionFailure", "summand not e-stable");
    }
    require(mat_rank(from_rows(F, M.dim, all)) == M.dim && (int)all.size() == M.dim,
            "DecompositionFailure", "summands do not fill the module");
    return out;
}

namespace {

std::vector<Mat> transposed(const std::vector<Mat> &gens)
{
    std::vector<Mat> out;
    for (auto &g : gens) out.push_back(transpose(g));
    return out;
}

} // namespace

std::optional<Mat> module_iso(const HModule &A, const HModule &B, uint64_t seed)
{
    require(A.F->p == B.F->p && A.F->q == B.F->q, "FieldMismatch",
            "modules over different fields");
    HomSpace H = hom_space(transposed(A.gens()), transposed(B.gens()), seed);
    if (!H.is_isomorphic) return std::nullopt;
    return transpose(H.witness);
}

std::optional<Mat> module_iso_hk(const HKModule &A, const HKModule &B, uint64_t seed)
{
    require(A.F->p == B.F->p && A.F->q == B.F->q, "FieldMismatch",
            "modules over different fields");
    HomSpace H = hom_space(transposed(A.gens()), transposed(B.gens()), seed);
    if (!H.is_isomorphic) return std::nullopt;
    return transpose(H.witness);
}

HModule twist_unramified(const HModule &M, int xi)
{
    require(xi != 0, "ZeroXi", "xi must be invertible");
    const FieldCtx &F = *M.F;
    HModule T = M;
    T.TPi = mat_scale(F.inv(xi), M.TPi);
    T.TPiInv = mat_scale(xi, M.TPiInv);
    return T;
}

namespace {

// nonzero e-support of a module
std::vector<TorusChar> e_support(const HModule &M)
{
    std::vector<TorusChar> out;
    for (auto &[chi, E] : M.e)
        if (!is_zero_mat(E)) out.push_back(chi);
    return out;
}

std::optional<int> scalar_of(const Mat &A)
{
    const FieldCtx &F = *A.F;
    int lam = A.at(0, 0);
    if (!(A == mat_scale(lam, identity(F, A.rows)))) return std::nullopt;
    return lam;
}

// projective representatives inside a row-space
std::vector<Vec> projective_points(const Subspace &U)
{
    const FieldCtx &F = *U.F;
    int k = U.dim();
    std::vector<Vec> out;
    std::vector<int> c(k, 0);
    while (true) {
        int lead = -1;
        for (int i = 0; i < k; ++i)
            if (c[i]) lead = i;
        if (lead >= 0 && c[lead] == 1) {
            Vec v(U.ambient, 0);
            for (int i = 0; i < k; ++i)
                if (c[i])
                    v = vec_add(F, v, vec_scale(F, c[i], row_of(U.basis, i)));
            out.push_back(v);
        }
        int i = 0;
        while (i < k && c[i] == F.q - 1) c[i++] = 0;
        if (i == k) break;
        ++c[i];
    }
    return out;
}

std::optional<HModule> submodule_on(const HModule &M, const std::vector<Vec> &rows)
{
    const FieldCtx &F = *M.F;
    Mat basis = from_rows(F, M.dim, rows);
    if (mat_rank(basis) != (int)rows.size()) return std::nullopt;
    auto restrict_gen = [&](const Mat &A) -> std::optional<Mat> {
        Mat R(F, (int)rows.size(), (int)rows.size());
        for (size_t i = 0; i < rows.size(); ++i) {
            auto c = coordinates_in(basis, vec_mat(rows[i], A));
            if (!c) return std::nullopt;
            for (size_t j = 0; j < rows.size(); ++j) R.at((int)i, (int)j) = (*c)[j];
        }
        return R;
    };
    HModule S;
    S.F = &F;
    S.dim = (int)rows.size();
    auto t = restrict_gen(M.Tns), pi = restrict_gen(M.TPi), pv = restrict_gen(M.TPiInv);
    if (!t || !pi || !pv) return std::nullopt;
    S.Tns = *t;
    S.TPi = *pi;
    S.TPiInv = *pv;
    for (auto &[chi, E] : M.e) {
        auto r = restrict_gen(E);
        if (!r) return std::nullopt;
        if (!is_zero_mat(*r)) S.e[chi] = *r;
    }
    return S;
}

} // namespace

ClassifyTag classify(const HModule &M)
{
    const FieldCtx &F = *M.F;
    ClassifyTag tag;
    tag.kind = "other";
    auto supp = e_support(M);

    if (M.dim == 1) {
        bool trivial_char = supp.size() == 1 && supp[0] == make_char(F, 0, 0) &&
                            M.e_mat(supp[0]).at(0, 0) == 1;
        if (trivial_char && M.Tns.at(0, 0) == 0 && M.TPi.at(0, 0) == 1)
            tag.kind = "trivial-type";
        else
            tag.kind = "HK-character";
        return tag;
    }

    auto lam = scalar_of(mat_mul(M.TPi, M.TPi));
    if (!lam || *lam == 0 || supp.empty()) return tag;
    CharOrbit orbit = make_orbit(supp[0]);
    for (auto &chi : supp)
        if (!(make_orbit(chi) == orbit)) return tag;

    if (M.dim == 2) {
        if (module_iso(M, make_M_gamma(F, orbit, *lam))) {
            tag.kind = "supersingular";
            tag.orbit = orbit;
            tag.lambda = *lam;
        }
        return tag;
    }
    if (M.dim == 4 && orbit.regular) {
        if (!module_iso(M, make_L_gamma(F, orbit, *lam))) return tag;
        tag.kind = "L";
        tag.orbit = orbit;
        tag.lambda = *lam;
        // locate a supersingular submodule spanned by two e-eigenlines
        auto lines_lo = projective_points(span_rows(M.e_mat(orbit.lo)));
        auto lines_hi = projective_points(span_rows(M.e_mat(orbit.hi)));
        for (auto &x : lines_lo) {
            for (auto &y : lines_hi) {
                auto S = submodule_on(M, {x, y});
                if (!S) continue;
                ClassifyTag sub = classify(*S);
                if (sub.kind == "supersingular") {
                    tag.sub_embed = from_rows(F, M.dim, {x, y});
                    return tag;
                }
            }
        }
    }
    return tag;
}

}
