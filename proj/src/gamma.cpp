#include "modp/gamma.hpp"

#include <array>
#include <map>

#include "modp/binom.hpp"

namespace modp {

GammaElt gmul(const FieldCtx &F, const GammaElt &x, const GammaElt &y)
{
    return {F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)),
            F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
            F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)),
            F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
}

int gdet(const FieldCtx &F, const GammaElt &x)
{
    return F.sub(F.mul(x.a, x.d), F.mul(x.b, x.c));
}

GammaElt ginv(const FieldCtx &F, const GammaElt &x)
{
    int di = F.inv(gdet(F, x));
    return {F.mul(di, x.d), F.mul(di, F.neg(x.b)), F.mul(di, F.neg(x.c)),
            F.mul(di, x.a)};
}

GammaElt elt_u(int lam) { return {1, lam, 0, 1}; }
GammaElt elt_l(int lam) { return {1, 0, lam, 1}; }
GammaElt elt_diag(int a, int d) { return {a, 0, 0, d}; }
GammaElt elt_ns(const FieldCtx &F) { return {0, F.neg(1), 1, 0}; }

std::vector<GammaElt> all_gamma(const FieldCtx &F)
{
    std::vector<GammaElt> out;
    for (int a = 0; a < F.q; ++a)
        for (int b = 0; b < F.q; ++b)
            for (int c = 0; c < F.q; ++c)
                for (int d = 0; d < F.q; ++d) {
                    GammaElt g{a, b, c, d};
                    if (gdet(F, g) != 0) out.push_back(g);
                }
    return out;
}

long long gamma_order(const FieldCtx &F)
{
    long long q = F.q;
    return (q * q - 1) * (q * q - q);
}

TorusChar make_char(const FieldCtx &F, int c, int d)
{
    int m = F.q - 1;
    if (m < 1) m = 1;
    return {((c % m) + m) % m, ((d % m) + m) % m};
}

TorusChar conj_char(const TorusChar &x) { return {x.d, x.c}; }

bool char_regular(const TorusChar &x) { return x.c != x.d; }

int char_value(const FieldCtx &F, const TorusChar &x, int lam, int mu)
{
    return F.exp((long long)x.c * F.dlog(lam) + (long long)x.d * F.dlog(mu));
}

TorusChar char_alpha_shift(const FieldCtx &F, const TorusChar &x, int k)
{
    return make_char(F, x.c + k, x.d - k);
}

std::vector<TorusChar> all_chars(const FieldCtx &F)
{
    std::vector<TorusChar> out;
    int m = F.q - 1 < 1 ? 1 : F.q - 1;
    for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) out.push_back({c, d});
    return out;
}

int gen_count(const FieldCtx &F) { return 2 * F.q + 2; }

GammaElt gen_elt(const FieldCtx &F, int slot)
{
    if (slot < F.q) return elt_u(slot);
    if (slot < 2 * F.q) return elt_l(slot - F.q);
    if (slot == 2 * F.q) return elt_diag(F.g, 1);
    return elt_diag(1, F.g);
}

std::vector<int> word_for(const FieldCtx &F, const GammaElt &g)
{
    require(gdet(F, g) != 0, "SingularElement", "word of a singular matrix");
    std::vector<int> w;
    GammaElt x = g;
    if (x.a == 0) {
        // g = ns^{-1} (ns g); ns^{-1} = l(-1) u(1) l(-1)
        int m1 = F.neg(1);
        w.push_back(F.q + m1); // l(-1)
        w.push_back(1);        // u(1)
        w.push_back(F.q + m1);
        GammaElt ns = elt_ns(F);
        x = gmul(F, ns, x); // top-left becomes -c, nonzero
    }
    // x = l(c/a) u(b/d') diag(a, d') with d' = d - cb/a
    int m = F.div(x.c, x.a);
    int dp = F.sub(x.d, F.div(F.mul(x.c, x.b), x.a));
    int xx = F.div(x.b, dp);
    if (m) w.push_back(F.q + m);
    if (xx) w.push_back(xx);
    for (int i = 0; i < F.dlog(x.a); ++i) w.push_back(2 * F.q);
    for (int i = 0; i < F.dlog(dp); ++i) w.push_back(2 * F.q + 1);
    return w;
}

Mat rep_matrix(const GammaRep &R, const GammaElt &g)
{
    Mat M = identity(*R.F, R.dim);
    for (int s : word_for(*R.F, g)) M = mat_mul(M, R.gen[s]);
    return M;
}

Vec rep_apply(const GammaRep &R, const GammaElt &g, const Vec &v)
{
    auto w = word_for(*R.F, g);
    Vec r = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r = mat_vec(R.gen[*it], r);
    return r;
}

GammaRep trivial_rep(const FieldCtx &F)
{
    GammaRep R;
    R.F = &F;
    R.dim = 1;
    R.gen.assign(gen_count(F), identity(F, 1));
    return R;
}

GammaRep det_power_rep(const FieldCtx &F, int a)
{
    GammaRep R = trivial_rep(F);
    Mat s(F, 1, 1);
    s.at(0, 0) = F.exp(a); // det diag(g,1) = g
    R.gen[2 * F.q] = s;
    R.gen[2 * F.q + 1] = s;
    return R;
}

GammaRep symmetric_power_rep(const FieldCtx &F, int d)
{
    require(d >= 0 && d <= 2 * F.p - 2, "UnsupportedSize", "need 0 <= d <= 2p-2");
    GammaRep R;
    R.F = &F;
    R.dim = d + 1;
    R.gen.resize(gen_count(F));
    for (int lam = 0; lam < F.q; ++lam) {
        Mat U(F, d + 1, d + 1), L(F, d + 1, d + 1);
        for (int i = 0; i <= d; ++i) {
            // u(lam) m_i = sum_{k<=i} C(d-k, d-i) lam^{i-k} m_k
            for (int k = 0; k <= i; ++k)
                U.at(k, i) = F.mul(binom_mod_p(F, d - k, d - i), F.pow(lam, i - k));
            // l(lam) m_i = sum_{k>=i} C(k, i) lam^{k-i} m_k
            for (int k = i; k <= d; ++k)
                L.at(k, i) = F.mul(binom_mod_p(F, k, i), F.pow(lam, k - i));
        }
        R.gen[lam] = U;
        R.gen[F.q + lam] = L;
    }
    Mat T1(F, d + 1, d + 1), T2(F, d + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
        T1.at(i, i) = F.pow(F.g, d - i); // diag(g,1) m_i = g^{d-i} m_i
        T2.at(i, i) = F.pow(F.g, i);     // diag(1,g) m_i = g^i m_i
    }
    R.gen[2 * F.q] = T1;
    R.gen[2 * F.q + 1] = T2;
    R.labels.resize(d + 1);
    for (int i = 0; i <= d; ++i) R.labels[i] = "m" + std::to_string(i);
    return R;
}

GammaRep tensor_rep(const GammaRep &A, const GammaRep &B)
{
    const FieldCtx &F = *A.F;
    GammaRep R;
    R.F = &F;
    R.dim = A.dim * B.dim;
    R.gen.resize(gen_count(F));
    for (int s = 0; s < gen_count(F); ++s) {
        Mat M(F, R.dim, R.dim);
        const Mat &X = A.gen[s], &Y = B.gen[s];
        for (int i = 0; i < A.dim; ++i)
            for (int j = 0; j < A.dim; ++j) {
                int x = X.at(i, j);
                if (!x) continue;
                for (int k = 0; k < B.dim; ++k)
                    for (int l = 0; l < B.dim; ++l) {
                        int y = Y.at(k, l);
                        if (y)
                            M.at(i * B.dim + k, j * B.dim + l) = F.mul(x, y);
                    }
            }
        R.gen[s] = M;
    }
    if (!A.labels.empty() && !B.labels.empty()) {
        R.labels.resize(R.dim);
        for (int i = 0; i < A.dim; ++i)
            for (int k = 0; k < B.dim; ++k)
                R.labels[i * B.dim + k] = A.labels[i] + "*" + B.labels[k];
    }
    return R;
}

GammaRep frobenius_twist_rep(const GammaRep &R, int k)
{
    const FieldCtx &F = *R.F;
    GammaRep T = R;
    long long e = 1;
    for (int i = 0; i < k; ++i) e *= F.p;
    for (int lam = 0; lam < F.q; ++lam) {
        int fl = lam;
        for (int i = 0; i < k; ++i) fl = F.frob(fl);
        T.gen[lam] = R.gen[fl];
        T.gen[F.q + lam] = R.gen[F.q + fl];
    }
    T.gen[2 * F.q] = mat_pow(R.gen[2 * F.q], e);
    T.gen[2 * F.q + 1] = mat_pow(R.gen[2 * F.q + 1], e);
    return T;
}

GammaRep det_twist_rep(const GammaRep &R, int a)
{
    const FieldCtx &F = *R.F;
    GammaRep T = R;
    int s = F.exp(a);
    T.gen[2 * F.q] = mat_scale(s, R.gen[2 * F.q]);
    T.gen[2 * F.q + 1] = mat_scale(s, R.gen[2 * F.q + 1]);
    return T;
}

GammaRep direct_sum_rep(const GammaRep &A, const GammaRep &B)
{
    const FieldCtx &F = *A.F;
    GammaRep R;
    R.F = &F;
    R.dim = A.dim + B.dim;
    R.gen.resize(gen_count(F));
    for (int s = 0; s < gen_count(F); ++s) {
        Mat M(F, R.dim, R.dim);
        for (int i = 0; i < A.dim; ++i)
            for (int j = 0; j < A.dim; ++j) M.at(i, j) = A.gen[s].at(i, j);
        for (int i = 0; i < B.dim; ++i)
            for (int j = 0; j < B.dim; ++j)
                M.at(A.dim + i, A.dim + j) = B.gen[s].at(i, j);
        R.gen[s] = M;
    }
    return R;
}

GammaRep build_v_tuple(const FieldCtx &F, const std::vector<int> &r, int a)
{
    require((int)r.size() == F.n, "UnsupportedSize", "tuple length must be n");
    GammaRep R;
    for (int i = 0; i < F.n; ++i) {
        require(r[i] >= 0 && r[i] <= F.p - 1, "UnsupportedSize", "digit out of range");
        GammaRep Vi = frobenius_twist_rep(symmetric_power_rep(F, r[i]), i);
        R = (i == 0) ? Vi : tensor_rep(R, Vi);
    }
    return det_twist_rep(R, a);
}

namespace {

// canonical representative of the coset U g
GammaElt coset_rep_U(const FieldCtx &F, const GammaElt &g)
{
    if (g.c != 0) {
        int lam = F.neg(F.div(g.a, g.c)); // clears the top-left entry
        return gmul(F, elt_u(lam), g);
    }
    int lam = F.neg(F.div(g.b, g.d));
    return gmul(F, elt_u(lam), g);
}

// canonical representative of the coset B g
GammaElt coset_rep_B(const FieldCtx &F, const GammaElt &g)
{
    if (g.c != 0) {
        int e = F.div(g.d, g.c);
        // rows reduce to [[0,1],[1,e]]
        return {0, 1, 1, e};
    }
    return {1, 0, 0, 1};
}

struct CosetIndex {
    std::map<GammaElt, int> idx;
    std::vector<GammaElt> rep;
};

template <class Canon>
CosetIndex enumerate_cosets(const FieldCtx &F, Canon canon)
{
    CosetIndex out;
    for (auto &g : all_gamma(F)) {
        GammaElt r = canon(F, g);
        if (out.idx.emplace(r, (int)out.rep.size()).second) out.rep.push_back(r);
    }
    return out;
}

} // namespace

GammaRep induced_from_U(const FieldCtx &F, Vec *phi_out)
{
    CosetIndex ci = enumerate_cosets(F, coset_rep_U);
    int dim = (int)ci.rep.size();
    GammaRep R;
    R.F = &F;
    R.dim = dim;
    R.gen.resize(gen_count(F));
    for (int s = 0; s < gen_count(F); ++s) {
        GammaElt gi = ginv(F, gen_elt(F, s));
        Mat M(F, dim, dim);
        for (int i = 0; i < dim; ++i) {
            int t = ci.idx.at(coset_rep_U(F, gmul(F, ci.rep[i], gi)));
            M.at(t, i) = 1;
        }
        R.gen[s] = M;
    }
    if (phi_out) {
        phi_out->assign(dim, 0);
        (*phi_out)[ci.idx.at(coset_rep_U(F, GammaElt{}))] = 1;
    }
    return R;
}

GammaRep induced_from_B(const FieldCtx &F, const TorusChar &chi, Vec *phi_out)
{
    CosetIndex ci = enumerate_cosets(F, coset_rep_B);
    int dim = (int)ci.rep.size();
    // chi extended to B through the diagonal quotient
    auto chiB = [&](const GammaElt &b) {
        require(b.c == 0, "NotInStabilizer", "chi extension expects upper triangular");
        return char_value(F, chi, b.a, b.d);
    };
    GammaRep R;
    R.F = &F;
    R.dim = dim;
    R.gen.resize(gen_count(F));
    for (int s = 0; s < gen_count(F); ++s) {
        GammaElt G = gen_elt(F, s);
        Mat M(F, dim, dim);
        for (int j = 0; j < dim; ++j) {
            GammaElt t = gmul(F, ci.rep[j], G);
            int i = ci.idx.at(coset_rep_B(F, t));
            // (G f_i)(rep_j) = chi(rep_j G rep_i^{-1})
            M.at(j, i) = chiB(gmul(F, t, ginv(F, ci.rep[i])));
        }
        R.gen[s] = M;
    }
    if (phi_out) {
        phi_out->assign(dim, 0);
        (*phi_out)[ci.idx.at(coset_rep_B(F, GammaElt{}))] = 1;
    }
    return R;
}

UInvariants u_invariants(const GammaRep &R)
{
    const FieldCtx &F = *R.F;
    // stack (u(lam) - 1) for all lam != 0
    std::vector<Vec> rows;
    for (int lam = 1; lam < F.q; ++lam) {
        Mat D = mat_sub(R.gen[lam], identity(F, R.dim));
        for (int i = 0; i < R.dim; ++i) {
            Vec r(R.dim);
            for (int j = 0; j < R.dim; ++j) r[j] = D.at(i, j);
            rows.push_back(r);
        }
    }
    UInvariants out;
    if (rows.empty()) { // q = 2 has only u(0), u(1): loop above still runs for lam=1
        out.space = span_rows(identity(F, R.dim));
    } else {
        out.space = span_rows(kernel(from_rows(F, R.dim, rows)));
    }
    int k = out.space.dim();
    if (k == 0) return out;
    // restrict the torus generators to the invariant space
    auto restrict_gen = [&](const Mat &G) {
        Mat Mr(F, k, k);
        for (int i = 0; i < k; ++i) {
            Vec bi(R.dim);
            for (int j = 0; j < R.dim; ++j) bi[j] = out.space.basis.at(i, j);
            auto c = coordinates_in(out.space.basis, mat_vec(G, bi));
            require(c.has_value(), "NotInStabilizer", "invariants not torus stable");
            for (int j = 0; j < k; ++j) Mr.at(j, i) = (*c)[j];
        }
        return Mr;
    };
    Mat T1 = restrict_gen(R.gen[2 * F.q]);
    Mat T2 = restrict_gen(R.gen[2 * F.q + 1]);
    int m = F.q - 1 < 1 ? 1 : F.q - 1;
    int total = 0;
    for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
            Mat A = mat_sub(T1, mat_scale(F.exp(c), identity(F, k)));
            Mat B = mat_sub(T2, mat_scale(F.exp(d), identity(F, k)));
            Mat stacked(F, 2 * k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    stacked.at(i, j) = A.at(i, j);
                    stacked.at(k + i, j) = B.at(i, j);
                }
            Mat ker = kernel(stacked); // coordinates in the invariant basis
            if (ker.rows == 0) continue;
            Mat amb(F, ker.rows, R.dim);
            for (int i = 0; i < ker.rows; ++i) {
                Vec coords(k);
                for (int j = 0; j < k; ++j) coords[j] = ker.at(i, j);
                Vec v = vec_mat(coords, out.space.basis);
                for (int j = 0; j < R.dim; ++j) amb.at(i, j) = v[j];
            }
            out.lines.push_back({TorusChar{c, d}, amb});
            total += ker.rows;
        }
    require(total == k, "NotInStabilizer", "torus eigensplit incomplete");
    return out;
}

Vec hecke_tns(const GammaRep &R, const Vec &v)
{
    const FieldCtx &F = *R.F;
    for (int lam = 0; lam < F.q; ++lam)
        require(mat_vec(R.gen[lam], v) == v, "NotUInvariant",
                "hecke_tns input not U-invariant");
    Vec w = rep_apply(R, ginv(F, elt_ns(F)), v);
    Vec out(R.dim, 0);
    for (int lam = 0; lam < F.q; ++lam) out = vec_add(F, out, mat_vec(R.gen[lam], w));
    return out;
}

Vec e_chi_project(const GammaRep &R, const Vec &v, const TorusChar &chi)
{
    const FieldCtx &F = *R.F;
    int m = F.q - 1;
    Mat t1i = *inverse(R.gen[2 * F.q]);
    Mat t2i = *inverse(R.gen[2 * F.q + 1]);
    Vec out(R.dim, 0);
    Vec va = v;
    for (int al = 0; al < (m < 1 ? 1 : m); ++al) {
        Vec vb = va;
        for (int be = 0; be < (m < 1 ? 1 : m); ++be) {
            int coef = F.exp((long long)chi.c * al + (long long)chi.d * be);
            out = vec_add(F, out, vec_scale(F, coef, vb));
            vb = mat_vec(t2i, vb);
        }
        va = mat_vec(t1i, va);
    }
    int order = F.from_int((long long)(F.q - 1) * (F.q - 1));
    return vec_scale(F, F.inv(order), out);
}

SubRep generated_subrep(const GammaRep &R, const std::vector<Vec> &vectors)
{
    const FieldCtx &F = *R.F;
    SpinBasis sb(F, R.dim);
    std::vector<Vec> queue;
    for (auto &v : vectors)
        if (sb.add(v)) queue.push_back(v);
    for (size_t head = 0; head < queue.size(); ++head) {
        Vec cur = queue[head];
        for (int s = 0; s < gen_count(F); ++s) {
            Vec w = mat_vec(R.gen[s], cur);
            if (sb.add(w)) queue.push_back(w);
        }
    }
    int k = sb.dim();
    SubRep out;
    out.rep.F = &F;
    out.rep.dim = k;
    out.rep.gen.resize(gen_count(F));
    out.embed = from_rows(F, R.dim, sb.orig);
    for (int s = 0; s < gen_count(F); ++s) {
        Mat M(F, k, k);
        for (int j = 0; j < k; ++j) {
            auto c = sb.coords_of(mat_vec(R.gen[s], sb.orig[j]));
            require(c.has_value(), "NotInStabilizer", "subrep closure failure");
            for (int i = 0; i < k; ++i) M.at(i, j) = (*c)[i];
        }
        out.rep.gen[s] = M;
    }
    for (auto &v : vectors) {
        auto c = sb.coords_of(v);
        require(c.has_value(), "NotInStabilizer", "seed escaped its own span");
        out.seeds.push_back(*c);
    }
    return out;
}

bool is_irreducible(const GammaRep &R)
{
    const FieldCtx &F = *R.F;
    require(R.dim > 0, "ZeroRep", "zero representation");
    UInvariants inv = u_invariants(R);
    int k = inv.space.dim();
    require(k > 0, "ZeroRep", "no U-invariants in a nonzero representation");
    // every nonzero subrepresentation meets the invariants, so testing the
    // lines of the invariant space decides irreducibility
    long long total = 1;
    for (int i = 0; i < k; ++i) total *= F.q;
    for (long long m = 1; m < total; ++m) {
        long long t = m;
        Vec coords(k, 0);
        int lead = -1;
        for (int i = 0; i < k; ++i, t /= F.q) {
            coords[i] = (int)(t % F.q);
            if (coords[i] && lead < 0) lead = coords[i];
        }
        if (lead != 1) continue;
        Vec v = vec_mat(coords, inv.space.basis);
        if (generated_subrep(R, {v}).rep.dim < R.dim) return false;
    }
    return true;
}

WeightLabel dictionary(const FieldCtx &F, const IrrepLabel &lab)
{
    int m = F.q - 1;
    const TorusChar &chi = lab.chi;
    require(!lab.J_full || !char_regular(chi), "InvalidJ",
            "J = S needs chi = chi^s");
    WeightLabel w;
    w.a = ((chi.d % m) + m) % m;
    if (w.a == 0) w.a = m; // normalized to 1..q-1
    int r;
    if (!char_regular(chi)) {
        r = lab.J_full ? 0 : F.q - 1;
    } else {
        r = ((chi.c - chi.d) % m + m) % m; // in 1..q-2
    }
    w.r.resize(F.n);
    for (int i = 0; i < F.n; ++i, r /= F.p) w.r[i] = r % F.p;
    return w;
}

IrrepLabel dictionary_back(const FieldCtx &F, const WeightLabel &w)
{
    require((int)w.r.size() == F.n, "UnsupportedSize", "digit tuple length");
    require(w.a >= 1 && w.a <= F.q - 1, "UnsupportedSize", "det exponent range");
    int r = 0;
    for (int i = F.n - 1; i >= 0; --i) {
        require(w.r[i] >= 0 && w.r[i] <= F.p - 1, "UnsupportedSize", "digit range");
        r = r * F.p + w.r[i];
    }
    IrrepLabel lab;
    if (r == 0) {
        lab.chi = make_char(F, w.a, w.a);
        lab.J_full = true;
    } else if (r == F.q - 1) {
        lab.chi = make_char(F, w.a, w.a);
        lab.J_full = false;
    } else {
        lab.chi = make_char(F, w.a + r, w.a);
        lab.J_full = false;
    }
    return lab;
}

IrrepLabel bar_label(const FieldCtx &F, const IrrepLabel &lab)
{
    IrrepLabel out;
    out.chi = conj_char(lab.chi);
    if (char_regular(lab.chi))
        out.J_full = lab.J_full;
    else
        out.J_full = !lab.J_full;
    return out;
}

std::vector<IrrepLabel> all_labels(const FieldCtx &F)
{
    std::vector<IrrepLabel> out;
    for (auto &chi : all_chars(F)) {
        out.push_back({chi, false});
        if (!char_regular(chi)) out.push_back({chi, true});
    }
    return out;
}

CLIrrep carter_lusztig_irrep(const FieldCtx &F, const IrrepLabel &lab)
{
    const TorusChar &chi = lab.chi;
    require(!lab.J_full || !char_regular(chi), "InvalidJ", "J = S needs chi = chi^s");
    Vec phi;
    GammaRep amb = induced_from_B(F, conj_char(chi), &phi);
    Vec seed;
    if (lab.J_full)
        seed = vec_add(F, phi, hecke_tns(amb, phi));
    else
        seed = hecke_tns(amb, phi);
    SubRep sub = generated_subrep(amb, {seed});
    CLIrrep out;
    out.rep = sub.rep;
    out.generator = sub.seeds[0];
    out.embed = sub.embed;
    return out;
}

}
