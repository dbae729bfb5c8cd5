#include "modp/injective.hpp"

#include <algorithm>

#include "modp/binom.hpp"

namespace modp {

std::vector<int> a_coefficients(int p, int r)
{
    require(p >= 2 && r >= 0 && r <= p - 2, "DenominatorVanishes",
            "need 0 <= r <= p-2");
    auto mul = [&](int x, int y) { return (int)((long long)x * y % p); };
    auto inv = [&](int x) {
        require(x % p != 0, "DenominatorVanishes", "zero denominator factor");
        int acc = 1, e = p - 2;
        for (int b = x % p; e; e >>= 1, b = mul(b, b))
            if (e & 1) acc = mul(acc, b);
        return acc;
    };
    int top = p - 1 - r;
    std::vector<int> a(top + 1, 0);
    int a1 = 1;
    for (int j = 2; j <= p - r - 2; ++j) a1 = mul(a1, j);
    if (top >= 1) a[1] = a1;
    int num = 1, den = 1;
    for (int i = 1; i + 1 <= top; ++i) {
        num = mul(num, (r + i) % p);
        den = mul(den, (p - r - 1 - i) % p);
        int t = mul(num, inv(den));
        if (i % 2) t = (p - t) % p;
        a[i + 1] = (a[i] + mul(t, a1)) % p;
    }
    return a;
}

Mat divided_power(const FieldCtx &F, char op, int d, int k)
{
    require(op == 'e' || op == 'f', "UnsupportedSize", "operator must be e or f");
    require(d >= 0 && k >= 0, "UnsupportedSize", "bad divided power indices");
    Mat M(F, d + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
        if (op == 'f' && i + k <= d) M.at(i + k, i) = binom_mod_p(F, i + k, i);
        if (op == 'e' && i - k >= 0)
            M.at(i - k, i) = binom_mod_p(F, d - i + k, d - i);
    }
    return M;
}

Mat divided_power_pair(const FieldCtx &F, char op, int d1, int d2, int k)
{
    int n2 = d2 + 1, D = (d1 + 1) * n2;
    Mat M(F, D, D);
    for (int s = 0; s <= k; ++s) {
        Mat A = divided_power(F, op, d1, s);
        Mat B = divided_power(F, op, d2, k - s);
        for (int i = 0; i <= d1; ++i)
            for (int j = 0; j <= d1; ++j) {
                int x = A.at(i, j);
                if (!x) continue;
                for (int u = 0; u <= d2; ++u)
                    for (int v = 0; v <= d2; ++v) {
                        int y = B.at(u, v);
                        if (!y) continue;
                        int &c = M.at(i * n2 + u, j * n2 + v);
                        c = F.add(c, F.mul(x, y));
                    }
            }
    }
    return M;
}

RSpace build_R(const FieldCtx &F, int r)
{
    require(r >= 0 && r <= F.p - 1, "UnsupportedSize", "need 0 <= r <= p-1");
    int p = F.p;
    RSpace R;
    R.r = r;
    R.ambient = tensor_rep(symmetric_power_rep(F, p - 1 - r),
                           symmetric_power_rep(F, p - 1));
    int D = R.ambient.dim;
    R.e_count = (r == p - 1) ? p : 2 * p - 1 - r;
    std::vector<Vec> rows;
    std::vector<std::string> labels;
    for (int i = 0; i < R.e_count; ++i) {
        Vec E(D, 0);
        for (int k = 0; k <= p - 1 - r; ++k) {
            int l = i - k;
            if (l >= 0 && l <= p - 1) E[k * p + l] = 1;
        }
        rows.push_back(E);
        labels.push_back("E" + std::to_string(i));
    }
    if (r < p - 1) {
        R.a = a_coefficients(p, r);
        Vec Z(D, 0);
        for (int i = 0; i <= p - 1 - r; ++i) Z[i * p + (p - r - 1 - i)] = R.a[i];
        for (int k = 0; k <= r; ++k) {
            Vec v = k == 0 ? Z : mat_vec(divided_power_pair(F, 'f', p - 1 - r, p - 1, k), Z);
            rows.push_back(v);
            labels.push_back("Z" + std::to_string(k));
        }
    }
    R.basis = from_rows(F, D, rows);
    SpinBasis sb(F, D);
    for (auto &v : rows) require(sb.add(v), "NotStable", "dependent basis rows");
    R.rep.F = &F;
    R.rep.dim = (int)rows.size();
    R.rep.labels = labels;
    R.rep.gen.resize(gen_count(F));
    for (int s = 0; s < gen_count(F); ++s) {
        Mat M(F, R.rep.dim, R.rep.dim);
        for (int j = 0; j < R.rep.dim; ++j) {
            auto c = sb.coords_of(mat_vec(R.ambient.gen[s], rows[j]));
            require(c.has_value(), "NotStable", "generator leaves the carrier");
            for (int i = 0; i < R.rep.dim; ++i) M.at(i, j) = (*c)[i];
        }
        R.rep.gen[s] = M;
    }
    return R;
}

bool RTuple::in_sigma(const std::vector<int> &eps) const
{
    if ((int)eps.size() != (int)r.size()) return false;
    for (size_t i = 0; i < eps.size(); ++i) {
        if (eps[i] != 0 && eps[i] != 1) return false;
        if (eps[i] == 1 && r[i] == F->p - 1) return false;
    }
    return true;
}

int RTuple::b_index(const std::vector<int> &eps) const
{
    require(in_sigma(eps), "EpsilonOutOfSigma", "eps outside Sigma_r");
    int idx = 0;
    for (size_t i = 0; i < r.size(); ++i) {
        int bi = eps[i] ? 0 : F->p - 1 - r[i];
        idx = idx * comp_dim[i] + bi;
    }
    return idx;
}

Vec RTuple::b_vec(const std::vector<int> &eps) const
{
    Vec v(rep.dim, 0);
    v[b_index(eps)] = 1;
    return v;
}

TorusChar RTuple::b_char(const std::vector<int> &eps) const
{
    require(in_sigma(eps), "EpsilonOutOfSigma", "eps outside Sigma_r");
    long long dot = 0, pw = 1;
    for (size_t i = 0; i < r.size(); ++i) {
        dot += (long long)eps[i] * (F->p - 1 - r[i]) * pw;
        pw *= F->p;
    }
    long long A = det_twist;
    return make_char(*F, (int)((A + dot) % (F->q - 1)),
                     (int)((A - r_int - dot) % (F->q - 1)));
}

RTuple build_R_tuple(const FieldCtx &F, const std::vector<int> &r, int det_twist)
{
    require((int)r.size() == F.n, "UnsupportedSize", "tuple length must be n");
    RTuple T;
    T.F = &F;
    T.r = r;
    int m = F.q - 1;
    T.det_twist = ((det_twist % m) + m) % m;
    GammaRep rep;
    std::vector<std::string> labels;
    long long pw = 1;
    for (int i = 0; i < F.n; ++i) {
        RSpace c = build_R(F, r[i]);
        T.comp_dim.push_back(c.rep.dim);
        T.r_int += (long long)r[i] * pw;
        pw *= F.p;
        GammaRep ci = frobenius_twist_rep(c.rep, i);
        if (i == 0) {
            rep = ci;
            labels = ci.labels;
        } else {
            std::vector<std::string> nl;
            nl.reserve(labels.size() * ci.labels.size());
            for (auto &x : labels)
                for (auto &y : ci.labels) nl.push_back(x + "⊗" + y);
            rep = tensor_rep(rep, ci);
            labels = nl;
        }
    }
    T.rep = det_twist_rep(rep, T.det_twist);
    T.rep.labels = labels;
    T.delta.resize(F.n);
    for (int i = 0; i < F.n; ++i) T.delta[i] = r[i] != F.p - 1 ? 1 : 0;
    for (int mask = 0; mask < (1 << F.n); ++mask) {
        std::vector<int> eps(F.n);
        for (int i = 0; i < F.n; ++i) eps[i] = (mask >> i) & 1;
        if (!T.in_sigma(eps)) continue;
        T.sigma.push_back(eps);
        if (eps != T.delta && mask != 0) T.sigma_prime.push_back(eps);
    }
    return T;
}

TnsImage tns_on_socle_basis(const RTuple &R, const std::vector<int> &eps)
{
    const FieldCtx &F = *R.F;
    require(R.in_sigma(eps), "EpsilonOutOfSigma", "eps outside Sigma_r");
    TnsImage out;
    out.brute = hecke_tns(R.rep, R.b_vec(eps));
    out.closed.assign(R.rep.dim, 0);
    if (eps == R.delta) {
        std::vector<int> zero(R.r.size(), 0);
        if (R.r_int != 0) {
            // (-1)^{1+r} b_0
            int c = (R.r_int % 2) ? 1 : F.neg(1);
            out.closed[R.b_index(zero)] = c;
        } else {
            std::vector<int> one(R.r.size(), 1);
            out.closed[R.b_index(zero)] = F.neg(1);
            out.closed[R.b_index(one)] = F.neg(1);
        }
    }
    out.agree = out.brute == out.closed;
    return out;
}

Envelope identify_injective_envelope(const FieldCtx &F, const IrrepLabel &lab)
{
    TorusChar chi = make_char(F, lab.chi.c, lab.chi.d);
    require(!(lab.J_full && char_regular(chi)), "InvalidLabel",
            "J = S needs chi = chi^s");
    Envelope E;
    E.label = {chi, lab.J_full};
    WeightLabel w = dictionary(F, E.label);
    long long r_int = 0, pw = 1;
    for (int i = 0; i < F.n; ++i) {
        r_int += (long long)w.r[i] * pw;
        pw *= F.p;
    }
    E.space = build_R_tuple(F, w.r, (int)((w.a + r_int) % (F.q - 1)));
    if (lab.J_full) {
        E.joint = true;
        E.inj_dim = ((1LL << F.n) - 1) * F.q;
    } else if (!char_regular(chi)) {
        E.inj_dim = F.q;
    } else {
        int c = 0;
        for (int i = 0; i < F.n; ++i)
            if (w.r[i] != F.p - 1) ++c;
        E.inj_dim = (1LL << c) * F.q;
    }
    std::vector<int> zero(F.n, 0);
    SubRep S = generated_subrep(E.space.rep, {E.space.b_vec(zero)});
    CLIrrep ref = carter_lusztig_irrep(F, E.label);
    HomSpace H = hom_space(ref.rep.gen, S.rep.gen);
    require(H.is_isomorphic, "SocleMismatch", "socle does not match the label");
    E.socle_embed = mat_mul(transpose(H.witness), S.embed);
    return E;
}

namespace {

std::string eps_name(const std::vector<int> &eps, bool bar)
{
    std::string s = bar ? "bbar(" : "b(";
    for (int e : eps) s += char('0' + e);
    return s + ")";
}

std::vector<int> pair_of(const RTuple &T, const std::vector<int> &eps)
{
    std::vector<int> out(eps.size());
    for (size_t i = 0; i < eps.size(); ++i) out[i] = T.delta[i] - eps[i];
    return out;
}

struct BlockView {
    const RTuple *T = nullptr;
    int offset = 0;
    int pos(const std::vector<int> &eps) const
    {
        auto it = std::find(T->sigma.begin(), T->sigma.end(), eps);
        require(it != T->sigma.end(), "EpsilonOutOfSigma", "eps outside Sigma_r");
        return offset + (int)(it - T->sigma.begin());
    }
};

} // namespace

InjModule extend_to_full_hecke(const FieldCtx &F, const CharOrbit &gamma)
{
    InjModule out;
    out.orbit = make_orbit(gamma.lo);
    TorusChar chi = out.orbit.lo;

    std::vector<RTuple> blocks;
    if (!out.orbit.regular) {
        WeightLabel w = dictionary(F, {chi, true});
        blocks.push_back(build_R_tuple(F, w.r, w.a));
    } else {
        WeightLabel w = dictionary(F, {chi, false});
        long long r_int = 0, pw = 1;
        std::vector<int> rbar(F.n);
        for (int i = 0; i < F.n; ++i) {
            r_int += (long long)w.r[i] * pw;
            pw *= F.p;
            rbar[i] = F.p - 1 - w.r[i];
        }
        blocks.push_back(build_R_tuple(F, w.r, (int)((w.a + r_int) % (F.q - 1))));
        blocks.push_back(build_R_tuple(F, rbar, w.a));
    }

    std::vector<BlockView> view;
    int dim = 0;
    for (auto &B : blocks) {
        view.push_back({&B, dim});
        dim += (int)B.sigma.size();
    }

    HModule &M = out.mod;
    M.F = &F;
    M.dim = dim;
    M.Tns = Mat(F, dim, dim);
    M.TPi = Mat(F, dim, dim);
    out.labels.resize(dim);

    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        RTuple &B = blocks[bi];
        BlockView &V = view[bi];
        for (auto &eps : B.sigma) {
            int i = V.pos(eps);
            out.labels[i] = eps_name(eps, bi == 1);
            TorusChar psi = B.b_char(eps);
            auto it = M.e.find(psi);
            if (it == M.e.end()) it = M.e.emplace(psi, Mat(F, dim, dim)).first;
            it->second.at(i, i) = 1;
        }
        // T_ns kills every b_eps except b_delta
        std::vector<int> zero(F.n, 0);
        int pd = V.pos(B.delta), p0 = V.pos(zero);
        if (B.r_int != 0) {
            M.Tns.at(pd, p0) = (B.r_int % 2) ? 1 : F.neg(1);
        } else {
            std::vector<int> one(F.n, 1);
            M.Tns.at(pd, p0) = F.neg(1);
            M.Tns.at(pd, V.pos(one)) = F.neg(1);
        }
        // within-block pairing on Sigma'
        for (auto &eps : B.sigma_prime) M.TPi.at(V.pos(eps), V.pos(pair_of(B, eps))) = 1;
    }

    std::vector<int> zero(F.n, 0);
    if (!out.orbit.regular) {
        // b_0 <-> b_0 + b_1
        RTuple &B = blocks[0];
        std::vector<int> one(F.n, 1);
        int p0 = view[0].pos(zero), p1 = view[0].pos(one);
        M.TPi.at(p0, p0) = 1;
        M.TPi.at(p0, p1) = 1;
        M.TPi.at(p1, p1) = F.neg(1);

        Mat em(F, 2, dim);
        em.at(0, p0) = 1;
        em.at(1, p0) = 1;
        em.at(1, p1) = 1;
        out.summands.push_back({"M", out.orbit, em});
        for (auto &eps : B.sigma_prime) {
            auto mate = pair_of(B, eps);
            if (mate < eps) continue;
            Mat e2(F, 2, dim);
            e2.at(0, view[0].pos(eps)) = 1;
            e2.at(1, view[0].pos(mate)) = 1;
            out.summands.push_back({"M", make_orbit(B.b_char(eps)), e2});
        }
    } else {
        // b_0 <-> bbar_0 and b_delta <-> bbar_deltabar across the blocks
        int a0 = view[0].pos(zero), b0 = view[1].pos(zero);
        int ad = view[0].pos(blocks[0].delta), bd = view[1].pos(blocks[1].delta);
        M.TPi.at(a0, b0) = M.TPi.at(b0, a0) = 1;
        M.TPi.at(ad, bd) = M.TPi.at(bd, ad) = 1;

        Mat em(F, 4, dim);
        em.at(0, a0) = em.at(1, ad) = em.at(2, b0) = em.at(3, bd) = 1;
        out.summands.push_back({"L", out.orbit, em});
        for (size_t bi = 0; bi < blocks.size(); ++bi) {
            for (auto &eps : blocks[bi].sigma_prime) {
                auto mate = pair_of(blocks[bi], eps);
                if (mate < eps) continue;
                Mat e2(F, 2, dim);
                e2.at(0, view[bi].pos(eps)) = 1;
                e2.at(1, view[bi].pos(mate)) = 1;
                out.summands.push_back({"M", make_orbit(blocks[bi].b_char(eps)), e2});
            }
        }
    }

    auto inv = inverse(M.TPi);
    require(inv.has_value(), "NotStable", "T_Pi pairing is singular");
    M.TPiInv = *inv;
    return out;
}

}
