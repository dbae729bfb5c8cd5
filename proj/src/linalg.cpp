#include "modp/linalg.hpp"

#include <algorithm>

#include "modp/rng.hpp"

namespace modp {

Mat identity(const FieldCtx &F, int n)
{
    Mat I(F, n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

Mat mat_mul(const Mat &A, const Mat &B)
{
    require(A.cols == B.rows, "AmbientMismatch", "matrix product shape");
    const FieldCtx &F = *A.F;
    Mat C(F, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            int aik = A.at(i, k);
            if (!aik) continue;
            for (int j = 0; j < B.cols; ++j) {
                int b = B.at(k, j);
                if (!b) continue;
                C.at(i, j) = F.add(C.at(i, j), F.mul(aik, b));
            }
        }
    return C;
}

Mat mat_add(const Mat &A, const Mat &B)
{
    require(A.rows == B.rows && A.cols == B.cols, "AmbientMismatch", "matrix sum shape");
    Mat C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.F->add(A.a[i], B.a[i]);
    return C;
}

Mat mat_sub(const Mat &A, const Mat &B)
{
    require(A.rows == B.rows && A.cols == B.cols, "AmbientMismatch", "matrix diff shape");
    Mat C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.F->sub(A.a[i], B.a[i]);
    return C;
}

Mat mat_scale(int c, const Mat &A)
{
    Mat C = A;
    for (auto &x : C.a) x = A.F->mul(c, x);
    return C;
}

Mat mat_pow(const Mat &A, long long e)
{
    Mat r = identity(*A.F, A.rows), b = A;
    while (e) {
        if (e & 1) r = mat_mul(r, b);
        b = mat_mul(b, b);
        e >>= 1;
    }
    return r;
}

Mat transpose(const Mat &A)
{
    Mat T(*A.F, A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

Vec mat_vec(const Mat &A, const Vec &v)
{
    require((int)v.size() == A.cols, "AmbientMismatch", "mat_vec length");
    const FieldCtx &F = *A.F;
    Vec r(A.rows, 0);
    for (int i = 0; i < A.rows; ++i) {
        int s = 0;
        for (int j = 0; j < A.cols; ++j) {
            int a = A.at(i, j);
            if (a && v[j]) s = F.add(s, F.mul(a, v[j]));
        }
        r[i] = s;
    }
    return r;
}

Vec vec_mat(const Vec &v, const Mat &A)
{
    require((int)v.size() == A.rows, "AmbientMismatch", "vec_mat length");
    const FieldCtx &F = *A.F;
    Vec r(A.cols, 0);
    for (int i = 0; i < A.rows; ++i) {
        if (!v[i]) continue;
        for (int j = 0; j < A.cols; ++j) {
            int a = A.at(i, j);
            if (a) r[j] = F.add(r[j], F.mul(v[i], a));
        }
    }
    return r;
}

Vec vec_add(const FieldCtx &F, const Vec &a, const Vec &b)
{
    require(a.size() == b.size(), "AmbientMismatch", "vec_add length");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
    return r;
}

Vec vec_sub(const FieldCtx &F, const Vec &a, const Vec &b)
{
    require(a.size() == b.size(), "AmbientMismatch", "vec_sub length");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.sub(a[i], b[i]);
    return r;
}

Vec vec_scale(const FieldCtx &F, int c, const Vec &a)
{
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(c, a[i]);
    return r;
}

bool is_zero_vec(const Vec &v)
{
    for (int x : v)
        if (x) return false;
    return true;
}

bool is_zero_mat(const Mat &A)
{
    return is_zero_vec(A.a);
}

Mat from_rows(const FieldCtx &F, int cols, const std::vector<Vec> &rows)
{
    Mat M(F, (int)rows.size(), cols);
    for (int i = 0; i < (int)rows.size(); ++i) {
        require((int)rows[i].size() == cols, "AmbientMismatch", "from_rows length");
        for (int j = 0; j < cols; ++j) M.at(i, j) = rows[i][j];
    }
    return M;
}

RrefResult rref(const Mat &M)
{
    const FieldCtx &F = *M.F;
    RrefResult res;
    res.R = M;
    res.T = identity(F, M.rows);
    Mat &R = res.R;
    Mat &T = res.T;
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int piv = -1;
        for (int i = r; i < M.rows; ++i)
            if (R.at(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < M.cols; ++j) std::swap(R.at(piv, j), R.at(r, j));
            for (int j = 0; j < M.rows; ++j) std::swap(T.at(piv, j), T.at(r, j));
        }
        int s = F.inv(R.at(r, c));
        for (int j = 0; j < M.cols; ++j) R.at(r, j) = F.mul(s, R.at(r, j));
        for (int j = 0; j < M.rows; ++j) T.at(r, j) = F.mul(s, T.at(r, j));
        for (int i = 0; i < M.rows; ++i) {
            if (i == r) continue;
            int f = R.at(i, c);
            if (!f) continue;
            for (int j = 0; j < M.cols; ++j)
                R.at(i, j) = F.sub(R.at(i, j), F.mul(f, R.at(r, j)));
            for (int j = 0; j < M.rows; ++j)
                T.at(i, j) = F.sub(T.at(i, j), F.mul(f, T.at(r, j)));
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

std::optional<Vec> solve(const Mat &M, const Vec &b)
{
    require((int)b.size() == M.rows, "AmbientMismatch", "solve rhs length");
    RrefResult rr = rref(M);
    Vec tb = mat_vec(rr.T, b);
    for (int i = rr.rank; i < M.rows; ++i)
        if (tb[i]) return std::nullopt;
    Vec x(M.cols, 0);
    for (int i = 0; i < rr.rank; ++i) x[rr.pivots[i]] = tb[i];
    return x;
}

Mat kernel(const Mat &M)
{
    const FieldCtx &F = *M.F;
    RrefResult rr = rref(M);
    std::vector<bool> is_piv(M.cols, false);
    for (int c : rr.pivots) is_piv[c] = true;
    Mat K(F, M.cols - rr.rank, M.cols);
    int row = 0;
    for (int j = 0; j < M.cols; ++j) {
        if (is_piv[j]) continue;
        K.at(row, j) = 1;
        for (int i = 0; i < rr.rank; ++i)
            K.at(row, rr.pivots[i]) = F.neg(rr.R.at(i, j));
        ++row;
    }
    return K;
}

std::optional<Mat> inverse(const Mat &M)
{
    if (M.rows != M.cols) return std::nullopt;
    RrefResult rr = rref(M);
    if (rr.rank != M.rows) return std::nullopt;
    return rr.T;
}

int mat_rank(const Mat &M)
{
    return rref(M).rank;
}

Subspace span_rows(const Mat &rows)
{
    RrefResult rr = rref(rows);
    Subspace S;
    S.F = rows.F;
    S.ambient = rows.cols;
    S.basis = Mat(*rows.F, rr.rank, rows.cols);
    for (int i = 0; i < rr.rank; ++i)
        for (int j = 0; j < rows.cols; ++j) S.basis.at(i, j) = rr.R.at(i, j);
    return S;
}

Subspace span_vectors(const FieldCtx &F, int ambient, const std::vector<Vec> &vs)
{
    return span_rows(from_rows(F, ambient, vs));
}

static void check_same_ambient(const Subspace &A, const Subspace &B)
{
    require(A.ambient == B.ambient && A.F == B.F, "AmbientMismatch",
            "subspaces live in different ambient spaces");
}

Subspace sub_sum(const Subspace &A, const Subspace &B)
{
    check_same_ambient(A, B);
    Mat M(*A.F, A.dim() + B.dim(), A.ambient);
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.ambient; ++j) M.at(i, j) = A.basis.at(i, j);
    for (int i = 0; i < B.dim(); ++i)
        for (int j = 0; j < A.ambient; ++j) M.at(A.dim() + i, j) = B.basis.at(i, j);
    return span_rows(M);
}

Subspace sub_intersect(const Subspace &A, const Subspace &B)
{
    check_same_ambient(A, B);
    // (A cap B) = perp(perp(A) + perp(B)) for the standard dot pairing
    Subspace pa = span_rows(kernel(A.basis));
    Subspace pb = span_rows(kernel(B.basis));
    Subspace s = sub_sum(pa, pb);
    return span_rows(kernel(s.basis));
}

bool sub_contains_vector(const Subspace &A, const Vec &v)
{
    require((int)v.size() == A.ambient, "AmbientMismatch", "vector length");
    const FieldCtx &F = *A.F;
    Vec w = v;
    for (int i = 0; i < A.dim(); ++i) {
        // pivot of row i
        int pc = -1;
        for (int j = 0; j < A.ambient; ++j)
            if (A.basis.at(i, j)) {
                pc = j;
                break;
            }
        if (pc < 0 || !w[pc]) continue;
        int f = w[pc];
        for (int j = 0; j < A.ambient; ++j) w[j] = F.sub(w[j], F.mul(f, A.basis.at(i, j)));
    }
    return is_zero_vec(w);
}

bool sub_equals(const Subspace &A, const Subspace &B)
{
    check_same_ambient(A, B);
    return A.basis == B.basis;
}

bool sub_contains(const Subspace &A, const Subspace &B)
{
    check_same_ambient(A, B);
    for (int i = 0; i < B.dim(); ++i) {
        Vec v(B.ambient);
        for (int j = 0; j < B.ambient; ++j) v[j] = B.basis.at(i, j);
        if (!sub_contains_vector(A, v)) return false;
    }
    return true;
}

std::optional<Vec> coordinates_in(const Mat &basis_rows, const Vec &v)
{
    // x with x * basis_rows = v
    auto x = solve(transpose(basis_rows), v);
    return x;
}

bool SpinBasis::add(const Vec &v)
{
    require((int)v.size() == ambient, "AmbientMismatch", "SpinBasis vector length");
    const FieldCtx &Fx = *F;
    Vec w = v;
    Vec comb(orig.size() + 1, 0); // in terms of orig + the new candidate
    comb.back() = 1;
    for (size_t k = 0; k < ech.size(); ++k) {
        int f = w[piv[k]];
        if (!f) continue;
        for (int j = 0; j < ambient; ++j) w[j] = Fx.sub(w[j], Fx.mul(f, ech[k][j]));
        for (size_t j = 0; j < orig.size(); ++j)
            comb[j] = Fx.sub(comb[j], Fx.mul(f, coord[k][j]));
    }
    int pc = -1;
    for (int j = 0; j < ambient; ++j)
        if (w[j]) {
            pc = j;
            break;
        }
    if (pc < 0) return false;
    int s = Fx.inv(w[pc]);
    for (int j = 0; j < ambient; ++j) w[j] = Fx.mul(s, w[j]);
    for (auto &c : comb) c = Fx.mul(s, c);
    orig.push_back(v);
    ech.push_back(w);
    piv.push_back(pc);
    comb.resize(orig.size(), 0);
    coord.push_back(comb);
    // keep coord rows rectangular
    for (auto &row : coord) row.resize(orig.size(), 0);
    return true;
}

std::optional<Vec> SpinBasis::coords_of(const Vec &v) const
{
    const FieldCtx &Fx = *F;
    Vec w = v;
    Vec res(orig.size(), 0);
    for (size_t k = 0; k < ech.size(); ++k) {
        int f = w[piv[k]];
        if (!f) continue;
        for (int j = 0; j < ambient; ++j) w[j] = Fx.sub(w[j], Fx.mul(f, ech[k][j]));
        for (size_t j = 0; j < orig.size(); ++j)
            res[j] = Fx.add(res[j], Fx.mul(f, coord[k][j]));
    }
    if (!is_zero_vec(w)) return std::nullopt;
    return res;
}

bool SpinBasis::contains(const Vec &v) const
{
    const FieldCtx &Fx = *F;
    Vec w = v;
    for (size_t k = 0; k < ech.size(); ++k) {
        int f = w[piv[k]];
        if (!f) continue;
        for (int j = 0; j < ambient; ++j) w[j] = Fx.sub(w[j], Fx.mul(f, ech[k][j]));
    }
    return is_zero_vec(w);
}

HomSpace hom_space(const std::vector<Mat> &gensA, const std::vector<Mat> &gensB,
                   uint64_t seed)
{
    require(gensA.size() == gensB.size(), "GeneratorCountMismatch",
            "generator lists differ in length");
    require(!gensA.empty(), "GeneratorCountMismatch", "empty generator lists");
    const FieldCtx &F = *gensA[0].F;
    int da = gensA[0].rows, db = gensB[0].rows;
    for (auto &g : gensA)
        require(g.rows == da && g.cols == da, "AmbientMismatch", "A generators square");
    for (auto &g : gensB)
        require(g.rows == db && g.cols == db, "AmbientMismatch", "B generators square");

    // unknown Phi is db x da, flattened row-major; Phi A_g - B_g Phi = 0
    int nu = da * db;
    Mat C(F, (int)gensA.size() * nu, nu);
    int row = 0;
    for (size_t g = 0; g < gensA.size(); ++g) {
        const Mat &Ag = gensA[g], &Bg = gensB[g];
        for (int i = 0; i < db; ++i)
            for (int k = 0; k < da; ++k) {
                for (int j = 0; j < da; ++j)
                    C.at(row, i * da + j) = F.add(C.at(row, i * da + j), Ag.at(j, k));
                for (int j = 0; j < db; ++j)
                    C.at(row, j * da + k) =
                        F.sub(C.at(row, j * da + k), Bg.at(i, j));
                ++row;
            }
    }
    Mat K = kernel(C);
    HomSpace H;
    for (int r = 0; r < K.rows; ++r) {
        Mat Phi(F, db, da);
        for (int i = 0; i < db; ++i)
            for (int j = 0; j < da; ++j) Phi.at(i, j) = K.at(r, i * da + j);
        H.basis.push_back(Phi);
    }
    if (da != db || H.basis.empty()) return H;

    auto invertible = [&](const Mat &M) { return mat_rank(M) == da; };
    for (auto &Phi : H.basis)
        if (invertible(Phi)) {
            H.is_isomorphic = true;
            H.witness = Phi;
            return H;
        }
    for (size_t i = 0; i < H.basis.size(); ++i)
        for (size_t j = i + 1; j < H.basis.size(); ++j) {
            Mat M = mat_add(H.basis[i], H.basis[j]);
            if (invertible(M)) {
                H.is_isomorphic = true;
                H.witness = M;
                return H;
            }
        }
    Rng rng(seed);
    for (int t = 0; t < 64; ++t) {
        Mat M(F, da, da);
        for (auto &Phi : H.basis) {
            int c = rng.below(F.q);
            if (c) M = mat_add(M, mat_scale(c, Phi));
        }
        if (invertible(M)) {
            H.is_isomorphic = true;
            H.witness = M;
            return H;
        }
    }
    if ((int)H.basis.size() <= 3) {
        // exhaustive projective enumeration
        int d = (int)H.basis.size();
        long long total = 1;
        for (int i = 0; i < d; ++i) total *= F.q;
        for (long long m = 1; m < total; ++m) {
            long long t = m;
            Mat M(F, da, da);
            int lead = -1;
            for (int i = 0; i < d; ++i, t /= F.q) {
                int c = (int)(t % F.q);
                if (c && lead < 0) lead = c;
                if (c) M = mat_add(M, mat_scale(c, H.basis[i]));
            }
            if (lead != 1) continue; // one representative per line
            if (invertible(M)) {
                H.is_isomorphic = true;
                H.witness = M;
                return H;
            }
        }
    }
    return H;
}

}
