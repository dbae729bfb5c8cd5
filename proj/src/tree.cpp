#include "modp/tree.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <sstream>

namespace modp {

namespace {

// window convention: exact series store exactly the nonzero support; inexact
// series store every known coefficient, c.size() == prec - v after
// normalization
LaurentSeries norm(const FieldCtx &F, long long v, std::vector<int> c, bool exact,
                   long long prec)
{
    size_t lead = 0;
    while (lead < c.size() && c[lead] == 0) ++lead;
    c.erase(c.begin(), c.begin() + (long long)lead);
    v += (long long)lead;
    LaurentSeries r;
    r.F = &F;
    r.exact = exact;
    if (exact) {
        while (!c.empty() && c.back() == 0) c.pop_back();
        r.v = c.empty() ? 0 : v;
        r.c = std::move(c);
        r.prec = 0;
        return r;
    }
    if (c.empty()) v = prec;
    if ((long long)c.size() != prec - v) c.resize((size_t)std::max<long long>(prec - v, 0), 0);
    r.v = v;
    r.c = std::move(c);
    r.prec = prec;
    return r;
}

long long known_to(const LaurentSeries &a) { return a.exact ? LLONG_MAX : a.prec; }

LaurentSeries ls_t_inv(const FieldCtx &F) { return ls_monomial(F, 1, -1); }

}

LaurentSeries ls_zero(const FieldCtx &F) { return norm(F, 0, {}, true, 0); }

LaurentSeries ls_const(const FieldCtx &F, int a) { return norm(F, 0, {a}, true, 0); }

LaurentSeries ls_monomial(const FieldCtx &F, int a, long long k)
{
    return norm(F, k, {a}, true, 0);
}

LaurentSeries ls_from_terms(const FieldCtx &F,
                            const std::vector<std::pair<long long, int>> &terms)
{
    if (terms.empty()) return ls_zero(F);
    long long lo = LLONG_MAX, hi = LLONG_MIN;
    for (auto &t : terms) {
        lo = std::min(lo, t.first);
        hi = std::max(hi, t.first);
    }
    std::vector<int> c((size_t)(hi - lo + 1), 0);
    for (auto &t : terms) c[(size_t)(t.first - lo)] = F.add(c[(size_t)(t.first - lo)], t.second);
    return norm(F, lo, std::move(c), true, 0);
}

bool ls_is_zero(const LaurentSeries &a) { return a.exact && a.c.empty(); }

long long ls_val(const LaurentSeries &a)
{
    if (!a.c.empty()) return a.v;
    require(!a.exact, "ZeroArgument", "valuation of the zero series");
    fail("PrecisionExhausted", "valuation beyond the known window");
}

int ls_coeff(const LaurentSeries &a, long long k)
{
    if (!a.exact)
        require(k < a.prec, "PrecisionExhausted", "coefficient beyond the known window");
    if (a.c.empty() || k < a.v || k >= a.v + (long long)a.c.size()) return 0;
    return a.c[(size_t)(k - a.v)];
}

bool ls_val_at_least(const LaurentSeries &a, long long k)
{
    for (size_t i = 0; i < a.c.size() && a.v + (long long)i < k; ++i)
        if (a.c[i] != 0) return false;
    if (a.exact || a.prec >= k) return true;
    fail("PrecisionExhausted", "valuation bound beyond the known window");
}

LaurentSeries ls_neg(const LaurentSeries &a)
{
    LaurentSeries r = a;
    for (int &x : r.c) x = a.F->neg(x);
    return r;
}

LaurentSeries ls_add(const LaurentSeries &a, const LaurentSeries &b)
{
    const FieldCtx &F = *a.F;
    bool ex = a.exact && b.exact;
    long long prec = std::min(known_to(a), known_to(b));
    long long lo = LLONG_MAX, hi = LLONG_MIN;
    for (const LaurentSeries *s : {&a, &b})
        if (!s->c.empty()) {
            lo = std::min(lo, s->v);
            hi = std::max(hi, s->v + (long long)s->c.size());
        }
    if (lo == LLONG_MAX) return ex ? ls_zero(F) : norm(F, prec, {}, false, prec);
    if (!ex) hi = prec;
    if (hi <= lo) return norm(F, prec, {}, false, prec);
    std::vector<int> c((size_t)(hi - lo), 0);
    for (const LaurentSeries *s : {&a, &b})
        for (size_t i = 0; i < s->c.size(); ++i) {
            long long e = s->v + (long long)i;
            if (e < hi) c[(size_t)(e - lo)] = F.add(c[(size_t)(e - lo)], s->c[i]);
        }
    return norm(F, lo, std::move(c), ex, ex ? 0 : prec);
}

LaurentSeries ls_sub(const LaurentSeries &a, const LaurentSeries &b)
{
    return ls_add(a, ls_neg(b));
}

LaurentSeries ls_scale(int s, const LaurentSeries &a)
{
    const FieldCtx &F = *a.F;
    if (s == 0) return ls_zero(F);
    LaurentSeries r = a;
    for (int &x : r.c) x = F.mul(s, x);
    return r;
}

LaurentSeries ls_mul(const LaurentSeries &a, const LaurentSeries &b)
{
    const FieldCtx &F = *a.F;
    if (ls_is_zero(a) || ls_is_zero(b)) return ls_zero(F);
    bool ex = a.exact && b.exact;
    long long va = a.c.empty() ? a.prec : a.v;
    long long vb = b.c.empty() ? b.prec : b.v;
    if (ex) {
        std::vector<int> c(a.c.size() + b.c.size() - 1, 0);
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j)
                c[i + j] = F.add(c[i + j], F.mul(a.c[i], b.c[j]));
        return norm(F, va + vb, std::move(c), true, 0);
    }
    long long prec = std::min(va + (known_to(b) == LLONG_MAX ? LLONG_MAX - va : known_to(b)),
                              vb + (known_to(a) == LLONG_MAX ? LLONG_MAX - vb : known_to(a)));
    long long lo = va + vb;
    if (prec <= lo || a.c.empty() || b.c.empty()) return norm(F, prec, {}, false, prec);
    std::vector<int> c((size_t)(prec - lo), 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) {
            long long e = a.v + (long long)i + b.v + (long long)j;
            if (e < prec) c[(size_t)(e - lo)] = F.add(c[(size_t)(e - lo)], F.mul(a.c[i], b.c[j]));
        }
    return norm(F, lo, std::move(c), false, prec);
}

LaurentSeries ls_inv(const LaurentSeries &a, long long N)
{
    const FieldCtx &F = *a.F;
    require(!ls_is_zero(a), "DivisionByZero", "inverse of the zero series");
    require(!a.c.empty(), "PrecisionExhausted", "inverse needs a known leading term");
    if (a.exact && a.c.size() == 1) return ls_monomial(F, F.inv(a.c[0]), -a.v);
    long long count = a.exact ? N : a.prec - a.v;
    require(count >= 1, "PrecisionExhausted", "inverse needs a known leading term");
    int c0i = F.inv(a.c[0]);
    std::vector<int> b((size_t)count, 0);
    b[0] = c0i;
    for (long long k = 1; k < count; ++k) {
        int acc = 0;
        for (long long j = 1; j <= k && j < (long long)a.c.size(); ++j)
            acc = F.add(acc, F.mul(a.c[(size_t)j], b[(size_t)(k - j)]));
        b[(size_t)k] = F.mul(F.neg(c0i), acc);
    }
    return norm(F, -a.v, std::move(b), false, -a.v + count);
}

LaurentSeries ls_truncate(const LaurentSeries &a, long long m)
{
    const FieldCtx &F = *a.F;
    if (!a.exact)
        require(a.prec >= m, "PrecisionExhausted", "truncation beyond the known window");
    std::vector<int> c;
    for (size_t i = 0; i < a.c.size() && a.v + (long long)i < m; ++i) c.push_back(a.c[i]);
    return norm(F, a.v, std::move(c), true, 0);
}

bool ls_eq(const LaurentSeries &a, const LaurentSeries &b)
{
    require(a.exact && b.exact, "InexactCompare", "equality needs exact series");
    return a.v == b.v && a.c == b.c;
}

bool ls_agree(const LaurentSeries &a, const LaurentSeries &b)
{
    long long upto = std::min(known_to(a), known_to(b));
    if (upto == LLONG_MAX) return ls_eq(a, b);
    long long lo = upto;
    if (!a.c.empty()) lo = std::min(lo, a.v);
    if (!b.c.empty()) lo = std::min(lo, b.v);
    for (long long e = lo; e < upto; ++e)
        if (ls_coeff(a, e) != ls_coeff(b, e)) return false;
    return true;
}

std::vector<std::pair<long long, int>> ls_terms(const LaurentSeries &a)
{
    std::vector<std::pair<long long, int>> out;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != 0) out.push_back({a.v + (long long)i, a.c[i]});
    return out;
}

std::string ls_str(const LaurentSeries &a)
{
    std::ostringstream os;
    bool first = true;
    for (auto &t : ls_terms(a)) {
        if (!first) os << "+";
        os << t.second << "t^" << t.first;
        first = false;
    }
    if (first) os << "0";
    if (!a.exact) os << "+O(t^" << a.prec << ")";
    return os.str();
}

GL2Local gl2_make(const FieldCtx &F, const LaurentSeries &a, const LaurentSeries &b,
                  const LaurentSeries &c, const LaurentSeries &d)
{
    GL2Local g;
    g.F = &F;
    g.a = a;
    g.b = b;
    g.c = c;
    g.d = d;
    g.det = ls_sub(ls_mul(a, d), ls_mul(b, c));
    require(!ls_is_zero(g.det), "SingularMatrix", "zero determinant");
    require(!g.det.c.empty(), "PrecisionExhausted", "determinant valuation unknown");
    return g;
}

GL2Local gl2_id(const FieldCtx &F)
{
    return gl2_make(F, ls_const(F, 1), ls_zero(F), ls_zero(F), ls_const(F, 1));
}

GL2Local gl2_Pi(const FieldCtx &F)
{
    return gl2_make(F, ls_zero(F), ls_const(F, 1), ls_monomial(F, 1, 1), ls_zero(F));
}

GL2Local gl2_ns(const FieldCtx &F)
{
    return gl2_make(F, ls_zero(F), ls_const(F, F.neg(1)), ls_const(F, 1), ls_zero(F));
}

GL2Local gl2_s(const FieldCtx &F)
{
    return gl2_make(F, ls_zero(F), ls_const(F, 1), ls_const(F, 1), ls_zero(F));
}

GL2Local gl2_u(const FieldCtx &F, int x)
{
    return gl2_make(F, ls_const(F, 1), ls_const(F, x), ls_zero(F), ls_const(F, 1));
}

GL2Local gl2_from_gamma(const FieldCtx &F, const GammaElt &g)
{
    return gl2_make(F, ls_const(F, g.a), ls_const(F, g.b), ls_const(F, g.c),
                    ls_const(F, g.d));
}

GL2Local gl2_scalar(const FieldCtx &F, const LaurentSeries &s)
{
    return gl2_make(F, s, ls_zero(F), ls_zero(F), s);
}

GL2Local gl2_mul(const GL2Local &x, const GL2Local &y)
{
    const FieldCtx &F = *x.F;
    GL2Local g;
    g.F = &F;
    g.a = ls_add(ls_mul(x.a, y.a), ls_mul(x.b, y.c));
    g.b = ls_add(ls_mul(x.a, y.b), ls_mul(x.b, y.d));
    g.c = ls_add(ls_mul(x.c, y.a), ls_mul(x.d, y.c));
    g.d = ls_add(ls_mul(x.c, y.b), ls_mul(x.d, y.d));
    g.det = ls_mul(x.det, y.det);
    return g;
}

GL2Local gl2_inv(const GL2Local &x, long long N)
{
    const FieldCtx &F = *x.F;
    LaurentSeries di = ls_inv(x.det, N);
    GL2Local g;
    g.F = &F;
    g.a = ls_mul(x.d, di);
    g.b = ls_neg(ls_mul(x.b, di));
    g.c = ls_neg(ls_mul(x.c, di));
    g.d = ls_mul(x.a, di);
    g.det = di;
    return g;
}

GL2Local gl2_scalar_mul(const LaurentSeries &s, const GL2Local &x)
{
    GL2Local g;
    g.F = x.F;
    g.a = ls_mul(s, x.a);
    g.b = ls_mul(s, x.b);
    g.c = ls_mul(s, x.c);
    g.d = ls_mul(s, x.d);
    g.det = ls_mul(ls_mul(s, s), x.det);
    return g;
}

bool gl2_agree(const GL2Local &x, const GL2Local &y)
{
    return ls_agree(x.a, y.a) && ls_agree(x.b, y.b) && ls_agree(x.c, y.c) &&
           ls_agree(x.d, y.d);
}

bool in_K(const GL2Local &g)
{
    for (const LaurentSeries *e : {&g.a, &g.b, &g.c, &g.d})
        if (!ls_val_at_least(*e, 0)) return false;
    return ls_val(g.det) == 0;
}

bool in_K1(const GL2Local &g)
{
    if (!in_K(g)) return false;
    const FieldCtx &F = *g.F;
    return ls_val_at_least(ls_sub(g.a, ls_const(F, 1)), 1) && ls_val_at_least(g.b, 1) &&
           ls_val_at_least(g.c, 1) && ls_val_at_least(ls_sub(g.d, ls_const(F, 1)), 1);
}

bool in_I(const GL2Local &g) { return in_K(g) && ls_val_at_least(g.c, 1); }

bool in_I1(const GL2Local &g)
{
    if (!in_I(g)) return false;
    const FieldCtx &F = *g.F;
    return ls_val_at_least(ls_sub(g.a, ls_const(F, 1)), 1) &&
           ls_val_at_least(ls_sub(g.d, ls_const(F, 1)), 1);
}

bool in_FxK(const GL2Local &g)
{
    long long vd = ls_val(g.det);
    if (vd % 2 != 0) return false;
    return in_K(gl2_scalar_mul(ls_monomial(*g.F, 1, -vd / 2), g));
}

bool in_Ksigma1(const GL2Local &g)
{
    const FieldCtx &F = *g.F;
    long long vd = ls_val(g.det);
    int eps = (int)(((vd % 2) + 2) % 2);
    GL2Local h = g;
    if (eps) {
        GL2Local pinv = gl2_make(F, ls_zero(F), ls_t_inv(F), ls_const(F, 1),
                                 ls_zero(F));
        h = gl2_mul(pinv, g);
    }
    long long a = ls_val(h.det) / 2;
    return in_I(gl2_scalar_mul(ls_monomial(F, 1, -a), h));
}

GammaElt gl2_red(const GL2Local &g)
{
    require(in_K(g), "NotInStabilizer", "reduction needs an element of K");
    GammaElt r;
    r.a = ls_coeff(g.a, 0);
    r.b = ls_coeff(g.b, 0);
    r.c = ls_coeff(g.c, 0);
    r.d = ls_coeff(g.d, 0);
    return r;
}

Vertex vertex_base(const FieldCtx &F) { return {0, ls_zero(F)}; }

bool vertex_eq(const Vertex &x, const Vertex &y)
{
    return x.m == y.m && ls_eq(x.u, y.u);
}

bool vertex_less(const Vertex &x, const Vertex &y)
{
    if (x.m != y.m) return x.m < y.m;
    return ls_terms(x.u) < ls_terms(y.u);
}

std::string vertex_str(const Vertex &x)
{
    std::ostringstream os;
    os << "(" << x.m << ";" << ls_str(x.u) << ")";
    return os.str();
}

GL2Local vertex_matrix(const Vertex &x)
{
    const FieldCtx &F = *x.u.F;
    return gl2_make(F, ls_monomial(F, 1, x.m), x.u, ls_zero(F), ls_const(F, 1));
}

Vertex vertex_normalize(const GL2Local &g)
{
    const FieldCtx &F = *g.F;
    // pivot on the bottom-row entry of smaller valuation, preferring d
    auto lb = [](const LaurentSeries &x) -> std::pair<bool, long long> {
        if (!x.c.empty()) return {true, x.v};
        if (x.exact) return {false, LLONG_MAX};
        return {false, x.prec};
    };
    auto [ck, cv] = lb(g.c);
    auto [dk, dv] = lb(g.d);
    bool pivot_d;
    if (dk && ck) {
        pivot_d = dv <= cv;
    } else if (dk) {
        require(dv <= cv, "PrecisionExhausted", "bottom row valuations undecided");
        pivot_d = true;
    } else if (ck) {
        require(cv <= dv, "PrecisionExhausted", "bottom row valuations undecided");
        pivot_d = false;
    } else {
        fail("PrecisionExhausted", "bottom row valuations undecided");
    }
    LaurentSeries B = pivot_d ? g.b : g.a;
    LaurentSeries D = pivot_d ? g.d : g.c;
    long long m = ls_val(g.det) - 2 * ls_val(D);
    LaurentSeries u = ls_truncate(ls_mul(B, ls_inv(D)), m);
    return {m, u};
}

Vertex act_on_vertex(const GL2Local &g, const Vertex &x)
{
    return vertex_normalize(gl2_mul(g, vertex_matrix(x)));
}

std::vector<Vertex> neighbors(const Vertex &x)
{
    const FieldCtx &F = *x.u.F;
    std::vector<Vertex> out;
    for (int c = 0; c < F.q; ++c)
        out.push_back({x.m + 1, ls_add(x.u, ls_monomial(F, c, x.m))});
    out.push_back({x.m - 1, ls_truncate(x.u, x.m - 1)});
    return out;
}

bool vertex_adjacent(const Vertex &x, const Vertex &y)
{
    if (x.m == y.m + 1) return ls_eq(y.u, ls_truncate(x.u, y.m));
    if (y.m == x.m + 1) return ls_eq(x.u, ls_truncate(y.u, x.m));
    return false;
}

long long tree_distance(const Vertex &x, const Vertex &y)
{
    GL2Local t = gl2_mul(gl2_inv(vertex_matrix(x)), vertex_matrix(y));
    long long minv = LLONG_MAX;
    for (const LaurentSeries *e : {&t.a, &t.b, &t.c, &t.d})
        if (!ls_is_zero(*e)) minv = std::min(minv, ls_val(*e));
    return std::llabs(ls_val(t.det) - 2 * minv);
}

std::vector<Vertex> geodesic(const Vertex &x, const Vertex &y)
{
    std::vector<Vertex> path{x};
    Vertex cur = x;
    long long d = tree_distance(x, y);
    while (d > 0) {
        for (const Vertex &nb : neighbors(cur))
            if (tree_distance(nb, y) == d - 1) {
                cur = nb;
                break;
            }
        path.push_back(cur);
        --d;
    }
    return path;
}

StabFactor factor_in_stabilizer(const GL2Local &g, StabSimplex which)
{
    const FieldCtx &F = *g.F;
    long long vd = ls_val(g.det);
    StabFactor out;
    if (which == StabSimplex::sigma0) {
        require(vd % 2 == 0, "NotInStabilizer", "odd determinant valuation");
        out.a = vd / 2;
        GL2Local k = gl2_scalar_mul(ls_monomial(F, 1, -out.a), g);
        require(in_K(k), "NotInStabilizer", "central part leaves a non-unit matrix");
        out.eps = 0;
        out.residue = gl2_red(k);
        require(gl2_agree(g, gl2_scalar_mul(ls_monomial(F, 1, out.a), k)),
                "NotInStabilizer", "reassembly mismatch");
        return out;
    }
    out.eps = (int)(((vd % 2) + 2) % 2);
    GL2Local h = g;
    if (out.eps) {
        GL2Local pinv =
            gl2_make(F, ls_zero(F), ls_t_inv(F), ls_const(F, 1), ls_zero(F));
        h = gl2_mul(pinv, g);
    }
    out.a = ls_val(h.det) / 2;
    GL2Local i = gl2_scalar_mul(ls_monomial(F, 1, -out.a), h);
    require(in_I(i), "NotInStabilizer", "coset part misses the Iwahori subgroup");
    out.residue = gl2_red(i);
    GL2Local back = gl2_scalar_mul(ls_monomial(F, 1, out.a), i);
    if (out.eps) back = gl2_mul(gl2_Pi(F), back);
    require(gl2_agree(g, back), "NotInStabilizer", "reassembly mismatch");
    return out;
}

}
