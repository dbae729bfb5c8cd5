#include "modp/field.hpp"

#include <algorithm>
#include <numeric>

namespace modp {

namespace {

// dense coefficient vectors over F_p, lowest degree first
using Poly = std::vector<int>;

int pdeg(const Poly &f)
{
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

Poly pmul(const Poly &a, const Poly &b, int p)
{
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return r;
}

// a mod f, f monic
Poly pmod(Poly a, const Poly &f, int p)
{
    int df = pdeg(f);
    for (int i = (int)a.size() - 1; i >= df; --i) {
        int c = a[i] % p;
        if (c == 0) continue;
        for (int j = 0; j <= df; ++j)
            a[i - df + j] = ((a[i - df + j] - c * f[j]) % p + p) % p;
    }
    a.resize(df);
    for (auto &c : a) c = ((c % p) + p) % p;
    return a;
}

bool divides(const Poly &g, const Poly &f, int p)
{
    return pdeg(pmod(f, g, p)) < 0;
}

// trial division by monic factors of degree <= deg(f)/2
bool irreducible(const Poly &f, int p)
{
    int d = pdeg(f);
    if (d <= 0) return false;
    for (int dd = 1; dd * 2 <= d; ++dd) {
        long long count = 1;
        for (int i = 0; i < dd; ++i) count *= p;
        for (long long m = 0; m < count; ++m) {
            Poly g(dd + 1, 0);
            long long t = m;
            for (int i = 0; i < dd; ++i) {
                g[i] = (int)(t % p);
                t /= p;
            }
            g[dd] = 1;
            if (divides(g, f, p)) return false;
        }
    }
    return true;
}

bool is_prime(int p)
{
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace

std::vector<int> FieldCtx::decode(int a) const
{
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) {
        c[i] = a % p;
        a /= p;
    }
    return c;
}

int FieldCtx::encode(const std::vector<int> &c) const
{
    int a = 0;
    for (int i = n - 1; i >= 0; --i) a = a * p + (((c[i] % p) + p) % p);
    return a;
}

int FieldCtx::pow(int a, long long e) const
{
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    int r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

FieldCtx field_init(int p, int n)
{
    require(is_prime(p), "CompositeP", "p must be prime");
    require(n >= 1 && n <= 4, "UnsupportedSize", "need 1 <= n <= 4");
    long long q = 1;
    for (int i = 0; i < n; ++i) q *= p;
    require(q <= 81, "UnsupportedSize", "need p^n <= 81");

    FieldCtx F;
    F.p = p;
    F.n = n;
    F.q = (int)q;

    // multiplication via the chosen modulus; candidate order for the search is
    // ascending code of the low coefficients, i.e. lex on (c_{n-1},...,c_0)
    auto mul_with = [&](const Poly &f, int a, int b) {
        Poly pa(n, 0), pb(n, 0);
        for (int i = 0; i < n; ++i) {
            pa[i] = a % p;
            a /= p;
            pb[i] = b % p;
            b /= p;
        }
        Poly r = pmod(pmul(pa, pb, p), f, p);
        r.resize(n, 0);
        int code = 0;
        for (int i = n - 1; i >= 0; --i) code = code * p + r[i];
        return code;
    };
    auto order_of = [&](const Poly &f, int a) {
        if (a == 0) return 0;
        int ord = 1, x = a;
        while (x != 1) {
            x = mul_with(f, x, a);
            ++ord;
            if (ord > q) return 0; // not a unit, cannot happen for irreducible f
        }
        return ord;
    };

    Poly f;
    if (n == 1) {
        // smallest primitive element, modulus x - g
        int g = 0;
        for (int a = 1; a < p; ++a) {
            int ord = 1, x = a;
            while (x != 1) {
                x = (x * a) % p;
                ++ord;
            }
            if (ord == p - 1) {
                g = a;
                break;
            }
        }
        F.g = g;
        f = {((-g) % p + p) % p, 1};
    } else {
        bool found = false;
        for (long long m = 0; m < q && !found; ++m) {
            Poly cand(n + 1, 0);
            long long t = m;
            for (int i = 0; i < n; ++i) {
                cand[i] = (int)(t % p);
                t /= p;
            }
            cand[n] = 1;
            if (!irreducible(cand, p)) continue;
            if (order_of(cand, p) == q - 1) { // p is the code of the residue of x
                f = cand;
                found = true;
            }
        }
        require(found, "UnsupportedSize", "no primitive modulus found");
        F.g = p; // residue class of x
    }
    F.modulus = f;

    int Q = F.q;
    F.add_t.resize((size_t)Q * Q);
    F.mul_t.resize((size_t)Q * Q);
    F.neg_t.resize(Q);
    F.inv_t.assign(Q, 0);
    F.frob_t.resize(Q);
    F.exp_t.resize(std::max(1, Q - 1));
    F.dlog_t.assign(Q, -1);

    for (int a = 0; a < Q; ++a) {
        for (int b = 0; b < Q; ++b) {
            // coefficientwise addition
            int x = a, y = b, code = 0, scale = 1;
            for (int i = 0; i < n; ++i) {
                code += ((x % p + y % p) % p) * scale;
                scale *= p;
                x /= p;
                y /= p;
            }
            F.add_t[(size_t)a * Q + b] = code;
            F.mul_t[(size_t)a * Q + b] = mul_with(f, a, b);
        }
    }
    for (int a = 0; a < Q; ++a) {
        int x = a, code = 0, scale = 1;
        for (int i = 0; i < n; ++i) {
            code += (((-(x % p)) % p + p) % p) * scale;
            scale *= p;
            x /= p;
        }
        F.neg_t[a] = code;
    }
    int x = 1;
    for (int k = 0; k < std::max(1, Q - 1); ++k) {
        F.exp_t[k] = x;
        F.dlog_t[x] = k;
        x = mul_with(f, x, F.g);
    }
    for (int a = 1; a < Q; ++a) {
        int k = F.dlog_t[a];
        F.inv_t[a] = F.exp_t[(size_t)((Q - 1 - k) % std::max(1, Q - 1))];
    }
    for (int a = 0; a < Q; ++a) {
        int r = 1;
        for (int i = 0; i < p; ++i) r = F.mul_t[(size_t)r * Q + a];
        F.frob_t[a] = r;
    }
    return F;
}

}
