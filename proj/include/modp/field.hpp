#pragma once
#include <vector>

#include "modp/error.hpp"

namespace modp {

// F_q = F_p[x]/(f), q = p^n <= 81. an element is the integer code
// sum c_i p^i of its coefficient vector (c_0, ..., c_{n-1}); this code is
// also the serialized form. all arithmetic is table lookup.
struct FieldCtx {
    int p = 0, n = 0, q = 0;
    std::vector<int> modulus; // f coefficients, length n+1, modulus[n] = 1
    int g = 0;                // residue of x; for n = 1 the smallest primitive element

    std::vector<int> add_t, mul_t; // q*q, row-major
    std::vector<int> neg_t, inv_t, frob_t;
    std::vector<int> exp_t;  // g^k for k = 0..q-2
    std::vector<int> dlog_t; // exp_t inverted, dlog_t[0] = -1

    int add(int a, int b) const { return add_t[a * q + b]; }
    int sub(int a, int b) const { return add_t[a * q + neg_t[b]]; }
    int mul(int a, int b) const { return mul_t[a * q + b]; }
    int neg(int a) const { return neg_t[a]; }
    int one_minus(int a) const { return add_t[1 * q + neg_t[a]]; }
    int inv(int a) const
    {
        require(a != 0, "ZeroArgument", "inverse of zero");
        return inv_t[a];
    }
    int div(int a, int b) const { return mul(a, inv(b)); }
    int frob(int a) const { return frob_t[a]; }
    int dlog(int a) const
    {
        require(a != 0, "ZeroArgument", "dlog of zero");
        return dlog_t[a];
    }
    // g^k with k taken mod q-1
    int exp(long long k) const
    {
        int m = q - 1;
        long long r = m == 0 ? 0 : k % m;
        if (r < 0) r += m;
        return exp_t[(size_t)r];
    }
    int pow(int a, long long e) const;
    // image of an integer in the prime subfield
    int from_int(long long v) const
    {
        long long r = v % p;
        if (r < 0) r += p;
        return (int)r;
    }
    bool in_prime_field(int a) const { return a >= 0 && a < p; }

    std::vector<int> decode(int a) const; // length-n coefficient vector
    int encode(const std::vector<int> &c) const;
};

// canonical context for F_{p^n}. errors: CompositeP, UnsupportedSize.
FieldCtx field_init(int p, int n);

}
