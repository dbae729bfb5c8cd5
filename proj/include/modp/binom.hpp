#pragma once
#include "modp/field.hpp"

namespace modp {

// C(n, k) mod p by Lucas, returned as a prime-subfield code
inline int binom_mod_p(const FieldCtx &F, long long n, long long k)
{
    if (k < 0 || k > n) return 0;
    int p = F.p;
    long long r = 1;
    while (n || k) {
        long long nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        // C(nd, kd) for digits < p
        long long c = 1;
        for (long long i = 0; i < kd; ++i) c = c * (nd - i) / (i + 1);
        r = r * (c % p) % p;
        n /= p;
        k /= p;
    }
    return (int)r;
}

}
