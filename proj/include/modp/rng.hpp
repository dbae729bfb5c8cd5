#pragma once
#include <cstdint>

namespace modp {

// deterministic xorshift for sampled checks; seed 0 is remapped
struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed = 1) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next()
    {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    int below(int n) { return n <= 1 ? 0 : (int)(next() % (uint64_t)n); }
};

}
