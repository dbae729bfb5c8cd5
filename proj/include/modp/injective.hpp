#pragma once
#include <string>
#include <vector>

#include "modp/gamma.hpp"
#include "modp/hecke.hpp"

namespace modp {

// coefficients a_0..a_{p-1-r} of the distinguished vector Z, prime-field
// codes (error DenominatorVanishes)
std::vector<int> a_coefficients(int p, int r);

// e^k/k! or f^k/k! on the m-basis of V_d, acting on column vectors
Mat divided_power(const FieldCtx &F, char op, int d, int k);
// Leibniz extension to V_{d1} (x) V_{d2}
Mat divided_power_pair(const FieldCtx &F, char op, int d1, int d2, int k);

// R_r inside V_{p-1-r} (x) V_{p-1}: basis E_0..E_{2p-2-r} and Z_k = f^k Z/k!
// for 0 <= k <= r when r < p-1; R_{p-1} is V_{p-1} itself on E_0..E_{p-1}
struct RSpace {
    int r = 0;
    int e_count = 0;    // number of E basis vectors
    GammaRep ambient;   // V_{p-1-r} (x) V_{p-1}
    GammaRep rep;       // action restricted to the labeled basis
    Mat basis;          // rows: basis vectors in ambient coordinates
    std::vector<int> a; // coefficients of Z, empty when r = p-1
};
RSpace build_R(const FieldCtx &F, int r);

// R_{r_0} (x) R_{r_1}^Fr (x) ... twisted by det^det_twist, with the index
// sets driving the socle basis {b_eps}
struct RTuple {
    const FieldCtx *F = nullptr;
    std::vector<int> r;
    int det_twist = 0;
    long long r_int = 0; // sum r_i p^i
    GammaRep rep;
    std::vector<int> comp_dim;
    std::vector<std::vector<int>> sigma; // mask order, bit i = eps_i
    std::vector<std::vector<int>> sigma_prime;
    std::vector<int> delta;

    bool in_sigma(const std::vector<int> &eps) const;
    int b_index(const std::vector<int> &eps) const; // error EpsilonOutOfSigma
    Vec b_vec(const std::vector<int> &eps) const;
    TorusChar b_char(const std::vector<int> &eps) const;
};
RTuple build_R_tuple(const FieldCtx &F, const std::vector<int> &r, int det_twist);

// sum_{u in U} u ns^{-1} b_eps by full enumeration against the case formula
struct TnsImage {
    Vec brute, closed;
    bool agree = false;
};
TnsImage tns_on_socle_basis(const RTuple &R, const std::vector<int> &eps);

struct Envelope {
    IrrepLabel label;
    RTuple space;       // twisted R-tuple carrying the envelope
    bool joint = false; // chi = chi^s, J = S: space holds the whole pair
    Mat socle_embed;    // rows: image of the irreducible inside the carrier
    long long inj_dim = 0; // dimension attributed to this label
};
Envelope identify_injective_envelope(const FieldCtx &F, const IrrepLabel &lab);

struct InjSummand {
    std::string kind; // "M" or "L"
    CharOrbit orbit;
    Mat embed; // rows: summand basis in module coordinates
};
// full Hecke module on the I_1-invariants of the envelopes attached to gamma
struct InjModule {
    CharOrbit orbit;
    HModule mod;
    std::vector<std::string> labels; // b(eps) block, then bbar(eps) block
    std::vector<InjSummand> summands;
};
InjModule extend_to_full_hecke(const FieldCtx &F, const CharOrbit &gamma);

}
