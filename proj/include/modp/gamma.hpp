#pragma once
#include <optional>
#include <string>
#include <vector>

#include "modp/linalg.hpp"

namespace modp {

// element of Gamma = GL_2(F_q), entries are field codes
struct GammaElt {
    int a = 1, b = 0, c = 0, d = 1;
    bool operator==(const GammaElt &) const = default;
    bool operator<(const GammaElt &o) const
    {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        if (c != o.c) return c < o.c;
        return d < o.d;
    }
};

GammaElt gmul(const FieldCtx &F, const GammaElt &x, const GammaElt &y);
GammaElt ginv(const FieldCtx &F, const GammaElt &x);
int gdet(const FieldCtx &F, const GammaElt &x);
GammaElt elt_u(int lam);
GammaElt elt_l(int lam);
GammaElt elt_diag(int a, int d);
GammaElt elt_ns(const FieldCtx &F); // [[0,-1],[1,0]], image of the Weyl element
std::vector<GammaElt> all_gamma(const FieldCtx &F); // lex order on (a,b,c,d)
long long gamma_order(const FieldCtx &F);           // (q^2-1)(q^2-q)

// smooth character of the torus, diag(lam, mu) -> lam^c mu^d, exponents mod q-1
struct TorusChar {
    int c = 0, d = 0;
    bool operator==(const TorusChar &) const = default;
    bool operator<(const TorusChar &o) const { return c != o.c ? c < o.c : d < o.d; }
};
TorusChar make_char(const FieldCtx &F, int c, int d);
TorusChar conj_char(const TorusChar &x);                // chi^s = (d, c)
bool char_regular(const TorusChar &x);                  // chi != chi^s
int char_value(const FieldCtx &F, const TorusChar &x, int lam, int mu);
// chi . alpha^k where alpha = (1, -1)
TorusChar char_alpha_shift(const FieldCtx &F, const TorusChar &x, int k);
std::vector<TorusChar> all_chars(const FieldCtx &F);

// representation of Gamma through matrices for the standard generator family
//   u(lam) all lam (slots 0..q-1), l(lam) all lam (slots q..2q-1),
//   diag(g,1) (slot 2q), diag(1,g) (slot 2q+1)
struct GammaRep {
    const FieldCtx *F = nullptr;
    int dim = 0;
    std::vector<Mat> gen;
    std::vector<std::string> labels; // optional basis labels
};

int gen_count(const FieldCtx &F);
GammaElt gen_elt(const FieldCtx &F, int slot);
// factorization into generator slots, leftmost factor first
std::vector<int> word_for(const FieldCtx &F, const GammaElt &g);
Mat rep_matrix(const GammaRep &R, const GammaElt &g);
Vec rep_apply(const GammaRep &R, const GammaElt &g, const Vec &v);

GammaRep trivial_rep(const FieldCtx &F);
GammaRep det_power_rep(const FieldCtx &F, int a); // 1-dim, det^a
// V_d on the divided basis m_0..m_d, 0 <= d <= 2p-2
GammaRep symmetric_power_rep(const FieldCtx &F, int d);
GammaRep tensor_rep(const GammaRep &A, const GammaRep &B);
GammaRep frobenius_twist_rep(const GammaRep &R, int k);
GammaRep det_twist_rep(const GammaRep &R, int a);
GammaRep direct_sum_rep(const GammaRep &A, const GammaRep &B);
// V_{r_0} x V_{r_1}^{Fr} x ... twisted by det^a
GammaRep build_v_tuple(const FieldCtx &F, const std::vector<int> &r, int a);

// induced representations with their distinguished vector
GammaRep induced_from_U(const FieldCtx &F, Vec *phi_out = nullptr);
GammaRep induced_from_B(const FieldCtx &F, const TorusChar &chi, Vec *phi_out = nullptr);

struct UInvariants {
    Subspace space;
    // H-eigen summands of the invariant space; rows of each Mat are ambient vectors
    std::vector<std::pair<TorusChar, Mat>> lines;
};
UInvariants u_invariants(const GammaRep &R);

// sum_{lam} u(lam) ns^{-1} v; v must be U-invariant (error NotUInvariant)
Vec hecke_tns(const GammaRep &R, const Vec &v);
// |H|^{-1} sum_h chi(h) h^{-1} v
Vec e_chi_project(const GammaRep &R, const Vec &v, const TorusChar &chi);

struct SubRep {
    GammaRep rep;
    Mat embed;              // rows: subspace basis in ambient coordinates
    std::vector<Vec> seeds; // the generating vectors in sub coordinates
};
SubRep generated_subrep(const GammaRep &R, const std::vector<Vec> &vectors);

// line enumeration over the U-invariants; error ZeroRep on dim 0
bool is_irreducible(const GammaRep &R);

// labels of the irreducibles: principal-series side and weight side
struct IrrepLabel {
    TorusChar chi;
    bool J_full = false; // J = S when true, else J = empty
    bool operator==(const IrrepLabel &) const = default;
};
struct WeightLabel {
    int a = 1;          // det exponent, 1..q-1
    std::vector<int> r; // digits r_0..r_{n-1} in 0..p-1
    bool operator==(const WeightLabel &) const = default;
};
WeightLabel dictionary(const FieldCtx &F, const IrrepLabel &lab);
IrrepLabel dictionary_back(const FieldCtx &F, const WeightLabel &w);
IrrepLabel bar_label(const FieldCtx &F, const IrrepLabel &lab); // (chi^s, J-bar)
std::vector<IrrepLabel> all_labels(const FieldCtx &F);          // q(q-1) of them

struct CLIrrep {
    GammaRep rep;
    Vec generator; // distinguished U-invariant generator in rep coordinates
    Mat embed;     // rows: basis inside the inducing ambient space
};
// rho_{chi,J}: J = empty generated by T_ns phi_chi inside Ind_B(chi^s),
// J = S (chi = chi^s only, error InvalidJ) generated by (1 + T_ns) phi_chi
CLIrrep carter_lusztig_irrep(const FieldCtx &F, const IrrepLabel &lab);

}
