#pragma once
#include <string>
#include <utility>
#include <vector>

#include "modp/gamma.hpp"

namespace modp {

// truncated Laurent series over F_q in t. coefficients start at exponent v;
// exact means the stored terms are the whole series, otherwise coefficients
// of exponents below prec are known. c.front() != 0 unless there is no known
// nonzero coefficient, in which case c is empty and (for inexact series)
// v == prec.
struct LaurentSeries {
    const FieldCtx *F = nullptr;
    long long v = 0;
    std::vector<int> c;
    bool exact = true;
    long long prec = 0;
};

inline constexpr long long kLaurentPrec = 64;

LaurentSeries ls_zero(const FieldCtx &F);
LaurentSeries ls_const(const FieldCtx &F, int a);
LaurentSeries ls_monomial(const FieldCtx &F, int a, long long k);
LaurentSeries ls_from_terms(const FieldCtx &F,
                            const std::vector<std::pair<long long, int>> &terms);

bool ls_is_zero(const LaurentSeries &a); // exactly the zero series
long long ls_val(const LaurentSeries &a);
int ls_coeff(const LaurentSeries &a, long long k);
// true when val(a) >= k is certain, false when a known coefficient below k is
// nonzero (error PrecisionExhausted otherwise)
bool ls_val_at_least(const LaurentSeries &a, long long k);

LaurentSeries ls_neg(const LaurentSeries &a);
LaurentSeries ls_add(const LaurentSeries &a, const LaurentSeries &b);
LaurentSeries ls_sub(const LaurentSeries &a, const LaurentSeries &b);
LaurentSeries ls_scale(int s, const LaurentSeries &a);
LaurentSeries ls_mul(const LaurentSeries &a, const LaurentSeries &b);
LaurentSeries ls_inv(const LaurentSeries &a, long long N = kLaurentPrec);
// terms of exponent < m, always an exact polynomial
LaurentSeries ls_truncate(const LaurentSeries &a, long long m);

bool ls_eq(const LaurentSeries &a, const LaurentSeries &b); // both exact
bool ls_agree(const LaurentSeries &a, const LaurentSeries &b);
std::vector<std::pair<long long, int>> ls_terms(const LaurentSeries &a);
std::string ls_str(const LaurentSeries &a);

// 2x2 matrix over F_q((t)) with cached determinant
struct GL2Local {
    const FieldCtx *F = nullptr;
    LaurentSeries a, b, c, d;
    LaurentSeries det;
};

GL2Local gl2_make(const FieldCtx &F, const LaurentSeries &a, const LaurentSeries &b,
                  const LaurentSeries &c, const LaurentSeries &d);
GL2Local gl2_id(const FieldCtx &F);
GL2Local gl2_Pi(const FieldCtx &F);      // [[0,1],[t,0]]
GL2Local gl2_ns(const FieldCtx &F);      // [[0,-1],[1,0]]
GL2Local gl2_s(const FieldCtx &F);       // [[0,1],[1,0]]
GL2Local gl2_u(const FieldCtx &F, int x);       // [[1,x],[0,1]], constant lift
GL2Local gl2_from_gamma(const FieldCtx &F, const GammaElt &g);
GL2Local gl2_scalar(const FieldCtx &F, const LaurentSeries &s);
GL2Local gl2_mul(const GL2Local &x, const GL2Local &y);
GL2Local gl2_inv(const GL2Local &x, long long N = kLaurentPrec);
GL2Local gl2_scalar_mul(const LaurentSeries &s, const GL2Local &x);
bool gl2_agree(const GL2Local &x, const GL2Local &y);

bool in_K(const GL2Local &g);
bool in_K1(const GL2Local &g);
bool in_I(const GL2Local &g);
bool in_I1(const GL2Local &g);
bool in_FxK(const GL2Local &g);
bool in_Ksigma1(const GL2Local &g);
GammaElt gl2_red(const GL2Local &g); // g in K (error NotInStabilizer)

// lattice class of the columns of [[t^m, u],[0,1]]; u exact with all
// exponents < m
struct Vertex {
    long long m = 0;
    LaurentSeries u;
};

Vertex vertex_base(const FieldCtx &F); // sigma_0 = (0,0)
bool vertex_eq(const Vertex &x, const Vertex &y);
bool vertex_less(const Vertex &x, const Vertex &y);
std::string vertex_str(const Vertex &x);
GL2Local vertex_matrix(const Vertex &x); // the canonical transporter g_v

Vertex vertex_normalize(const GL2Local &g);
Vertex act_on_vertex(const GL2Local &g, const Vertex &x);
std::vector<Vertex> neighbors(const Vertex &x); // q up-neighbors, then down
bool vertex_adjacent(const Vertex &x, const Vertex &y);
long long tree_distance(const Vertex &x, const Vertex &y);
std::vector<Vertex> geodesic(const Vertex &x, const Vertex &y);

// g = Pi^eps t^a k with k in K (sigma0, eps always 0) or k in I (sigma1);
// residue is the mod-t reduction of k
enum class StabSimplex { sigma0, sigma1 };
struct StabFactor {
    long long a = 0;
    int eps = 0;
    GammaElt residue;
};
StabFactor factor_in_stabilizer(const GL2Local &g, StabSimplex which);

}
