#pragma once
#include <optional>
#include <string>
#include <vector>

#include "modp/hecke.hpp"
#include "modp/tree.hpp"

namespace modp {

// diagram (D0, D1, r): D0 carries Gamma = K/K1 inflated to F^x K with varpi
// trivial, D1 carries <I, Pi> with the I-action through I/K1 = B(F_q), and
// r maps D1 into D0 equivariantly for F^x I
struct Diagram {
    const FieldCtx *F = nullptr;
    GammaRep rho0;
    int dim1 = 0;
    std::vector<Mat> rho1_u; // u(lam) on D1, slot = field code of lam
    Mat rho1_t1, rho1_t2;    // diag(g,1) and diag(1,g) on D1
    Mat P;                   // Pi on D1
    Mat r;                   // dim0 x dim1, columns are images of the basis
    std::string tag;
};

int diagram_dim0(const Diagram &D);
bool diagram_u_trivial(const Diagram &D);

// b = diag(a,d) u(a^{-1}b) read off an upper triangular element
// (error NotUpperTriangular)
Mat rho1_b(const Diagram &D, const GammaElt &b);
// values on stabilizer elements via their canonical factorizations
Mat rho0_of(const Diagram &D, const GL2Local &g);
Mat rho1_of(const Diagram &D, const GL2Local &g, int *eps_out = nullptr);

// audits r-equivariance on the B generators, P^2 = 1 and the P-conjugation
// swap of the diagonal generators (error InvalidDiagram)
void check_diagram(const Diagram &D);

// InvalidLabel when J_full is requested on a regular orbit
Diagram build_diagram_gamma(const FieldCtx &F, const CharOrbit &gamma,
                            bool J_full = false);
// one dimensional x -> x^k on det
Diagram build_diagram_constant(const FieldCtx &F, int k);
// D1 = D0 with r = identity and Pi acting through the constant Weyl lift
Diagram build_diagram_isores(const FieldCtx &F, const CharOrbit &gamma,
                             bool J_full = false);

// 0-chain: distinct vertices in fixed order, no zero vectors, coordinates
// taken via the canonical transporter g_v
struct ZeroChain {
    std::vector<std::pair<Vertex, Vec>> items;
};
// oriented edge; vp is the endpoint with the larger m and the stored value
// sits at the transporter g_e = g_{vp}
struct TreeEdge {
    Vertex vm, vp;
};
struct OneChain {
    std::vector<std::pair<TreeEdge, Vec>> items;
};

ZeroChain zero_chain(const Diagram &D, const Vertex &v, const Vec &x);
ZeroChain chain_add(const Diagram &D, const ZeroChain &a, const ZeroChain &b);
ZeroChain chain_sub(const Diagram &D, const ZeroChain &a, const ZeroChain &b);
ZeroChain chain_scale(const Diagram &D, int c, const ZeroChain &a);
bool chain_eq(const ZeroChain &a, const ZeroChain &b);
bool chain_is_zero(const ZeroChain &a);
Vec chain_value_at(const Diagram &D, const ZeroChain &a, const Vertex &v);

TreeEdge make_edge(const Vertex &a, const Vertex &b); // error NotAdjacent
bool edge_eq(const TreeEdge &a, const TreeEdge &b);
OneChain one_chain(const Diagram &D, const TreeEdge &e, const Vec &x);
OneChain one_chain_add(const Diagram &D, const OneChain &a, const OneChain &b);

ZeroChain boundary(const OneChain &w, const Diagram &D);
ZeroChain g_act_zero(const GL2Local &g, const ZeroChain &w, const Diagram &D);
OneChain g_act_one(const GL2Local &g, const OneChain &w, const Diagram &D);

// decides membership in the boundary image by leaf peeling over the convex
// hull of the support; requires r injective (error NotInjectiveRestriction)
std::optional<OneChain> boundary_witness(const ZeroChain &w, const Diagram &D);
bool is_boundary(const ZeroChain &w, const Diagram &D);
bool class_eq(const ZeroChain &a, const ZeroChain &b, const Diagram &D);

// the unique sigma_0 value of the class; requires r invertible
// (error NotIsoRestriction)
Vec class_reduce_to_base(const ZeroChain &w, const Diagram &D);
// one leaf-peeling transfer: the peeled edge and the edge value moved across
struct PeelStep {
    TreeEdge edge;
    bool leaf_is_vp = false;
    Vec y;
};
// support-minimal representative: mass moves toward sigma_0 whenever the
// transported restriction equation is solvable, stuck leaves stay
ZeroChain class_normalize(const ZeroChain &w, const Diagram &D,
                          std::vector<PeelStep> *steps = nullptr);

// class supported at sigma_0 with value r(e_j)
ZeroChain seed_chain(const Diagram &D, int j);

// right Hecke action on I_1-invariant classes; invariance is audited through
// the constant lifts u(x) (error NotInvariantClass)
ZeroChain hecke_tns_class(const ZeroChain &c, const Diagram &D);
ZeroChain hecke_tpi_class(const ZeroChain &c, const Diagram &D);
ZeroChain hecke_tpi_inv_class(const ZeroChain &c, const Diagram &D);
ZeroChain hecke_echi_class(const ZeroChain &c, const TorusChar &chi, const Diagram &D);

// closes the seed classes under T_ns, T_Pi and every e_chi and returns the
// matrices in the resulting class basis (error NonClosing past dim D0)
HModule window_module(const Diagram &D, const std::vector<ZeroChain> &seeds);

}
