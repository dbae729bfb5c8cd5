#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modp/gamma.hpp"

namespace modp {

// right modules: matrices act on row vectors, so products compose in algebra
// order, M(AB) = M(A) M(B)

struct HKModule {
    const FieldCtx *F = nullptr;
    int dim = 0;
    Mat Tns;
    std::map<TorusChar, Mat> e; // absent characters act by zero
    Mat e_mat(const TorusChar &chi) const;
    std::vector<Mat> gens() const; // Tns, then e in all_chars order
};

struct HModule {
    const FieldCtx *F = nullptr;
    int dim = 0;
    Mat Tns, TPi, TPiInv;
    std::map<TorusChar, Mat> e;
    Mat e_mat(const TorusChar &chi) const;
    std::vector<Mat> gens() const; // Tns, TPi, TPiInv, then e in all_chars order
};

struct CharOrbit {
    TorusChar lo, hi; // lex ordered, lo == hi iff chi = chi^s
    bool regular = false;
    bool operator==(const CharOrbit &) const = default;
    bool operator<(const CharOrbit &o) const { return lo < o.lo || (lo == o.lo && hi < o.hi); }
};
CharOrbit make_orbit(const TorusChar &chi);
std::vector<CharOrbit> all_orbits(const FieldCtx &F); // q(q-1)/2 of them

// one dimensional H_K-modules M_{chi,J}; J_full means J = {s}, allowed only
// when chi = chi^s (error InvalidJ)
HKModule make_M_chiJ(const FieldCtx &F, const TorusChar &chi, bool J_full);

// standard supersingular module on v1, v2 (error ZeroLambda)
HModule make_M_gamma(const FieldCtx &F, const CharOrbit &g, int lambda);

// extension of M_gamma by itself on the images of e_chi, e_chi TPi,
// e_chi Tns, e_chi Tns TPi; regular orbits only (error IwahoriOrbit)
HModule make_L_gamma(const FieldCtx &F, const CharOrbit &g, int lambda);

struct RelationAudit {
    std::vector<std::pair<std::string, bool>> items;
    bool all_pass = true;
    bool passed(const std::string &name) const;
};
RelationAudit check_relations(const HModule &M);
RelationAudit check_relations_hk(const HKModule &M);

struct HKSummand {
    HKModule mod;
    Mat embed;       // rows: summand basis in parent coordinates
    std::string tag; // "M(c,d;S)", "M(c,d;-)" or "ind(c,d)"
};
std::vector<HKSummand> restrict_to_HK(const HModule &M);
HKModule forget_to_HK(const HModule &M);

// invertible P with M_A P = P M'_A for all generators, if one exists
std::optional<Mat> module_iso(const HModule &A, const HModule &B, uint64_t seed = 1);
std::optional<Mat> module_iso_hk(const HKModule &A, const HKModule &B, uint64_t seed = 1);

// twist by the unramified character xi^val(det): TPi scales by xi^{-1}
// (error ZeroXi)
HModule twist_unramified(const HModule &M, int xi);

struct ClassifyTag {
    std::string kind; // supersingular | L | trivial-type | HK-character | other
    CharOrbit orbit{};
    int lambda = 0;
    std::optional<Mat> sub_embed; // rows of a supersingular submodule when kind == L
};
ClassifyTag classify(const HModule &M);

}
