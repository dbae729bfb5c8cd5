#include "modp/coeff.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace modp {

namespace {

struct VertexLess {
    bool operator()(const Vertex &a, const Vertex &b) const { return vertex_less(a, b); }
};

using ChainMap = std::map<Vertex, Vec, VertexLess>;
using VertexSet = std::set<Vertex, VertexLess>;

ChainMap to_map(const ZeroChain &w)
{
    ChainMap m;
    for (const auto &[v, x] : w.items) m.emplace(v, x);
    return m;
}

ZeroChain from_map(const ChainMap &m)
{
    ZeroChain out;
    for (const auto &[v, x] : m)
        if (!is_zero_vec(x)) out.items.push_back({v, x});
    return out;
}

void map_add(const FieldCtx &F, ChainMap &m, const Vertex &v, const Vec &x)
{
    auto it = m.find(v);
    if (it == m.end()) {
        if (!is_zero_vec(x)) m.emplace(v, x);
        return;
    }
    it->second = vec_add(F, it->second, x);
    if (is_zero_vec(it->second)) m.erase(it);
}

Vec column_of(const Mat &M, int j)
{
    Vec v(M.rows);
    for (int i = 0; i < M.rows; ++i) v[i] = M.at(i, j);
    return v;
}

Mat mat_of_columns(const FieldCtx &F, int rows, const std::vector<Vec> &cols)
{
    Mat M(F, rows, (int)cols.size());
    for (int j = 0; j < M.cols; ++j)
        for (int i = 0; i < rows; ++i) M.at(i, j) = cols[j][i];
    return M;
}

Vec pad(const Vec &v, int offset, int total)
{
    Vec out(total, 0);
    for (size_t i = 0; i < v.size(); ++i) out[offset + (int)i] = v[i];
    return out;
}

int eigen_scalar(const FieldCtx &F, const Vec &v, const Vec &img, const char *what)
{
    int k = 0;
    while (k < (int)v.size() && v[k] == 0) ++k;
    require(k < (int)v.size(), "InvalidDiagram", std::string(what) + ": zero vector");
    int c = F.div(img[k], v[k]);
    require(vec_scale(F, c, v) == img, "InvalidDiagram",
            std::string(what) + ": not an eigenvector");
    return c;
}

GL2Local kappa_minus(const FieldCtx &F, const TreeEdge &e)
{
    return gl2_mul(gl2_inv(vertex_matrix(e.vm)),
                   gl2_mul(vertex_matrix(e.vp), gl2_Pi(F)));
}

VertexSet hull_union(const std::vector<Vertex> &supp, const Vertex &root)
{
    VertexSet T;
    T.insert(root);
    for (const Vertex &v : supp)
        for (const Vertex &w : geodesic(v, root)) T.insert(w);
    return T;
}

std::vector<Vertex> neighbors_in(const VertexSet &T, const Vertex &v)
{
    std::vector<Vertex> out;
    for (const Vertex &w : neighbors(v))
        if (T.count(w)) out.push_back(w);
    return out;
}

Vec value_or_zero(const ChainMap &m, const Vertex &v, int dim)
{
    auto it = m.find(v);
    return it == m.end() ? Vec(dim, 0) : it->second;
}

}

int diagram_dim0(const Diagram &D) { return D.rho0.dim; }

bool diagram_u_trivial(const Diagram &D)
{
    Mat id = identity(*D.F, D.dim1);
    for (const Mat &M : D.rho1_u)
        if (!(M == id)) return false;
    return true;
}

Mat rho1_b(const Diagram &D, const GammaElt &b)
{
    require(b.c == 0, "NotUpperTriangular", "rho1 needs an upper triangular element");
    const FieldCtx &F = *D.F;
    int y = F.div(b.b, b.a);
    Mat M = mat_mul(mat_pow(D.rho1_t1, F.dlog(b.a)), mat_pow(D.rho1_t2, F.dlog(b.d)));
    return mat_mul(M, D.rho1_u[y]);
}

Mat rho0_of(const Diagram &D, const GL2Local &g)
{
    StabFactor f = factor_in_stabilizer(g, StabSimplex::sigma0);
    return rep_matrix(D.rho0, f.residue);
}

Mat rho1_of(const Diagram &D, const GL2Local &g, int *eps_out)
{
    StabFactor f = factor_in_stabilizer(g, StabSimplex::sigma1);
    if (eps_out) *eps_out = f.eps;
    Mat M = rho1_b(D, f.residue);
    return f.eps ? mat_mul(D.P, M) : M;
}

void check_diagram(const Diagram &D)
{
    const FieldCtx &F = *D.F;
    require(D.r.rows == D.rho0.dim && D.r.cols == D.dim1, "InvalidDiagram",
            "r has the wrong shape");
    require((int)D.rho1_u.size() == F.q, "InvalidDiagram", "one u slot per field element");
    std::vector<std::pair<GammaElt, Mat>> bgens;
    for (int lam = 0; lam < F.q; ++lam) bgens.push_back({elt_u(lam), D.rho1_u[lam]});
    bgens.push_back({gen_elt(F, 2 * F.q), D.rho1_t1});
    bgens.push_back({gen_elt(F, 2 * F.q + 1), D.rho1_t2});
    for (const auto &[b, M] : bgens)
        require(mat_mul(rep_matrix(D.rho0, b), D.r) == mat_mul(D.r, M), "InvalidDiagram",
                "r is not B-equivariant");
    require(mat_mul(D.P, D.P) == identity(F, D.dim1), "InvalidDiagram", "P squared");
    require(mat_mul(mat_mul(D.P, D.rho1_t1), D.P) == D.rho1_t2, "InvalidDiagram",
            "P does not swap the diagonal generators");
    require(mat_mul(mat_mul(D.P, D.rho1_t2), D.P) == D.rho1_t1, "InvalidDiagram",
            "P does not swap the diagonal generators");
}

Diagram build_diagram_gamma(const FieldCtx &F, const CharOrbit &gamma, bool J_full)
{
    require(!(J_full && gamma.regular), "InvalidLabel", "J = S needs chi = chi^s");
    IrrepLabel lab1{gamma.lo, J_full};
    IrrepLabel lab2 = bar_label(F, lab1);
    CLIrrep R1 = carter_lusztig_irrep(F, lab1);
    CLIrrep R2 = carter_lusztig_irrep(F, lab2);
    Diagram D;
    D.F = &F;
    D.rho0 = direct_sum_rep(R1.rep, R2.rep);
    D.dim1 = 2;
    int d0 = D.rho0.dim;
    Vec v1 = pad(R1.generator, 0, d0);
    Vec v2 = pad(R2.generator, R1.rep.dim, d0);
    D.r = mat_of_columns(F, d0, {v1, v2});
    for (int lam = 0; lam < F.q; ++lam) D.rho1_u.push_back(identity(F, 2));
    GammaElt t1 = gen_elt(F, 2 * F.q), t2 = gen_elt(F, 2 * F.q + 1);
    D.rho1_t1 = Mat(F, 2, 2);
    D.rho1_t1.at(0, 0) = eigen_scalar(F, v1, rep_apply(D.rho0, t1, v1), "seed vector");
    D.rho1_t1.at(1, 1) = eigen_scalar(F, v2, rep_apply(D.rho0, t1, v2), "seed vector");
    D.rho1_t2 = Mat(F, 2, 2);
    D.rho1_t2.at(0, 0) = eigen_scalar(F, v1, rep_apply(D.rho0, t2, v1), "seed vector");
    D.rho1_t2.at(1, 1) = eigen_scalar(F, v2, rep_apply(D.rho0, t2, v2), "seed vector");
    D.P = Mat(F, 2, 2);
    D.P.at(0, 1) = 1;
    D.P.at(1, 0) = 1;
    D.tag = "gamma(" + std::to_string(gamma.lo.c) + "," + std::to_string(gamma.lo.d) +
            (J_full ? ";S)" : ";-)");
    check_diagram(D);
    return D;
}

Diagram build_diagram_constant(const FieldCtx &F, int k)
{
    int m = F.q - 1;
    int kk = m == 0 ? 0 : ((k % m) + m) % m;
    Diagram D;
    D.F = &F;
    D.rho0 = det_power_rep(F, kk);
    D.dim1 = 1;
    D.r = identity(F, 1);
    for (int lam = 0; lam < F.q; ++lam) D.rho1_u.push_back(identity(F, 1));
    D.rho1_t1 = Mat(F, 1, 1);
    D.rho1_t1.at(0, 0) = F.exp(kk);
    D.rho1_t2 = D.rho1_t1;
    D.P = Mat(F, 1, 1);
    D.P.at(0, 0) = F.pow(F.neg(1), kk);
    D.tag = "constant(" + std::to_string(kk) + ")";
    check_diagram(D);
    return D;
}

Diagram build_diagram_isores(const FieldCtx &F, const CharOrbit &gamma, bool J_full)
{
    Diagram G = build_diagram_gamma(F, gamma, J_full);
    Diagram D;
    D.F = &F;
    D.rho0 = G.rho0;
    int d0 = D.rho0.dim;
    D.dim1 = d0;
    D.r = identity(F, d0);
    for (int lam = 0; lam < F.q; ++lam)
        D.rho1_u.push_back(rep_matrix(D.rho0, elt_u(lam)));
    D.rho1_t1 = rep_matrix(D.rho0, gen_elt(F, 2 * F.q));
    D.rho1_t2 = rep_matrix(D.rho0, gen_elt(F, 2 * F.q + 1));
    D.P = rep_matrix(D.rho0, GammaElt{0, 1, 1, 0});
    D.tag = "isores(" + G.tag + ")";
    check_diagram(D);
    return D;
}

ZeroChain zero_chain(const Diagram &D, const Vertex &v, const Vec &x)
{
    require((int)x.size() == D.rho0.dim, "InvalidDiagram", "value dimension");
    ZeroChain w;
    if (!is_zero_vec(x)) w.items.push_back({v, x});
    return w;
}

ZeroChain chain_add(const Diagram &D, const ZeroChain &a, const ZeroChain &b)
{
    ChainMap m = to_map(a);
    for (const auto &[v, x] : b.items) map_add(*D.F, m, v, x);
    return from_map(m);
}

ZeroChain chain_scale(const Diagram &D, int c, const ZeroChain &a)
{
    ZeroChain out;
    if (c == 0) return out;
    for (const auto &[v, x] : a.items) out.items.push_back({v, vec_scale(*D.F, c, x)});
    return out;
}

ZeroChain chain_sub(const Diagram &D, const ZeroChain &a, const ZeroChain &b)
{
    return chain_add(D, a, chain_scale(D, D.F->neg(1), b));
}

bool chain_eq(const ZeroChain &a, const ZeroChain &b)
{
    if (a.items.size() != b.items.size()) return false;
    for (size_t i = 0; i < a.items.size(); ++i)
        if (!vertex_eq(a.items[i].first, b.items[i].first) ||
            a.items[i].second != b.items[i].second)
            return false;
    return true;
}

bool chain_is_zero(const ZeroChain &a) { return a.items.empty(); }

Vec chain_value_at(const Diagram &D, const ZeroChain &a, const Vertex &v)
{
    for (const auto &[w, x] : a.items)
        if (vertex_eq(w, v)) return x;
    return Vec(D.rho0.dim, 0);
}

TreeEdge make_edge(const Vertex &a, const Vertex &b)
{
    require(vertex_adjacent(a, b), "NotAdjacent", "edge endpoints must be adjacent");
    return a.m > b.m ? TreeEdge{b, a} : TreeEdge{a, b};
}

bool edge_eq(const TreeEdge &a, const TreeEdge &b)
{
    return vertex_eq(a.vm, b.vm) && vertex_eq(a.vp, b.vp);
}

OneChain one_chain(const Diagram &D, const TreeEdge &e, const Vec &x)
{
    require((int)x.size() == D.dim1, "InvalidDiagram", "value dimension");
    OneChain w;
    if (!is_zero_vec(x)) w.items.push_back({e, x});
    return w;
}

OneChain one_chain_add(const Diagram &D, const OneChain &a, const OneChain &b)
{
    std::map<Vertex, std::pair<TreeEdge, Vec>, VertexLess> m;
    for (const auto &[e, x] : a.items) m.emplace(e.vp, std::make_pair(e, x));
    for (const auto &[e, x] : b.items) {
        auto it = m.find(e.vp);
        if (it == m.end())
            m.emplace(e.vp, std::make_pair(e, x));
        else
            it->second.second = vec_add(*D.F, it->second.second, x);
    }
    OneChain out;
    for (const auto &[k, ex] : m)
        if (!is_zero_vec(ex.second)) out.items.push_back(ex);
    return out;
}

ZeroChain boundary(const OneChain &w, const Diagram &D)
{
    const FieldCtx &F = *D.F;
    ChainMap m;
    for (const auto &[e, x] : w.items) {
        map_add(F, m, e.vp, mat_vec(D.r, x));
        Mat K = rho0_of(D, kappa_minus(F, e));
        Vec down = mat_vec(K, mat_vec(D.r, mat_vec(D.P, x)));
        map_add(F, m, e.vm, vec_scale(F, F.neg(1), down));
    }
    return from_map(m);
}

ZeroChain g_act_zero(const GL2Local &g, const ZeroChain &w, const Diagram &D)
{
    const FieldCtx &F = *D.F;
    ChainMap m;
    for (const auto &[v, x] : w.items) {
        Vertex nv = act_on_vertex(g, v);
        GL2Local kappa =
            gl2_mul(gl2_inv(vertex_matrix(nv)), gl2_mul(g, vertex_matrix(v)));
        map_add(F, m, nv, mat_vec(rho0_of(D, kappa), x));
    }
    return from_map(m);
}

OneChain g_act_one(const GL2Local &g, const OneChain &w, const Diagram &D)
{
    const FieldCtx &F = *D.F;
    std::map<Vertex, std::pair<TreeEdge, Vec>, VertexLess> m;
    for (const auto &[e, x] : w.items) {
        Vertex a = act_on_vertex(g, e.vm), b = act_on_vertex(g, e.vp);
        TreeEdge ne = make_edge(a, b);
        bool swapped = !vertex_eq(ne.vp, b);
        GL2Local kappa =
            gl2_mul(gl2_inv(vertex_matrix(ne.vp)), gl2_mul(g, vertex_matrix(e.vp)));
        int eps = 0;
        Mat M = rho1_of(D, kappa, &eps);
        require((eps == 1) == swapped, "NotInStabilizer", "edge cocycle audit");
        Vec val = mat_vec(M, x);
        if (swapped) val = vec_scale(F, F.neg(1), val);
        auto it = m.find(ne.vp);
        if (it == m.end())
            m.emplace(ne.vp, std::make_pair(ne, val));
        else
            it->second.second = vec_add(F, it->second.second, val);
    }
    OneChain out;
    for (const auto &[k, ex] : m)
        if (!is_zero_vec(ex.second)) out.items.push_back(ex);
    return out;
}

namespace {

// chain -= boundary(y on e) given that the leaf entry cancels exactly
void apply_transfer(const Diagram &D, ChainMap &m, const TreeEdge &e,
                    const Vertex &leaf, const Vertex &parent, const Vec &y)
{
    const FieldCtx &F = *D.F;
    m.erase(leaf);
    if (vertex_eq(leaf, e.vp)) {
        Mat K = rho0_of(D, kappa_minus(F, e));
        map_add(F, m, parent, mat_vec(K, mat_vec(D.r, mat_vec(D.P, y))));
    } else {
        map_add(F, m, parent, vec_scale(F, F.neg(1), mat_vec(D.r, y)));
    }
}

// edge value with del(y on e) matching the leaf entry, if solvable
std::optional<Vec> transfer_value(const Diagram &D, ChainMap &m, const TreeEdge &e,
                                  const Vertex &leaf)
{
    const FieldCtx &F = *D.F;
    Vec x = value_or_zero(m, leaf, D.rho0.dim);
    if (vertex_eq(leaf, e.vp)) return solve(D.r, x);
    Mat K = rho0_of(D, kappa_minus(F, e));
    Mat A = mat_scale(F.neg(1), mat_mul(K, mat_mul(D.r, D.P)));
    return solve(A, x);
}

}

std::optional<OneChain> boundary_witness(const ZeroChain &w, const Diagram &D)
{
    const FieldCtx &F = *D.F;
    require(mat_rank(D.r) == D.dim1, "NotInjectiveRestriction", "r must be injective");
    OneChain wit;
    if (w.items.empty()) return wit;
    ChainMap m = to_map(w);
    std::vector<Vertex> supp;
    for (const auto &[v, x] : m) supp.push_back(v);
    VertexSet T = hull_union(supp, supp.front());
    Vertex base = vertex_base(F);
    std::map<Vertex, long long, VertexLess> dist;
    for (const Vertex &v : T) dist.emplace(v, tree_distance(v, base));
    while (T.size() > 1) {
        bool found = false;
        Vertex leaf, parent;
        for (const Vertex &v : T) {
            std::vector<Vertex> nb = neighbors_in(T, v);
            if (nb.size() != 1) continue;
            if (!found || dist.at(v) > dist.at(leaf)) {
                leaf = v;
                parent = nb[0];
                found = true;
            }
        }
        require(found, "NotInjectiveRestriction", "hull peel found no leaf");
        TreeEdge e = make_edge(leaf, parent);
        std::optional<Vec> y = transfer_value(D, m, e, leaf);
        if (!y) return std::nullopt;
        apply_transfer(D, m, e, leaf, parent, *y);
        if (!is_zero_vec(*y)) wit.items.push_back({e, *y});
        T.erase(leaf);
    }
    if (!m.empty()) return std::nullopt;
    std::sort(wit.items.begin(), wit.items.end(),
              [](const auto &a, const auto &b) { return vertex_less(a.first.vp, b.first.vp); });
    return wit;
}

bool is_boundary(const ZeroChain &w, const Diagram &D)
{
    return boundary_witness(w, D).has_value();
}

bool class_eq(const ZeroChain &a, const ZeroChain &b, const Diagram &D)
{
    return is_boundary(chain_sub(D, a, b), D);
}

Vec class_reduce_to_base(const ZeroChain &w, const Diagram &D)
{
    const FieldCtx &F = *D.F;
    require(D.r.rows == D.r.cols && inverse(D.r).has_value(), "NotIsoRestriction",
            "r must be invertible");
    Vertex base = vertex_base(F);
    ChainMap m = to_map(w);
    std::vector<Vertex> supp;
    for (const auto &[v, x] : m) supp.push_back(v);
    VertexSet T = hull_union(supp, base);
    std::map<Vertex, long long, VertexLess> dist;
    for (const Vertex &v : T) dist.emplace(v, tree_distance(v, base));
    while (T.size() > 1) {
        bool found = false;
        Vertex leaf, parent;
        for (const Vertex &v : T) {
            if (vertex_eq(v, base)) continue;
            std::vector<Vertex> nb = neighbors_in(T, v);
            if (nb.size() != 1) continue;
            if (!found || dist.at(v) > dist.at(leaf)) {
                leaf = v;
                parent = nb[0];
                found = true;
            }
        }
        require(found, "NotIsoRestriction", "hull peel found no leaf");
        TreeEdge e = make_edge(leaf, parent);
        std::optional<Vec> y = transfer_value(D, m, e, leaf);
        require(y.has_value(), "NotIsoRestriction", "transfer must solve");
        apply_transfer(D, m, e, leaf, parent, *y);
        T.erase(leaf);
    }
    return value_or_zero(m, base, D.rho0.dim);
}

ZeroChain class_normalize(const ZeroChain &w, const Diagram &D, std::vector<PeelStep> *steps)
{
    const FieldCtx &F = *D.F;
    Vertex base = vertex_base(F);
    ChainMap m = to_map(w);
    std::vector<Vertex> supp;
    for (const auto &[v, x] : m) supp.push_back(v);
    VertexSet T = hull_union(supp, base);
    std::map<Vertex, long long, VertexLess> dist;
    for (const Vertex &v : T) dist.emplace(v, tree_distance(v, base));
    VertexSet stuck;
    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<Vertex> leaves;
        for (const Vertex &v : T) {
            if (vertex_eq(v, base) || stuck.count(v)) continue;
            if (neighbors_in(T, v).size() == 1) leaves.push_back(v);
        }
        std::sort(leaves.begin(), leaves.end(), [&](const Vertex &a, const Vertex &b) {
            if (dist.at(a) != dist.at(b)) return dist.at(a) > dist.at(b);
            return vertex_less(a, b);
        });
        for (const Vertex &leaf : leaves) {
            Vertex parent = neighbors_in(T, leaf)[0];
            TreeEdge e = make_edge(leaf, parent);
            std::optional<Vec> y = transfer_value(D, m, e, leaf);
            if (!y) {
                stuck.insert(leaf);
                continue;
            }
            apply_transfer(D, m, e, leaf, parent, *y);
            if (steps) steps->push_back({e, vertex_eq(leaf, e.vp), *y});
            T.erase(leaf);
            progress = true;
            break;
        }
    }
    return from_map(m);
}

ZeroChain seed_chain(const Diagram &D, int j)
{
    require(j >= 0 && j < D.dim1, "InvalidLabel", "seed index");
    return zero_chain(D, vertex_base(*D.F), column_of(D.r, j));
}

namespace {

void audit_invariant(const ZeroChain &c, const Diagram &D)
{
    const FieldCtx &F = *D.F;
    for (int x = 0; x < F.q; ++x)
        require(class_eq(g_act_zero(gl2_u(F, x), c, D), c, D), "NotInvariantClass",
                "class is not I_1-invariant");
}

}

ZeroChain hecke_tns_class(const ZeroChain &c, const Diagram &D)
{
    const FieldCtx &F = *D.F;
    audit_invariant(c, D);
    GL2Local nsi = gl2_inv(gl2_ns(F));
    ZeroChain acc;
    for (int x = 0; x < F.q; ++x)
        acc = chain_add(D, acc, g_act_zero(gl2_mul(gl2_u(F, x), nsi), c, D));
    return class_normalize(acc, D);
}

ZeroChain hecke_tpi_class(const ZeroChain &c, const Diagram &D)
{
    audit_invariant(c, D);
    return class_normalize(g_act_zero(gl2_inv(gl2_Pi(*D.F)), c, D), D);
}

ZeroChain hecke_tpi_inv_class(const ZeroChain &c, const Diagram &D)
{
    audit_invariant(c, D);
    return class_normalize(g_act_zero(gl2_Pi(*D.F), c, D), D);
}

ZeroChain hecke_echi_class(const ZeroChain &c, const TorusChar &chi, const Diagram &D)
{
    const FieldCtx &F = *D.F;
    audit_invariant(c, D);
    ZeroChain acc;
    for (int al = 0; al <= F.q - 2; ++al)
        for (int be = 0; be <= F.q - 2; ++be) {
            int coef = F.exp((long long)chi.c * al + (long long)chi.d * be);
            GammaElt h = elt_diag(F.exp(al), F.exp(be));
            GL2Local lift = gl2_from_gamma(F, ginv(F, h));
            acc = chain_add(D, acc, chain_scale(D, coef, g_act_zero(lift, c, D)));
        }
    int scalar = F.inv(F.from_int((long long)(F.q - 1) * (F.q - 1)));
    return class_normalize(chain_scale(D, scalar, acc), D);
}

namespace {

std::vector<Vertex> key_union(const std::vector<ZeroChain> &chains)
{
    std::vector<Vertex> keys;
    for (const ZeroChain &c : chains)
        for (const auto &[v, x] : c.items) keys.push_back(v);
    std::sort(keys.begin(), keys.end(), vertex_less);
    keys.erase(std::unique(keys.begin(), keys.end(),
                           [](const Vertex &a, const Vertex &b) { return vertex_eq(a, b); }),
               keys.end());
    return keys;
}

Vec dense_of(const Diagram &D, const ZeroChain &c, const std::vector<Vertex> &keys)
{
    int d0 = D.rho0.dim;
    Vec out((int)keys.size() * d0, 0);
    for (const auto &[v, x] : c.items) {
        auto it = std::lower_bound(keys.begin(), keys.end(), v, vertex_less);
        int slot = (int)(it - keys.begin());
        for (int i = 0; i < d0; ++i) out[(size_t)slot * d0 + i] = x[i];
    }
    return out;
}

std::optional<Vec> span_coords(const Diagram &D, const std::vector<ZeroChain> &basis,
                               const ZeroChain &c)
{
    if (basis.empty()) return chain_is_zero(c) ? std::optional<Vec>(Vec{}) : std::nullopt;
    std::vector<ZeroChain> all = basis;
    all.push_back(c);
    std::vector<Vertex> keys = key_union(all);
    std::vector<Vec> rows;
    for (const ZeroChain &b : basis) rows.push_back(dense_of(D, b, keys));
    Mat M = from_rows(*D.F, (int)keys.size() * D.rho0.dim, rows);
    return coordinates_in(M, dense_of(D, c, keys));
}

}

HModule window_module(const Diagram &D, const std::vector<ZeroChain> &seeds)
{
    const FieldCtx &F = *D.F;
    int d0 = D.rho0.dim;
    std::vector<ZeroChain> basis;
    auto try_add = [&](const ZeroChain &raw) {
        ZeroChain c = class_normalize(raw, D);
        if (chain_is_zero(c)) return;
        if (span_coords(D, basis, c)) return;
        basis.push_back(c);
        require((int)basis.size() <= d0, "NonClosing", "window exceeded dim D0");
    };
    for (const ZeroChain &s : seeds) try_add(s);
    std::vector<TorusChar> chars = all_chars(F);
    for (size_t i = 0; i < basis.size(); ++i) {
        ZeroChain c = basis[i];
        try_add(hecke_tns_class(c, D));
        try_add(hecke_tpi_class(c, D));
        for (const TorusChar &chi : chars) try_add(hecke_echi_class(c, chi, D));
    }
    int dim = (int)basis.size();
    auto rows_of = [&](auto op) {
        Mat M(F, dim, dim);
        for (int i = 0; i < dim; ++i) {
            ZeroChain img = op(basis[i]);
            if (chain_is_zero(img)) continue;
            std::optional<Vec> co = span_coords(D, basis, img);
            require(co.has_value(), "NonClosing", "image left the window");
            for (int j = 0; j < dim; ++j) M.at(i, j) = (*co)[j];
        }
        return M;
    };
    HModule M;
    M.F = &F;
    M.dim = dim;
    M.Tns = rows_of([&](const ZeroChain &c) { return hecke_tns_class(c, D); });
    M.TPi = rows_of([&](const ZeroChain &c) { return hecke_tpi_class(c, D); });
    M.TPiInv = rows_of([&](const ZeroChain &c) { return hecke_tpi_inv_class(c, D); });
    require(mat_mul(M.TPi, M.TPiInv) == identity(F, dim) &&
                mat_mul(M.TPiInv, M.TPi) == identity(F, dim),
            "NonClosing", "T_Pi inverse audit");
    for (const TorusChar &chi : chars) {
        Mat E = rows_of([&](const ZeroChain &c) { return hecke_echi_class(c, chi, D); });
        if (!is_zero_mat(E)) M.e[chi] = E;
    }
    return M;
}

}
