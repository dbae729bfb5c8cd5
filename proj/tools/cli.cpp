#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modp/acceptance.hpp"
#include "modp/coeff.hpp"
#include "modp/injective.hpp"

using json = nlohmann::ordered_json;
using namespace modp;

namespace {

json j_char(const TorusChar &chi) { return json::array({chi.c, chi.d}); }

std::string char_key(const TorusChar &chi)
{
    return std::to_string(chi.c) + "," + std::to_string(chi.d);
}

json j_orbit(const CharOrbit &g)
{
    return json{{"lo", j_char(g.lo)}, {"hi", j_char(g.hi)}, {"regular", g.regular}};
}

json j_vec(const Vec &v) { return json(v); }

json j_mat(const Mat &M)
{
    json rows = json::array();
    for (int i = 0; i < M.rows; ++i) {
        json r = json::array();
        for (int j = 0; j < M.cols; ++j) r.push_back(M.at(i, j));
        rows.push_back(r);
    }
    return rows;
}

json j_poly(const LaurentSeries &a)
{
    json terms = json::array();
    for (auto &[e, c] : ls_terms(a)) terms.push_back(json::array({e, c}));
    return terms;
}

json j_vertex(const Vertex &v) { return json{{"m", v.m}, {"u", j_poly(v.u)}}; }

json j_module(const HModule &M)
{
    json e = json::object();
    for (auto &[chi, E] : M.e) e[char_key(chi)] = j_mat(E);
    return json{{"dim", M.dim},
                {"Tns", j_mat(M.Tns)},
                {"TPi", j_mat(M.TPi)},
                {"TPiInv", j_mat(M.TPiInv)},
                {"e", e}};
}

json j_chain(const ZeroChain &c)
{
    json items = json::array();
    for (auto &[v, x] : c.items)
        items.push_back(json{{"vertex", j_vertex(v)}, {"vector", j_vec(x)}});
    return items;
}

json j_label(const IrrepLabel &lab)
{
    return json{{"chi", j_char(lab.chi)}, {"J", lab.J_full ? "S" : "-"}};
}

struct Checks {
    json table = json::array();
    bool all = true;
    std::string first_fail;

    void add(const std::string &name, bool ok)
    {
        table.push_back(json{{"name", name}, {"pass", ok}});
        if (!ok && all) first_fail = name;
        all = all && ok;
    }
};

std::vector<std::vector<int>> all_tuples(const FieldCtx &F)
{
    int total = 1;
    for (int i = 0; i < F.n; ++i) total *= F.p;
    std::vector<std::vector<int>> out;
    for (int code = 0; code < total; ++code) {
        std::vector<int> r(F.n);
        int c = code;
        for (int i = 0; i < F.n; ++i) {
            r[i] = c % F.p;
            c /= F.p;
        }
        out.push_back(r);
    }
    return out;
}

LaurentSeries rnd_poly(const FieldCtx &F, std::mt19937_64 &rng, long long lo, long long hi)
{
    std::vector<std::pair<long long, int>> terms;
    for (long long e = lo; e <= hi; ++e) terms.push_back({e, (int)(rng() % F.q)});
    return ls_from_terms(F, terms);
}

GL2Local rnd_K(const FieldCtx &F, std::mt19937_64 &rng)
{
    for (;;) {
        try {
            GL2Local g = gl2_make(F, rnd_poly(F, rng, 0, 2), rnd_poly(F, rng, 0, 2),
                                  rnd_poly(F, rng, 0, 2), rnd_poly(F, rng, 0, 2));
            if (in_K(g)) return g;
        } catch (const Error &) {
        }
    }
}

GL2Local rnd_G(const FieldCtx &F, std::mt19937_64 &rng)
{
    GL2Local g = rnd_K(F, rng);
    int e = (int)(rng() % 3);
    for (int i = 0; i < e; ++i) g = gl2_mul(g, gl2_Pi(F));
    g = gl2_mul(g, rnd_K(F, rng));
    long long j = (long long)(rng() % 5) - 2;
    return gl2_scalar_mul(ls_monomial(F, 1, j), g);
}

void cmd_irreps(const FieldCtx &F, json &out, Checks &ck)
{
    json table = json::array();
    bool rt = true, certs = true;
    auto labels = all_labels(F);
    for (auto &lab : labels) {
        WeightLabel w = dictionary(F, lab);
        bool round = dictionary_back(F, w) == lab;
        CLIrrep rho = carter_lusztig_irrep(F, lab);
        GammaRep V = build_v_tuple(F, w.r, w.a);
        HomSpace H = hom_space(rho.rep.gen, V.gen);
        bool iso = H.is_isomorphic && (int)H.basis.size() == 1;
        rt = rt && round;
        certs = certs && iso;
        table.push_back(json{{"label", j_label(lab)},
                             {"dim", rho.rep.dim},
                             {"weight", json{{"a", w.a}, {"r", json(w.r)}}},
                             {"round_trip", round},
                             {"iso_certified", iso}});
    }
    out["labels"] = table;
    ck.add("label_count", (long long)labels.size() == (long long)F.q * (F.q - 1));
    ck.add("dictionary_round_trip", rt);
    ck.add("hom_certificates", certs);
}

void cmd_envelopes(const FieldCtx &F, json &out, Checks &ck)
{
    json spaces = json::array();
    bool rdims = true;
    for (int r = 0; r <= F.p - 1; ++r) {
        RSpace R = build_R(F, r);
        rdims = rdims && R.rep.dim == (r < F.p - 1 ? 2 * F.p : F.p);
        spaces.push_back(json{{"r", r}, {"dim", R.rep.dim}});
    }
    out["spaces"] = spaces;
    ck.add("r_dimensions", rdims);

    json tuples = json::array();
    bool socle = true, tns = true;
    for (auto &r : all_tuples(F)) {
        RTuple T = build_R_tuple(F, r, 0);
        int uinv = u_invariants(T.rep).space.dim();
        socle = socle && uinv == (int)T.sigma.size();
        json bs = json::array();
        for (auto &eps : T.sigma) {
            TnsImage img = tns_on_socle_basis(T, eps);
            tns = tns && img.agree;
            bs.push_back(json{{"eps", json(eps)},
                              {"char", j_char(T.b_char(eps))},
                              {"tns_zero", is_zero_vec(img.closed)},
                              {"tns_agree", img.agree}});
        }
        tuples.push_back(json{{"r", json(r)},
                              {"dim", T.rep.dim},
                              {"sigma_size", (int)T.sigma.size()},
                              {"u_invariant_dim", uinv},
                              {"b", bs}});
    }
    out["tuples"] = tuples;
    ck.add("socle_dimensions", socle);
    ck.add("tns_brute_vs_closed", tns);

    json envs = json::array();
    long long total = 0;
    for (auto &lab : all_labels(F)) {
        Envelope E = identify_injective_envelope(F, lab);
        WeightLabel w = dictionary(F, lab);
        long long dim_rho = 1;
        for (int i = 0; i < F.n; ++i) dim_rho *= w.r[i] + 1;
        total += dim_rho * E.inj_dim;
        envs.push_back(json{{"label", j_label(lab)},
                            {"socle_dim", dim_rho},
                            {"inj_dim", E.inj_dim}});
    }
    out["envelopes"] = envs;
    ck.add("group_algebra_sum", total == gamma_order(F));
}

void cmd_hecke(const FieldCtx &F, json &out, Checks &ck)
{
    auto orbits = all_orbits(F);
    json table = json::array();
    bool rel = true;
    std::vector<HModule> mods;
    for (auto &g : orbits) {
        HModule M = make_M_gamma(F, g, 1);
        bool r = check_relations(M).all_pass;
        rel = rel && r;
        json row{{"orbit", j_orbit(g)}, {"M", j_module(M)}, {"relations", r}};
        if (g.regular) {
            HModule L = make_L_gamma(F, g, 1);
            bool rl = check_relations(L).all_pass;
            rel = rel && rl;
            row["L"] = j_module(L);
            row["L_relations"] = rl;
        }
        table.push_back(row);
        mods.push_back(M);
    }
    out["modules"] = table;

    json iso = json::array();
    bool distinct = true;
    for (size_t i = 0; i < mods.size(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < mods.size(); ++j) {
            bool same = i == j || module_iso(mods[i], mods[j]).has_value();
            if (i != j && same) distinct = false;
            row.push_back(same);
        }
        iso.push_back(row);
    }
    out["iso_matrix"] = iso;
    ck.add("relations", rel);
    ck.add("pairwise_non_isomorphic", distinct);
}

void cmd_injmod(const FieldCtx &F, json &out, Checks &ck)
{
    json table = json::array();
    bool rel = true, census = true, split = true;
    for (auto &g : all_orbits(F)) {
        InjModule I = extend_to_full_hecke(F, g);
        bool r = check_relations(I.mod).all_pass;
        rel = rel && r;
        json sm = json::array();
        std::vector<Vec> rows;
        for (auto &s : I.summands) {
            sm.push_back(json{{"kind", s.kind}, {"orbit", j_orbit(s.orbit)},
                              {"dim", s.embed.rows}});
            for (int i = 0; i < s.embed.rows; ++i) {
                Vec v(s.embed.cols);
                for (int j = 0; j < s.embed.cols; ++j) v[j] = s.embed.at(i, j);
                rows.push_back(v);
            }
        }
        bool ok;
        if (!g.regular)
            ok = I.mod.dim == (1 << F.n) && (int)I.summands.size() == (1 << (F.n - 1)) &&
                 I.summands[0].kind == "M" && I.summands[0].orbit == g;
        else {
            WeightLabel w = dictionary(F, {g.lo, false});
            int c = 0, d = 0;
            for (int i = 0; i < F.n; ++i) {
                if (w.r[i] != F.p - 1) ++c;
                if (w.r[i] != 0) ++d;
            }
            ok = I.mod.dim == (1 << c) + (1 << d) &&
                 (int)I.summands.size() == 1 + (1 << (c - 1)) + (1 << (d - 1)) - 2 &&
                 I.summands[0].kind == "L" && I.summands[0].orbit == g;
        }
        census = census && ok;
        bool sp = mat_rank(from_rows(F, I.mod.dim, rows)) == I.mod.dim;
        split = split && sp;
        table.push_back(json{{"orbit", j_orbit(g)},
                             {"dim", I.mod.dim},
                             {"labels", json(I.labels)},
                             {"relations", r},
                             {"census", ok},
                             {"splits", sp},
                             {"summands", sm}});
    }
    out["modules"] = table;
    ck.add("relations", rel);
    ck.add("census_counts", census);
    ck.add("summands_split", split);
}

void cmd_tree(const FieldCtx &F, json &out, Checks &ck, uint64_t seed, long long prec)
{
    std::mt19937_64 rng(seed);
    Vertex base = vertex_base(F);
    out["base"] = j_vertex(base);

    auto nb = neighbors(base);
    json jn = json::array();
    for (auto &v : nb) jn.push_back(j_vertex(v));
    out["neighbors"] = jn;
    bool distinct = true;
    for (size_t i = 0; i < nb.size(); ++i)
        for (size_t j = i + 1; j < nb.size(); ++j)
            if (vertex_eq(nb[i], nb[j])) distinct = false;
    ck.add("neighbor_count", (int)nb.size() == F.q + 1 && distinct);

    Vertex from = act_on_vertex(rnd_G(F, rng), base);
    Vertex to = act_on_vertex(rnd_G(F, rng), base);
    auto path = geodesic(from, to);
    json jp = json::array();
    for (auto &v : path) jp.push_back(j_vertex(v));
    out["geodesic_demo"] = json{{"from", j_vertex(from)}, {"to", j_vertex(to)},
                                {"path", jp}};
    bool geo = vertex_eq(path.front(), from) && vertex_eq(path.back(), to) &&
               (long long)path.size() == tree_distance(from, to) + 1;
    for (size_t i = 0; i + 1 < path.size(); ++i)
        geo = geo && vertex_adjacent(path[i], path[i + 1]);
    ck.add("geodesic_valid", geo);

    bool round = true, coset = true, invs = true, dist_inv = true;
    for (int it = 0; it < 12; ++it) {
        GL2Local g = rnd_G(F, rng);
        Vertex v = act_on_vertex(g, base);
        round = round && vertex_eq(vertex_normalize(vertex_matrix(v)), v);
        long long j = (long long)(rng() % 5) - 2;
        GL2Local k = gl2_scalar_mul(ls_monomial(F, 1, j), rnd_K(F, rng));
        coset = coset && vertex_eq(act_on_vertex(gl2_mul(g, k), base), v);
        GL2Local gi = gl2_inv(g, prec);
        invs = invs && gl2_agree(gl2_mul(g, gi), gl2_id(F));
        Vertex w = act_on_vertex(rnd_G(F, rng), base);
        dist_inv = dist_inv && tree_distance(act_on_vertex(g, v), act_on_vertex(g, w)) ==
                                   tree_distance(v, w);
    }
    ck.add("normal_form_round_trip", round);
    ck.add("coset_invariance", coset);
    ck.add("inverse_at_precision", invs);
    ck.add("distance_invariance", dist_inv);
}

void cmd_supermod(const FieldCtx &F, json &out, Checks &ck, bool trace)
{
    auto orbits = all_orbits(F);
    json table = json::array();
    bool rel = true, iso = true, motion = true;
    for (auto &g : orbits) {
        Diagram D = build_diagram_gamma(F, g);
        HModule W = window_module(D, {seed_chain(D, 0), seed_chain(D, 1)});
        bool r = check_relations(W).all_pass;
        bool is = module_iso(W, make_M_gamma(F, g, 1)).has_value();
        rel = rel && r;
        iso = iso && is;

        ZeroChain moved = g_act_zero(gl2_inv(gl2_Pi(F)), seed_chain(D, 0), D);
        std::vector<PeelStep> steps;
        ZeroChain norm = class_normalize(moved, D, &steps);
        bool mo = chain_eq(norm, seed_chain(D, 1));
        motion = motion && mo;

        json row{{"orbit", j_orbit(g)},
                 {"window", j_module(W)},
                 {"relations", r},
                 {"iso_to_M_gamma", is},
                 {"tpi_motion",
                  json{{"moved", j_chain(moved)}, {"normalized", j_chain(norm)},
                       {"returns_to_base", mo}}}};
        if (trace) {
            json jt = json::array();
            for (auto &s : steps)
                jt.push_back(json{{"edge",
                                   json{{"vm", j_vertex(s.edge.vm)},
                                        {"vp", j_vertex(s.edge.vp)}}},
                                  {"leaf_is_vp", s.leaf_is_vp},
                                  {"transfer", j_vec(s.y)}});
            row["tpi_motion"]["trace"] = jt;
        }
        table.push_back(row);
    }
    out["orbits"] = table;
    ck.add("orbit_count", (long long)orbits.size() == (long long)F.q * (F.q - 1) / 2);
    ck.add("relations", rel);
    ck.add("window_iso", iso);
    ck.add("tpi_chain_motion", motion);
}

void cmd_acceptance(json &out, Checks &ck, uint64_t seed)
{
    json table = json::array();
    for (const auto &r : run_acceptance(seed)) {
        table.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        ck.add(r.name, r.pass);
    }
    out["criteria"] = table;
}

}

int main(int argc, char **argv)
{
    CLI::App app{"exact mod-p tables for GL2 over a local field at desk scale"};
    int p = 0, n = 1;
    std::string cmd, out_path;
    long long precision = kLaurentPrec;
    bool trace = false;
    uint64_t seed = 1;
    app.add_option("--p", p, "residue characteristic")->required();
    app.add_option("--n", n, "field degree, q = p^n");
    app.add_option("--cmd", cmd, "subcommand")
        ->required()
        ->check(CLI::IsMember({"irreps", "envelopes", "hecke", "injmod", "tree",
                               "supermod", "acceptance"}));
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");
    app.add_option("--precision", precision, "Laurent precision override");
    app.add_flag("--trace", trace, "include peeling audit trails");
    app.add_option("--seed", seed, "seed for sampled checks");
    CLI11_PARSE(app, argc, argv);

    json report;
    Checks ck;
    try {
        long long q = 1;
        for (int i = 0; i < n; ++i) q *= p;
        require(q <= 81, "OutOfScope", "p^n must be at most 81");
        FieldCtx F = field_init(p, n);
        report["schema"] = "v1";
        report["command"] = cmd;
        report["p"] = p;
        report["n"] = n;
        report["q"] = F.q;
        report["seed"] = seed;

        if (cmd == "irreps")
            cmd_irreps(F, report, ck);
        else if (cmd == "envelopes")
            cmd_envelopes(F, report, ck);
        else if (cmd == "hecke")
            cmd_hecke(F, report, ck);
        else if (cmd == "injmod")
            cmd_injmod(F, report, ck);
        else if (cmd == "tree")
            cmd_tree(F, report, ck, seed, precision);
        else if (cmd == "supermod")
            cmd_supermod(F, report, ck, trace);
        else
            cmd_acceptance(report, ck, seed);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    report["checks"] = ck.table;
    report["pass"] = ck.all;
    std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open " << out_path << "\n";
            return 2;
        }
        f << text;
    }
    if (!ck.all) {
        std::cerr << "first failing check: " << ck.first_fail << "\n";
        return 1;
    }
    return 0;
}
