// Batch front end: read a JSON job document, run the requested computation,
// write a JSON result to standard output and a human checklist to standard
// error. Exit 0 on success, 1 when a theorem-shaped identity fails, 2 for
// anything wrong with the input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "finsymp/json_io.hpp"

using namespace finsymp;

namespace {

struct JobContext {
    Json doc;
    long long bound = 0; // 0 means each operation's own default
    long long seed = 2026;
    std::vector<std::string> notes;

    long long bound_or(long long dflt) const { return bound > 0 ? bound : dflt; }
    void note(const std::string& line) { notes.push_back(line); }
};

std::string describe(const Group& g) {
    std::string out = "(";
    for (size_t i = 0; i < g.factors.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(g.factors[i]);
    }
    return out + ")";
}

LagrangianPair named_pair(const SymplecticSpace& s, const Json& pairs, const std::string& name) {
    if (!pairs.is_object()) throw InvalidInput("'pairs' must be an object keyed by name");
    auto it = pairs.find(name);
    if (it == pairs.end()) throw InvalidInput("unknown pair name '" + name + "'");
    Subgroup y = subgroup_from_json(s.carrier, *it);
    return LagrangianPair(s, y, quadratic_refinement(s, y));
}

Json run_lagrangians(JobContext& ctx) {
    SymplecticSpace s = space_from_json(json_key(ctx.doc, "space"));
    auto subs = enumerate_lagrangians(s, ctx.bound_or(4096));
    Json list = Json::array();
    for (const auto& y : subs) {
        if (classify_subgroup(s, y) != Classification::lagrangian)
            throw InvariantViolation("a listed subgroup fails the lagrangian check");
        list.push_back(subgroup_to_json(y));
    }
    ctx.note("carrier " + describe(s.carrier) + ": " + std::to_string(subs.size()) +
             " lagrangian subgroups");
    ctx.note("verified: every listed subgroup is lagrangian for the commutator pairing");
    return Json{{"kind", "lagrangians"}, {"count", subs.size()}, {"lagrangians", std::move(list)}};
}

Json run_model(JobContext& ctx) {
    SymplecticSpace s = space_from_json(json_key(ctx.doc, "space"));
    Subgroup y = subgroup_from_json(s.carrier, json_key(ctx.doc, "subgroup"));
    LagrangianPair pair(s, y, quadratic_refinement(s, y));
    ModelSpace ms = model_space(pair);
    if (ms.dimension * ms.dimension != s.carrier.order())
        throw InvariantViolation("model dimension squared misses the carrier order");
    Json reps = Json::array();
    for (const auto& r : ms.coset_reps) reps.push_back(element_to_json(r));
    ctx.note("model on " + describe(s.carrier) + ": dimension " + std::to_string(ms.dimension) +
             ", scalars of order " + std::to_string(ms.modulus));
    ctx.note("verified: dimension is the square root of the carrier order");
    return Json{{"kind", "model"},
                {"dimension", ms.dimension},
                {"modulus", ms.modulus},
                {"coset_reps", std::move(reps)}};
}

Json run_act(JobContext& ctx) {
    SymplecticSpace s = space_from_json(json_key(ctx.doc, "space"));
    Subgroup y = subgroup_from_json(s.carrier, json_key(ctx.doc, "subgroup"));
    LagrangianPair pair(s, y, quadratic_refinement(s, y));
    ModelSpace ms = model_space(pair);
    HeisenbergElement h{qz_from_json(json_key(ctx.doc, "scalar")),
                        element_from_json(s.carrier, json_key(ctx.doc, "point"))};
    ModelOperator op = act(ms, h);
    CycField f(op.zeta_order);
    for (size_t j = 0; j < op.matrix.size(); ++j) {
        size_t nonzero = 0;
        for (size_t i = 0; i < op.matrix.size(); ++i)
            if (!f.is_zero(op.matrix[i][j])) ++nonzero;
        if (nonzero != 1)
            throw InvariantViolation("translation operator column is not a single phase");
    }
    ctx.note("operator of size " + std::to_string(ms.dimension) + " over the " +
             std::to_string(op.zeta_order) + "th roots of unity");
    ctx.note("verified: one phase per column (translation composed with a character)");
    return Json{{"kind", "act"}, {"operator", operator_to_json(op)}};
}

Json run_intertwine(JobContext& ctx) {
    SymplecticSpace s = space_from_json(json_key(ctx.doc, "space"));
    const Json& pairs = json_key(ctx.doc, "pairs");
    std::string from = json_key(ctx.doc, "from").get<std::string>();
    std::string to = json_key(ctx.doc, "to").get<std::string>();
    LagrangianPair p1 = named_pair(s, pairs, from);
    LagrangianPair p2 = named_pair(s, pairs, to);
    MatchReport rep = mismatch_character(p1, p2);
    bool corrected = !rep.matched;
    if (corrected) {
        p2 = match_pair(p1, p2).corrected;
        ctx.note("refinements disagreed on the intersection; the second was aligned");
    }
    ModelOperator op = intertwiner(p1, p2, ctx.bound_or(4096));
    CycField f(op.zeta_order);
    if (f.is_zero(cmat_det(f, op.matrix)))
        throw InvariantViolation("intertwiner is singular");
    ctx.note("intertwiner " + from + " -> " + to + ", dimension " +
             std::to_string(op.matrix.size()));
    ctx.note("verified: refinements agree on the intersection of the lagrangians");
    ctx.note("verified: the matrix intertwines the Heisenberg action of every group element");
    ctx.note("verified: the matrix is invertible");
    return Json{{"kind", "intertwine"},
                {"from", from},
                {"to", to},
                {"corrected", corrected},
                {"operator", operator_to_json(op)}};
}

Json run_compose(JobContext& ctx) {
    SymplecticSpace s = space_from_json(json_key(ctx.doc, "space"));
    const Json& pairs = json_key(ctx.doc, "pairs");
    std::string from = json_key(ctx.doc, "from").get<std::string>();
    std::string to = json_key(ctx.doc, "to").get<std::string>();
    LagrangianPair p1 = named_pair(s, pairs, from);
    LagrangianPair p2 = named_pair(s, pairs, to);
    if (!mismatch_character(p1, p2).matched) p2 = match_pair(p1, p2).corrected;
    CycScalar c = compose_scalar(p1, p2);
    ctx.note("round trip " + from + " -> " + to + " -> " + from + " acts by a scalar");
    ctx.note("verified: the composite is scalar and nonzero");
    return Json{{"kind", "compose"},
                {"zeta_order", c.zeta_order},
                {"scalar", poly_to_json(c.value)}};
}

Json run_quasisplit(JobContext& ctx) {
    Group b = group_from_json(json_key(ctx.doc, "B"));
    SplitModel sm = split_model(b, ctx.bound_or(1 << 16));
    Hom phi = hom_from_json(sm.b, sm.bdual, json_key(ctx.doc, "phi"));
    Subgroup graph = graph_subgroup(sm, phi);
    GraphIsotropyReport rep = graph_isotropy(sm, phi);
    bool graph_sized = graph.order() == b.order();
    bool agree = rep.isotropic == rep.skew;
    auto verdict = [](bool ok) { return ok ? "pass" : "fail"; };
    ctx.note(std::string("graph sized like the base: ") + verdict(graph_sized));
    ctx.note(std::string("graph isotropic for the symmetrized pairing: ") +
             (rep.isotropic ? "yes" : "no"));
    ctx.note(std::string("map equal to minus its dual: ") + (rep.skew ? "yes" : "no"));
    ctx.note(std::string("isotropy criterion matches skewness: ") + verdict(agree));
    if (!graph_sized || !agree)
        throw InvariantViolation("split model identities failed on this map");
    return Json{{"kind", "quasisplit"},
                {"graph", subgroup_to_json(graph)},
                {"identities",
                 Json{{"graph_sized_like_base", verdict(graph_sized)},
                      {"isotropic", rep.isotropic},
                      {"skew", rep.skew},
                      {"isotropic_iff_skew", verdict(agree)}}}};
}

Json run_descent(JobContext& ctx) {
    Covering c = covering_from_json(json_key(ctx.doc, "covering"));
    if (ctx.doc.contains("torsor")) {
        const Json& t = ctx.doc["torsor"];
        CentralExtension ext = extension_from_json(json_key(t, "extension"));
        TorsorAction action = t.contains("action")
            ? TorsorAction{json_int(json_key(t["action"], "points"), "points"),
                           [&] {
                               std::vector<std::vector<long long>> rows;
                               for (const auto& r : json_key(t["action"], "act"))
                                   rows.push_back(json_int_list(r, "action entry"));
                               return rows;
                           }()}
            : regular_torsor(ext.base,
                             t.contains("copies") ? json_int(t["copies"], "copies") : 1);
        TorsorLiftResult res = torsor_lift_obstruction(ext, action, ctx.bound_or(1 << 20));
        if (res.exists) {
            Json lambda = Json::array();
            for (const auto& row : res.lambda) {
                Json r = Json::array();
                for (const auto& v : row) r.push_back(qz_to_json(v));
                lambda.push_back(std::move(r));
            }
            ctx.note("verified: the lifting satisfies its functional equation at every point");
            return Json{{"kind", "descent"}, {"torsor", Json{{"exists", true}, {"lambda", std::move(lambda)}}}};
        }
        ctx.note("obstructed: the cocycle is not symmetric at the reported pair");
        return Json{{"kind", "descent"},
                    {"torsor", Json{{"exists", false},
                                    {"witness", Json{{"u", element_to_json(res.obstruction_u)},
                                                     {"v", element_to_json(res.obstruction_v)}}}}}};
    }
    DescentDatum d = descent_datum_from_json(json_key(ctx.doc, "datum"));
    DescentSolution sol = solve_descent(c, d);
    Json glued = Json::array();
    for (const auto& s : sol.glued) {
        Json vec = Json::array();
        for (const auto& p : s) vec.push_back(poly_to_json(p));
        glued.push_back(std::move(vec));
    }
    ctx.note("verified: transitions invertible and compatible with the sections");
    ctx.note("verified: the triple condition holds on every fiber");
    ctx.note("verified: the glued sections pull back to the given data");
    return Json{{"kind", "descent"},
                {"chosen", sol.chosen},
                {"glued", std::move(glued)}};
}

SymplecticSpace standard_plane(long long n) {
    Group k({n, n});
    Gram g(2, std::vector<QZ>(2));
    g[0][1] = QZ(1, n);
    return symplectic_space(k, BilinearForm(k, k, g));
}

Json run_selftest(JobContext& ctx) {
    long long checks = 0, passed = 0;
    Json failures = Json::array();
    auto check = [&](const std::string& what, bool ok) {
        ++checks;
        if (ok) ++passed;
        else failures.push_back(what);
        ctx.note(std::string(ok ? "pass: " : "FAIL: ") + what);
    };
    auto lag_count = [](long long n) {
        return static_cast<long long>(enumerate_lagrangians(standard_plane(n)).size());
    };
    check("standard plane of order 4 has 3 lagrangians", lag_count(2) == 3);
    check("standard plane of order 9 has 4 lagrangians", lag_count(3) == 4);
    check("standard plane of order 16 has 7 lagrangians", lag_count(4) == 7);

    for (long long n : {2, 3}) {
        SymplecticSpace s = standard_plane(n);
        Subgroup y(s.carrier, {s.carrier.reduce({1, 0})});
        Subgroup z(s.carrier, {s.carrier.reduce({0, 1})});
        LagrangianPair p1(s, y, quadratic_refinement(s, y));
        LagrangianPair p2(s, z, quadratic_refinement(s, z));
        CycScalar c = compose_scalar(p1, p2);
        CycField f(c.zeta_order);
        check("round trip scalar on the order " + std::to_string(n * n) +
                  " plane equals the subgroup order",
              f.equal(c.value, f.from_int(n)));
    }

    {
        Group b({3});
        SplitTransform t = fm_transform(b);
        CycScalar c = compose_scalar(t.from, t.to);
        CycField f(c.zeta_order);
        check("split transform round trip scales by the base order",
              f.equal(c.value, f.from_int(b.order())));
    }

    {
        Group b({4});
        SplitModel sm = split_model(b);
        long long agree = 0, total = 0, skew = 0;
        for (const auto& phi : enumerate_homs(sm.b, sm.bdual)) {
            GraphIsotropyReport rep = graph_isotropy(sm, phi);
            ++total;
            if (rep.isotropic == rep.skew) ++agree;
            if (rep.skew) ++skew;
        }
        check("isotropy matches skewness for all 4 self-maps of the order 4 base",
              total == 4 && agree == 4 && skew == 2);
    }

    {
        std::mt19937 rng(static_cast<unsigned>(ctx.seed));
        Covering c(5, 2, {0, 0, 0, 1, 1});
        CycField f(1);
        bool ok = true;
        for (int trial = 0; trial < 5 && ok; ++trial) {
            std::vector<std::vector<CycField::Poly>> base;
            for (long long b = 0; b < 2; ++b) {
                std::vector<CycField::Poly> vec;
                for (int i = 0; i <= b; ++i)
                    vec.push_back(f.from_int(static_cast<long long>(rng() % 9) - 4));
                base.push_back(std::move(vec));
            }
            DescentDatum d = pullback_datum(c, 1, base);
            DescentSolution sol = solve_descent(c, d);
            for (long long b = 0; b < 2; ++b)
                if (!cvec_equal(f, sol.glued[b], base[b])) ok = false;
        }
        check("seeded pullback data glue back to themselves", ok);
    }

    {
        Group q({2, 2});
        CentralExtension flat(q, BilinearForm::zero_form(q, q));
        CentralExtension heis = heisenberg_extension(standard_plane(2));
        TorsorLiftResult free_lift = torsor_lift_obstruction(flat, regular_torsor(q));
        TorsorLiftResult heis_lift =
            torsor_lift_obstruction(heis, regular_torsor(heis.base));
        check("the trivial extension lifts and the Heisenberg one is obstructed",
              free_lift.exists && !heis_lift.exists);
    }

    ctx.note("selftest: " + std::to_string(passed) + " of " + std::to_string(checks) +
             " checks passed");
    if (passed != checks)
        throw InvariantViolation("selftest corpus reported failures");
    return Json{{"kind", "selftest"},
                {"seed", ctx.seed},
                {"checks", checks},
                {"passed", passed},
                {"failures", std::move(failures)}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Schrodinger models over finite abelian groups"};
    app.require_subcommand(1);

    std::string job_path = "-";
    std::string output_path;
    long long bound = 0, seed = 2026;
    bool quiet = false;

    const std::vector<std::pair<std::string, std::string>> kinds = {
        {"lagrangians", "enumerate the lagrangian subgroups of a polarized carrier"},
        {"model", "build the function model attached to a lagrangian subgroup"},
        {"act", "matrix of a Heisenberg group element on a model"},
        {"intertwine", "canonical operator between two named models"},
        {"compose", "scalar of the round trip between two named models"},
        {"quasisplit", "test a map of the split carrier through its graph"},
        {"descent", "glue vector data along a covering, or test a torsor lifting"},
        {"selftest", "run the built in corpus and report counts"},
    };
    for (const auto& [name, desc] : kinds) {
        CLI::App* sub = app.add_subcommand(name, desc);
        if (name != "selftest")
            sub->add_option("job", job_path, "job document path, - for standard input");
        sub->add_option("-o,--output", output_path, "write the JSON result here instead of standard output");
        sub->add_option("--bound", bound, "enumeration bound override");
        sub->add_option("--seed", seed, "seed for randomized checks");
        sub->add_flag("-q,--quiet", quiet, "suppress the human summary");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    std::string kind = app.get_subcommands().front()->get_name();

    JobContext ctx;
    ctx.bound = bound;
    ctx.seed = seed;
    Json result;
    try {
        if (kind != "selftest") {
            std::string text;
            if (job_path == "-") {
                std::ostringstream buf;
                buf << std::cin.rdbuf();
                text = buf.str();
            } else {
                std::ifstream in(job_path);
                if (!in) throw InvalidInput("cannot open job document '" + job_path + "'");
                std::ostringstream buf;
                buf << in.rdbuf();
                text = buf.str();
            }
            ctx.doc = Json::parse(text);
            if (!ctx.doc.is_object()) throw InvalidInput("job document must be a JSON object");
            if (json_key(ctx.doc, "version").get<std::string>() != "1")
                throw InvalidInput("unsupported job document version");
            if (json_key(ctx.doc, "kind").get<std::string>() != kind)
                throw InvalidInput("job document kind does not match the subcommand");
        }
        if (kind == "lagrangians") result = run_lagrangians(ctx);
        else if (kind == "model") result = run_model(ctx);
        else if (kind == "act") result = run_act(ctx);
        else if (kind == "intertwine") result = run_intertwine(ctx);
        else if (kind == "compose") result = run_compose(ctx);
        else if (kind == "quasisplit") result = run_quasisplit(ctx);
        else if (kind == "descent") result = run_descent(ctx);
        else result = run_selftest(ctx);
    } catch (const InvariantViolation& e) {
        for (const auto& line : ctx.notes)
            if (!quiet) std::cerr << line << "\n";
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }

    std::string text = result.dump(2) + "\n";
    if (!output_path.empty()) {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) {
            std::cerr << "invalid input: cannot open output path '" << output_path << "'\n";
            return 2;
        }
        out << text;
    } else {
        std::cout << text;
    }
    if (!quiet)
        for (const auto& line : ctx.notes) std::cerr << line << "\n";
    return 0;
}
