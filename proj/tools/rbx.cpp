// rbx: exact verification, cohomology and deformation calculations for
// (relative) Rota-Baxter Lie algebras, triangular Lie bialgebras and
// their homotopy analogues.
//
// Exit codes: 0 = all checks pass, 1 = a mathematical check failed
// (witness in the report), 2 = input or usage error.

#include "rbx/bialgebra.hpp"
#include "rbx/cohomology.hpp"
#include "rbx/deformation.hpp"
#include "rbx/io.hpp"
#include "rbx/linfty.hpp"
#include "rbx/registry.hpp"
#include "rbx/twisted.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace rbx;

struct CliReport {
    std::string command;
    std::vector<CheckResult> checks;
    Json data = Json::object();
    long long time_ms = 0;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
    void absorb(const VerifyReport& v) {
        for (const auto& c : v.checks) checks.push_back(c);
    }
};

void render_table(const CliReport& r) {
    std::cout << "command: " << r.command << "\n";
    for (const auto& c : r.checks) {
        std::cout << "check " << c.name << ": " << (c.ok ? "ok" : "FAIL");
        if (!c.ok && !c.witness.empty()) std::cout << "   witness: " << c.witness;
        std::cout << "\n";
    }
    if (!r.data.empty()) std::cout << "data:\n" << r.data.dump(2) << "\n";
    std::cout << "result: " << (r.ok() ? "pass" : "fail") << "\n";
    std::cout << "time_ms: " << r.time_ms << "\n";
}

void render_json(const CliReport& r) {
    Json j;
    j["command"] = r.command;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json e;
        e["name"] = c.name;
        e["ok"] = c.ok;
        if (!c.witness.empty()) e["witness"] = c.witness;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["data"] = r.data;
    j["result"] = r.ok() ? "pass" : "fail";
    j["time_ms"] = r.time_ms;
    std::cout << j.dump(2) << "\n";
}

StructureFile load_structure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_structure_text(buf.str());
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("JSON parse error in '") + path + "': " + e.what());
    }
}

Json vec_to_json(const Vec& v) {
    Json out = Json::array();
    for (const auto& c : v) out.push_back(to_string(c));
    return out;
}

Json cohomology_to_json(const CohomologyReport& h) {
    Json j;
    j["degree"] = h.degree;
    j["dim_cochains"] = h.dim_cochains;
    j["dim_cocycles"] = h.dim_cocycles;
    j["dim_coboundaries"] = h.dim_coboundaries;
    j["betti"] = h.betti;
    Json reps = Json::array();
    for (const auto& r : h.representatives) reps.push_back(vec_to_json(r));
    j["representatives"] = reps;
    return j;
}

/// Reads the file's operator as a plain Rota-Baxter operator on g: a
/// "rota-baxter" operator directly, or a square "relative" one.
RBO as_rbo(const StructureFile& f) {
    if (!f.alg || !f.op_matrix) throw ParseError("structure has no operator");
    if (!f.op_relative) return RBO(*f.alg, *f.op_matrix);
    if (f.op_matrix->cols() != f.alg->dim())
        throw ParseError("relative operator is not square; cannot read it as Rota-Baxter");
    return RBO(*f.alg, *f.op_matrix);
}

/// Verification of the parts a command relies on; downstream
/// computations refuse unverified structures.
VerifyReport verify_base(const StructureFile& f, bool need_rep, bool need_rel_op,
                         bool need_rmatrix) {
    VerifyReport out;
    if (!f.alg) throw ParseError("structure has no algebra");
    out.checks = verify_lie(*f.alg).checks;
    if (need_rep || need_rel_op) {
        if (!f.rep) throw ParseError("structure has no representation");
        for (const auto& c : verify_rep(*f.rep).checks) out.checks.push_back(c);
    }
    if (need_rel_op)
        for (const auto& c : verify_relative_rbo(f.relative_op()).checks) out.checks.push_back(c);
    if (need_rmatrix) {
        if (!f.rmatrix) throw ParseError("structure has no r-matrix");
        for (const auto& c : cybe_check(*f.alg, *f.rmatrix).checks) out.checks.push_back(c);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculations for Rota-Baxter Lie algebras and relatives"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string report_mode = "table";
    app.add_option("--report", report_mode, "report rendering: table or json")
        ->check(CLI::IsMember({"table", "json"}));

    std::string file, kind, name;
    std::vector<std::string> deform_paths;
    int degree = -1, max_degree = -1;

    auto* verify = app.add_subcommand("verify", "verify a structure");
    verify->add_option("kind", kind, "lie|rep|rbo|rrb|cybe|linf|hrbo")
        ->required()
        ->check(CLI::IsMember({"lie", "rep", "rbo", "rrb", "cybe", "linf", "hrbo"}));
    verify->add_option("file", file, "structure file")->required();

    auto* coh = app.add_subcommand("cohomology", "cohomology groups");
    coh->add_option("kind", kind, "ce|lierep|oop|rrb|rb|tlb")
        ->required()
        ->check(CLI::IsMember({"ce", "lierep", "oop", "rrb", "rb", "tlb"}));
    coh->add_option("file", file)->required();
    coh->add_option("--degree", degree, "single degree");
    coh->add_option("--max-degree", max_degree, "all degrees 1..N");

    auto* les = app.add_subcommand("les", "long exact sequence check");
    les->add_option("kind", kind, "rrb|rb|tlb")
        ->required()
        ->check(CLI::IsMember({"rrb", "rb", "tlb"}));
    les->add_option("file", file)->required();
    les->add_option("--max-degree", max_degree)->required();

    auto* deform = app.add_subcommand("deform", "infinitesimal deformations");
    deform->add_option("kind", kind, "check|equiv")
        ->required()
        ->check(CLI::IsMember({"check", "equiv"}));
    deform->add_option("file", file, "base structure")->required();
    deform->add_option("deforms", deform_paths, "deformation files")->required();

    auto* prelie = app.add_subcommand("prelie", "pre-Lie constructions");
    prelie->add_option("kind", kind, "from-rbo|subadjacent|phi")
        ->required()
        ->check(CLI::IsMember({"from-rbo", "subadjacent", "phi"}));
    prelie->add_option("file", file)->required();

    auto* ex = app.add_subcommand("examples", "built-in example registry");
    ex->add_option("kind", kind, "list|show")
        ->required()
        ->check(CLI::IsMember({"list", "show"}));
    ex->add_option("name", name, "example name (for show)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CliReport rep;
    {
        std::ostringstream os;
        for (int i = 1; i < argc; ++i) os << (i > 1 ? " " : "") << argv[i];
        rep.command = os.str();
    }
    auto started = std::chrono::steady_clock::now();

    try {
        if (app.got_subcommand(verify)) {
            StructureFile f = load_structure(file);
            if (kind == "lie") {
                if (!f.alg) throw ParseError("structure has no algebra");
                rep.absorb(verify_lie(*f.alg));
            } else if (kind == "rep") {
                rep.absorb(verify_base(f, true, false, false));
            } else if (kind == "rbo") {
                if (!f.alg) throw ParseError("structure has no algebra");
                rep.absorb(verify_lie(*f.alg));
                rep.absorb(verify_rbo(as_rbo(f)));
            } else if (kind == "rrb") {
                rep.absorb(verify_base(f, true, true, false));
            } else if (kind == "cybe") {
                rep.absorb(verify_base(f, false, false, true));
            } else if (kind == "linf") {
                if (!f.graded || !f.graded->brackets)
                    throw ParseError("structure has no graded brackets");
                LinftyAlgebra alg{f.graded->space, *f.graded->brackets, f.graded->weight_bound};
                rep.absorb(verify_linfty(alg));
                if (f.graded->rep) rep.absorb(verify_linfty_rep(alg, *f.graded->rep));
            } else {  // hrbo
                if (!f.graded || !f.graded->has_operator)
                    throw ParseError("structure has no graded operator");
                HomotopyRBO op = homotopy_from_block(*f.graded);
                rep.absorb(verify_linfty(op.alg));
                rep.absorb(verify_linfty_rep(op.alg, op.rep));
                rep.absorb(verify_homotopy_rbo(op, op.weight_bound + 2).report);
            }
        } else if (app.got_subcommand(coh)) {
            if (degree < 0 && max_degree < 0)
                throw ParseError("cohomology needs --degree or --max-degree");
            int lo = degree >= 0 ? degree : 1;
            int hi = degree >= 0 ? degree : max_degree;
            if (lo < 1) throw ParseError("degrees start at 1");
            StructureFile f = load_structure(file);
            Json groups = Json::array();
            auto emit_group = [&](const CohomologyReport& h) {
                groups.push_back(cohomology_to_json(h));
            };
            VerifyReport base;
            if (kind == "ce") {
                base = verify_base(f, false, false, false);
                Ladder L = build_ladder_ce(*f.alg, hi + 1, /*augmented=*/true);
                for (int n = lo; n <= hi; ++n) emit_group(ladder_cohomology(L, n));
            } else if (kind == "lierep") {
                base = verify_base(f, true, false, false);
                Ladder L = build_ladder_lierep(*f.rep, hi + 1);
                for (int n = lo; n <= hi; ++n) emit_group(ladder_cohomology(L, n));
            } else if (kind == "oop") {
                base = verify_base(f, true, true, false);
                Ladder L = build_ladder_oop(f.relative_op(), hi + 1);
                for (int n = lo; n <= hi; ++n) emit_group(ladder_cohomology(L, n));
            } else if (kind == "rrb") {
                base = verify_base(f, true, true, false);
                Ladder L = build_ladder_relrb(f.relative_op(), hi + 1);
                for (int n = lo; n <= hi; ++n) emit_group(ladder_cohomology(L, n));
            } else if (kind == "rb") {
                if (!f.alg) throw ParseError("structure has no algebra");
                base.checks = verify_lie(*f.alg).checks;
                RBO op = as_rbo(f);
                for (const auto& c : verify_rbo(op).checks) base.checks.push_back(c);
                Ladder L = build_ladder_rb(op, hi + 1);
                for (int n = lo; n <= hi; ++n) emit_group(ladder_cohomology(L, n));
            } else {  // tlb
                base = verify_base(f, false, false, true);
                MatrixLadder L = matrix_ladder_tlb(*f.alg, *f.rmatrix, hi + 1);
                for (int n = lo; n <= hi; ++n) emit_group(ladder_cohomology(L, n));
            }
            rep.absorb(base);
            rep.data["groups"] = groups;
        } else if (app.got_subcommand(les)) {
            StructureFile f = load_structure(file);
            if (kind == "rrb") {
                rep.absorb(verify_base(f, true, true, false));
                rep.absorb(les_check(les_relative(f.relative_op(), max_degree), max_degree));
            } else if (kind == "rb") {
                if (!f.alg) throw ParseError("structure has no algebra");
                rep.absorb(verify_lie(*f.alg));
                RBO op = as_rbo(f);
                rep.absorb(verify_rbo(op));
                rep.absorb(les_check(les_rb(op, max_degree), max_degree));
            } else {
                rep.absorb(verify_base(f, false, false, true));
                rep.absorb(tlb_les_check(*f.alg, *f.rmatrix, max_degree));
            }
        } else if (app.got_subcommand(deform)) {
            StructureFile f = load_structure(file);
            if (kind == "check") {
                if (f.op_matrix && f.op_relative) {
                    rep.absorb(verify_base(f, true, true, false));
                    RelativeRBO op = f.relative_op();
                    for (const auto& p : deform_paths) {
                        DeformFile d = parse_deform(load_json(p), f);
                        for (const auto& c : is_two_cocycle(op, *d.rel).checks)
                            rep.checks.push_back({p + ": " + c.name, c.ok, c.witness});
                        for (const auto& c : deformation_axioms(op, *d.rel).checks)
                            rep.checks.push_back({p + ": " + c.name, c.ok, c.witness});
                    }
                } else {
                    rep.absorb(verify_base(f, false, false, true));
                    for (const auto& p : deform_paths) {
                        DeformFile d = parse_deform(load_json(p), f);
                        for (const auto& c :
                             tlb_deform_check(*f.alg, *f.rmatrix, d.tlb->f, d.tlb->chi).checks)
                            rep.checks.push_back({p + ": " + c.name, c.ok, c.witness});
                    }
                }
            } else {  // equiv
                if (deform_paths.size() != 2)
                    throw ParseError("deform equiv needs exactly two deformation files");
                if (f.op_matrix && f.op_relative) {
                    rep.absorb(verify_base(f, true, true, false));
                    RelativeRBO op = f.relative_op();
                    DeformFile d1 = parse_deform(load_json(deform_paths[0]), f);
                    DeformFile d2 = parse_deform(load_json(deform_paths[1]), f);
                    for (const auto* d : {&d1, &d2})
                        if (!is_two_cocycle(op, *d->rel).ok())
                            throw ParseError("deform equiv: input is not a 2-cocycle");
                    auto w = equivalent(op, *d1.rel, *d2.rel);
                    rep.checks.push_back(
                        {"deform.equivalent", w.has_value(), "classes differ in H^2"});
                    if (w) {
                        rep.data["N"] = io_detail::matrix_to(w->n);
                        rep.data["S"] = io_detail::matrix_to(w->s);
                    }
                } else {
                    rep.absorb(verify_base(f, false, false, true));
                    DeformFile d1 = parse_deform(load_json(deform_paths[0]), f);
                    DeformFile d2 = parse_deform(load_json(deform_paths[1]), f);
                    for (const auto* d : {&d1, &d2})
                        if (!tlb_deform_check(*f.alg, *f.rmatrix, d->tlb->f, d->tlb->chi).ok())
                            throw ParseError("deform equiv: input is not a 2-cocycle");
                    auto w = tlb_equivalent(*f.alg, *f.rmatrix, *d1.tlb, *d2.tlb);
                    rep.checks.push_back(
                        {"deform.equivalent", w.has_value(), "classes differ in H^2"});
                    if (w) rep.data["N"] = io_detail::matrix_to(*w);
                }
            }
        } else if (app.got_subcommand(prelie)) {
            StructureFile f = load_structure(file);
            if (kind == "from-rbo") {
                rep.absorb(verify_base(f, true, true, false));
                PreLieProduct p = prelie_from_rbo(f.relative_op());
                rep.checks.push_back({"prelie.identity", prelie_identity_holds(p), ""});
                Json table = Json::object();
                for (int a = 0; a < p.dim; ++a)
                    for (int b = 0; b < p.dim; ++b) {
                        if (p.table[a][b].empty()) continue;
                        Json entry = Json::object();
                        for (const auto& [k, c] : p.table[a][b])
                            entry[std::to_string(k + 1)] = to_string(c);
                        table["[" + std::to_string(a + 1) + ">" + std::to_string(b + 1) + "]"] =
                            entry;
                    }
                rep.data["product"] = table;
            } else {
                if (!f.graded || !f.graded->prelie)
                    throw ParseError("structure has no graded prelie block");
                PreLinfty p{f.graded->space, *f.graded->prelie, f.graded->weight_bound};
                rep.absorb(verify_prelie(p));
                GradedMap img =
                    (kind == "subadjacent") ? subadjacent(p).brackets : phi_map(p.ops);
                if (kind == "subadjacent") rep.absorb(verify_linfty(subadjacent(p)));
                Json list = Json::array();
                for (const auto& [k, dist] : img.terms())
                    for (const auto& [o, c] : dist) {
                        Json e;
                        Json args = Json::array();
                        for (int a : k) args.push_back(a + 1);
                        e["args"] = args;
                        e["out"] = o + 1;
                        e["coeff"] = to_string(c);
                        list.push_back(e);
                    }
                rep.data["brackets"] = list;
            }
        } else if (app.got_subcommand(ex)) {
            if (kind == "list") {
                Json list = Json::array();
                for (const auto& e : builtin_examples()) {
                    Json item;
                    item["name"] = e.name;
                    item["description"] = e.description;
                    list.push_back(item);
                }
                rep.data["examples"] = list;
            } else {
                if (name.empty()) throw ParseError("examples show needs a name");
                auto found = find_example(name);
                if (!found) throw ParseError("no example named '" + name + "'");
                // raw JSON straight to stdout so it can be piped to a file
                std::cout << emit_structure(*found).dump(2) << "\n";
                return 0;
            }
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }

    rep.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    if (report_mode == "json")
        render_json(rep);
    else
        render_table(rep);
    return rep.ok() ? 0 : 1;
}
