#include "rbx/io.hpp"
#include "rbx/registry.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace rbx;

namespace {

/// Every check the structure's contents make applicable.
VerifyReport self_verify(const StructureFile& f) {
    VerifyReport out;
    if (f.alg)
        for (const auto& c : verify_lie(*f.alg).checks) out.checks.push_back(c);
    if (f.rep)
        for (const auto& c : verify_rep(*f.rep).checks) out.checks.push_back(c);
    if (f.op_matrix) {
        if (f.op_relative)
            for (const auto& c : verify_relative_rbo(f.relative_op()).checks)
                out.checks.push_back(c);
        else
            for (const auto& c : verify_rbo(f.rota_baxter_op()).checks) out.checks.push_back(c);
    }
    if (f.rmatrix)
        for (const auto& c : cybe_check(*f.alg, *f.rmatrix).checks) out.checks.push_back(c);
    if (f.graded && f.graded->brackets) {
        LinftyAlgebra alg{f.graded->space, *f.graded->brackets, f.graded->weight_bound};
        for (const auto& c : verify_linfty(alg).checks) out.checks.push_back(c);
        if (f.graded->rep)
            for (const auto& c : verify_linfty_rep(alg, *f.graded->rep).checks)
                out.checks.push_back(c);
        if (f.graded->has_operator) {
            HomotopyRBO op = homotopy_from_block(*f.graded);
            for (const auto& c :
                 verify_homotopy_rbo(op, op.weight_bound + 2).report.checks)
                out.checks.push_back(c);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("every registry entry verifies and round-trips", "[io]") {
    auto entries = builtin_examples();
    REQUIRE(entries.size() >= 8);
    bool saw_sl2_r = false, saw_t0 = false, saw_graded = false;
    for (const auto& f : entries) {
        INFO("example " << f.name);
        REQUIRE(self_verify(f).ok());

        // parse(emit(f)) re-emits byte-identically (keys are sorted by
        // the JSON layer, values normalized by construction)
        Json j = emit_structure(f);
        StructureFile back = parse_structure(j);
        REQUIRE(emit_structure(back).dump(2) == j.dump(2));

        if (f.name == "sl2-r-he") saw_sl2_r = true;
        if (f.name == "aff1-T0") saw_t0 = true;
        if (f.name == "two-term-dgla") saw_graded = true;
    }
    REQUIRE(saw_sl2_r);
    REQUIRE(saw_t0);
    REQUIRE(saw_graded);
}

TEST_CASE("registry pinned contents", "[io]") {
    auto sl2r = find_example("sl2-r-he");
    REQUIRE(sl2r.has_value());
    REQUIRE(cybe_check(*sl2r->alg, *sl2r->rmatrix).ok());

    auto t0 = find_example("aff1-T0");
    REQUIRE(t0.has_value());
    REQUIRE(verify_relative_rbo(t0->relative_op()).ok());

    // the registry's hand-written adjoint-type representation matches the
    // constructor from the brackets
    auto dgla = find_example("two-term-dgla");
    REQUIRE(dgla.has_value());
    LinftyAlgebra alg{dgla->graded->space, *dgla->graded->brackets, dgla->graded->weight_bound};
    GradedRep ad = adjoint_rep(alg);
    REQUIRE(dgla->graded->rep->comp == ad.comp);
}

TEST_CASE("antisymmetry normalization and rejection", "[io]") {
    // both orders present and consistent: fine
    StructureFile ok = parse_structure_text(R"({
        "format": 1, "dim": 2,
        "bracket": {"[1,2]": {"2": "1"}, "[2,1]": {"2": "-1"}}
    })");
    REQUIRE(ok.alg->bracket(0, 1) == SparseVec{{1, Scalar(1)}});

    // inconsistent orders are an error
    REQUIRE_THROWS_AS(parse_structure_text(R"({
        "format": 1, "dim": 2,
        "bracket": {"[1,2]": {"2": "1"}, "[2,1]": {"2": "1"}}
    })"),
                      ParseError);

    // [x,x] entries are rejected
    REQUIRE_THROWS_AS(parse_structure_text(R"({
        "format": 1, "dim": 2, "bracket": {"[1,1]": {"2": "1"}}
    })"),
                      ParseError);
}

TEST_CASE("scalar and format validation", "[io]") {
    REQUIRE_THROWS_AS(parse_structure_text(R"({"format": 2, "dim": 1})"), ParseError);
    REQUIRE_THROWS_AS(parse_structure_text(R"({
        "format": 1, "dim": 2, "bracket": {"[1,2]": {"1": "0.5"}}
    })"),
                      ParseError);
    REQUIRE_THROWS_AS(parse_structure_text("not json at all"), ParseError);
    // integers may omit the denominator; "3/6" normalizes
    StructureFile f = parse_structure_text(R"({
        "format": 1, "dim": 2, "bracket": {"[1,2]": {"1": "3/6"}}
    })");
    REQUIRE(f.alg->bracket(0, 1) == SparseVec{{0, Scalar(1, 2)}});
}

TEST_CASE("deform files parse against their base", "[io]") {
    StructureFile base = *find_example("aff1-T0");
    Json j = Json::parse(R"({"T1": [["0","0"],["1","0"]]})");
    DeformFile d = parse_deform(j, base);
    REQUIRE(d.rel.has_value());
    REQUIRE(is_two_cocycle(base.relative_op(), *d.rel).ok());

    StructureFile tlb = *find_example("sl2-r-he");
    Json j2 = Json::parse(R"({"omega1": {}, "X1": [{"indices": [1,2], "coeff": "1"}]})");
    DeformFile d2 = parse_deform(j2, tlb);
    REQUIRE(d2.tlb.has_value());
}
