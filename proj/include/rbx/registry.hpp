#pragma once

// Built-in example registry: every entry loads through the structure
// file machinery and passes its own verification (asserted in the test
// suite and exposed through `rbx examples`).

#include "rbx/examples.hpp"
#include "rbx/io.hpp"

#include <vector>

namespace rbx {

inline StructureFile registry_abelian(int n) {
    StructureFile f;
    f.name = "abelian" + std::to_string(n);
    f.description = "abelian Lie algebra of dimension " + std::to_string(n);
    f.alg = examples::abelian(n);
    for (int i = 1; i <= n; ++i) f.basis.push_back("e" + std::to_string(i));
    return f;
}

inline StructureFile registry_aff1() {
    StructureFile f;
    f.name = "aff1";
    f.description = "the nonabelian 2-dimensional Lie algebra, [e1,e2] = e2";
    f.alg = examples::aff1();
    f.basis = {"e1", "e2"};
    return f;
}

inline StructureFile registry_aff1_t0() {
    StructureFile f = registry_aff1();
    f.name = "aff1-T0";
    f.description = "aff(1) with its adjoint representation and the Rota-Baxter "
                    "operator T0 e1 = e1, T0 e2 = 0";
    f.rep = Representation::adjoint(*f.alg);
    f.rep_basis = {"u1", "u2"};
    f.op_matrix = examples::aff1_t0().t();
    f.op_relative = true;
    return f;
}

inline StructureFile registry_aff1_rbo_nil() {
    StructureFile f = registry_aff1();
    f.name = "aff1-rbo-nil";
    f.description = "aff(1) with the nilpotent-family Rota-Baxter operator "
                    "T = [[1,1],[-1,-1]] (d = -a, bc = -a^2)";
    f.rep = Representation::adjoint(*f.alg);
    f.rep_basis = {"u1", "u2"};
    f.op_matrix = examples::aff1_rbo_nil().t();
    f.op_relative = true;
    return f;
}

inline StructureFile registry_heis3() {
    StructureFile f;
    f.name = "heis3";
    f.description = "the Heisenberg algebra, [e1,e2] = e3";
    f.alg = examples::heis3();
    f.basis = {"e1", "e2", "e3"};
    return f;
}

inline StructureFile registry_sl2() {
    StructureFile f;
    f.name = "sl2";
    f.description = "sl(2) in the (h,e,f) basis: [h,e] = 2e, [h,f] = -2f, [e,f] = h";
    f.alg = examples::sl2();
    f.basis = {"h", "e", "f"};
    return f;
}

inline StructureFile registry_sl2_r_he() {
    StructureFile f = registry_sl2();
    f.name = "sl2-r-he";
    f.description = "sl(2) with the skew r-matrix r = h ^ e";
    f.rmatrix = examples::sl2_r_he();
    return f;
}

inline StructureFile registry_aff1_r12() {
    StructureFile f = registry_aff1();
    f.name = "aff1-r12";
    f.description = "aff(1) with the r-matrix r = e1 ^ e2";
    f.rmatrix = examples::aff1_r12();
    return f;
}

/// Two-term L-infinity algebra (the desuspended dg Lie algebra with
/// l1(a) = b and l2(a, b) = b), its adjoint-type representation, and
/// the zero operator.
inline StructureFile registry_two_term_dgla() {
    StructureFile f;
    f.name = "two-term-dgla";
    f.description = "two-term L-infinity algebra on {a (deg -1), b (deg 0)}: "
                    "l1(a) = b, l2(a,b) = b; adjoint-type representation; T = 0";
    GradedBlock b;
    b.space.degree_of = {-1, 0};
    b.weight_bound = 2;
    GradedMap l(b.space, GradedMap::Flavor::Sym, 1);
    l.add_term({0}, 1, 1);
    l.add_term({0, 1}, 1, 1);
    b.brackets = l;
    GradedRep rep;
    rep.gspace = b.space;
    rep.vspace = b.space;
    rep.weight_bound = 2;
    rep.add_term({}, 0, 1, 1);      // rho_1 = l_1
    rep.add_term({0}, 1, 1, 1);     // rho_2(a; b) = b
    rep.add_term({1}, 0, 1, 1);     // rho_2(b; a) = l_2(b, a) = b
    b.rep_space = b.space;
    b.rep = rep;
    b.has_operator = true;          // T = 0: no entries
    f.graded = std::move(b);
    return f;
}

inline std::vector<StructureFile> builtin_examples() {
    return {registry_abelian(2), registry_abelian(3),  registry_aff1(),
            registry_aff1_t0(),  registry_aff1_rbo_nil(), registry_heis3(),
            registry_sl2(),      registry_sl2_r_he(),  registry_aff1_r12(),
            registry_two_term_dgla()};
}

inline std::optional<StructureFile> find_example(const std::string& name) {
    for (auto& f : builtin_examples())
        if (f.name == name) return f;
    return std::nullopt;
}

/// HomotopyRBO assembled from a graded block (brackets + rep +
/// operator entries required).
inline HomotopyRBO homotopy_from_block(const GradedBlock& b) {
    if (!b.brackets || !b.rep) throw ParseError("graded block needs brackets and rep");
    LinftyAlgebra alg{b.space, *b.brackets, b.weight_bound};
    GradedSplit sp(b.space, *b.rep_space);
    GradedMap t = make_operator(sp, b.op_entries);
    return {alg, *b.rep, t, b.weight_bound};
}

// ---------------------------------------------------------------------------
// Deformation files.

struct DeformFile {
    // relative Rota-Baxter deformations
    std::optional<InfinitesimalDeformation> rel;
    // triangular bialgebra deformations
    std::optional<TLBCochain> tlb;
};

/// Parses a deformation file against its base structure. For a base
/// with a relative operator the fields are omega1 / varrho1 / T1; for a
/// triangular base they are omega1 / X1.
inline DeformFile parse_deform(const Json& j, const StructureFile& base) {
    using namespace io_detail;
    if (!base.alg) throw ParseError("deformation base needs an algebra");
    int m = base.alg->dim();
    auto omega_from = [&](const SpaceSplit& sp) {
        NRElement omega(sp, 2);
        if (j.contains("omega1"))
            for (const auto& [key, val] : j["omega1"].items()) {
                auto [a, b] = bracket_key(key, m);
                for (const auto& [ks, cv] : val.items()) {
                    int k = std::stoi(ks);
                    if (k < 1 || k > m) throw ParseError("omega1 target out of range");
                    omega.add_term({a, b}, k - 1, scalar_from(cv, "omega1[" + key + "]"));
                }
            }
        return omega;
    };
    DeformFile out;
    if (base.op_matrix && base.op_relative) {
        RelativeRBO op = base.relative_op();
        SpaceSplit sp = op.split();
        InfinitesimalDeformation d = InfinitesimalDeformation::zero(sp);
        d.omega1 = omega_from(sp);
        if (j.contains("varrho1")) {
            const Json& vr = j["varrho1"];
            if (static_cast<int>(vr.size()) != m)
                throw ParseError("varrho1 needs one matrix per algebra basis vector");
            for (int i = 0; i < m; ++i) {
                Matrix mi = matrix_from(vr[i], op.rep().dim_v(), op.rep().dim_v(),
                                        "varrho1[" + std::to_string(i + 1) + "]");
                for (const auto& [rc, c] : mi.entries())
                    d.varrho1.add_term({i, sp.dim_g + rc.second}, sp.dim_g + rc.first, c);
            }
        }
        if (j.contains("T1")) {
            Matrix t1 = matrix_from(j["T1"], m, op.rep().dim_v(), "T1");
            for (const auto& [rc, c] : t1.entries())
                d.t1.add_term({sp.dim_g + rc.second}, rc.first, c);
        }
        out.rel = d;
        return out;
    }
    if (base.rmatrix) {
        SpaceSplit small{m, 0};
        TLBCochain c{omega_from(small), Polyvector(m, 2)};
        if (j.contains("X1"))
            for (const auto& term : j["X1"]) {
                IndexList idx = indices_from(term.at("indices"), m, "X1.indices");
                if (idx.size() != 2) throw ParseError("X1 entries must have two indices");
                c.chi.add(idx, scalar_from(term.at("coeff"), "X1.coeff"));
            }
        out.tlb = c;
        return out;
    }
    throw ParseError("deformation base must carry a relative operator or an r-matrix");
}

}  // namespace rbx
