#pragma once

// Infinitesimal deformations of relative Rota-Baxter Lie algebras over
// K[t]/(t^2). The first-order axioms are checked in dual-number
// arithmetic, a code path independent of the cochain machinery, and the
// library asserts the equivalence with the 2-cocycle condition on every
// input it sees.

#include "rbx/cohomology.hpp"

#include <map>
#include <optional>
#include <vector>

namespace rbx {

/// (omega1, varrho1, T1): candidate first-order terms for
/// (mu + t omega1, rho + t varrho1, T + t T1).
struct InfinitesimalDeformation {
    NRElement omega1;   // /\^2 g -> g     (bidegree 1|0 into g)
    NRElement varrho1;  // g (x) V -> V    (bidegree 1|0 into V)
    NRElement t1;       // V -> g          (bidegree -1|1)

    static InfinitesimalDeformation zero(const SpaceSplit& sp) {
        return {NRElement(sp, 2), NRElement(sp, 2), NRElement(sp, 1)};
    }

    RelCochain as_cochain() const { return {omega1 + varrho1, t1}; }
};

/// phi = id + tN, psi = id + tS witnessing an equivalence of
/// deformations.
struct Equivalence {
    Matrix n;  // gl(g)
    Matrix s;  // gl(V)
};

namespace dual_detail {

using DualVec = std::map<int, Dual>;

inline void dv_add(DualVec& v, int k, const Dual& c) {
    auto it = v.find(k);
    if (it == v.end()) {
        if (!c.is_zero()) v[k] = c;
        return;
    }
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
}

inline bool dv_zero(const DualVec& v) { return v.empty(); }

/// Evaluator bundle for the deformed structure over K[t]/(t^2).
struct DeformedStructure {
    const RelativeRBO& op;
    const InfinitesimalDeformation& d;

    SpaceSplit sp() const { return op.split(); }

    DualVec bracket(int i, int j) const {  // g-basis pair -> Dual g-vector
        DualVec out;
        for (const auto& [k, c] : op.rep().algebra().bracket(i, j)) dv_add(out, k, Dual(c));
        for (const auto& [k, c] : d.omega1.eval({i, j})) dv_add(out, k, Dual(Scalar(0), c));
        return out;
    }

    DualVec bracket_vec(const DualVec& x, const DualVec& y) const {
        DualVec out;
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) {
                if (i == j) continue;
                for (const auto& [k, c] : bracket(i, j)) dv_add(out, k, a * b * c);
            }
        return out;
    }

    DualVec act(int i, int a) const {  // rho_t(e_i) u_a as Dual V-vector (V-local indices)
        DualVec out;
        const Matrix& r = op.rep().rho(i);
        for (int b = 0; b < op.rep().dim_v(); ++b) {
            Dual c(r.at(b, a));
            auto extra = d.varrho1.eval({i, sp().dim_g + a});
            auto it = extra.find(sp().dim_g + b);
            if (it != extra.end()) c += Dual(Scalar(0), it->second);
            if (!c.is_zero()) dv_add(out, b, c);
        }
        return out;
    }

    DualVec act_vec(const DualVec& x, const DualVec& u) const {
        DualVec out;
        for (const auto& [i, a] : x)
            for (const auto& [b, cb] : u)
                for (const auto& [k, c] : act(i, b)) dv_add(out, k, a * cb * c);
        return out;
    }

    DualVec apply_t(const DualVec& u) const {  // V-vector -> Dual g-vector
        DualVec out;
        for (const auto& [a, cu] : u) {
            for (int i = 0; i < sp().dim_g; ++i) {
                Dual c(op.t().at(i, a));
                auto extra = d.t1.eval({sp().dim_g + a});
                auto it = extra.find(i);
                if (it != extra.end()) c += Dual(Scalar(0), it->second);
                if (!c.is_zero()) dv_add(out, i, cu * c);
            }
        }
        return out;
    }
};

}  // namespace dual_detail

/// The three first-order axioms, each expanded directly over
/// K[t]/(t^2): Jacobi, representation, Rota-Baxter.
inline VerifyReport deformation_axioms(const RelativeRBO& op, const InfinitesimalDeformation& d) {
    using namespace dual_detail;
    VerifyReport out;
    DeformedStructure s{op, d};
    int m = op.rep().algebra().dim(), dv = op.rep().dim_v();

    bool jac = true;
    std::string wj;
    for (int i = 0; i < m && jac; ++i)
        for (int j = i + 1; j < m && jac; ++j)
            for (int k = j + 1; k < m && jac; ++k) {
                DualVec ei{{i, Dual(Scalar(1))}}, ej{{j, Dual(Scalar(1))}}, ek{{k, Dual(Scalar(1))}};
                DualVec acc = s.bracket_vec(s.bracket(i, j), ek);
                for (const auto& [o, c] : s.bracket_vec(s.bracket(j, k), ei)) dv_add(acc, o, c);
                for (const auto& [o, c] : s.bracket_vec(s.bracket(k, i), ej)) dv_add(acc, o, c);
                if (!dv_zero(acc)) {
                    jac = false;
                    wj = "triple (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                         std::to_string(k + 1) + ")";
                }
            }
    out.add("deform.jacobi", jac, wj);

    bool rep_ok = true;
    std::string wr;
    for (int i = 0; i < m && rep_ok; ++i)
        for (int j = i + 1; j < m && rep_ok; ++j)
            for (int a = 0; a < dv && rep_ok; ++a) {
                DualVec u{{a, Dual(Scalar(1))}};
                DualVec ei{{i, Dual(Scalar(1))}}, ej{{j, Dual(Scalar(1))}};
                DualVec acc = s.act_vec(s.bracket(i, j), u);
                for (const auto& [o, c] : s.act_vec(ei, s.act_vec(ej, u))) dv_add(acc, o, -c);
                for (const auto& [o, c] : s.act_vec(ej, s.act_vec(ei, u))) dv_add(acc, o, c);
                if (!dv_zero(acc)) {
                    rep_ok = false;
                    wr = "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         "), vector " + std::to_string(a + 1);
                }
            }
    out.add("deform.representation", rep_ok, wr);

    bool rb = true;
    std::string wb;
    for (int a = 0; a < dv && rb; ++a)
        for (int b = a + 1; b < dv && rb; ++b) {
            DualVec ua{{a, Dual(Scalar(1))}}, ub{{b, Dual(Scalar(1))}};
            DualVec tu = s.apply_t(ua), tv = s.apply_t(ub);
            DualVec acc = s.bracket_vec(tu, tv);
            DualVec inner = s.act_vec(tu, ub);
            for (const auto& [o, c] : s.act_vec(tv, ua)) dv_add(inner, o, -c);
            for (const auto& [o, c] : s.apply_t(inner)) dv_add(acc, o, -c);
            if (!dv_zero(acc)) {
                rb = false;
                wb = "pair (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
            }
        }
    out.add("deform.rota_baxter", rb, wb);
    return out;
}

/// 2-cocycle test D(omega1 + varrho1, T1) = 0, asserted equivalent to
/// the dual-number axioms on this very input.
inline VerifyReport is_two_cocycle(const RelativeRBO& op, const InfinitesimalDeformation& d) {
    VerifyReport out;
    RelCochain img = big_d(op, d.as_cochain());
    bool ok = img.f.is_zero() && img.theta.is_zero();
    out.add("deform.two_cocycle", ok,
            ok ? "" : (img.f.is_zero() ? witness_of(img.theta) : witness_of(img.f)));
    bool axioms = deformation_axioms(op, d).ok();
    if (axioms != ok)
        throw std::logic_error("is_two_cocycle: cocycle condition disagrees with dual-number axioms");
    return out;
}

/// Matrix of D^1: gl(g) (+) gl(V) -> C^2 in the fixed bases.
inline Matrix deformation_d1(const RelativeRBO& op) {
    CochainSpace c1 = relrb_space(op, 1), c2 = relrb_space(op, 2);
    return matrix_of(c1, c2, [&](std::vector<NRElement> comps) {
        RelCochain img = big_d(op, {comps[0] + comps[1], NRElement(op.split(), 0)});
        return c2.to_coords({img.f.component({1, 0, Target::IntoG}),
                             img.f.component({1, 0, Target::IntoV}), img.theta});
    });
}

inline Vec deformation_coords(const RelativeRBO& op, const InfinitesimalDeformation& d) {
    CochainSpace c2 = relrb_space(op, 2);
    return c2.to_coords({d.omega1, d.varrho1, d.t1});
}

/// Solves D(N, S) = d2 - d1 exactly; the returned witness satisfies the
/// equation by construction (verified by substitution before return).
inline std::optional<Equivalence> equivalent(const RelativeRBO& op,
                                             const InfinitesimalDeformation& d1,
                                             const InfinitesimalDeformation& d2) {
    Vec rhs = deformation_coords(op, d2);
    Vec lhs = deformation_coords(op, d1);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= lhs[i];
    Matrix d1m = deformation_d1(op);
    auto sol = solve(d1m, rhs);
    if (!sol) return std::nullopt;
    if (!(d1m.apply(*sol) == rhs)) throw std::logic_error("equivalent: substitution check failed");
    CochainSpace c1 = relrb_space(op, 1);
    auto comps = c1.from_coords(*sol);
    int m = op.rep().algebra().dim(), dv = op.rep().dim_v();
    Equivalence e{Matrix(m, m), Matrix(dv, dv)};
    for (int j = 0; j < m; ++j)
        for (const auto& [i, c] : comps[0].eval({j})) e.n.set(i, j, c);
    for (int a = 0; a < dv; ++a)
        for (const auto& [b, c] : comps[1].eval({m + a})) e.s.set(b - m, a, c);
    return e;
}

/// Partition of a cocycle list into H^2 classes: cocycles are grouped
/// by the coordinates of their class with respect to the engine's
/// representatives.
struct Classification {
    std::vector<std::vector<int>> classes;  // indices into the input list
    std::vector<Vec> class_coords;          // one coordinate vector per class
};

inline Classification classify(const RelativeRBO& op,
                               const std::vector<InfinitesimalDeformation>& cocycles) {
    Ladder L = build_ladder_relrb(op, 3);
    CohomologyReport h2 = ladder_cohomology(L, 2);
    auto bcols = detail::boundary_columns(L, 2);
    Classification out;
    for (std::size_t i = 0; i < cocycles.size(); ++i) {
        if (!is_two_cocycle(op, cocycles[i]).ok())
            throw std::invalid_argument("classify: input " + std::to_string(i) +
                                        " is not a 2-cocycle");
        Vec z = deformation_coords(op, cocycles[i]);
        Vec cls = detail::class_coords(h2, bcols, z);
        bool found = false;
        for (std::size_t c = 0; c < out.class_coords.size() && !found; ++c)
            if (out.class_coords[c] == cls) {
                out.classes[c].push_back(static_cast<int>(i));
                found = true;
            }
        if (!found) {
            out.class_coords.push_back(cls);
            out.classes.push_back({static_cast<int>(i)});
        }
    }
    return out;
}

}  // namespace rbx
