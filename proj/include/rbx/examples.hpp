#pragma once

// Built-in example structures. Every entry verifies under its own
// checks; the test suite and the CLI example registry both draw from
// here.

#include "rbx/bialgebra.hpp"
#include "rbx/structures.hpp"

#include <vector>

namespace rbx::examples {

inline LieAlgebra abelian(int n) { return LieAlgebra(n); }

/// aff(1): [e1, e2] = e2.
inline LieAlgebra aff1() {
    LieAlgebra g(2);
    g.set_bracket(0, 1, {{1, Scalar(1)}});
    return g;
}

/// Heisenberg h3: [e1, e2] = e3.
inline LieAlgebra heis3() {
    LieAlgebra g(3);
    g.set_bracket(0, 1, {{2, Scalar(1)}});
    return g;
}

/// sl(2) in the basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
inline LieAlgebra sl2() {
    LieAlgebra g(3);
    g.set_bracket(0, 1, {{1, Scalar(2)}});
    g.set_bracket(0, 2, {{2, Scalar(-2)}});
    g.set_bracket(1, 2, {{0, Scalar(1)}});
    return g;
}

/// T0 on aff(1) over the adjoint representation: T0 e1 = e1, T0 e2 = 0.
/// Solutions of the Rota-Baxter system on aff(1) are exactly
/// {b = d = 0} union {d = -a, bc = -a^2} for T = [[a,b],[c,d]].
inline RelativeRBO aff1_t0() {
    Matrix t(2, 2);
    t.set(0, 0, 1);
    return RelativeRBO(Representation::adjoint(aff1()), std::move(t));
}

/// A member of the nilpotent solution family d = -a, bc = -a^2 on
/// aff(1): T = [[1,1],[-1,-1]], T^2 = 0.
inline RelativeRBO aff1_rbo_nil() {
    Matrix t(2, 2);
    t.set(0, 0, 1);
    t.set(0, 1, 1);
    t.set(1, 0, -1);
    t.set(1, 1, -1);
    return RelativeRBO(Representation::adjoint(aff1()), std::move(t));
}

/// r = h ^ e on sl(2): a skew r-matrix ([r,r] = 0, every Schouten term
/// carries a repeated wedge factor).
inline Polyvector sl2_r_he() {
    Polyvector r(3, 2);
    r.add({0, 1}, 1);
    return r;
}

/// r = e1 ^ e2 on aff(1) (Yang-Baxter holds trivially in dimension 2).
inline Polyvector aff1_r12() {
    Polyvector r(2, 2);
    r.add({0, 1}, 1);
    return r;
}

/// mu with the Jacobi identity deliberately broken:
/// [e1,e2] = e1, [e1,e3] = e2, [e2,e3] = e1.
inline LieAlgebra broken_jacobi3() {
    LieAlgebra g(3);
    g.set_bracket(0, 1, {{0, Scalar(1)}});
    g.set_bracket(0, 2, {{1, Scalar(1)}});
    g.set_bracket(1, 2, {{0, Scalar(1)}});
    return g;
}

}  // namespace rbx::examples
