#pragma once

// Shared deterministic generators for the test suites. All randomness
// is seeded; reruns are bit-identical.

#include "rbx/examples.hpp"
#include "rbx/nr.hpp"

#include <random>

namespace rbxtest {

using namespace rbx;

inline Scalar rand_scalar(std::mt19937& rng, int num_range = 3, int den_max = 2) {
    std::uniform_int_distribution<int> n(-num_range, num_range);
    std::uniform_int_distribution<int> d(1, den_max);
    return Scalar(n(rng), d(rng));
}

inline Matrix rand_matrix(std::mt19937& rng, int rows, int cols, int density_pct = 60) {
    std::uniform_int_distribution<int> pct(0, 99);
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (pct(rng) < density_pct) m.set(r, c, rand_scalar(rng));
    return m;
}

/// Random homogeneous element of the given bidegree, sparse small
/// rational coefficients.
inline NRElement rand_bigraded(std::mt19937& rng, const SpaceSplit& sp, int k, int l,
                               Target target, int density_pct = 70) {
    int g_args = (target == Target::IntoG) ? k + 1 : k;
    int v_args = (target == Target::IntoG) ? l : l + 1;
    NRElement e(sp, g_args + v_args);
    std::uniform_int_distribution<int> pct(0, 99);
    for (const auto& gi : exterior_basis(g_args, sp.dim_g))
        for (const auto& vi : exterior_basis(v_args, sp.dim_v)) {
            IndexList args = gi;
            for (int v : vi) args.push_back(sp.dim_g + v);
            int out_lo = (target == Target::IntoG) ? 0 : sp.dim_g;
            int out_hi = (target == Target::IntoG) ? sp.dim_g : sp.total();
            for (int o = out_lo; o < out_hi; ++o)
                if (pct(rng) < density_pct) e.add_term(args, o, rand_scalar(rng));
        }
    return e;
}

/// Random element of C^{(n-1)|0}: an n-cochain of a LieRep pair.
inline NRElement rand_lierep_cochain(std::mt19937& rng, const SpaceSplit& sp, int n) {
    NRElement e = rand_bigraded(rng, sp, n - 1, 0, Target::IntoG);
    e += rand_bigraded(rng, sp, n - 1, 0, Target::IntoV);
    return e;
}

inline LieAlgebra rand_bracket(std::mt19937& rng, int dim) {
    LieAlgebra g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            SparseVec v;
            for (int k = 0; k < dim; ++k) {
                Scalar c = rand_scalar(rng, 2, 1);
                if (c != 0) v[k] = c;
            }
            g.set_bracket(i, j, v);
        }
    return g;
}

}  // namespace rbxtest
