#pragma once

// Cochain space descriptions: ordered bases for the spaces
// Hom(/\^a g (x) /\^b V, g or V) and conversion between cochains
// (multilinear maps) and coordinate vectors. The enumeration order is
// lexicographic in (g-multi-index, V-multi-index, output index) and is
// part of the stable contract: every matrix, report and representative
// downstream depends on it.

#include "rbx/nr.hpp"

#include <vector>

namespace rbx {

struct BlockDesc {
    int g_args = 0;
    int v_args = 0;
    Target target = Target::IntoG;
    int arity() const { return g_args + v_args; }

    int dim(const SpaceSplit& sp) const {
        int out = (target == Target::IntoG) ? sp.dim_g : sp.dim_v;
        return static_cast<int>(binomial(sp.dim_g, g_args) * binomial(sp.dim_v, v_args)) * out;
    }
};

/// An ordered direct sum of Hom-blocks; cochains are lists of
/// multilinear maps, one per block (arities may differ across blocks).
struct CochainSpace {
    SpaceSplit split;
    std::vector<BlockDesc> blocks;

    int dim() const {
        int d = 0;
        for (const auto& b : blocks) d += b.dim(split);
        return d;
    }

    std::vector<NRElement> from_coords(const Vec& coords) const {
        if (static_cast<int>(coords.size()) != dim())
            throw std::invalid_argument("from_coords: wrong length");
        std::vector<NRElement> out;
        std::size_t pos = 0;
        for (const auto& b : blocks) {
            NRElement e(split, b.arity());
            int out_lo = (b.target == Target::IntoG) ? 0 : split.dim_g;
            int out_hi = (b.target == Target::IntoG) ? split.dim_g : split.total();
            for (const auto& gi : exterior_basis(b.g_args, split.dim_g))
                for (const auto& vi : exterior_basis(b.v_args, split.dim_v)) {
                    IndexList args = gi;
                    for (int v : vi) args.push_back(split.dim_g + v);
                    for (int o = out_lo; o < out_hi; ++o) {
                        if (coords[pos] != 0) e.add_term(args, o, coords[pos]);
                        ++pos;
                    }
                }
            out.push_back(std::move(e));
        }
        return out;
    }

    Vec to_coords(const std::vector<NRElement>& comps) const {
        if (comps.size() != blocks.size())
            throw std::invalid_argument("to_coords: component count mismatch");
        Vec coords;
        coords.reserve(dim());
        for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
            const auto& b = blocks[bi];
            const NRElement& e = comps[bi];
            if (e.arity() != b.arity()) throw std::invalid_argument("to_coords: arity mismatch");
            int out_lo = (b.target == Target::IntoG) ? 0 : split.dim_g;
            int out_hi = (b.target == Target::IntoG) ? split.dim_g : split.total();
            for (const auto& gi : exterior_basis(b.g_args, split.dim_g))
                for (const auto& vi : exterior_basis(b.v_args, split.dim_v)) {
                    IndexList args = gi;
                    for (int v : vi) args.push_back(split.dim_g + v);
                    SparseVec val = e.eval(args);
                    for (int o = out_lo; o < out_hi; ++o) {
                        auto it = val.find(o);
                        coords.push_back(it == val.end() ? Scalar(0) : it->second);
                    }
                }
            // entries outside the declared blocks would be silently lost;
            // require the component to be homogeneous of the block type
            for (const auto& [args, dist] : e.terms())
                for (const auto& [o, c] : dist) {
                    (void)c;
                    Bidegree d = e.entry_bidegree(args, o);
                    Bidegree want{b.target == Target::IntoG ? b.g_args - 1 : b.g_args,
                                  b.target == Target::IntoG ? b.v_args : b.v_args - 1, b.target};
                    if (!(d == want)) throw std::invalid_argument("to_coords: stray component");
                }
        }
        return coords;
    }
};

/// A materialized ladder of coboundary matrices d[n]: C^n -> C^{n+1}.
struct Ladder {
    std::vector<CochainSpace> spaces;  // indices 0 .. top
    std::vector<Matrix> d;             // d[n], n = 0 .. top-1

    int top() const { return static_cast<int>(spaces.size()) - 1; }
    int dim(int n) const { return (n >= 0 && n <= top()) ? spaces[n].dim() : 0; }
};

/// Builds the matrix of a linear map between cochain spaces by pushing
/// every basis cochain through it.
template <typename Fn>
Matrix matrix_of(const CochainSpace& from, const CochainSpace& to, Fn&& apply) {
    Matrix m(to.dim(), from.dim());
    for (int col = 0; col < from.dim(); ++col) {
        Vec basis(from.dim(), Scalar(0));
        basis[col] = 1;
        Vec image = apply(from.from_coords(basis));
        if (static_cast<int>(image.size()) != to.dim())
            throw std::logic_error("matrix_of: image dimension mismatch");
        for (int row = 0; row < to.dim(); ++row)
            if (image[row] != 0) m.set(row, col, image[row]);
    }
    return m;
}

}  // namespace rbx
