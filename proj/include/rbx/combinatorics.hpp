#pragma once

// Shuffle enumeration, permutation and Koszul signs, and ordered
// multi-index bases for exterior and graded-symmetric powers.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rbx {

using Index = int;
using IndexList = std::vector<Index>;

/// A permutation of {0,...,n-1} stored one-line: perm[i] = sigma(i).
struct SignedPermutation {
    IndexList perm;
    int sign;  // ungraded sign (-1)^sigma
};

/// Ungraded sign of a permutation, by inversion count.
inline int perm_sign(const IndexList& perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
}

/// Koszul sign of sigma on graded symbols: v_1 ... v_n =
/// koszul_sign(sigma, degrees) * v_{sigma(1)} ... v_{sigma(n)} in the
/// graded-symmetric algebra. degrees[m] is the degree of v_{m+1}.
/// Only parities of degrees matter.
inline int koszul_sign(const IndexList& perm, const std::vector<int>& degrees) {
    if (perm.size() != degrees.size())
        throw std::invalid_argument("koszul_sign: size mismatch");
    int count = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j] && (degrees[perm[i]] & 1) && (degrees[perm[j]] & 1)) ++count;
    return (count % 2 == 0) ? 1 : -1;
}

/// All (i_1,...,i_k)-shuffles of {0,...,n-1} with n = sum of block
/// sizes: permutations increasing within each consecutive block of
/// positions, each with its ungraded sign. Count equals the
/// multinomial coefficient. Enumeration is deterministic: the value
/// set of the first block runs lexicographically, then recursively.
inline std::vector<SignedPermutation> shuffles(const std::vector<int>& block_sizes) {
    for (int b : block_sizes)
        if (b < 0) throw std::invalid_argument("shuffles: negative block size");
    int n = 0;
    for (int b : block_sizes) n += b;

    std::vector<SignedPermutation> out;
    IndexList current;
    current.reserve(n);
    std::vector<bool> used(n, false);

    // Extends `current` by choosing an increasing block of `size` values
    // from the unused pool, for each block in turn.
    auto rec = [&](auto&& self, std::size_t block) -> void {
        if (block == block_sizes.size()) {
            out.push_back({current, perm_sign(current)});
            return;
        }
        int size = block_sizes[block];
        IndexList pool;
        for (int v = 0; v < n; ++v)
            if (!used[v]) pool.push_back(v);
        // choose an increasing `size`-subset of pool, lexicographically
        IndexList choice(size);
        auto choose = [&](auto&& chooser, int start, int depth) -> void {
            if (depth == size) {
                for (int v : choice) { current.push_back(v); used[v] = true; }
                self(self, block + 1);
                for (int v : choice) used[v] = false;
                current.resize(current.size() - size);
                return;
            }
            for (std::size_t p = start; p < pool.size(); ++p) {
                choice[depth] = pool[p];
                chooser(chooser, static_cast<int>(p) + 1, depth + 1);
            }
        };
        choose(choose, 0, 0);
    };
    rec(rec, 0);
    return out;
}

/// Strictly increasing k-element multi-indices over {0,...,dim-1} in
/// lexicographic order; empty list when k > dim, the single empty
/// index when k = 0.
inline std::vector<IndexList> exterior_basis(int k, int dim) {
    std::vector<IndexList> out;
    if (k < 0 || k > dim) return out;
    IndexList idx(k);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == k) { out.push_back(idx); return; }
        for (int v = start; v < dim; ++v) {
            idx[depth] = v;
            self(self, v + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

/// Sorts `args` ascending and reports the ungraded sign of the sorting
/// permutation; returns 0 sign when an index repeats (alternating maps
/// vanish there).
inline int sort_alternating(IndexList& args) {
    int sign = 1;
    for (std::size_t i = 1; i < args.size(); ++i)  // insertion sort, counts swaps
        for (std::size_t j = i; j > 0 && args[j] < args[j - 1]; --j) {
            std::swap(args[j], args[j - 1]);
            sign = -sign;
        }
    for (std::size_t i = 1; i < args.size(); ++i)
        if (args[i] == args[i - 1]) return 0;
    return sign;
}

/// Weakly increasing k-element multi-indices over {0,...,dim-1} where
/// indices flagged odd may not repeat (graded-symmetric powers).
inline std::vector<IndexList> symmetric_basis(int k, int dim, const std::vector<bool>& is_odd) {
    std::vector<IndexList> out;
    if (k < 0) return out;
    IndexList idx(k);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == k) { out.push_back(idx); return; }
        for (int v = start; v < dim; ++v) {
            if (depth > 0 && idx[depth - 1] == v && is_odd[v]) continue;
            idx[depth] = v;
            self(self, v, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

/// Sorts `args` ascending with the Koszul sign of the sorting
/// permutation (degrees given per basis index); returns 0 when an
/// odd-degree index repeats.
inline int sort_symmetric(IndexList& args, const std::vector<int>& degree_of) {
    int sign = 1;
    for (std::size_t i = 1; i < args.size(); ++i)
        for (std::size_t j = i; j > 0 && args[j] < args[j - 1]; --j) {
            if ((degree_of[args[j]] & 1) && (degree_of[args[j - 1]] & 1)) sign = -sign;
            std::swap(args[j], args[j - 1]);
        }
    for (std::size_t i = 1; i < args.size(); ++i)
        if (args[i] == args[i - 1] && (degree_of[args[i]] & 1)) return 0;
    return sign;
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace rbx
