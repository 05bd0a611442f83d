#pragma once

// Alternating multilinear maps on a split space W = g (+) V, their
// bidegree typing, lifts, and the Nijenhuis-Richardson bracket.
//
// An element of arity a is a linear map /\^a W -> W, stored sparsely on
// strictly increasing basis multi-indices. The W-basis is ordered with
// the g-basis first, so the lift of a map defined on blocks of g- and
// V-arguments coincides with its coefficient table on sorted indices.
// Maps of arity 0 are constants (elements of W).

#include "rbx/combinatorics.hpp"
#include "rbx/matrix.hpp"
#include "rbx/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace rbx {

struct SpaceSplit {
    int dim_g = 0;
    int dim_v = 0;
    int total() const { return dim_g + dim_v; }
    bool is_g(int w) const { return w < dim_g; }
    friend bool operator==(const SpaceSplit& a, const SpaceSplit& b) {
        return a.dim_g == b.dim_g && a.dim_v == b.dim_v;
    }
};

using SparseVec = std::map<int, Scalar>;

inline void sv_add(SparseVec& v, int key, const Scalar& c) {
    if (c == 0) return;
    auto it = v.find(key);
    if (it == v.end()) {
        v[key] = c;
    } else {
        it->second += c;
        if (it->second == 0) v.erase(it);
    }
}

enum class Target { IntoG, IntoV };

/// Bidegree k|l with the summand the output lands in.
struct Bidegree {
    int k = 0;
    int l = 0;
    Target target = Target::IntoG;
    friend bool operator<(const Bidegree& a, const Bidegree& b) {
        return std::tie(a.k, a.l, a.target) < std::tie(b.k, b.l, b.target);
    }
    friend bool operator==(const Bidegree& a, const Bidegree& b) {
        return a.k == b.k && a.l == b.l && a.target == b.target;
    }
};

class NRElement {
  public:
    NRElement(SpaceSplit split, int arity) : split_(split), arity_(arity) {
        if (arity < 0) throw std::invalid_argument("NRElement: negative arity");
    }

    const SpaceSplit& split() const { return split_; }
    int arity() const { return arity_; }
    int degree() const { return arity_ - 1; }  // NR degree = arity - 1
    bool is_zero() const { return coeff_.empty(); }

    /// Adds c * (basis multi-index -> basis vector `out`); `args` may be
    /// unsorted, the alternating sign is applied.
    void add_term(IndexList args, int out, const Scalar& c) {
        if (static_cast<int>(args.size()) != arity_)
            throw std::invalid_argument("add_term: arity mismatch");
        for (int a : args) check_index(a);
        check_index(out);
        if (c == 0) return;
        int sign = sort_alternating(args);
        if (sign == 0) return;
        auto& dist = coeff_[args];
        sv_add(dist, out, sign > 0 ? c : Scalar(-c));
        if (dist.empty()) coeff_.erase(args);
    }

    /// Evaluates on basis arguments (any order); alternating.
    SparseVec eval(IndexList args) const {
        if (static_cast<int>(args.size()) != arity_)
            throw std::invalid_argument("eval: arity mismatch");
        int sign = sort_alternating(args);
        SparseVec out;
        if (sign == 0) return out;
        auto it = coeff_.find(args);
        if (it == coeff_.end()) return out;
        for (const auto& [o, c] : it->second) out[o] = sign > 0 ? c : Scalar(-c);
        return out;
    }

    /// Evaluates on arbitrary vectors of W by multilinear expansion.
    /// This is the lift evaluator: arguments are pairs (x_i, v_i).
    SparseVec eval_multi(const std::vector<SparseVec>& args) const {
        if (static_cast<int>(args.size()) != arity_)
            throw std::invalid_argument("eval_multi: arity mismatch");
        SparseVec out;
        IndexList idx(arity_);
        auto rec = [&](auto&& self, int depth, const Scalar& factor) -> void {
            if (depth == arity_) {
                for (const auto& [o, c] : eval(idx)) sv_add(out, o, factor * c);
                return;
            }
            for (const auto& [basis, c] : args[depth]) {
                idx[depth] = basis;
                self(self, depth + 1, factor * c);
            }
        };
        rec(rec, 0, Scalar(1));
        return out;
    }

    NRElement& operator+=(const NRElement& other) {
        require_same_shape(other);
        for (const auto& [args, dist] : other.coeff_)
            for (const auto& [o, c] : dist) raw_add(args, o, c);
        return *this;
    }

    NRElement& operator-=(const NRElement& other) {
        require_same_shape(other);
        for (const auto& [args, dist] : other.coeff_)
            for (const auto& [o, c] : dist) raw_add(args, o, -c);
        return *this;
    }

    NRElement scaled(const Scalar& s) const {
        NRElement out(split_, arity_);
        if (s == 0) return out;
        out.coeff_ = coeff_;
        for (auto& [args, dist] : out.coeff_)
            for (auto& [o, c] : dist) c *= s;
        return out;
    }

    friend NRElement operator+(NRElement a, const NRElement& b) { a += b; return a; }
    friend NRElement operator-(NRElement a, const NRElement& b) { a -= b; return a; }
    friend bool operator==(const NRElement& a, const NRElement& b) {
        return a.split_ == b.split_ && a.arity_ == b.arity_ && a.coeff_ == b.coeff_;
    }

    /// Bidegree of the entry (I, out): counts of g- and V-arguments
    /// determine k|l together with the output summand.
    Bidegree entry_bidegree(const IndexList& args, int out) const {
        int a = 0;
        for (int w : args)
            if (split_.is_g(w)) ++a;
        int b = static_cast<int>(args.size()) - a;
        if (split_.is_g(out)) return {a - 1, b, Target::IntoG};
        return {a, b - 1, Target::IntoV};
    }

    /// k|l when homogeneous, nothing otherwise (or when zero).
    std::optional<std::pair<int, int>> bidegree() const {
        std::optional<std::pair<int, int>> found;
        for (const auto& [args, dist] : coeff_)
            for (const auto& [o, c] : dist) {
                (void)c;
                Bidegree d = entry_bidegree(args, o);
                if (!found)
                    found = std::make_pair(d.k, d.l);
                else if (*found != std::make_pair(d.k, d.l))
                    return std::nullopt;
            }
        return found;
    }

    /// Splits into homogeneous bidegree components.
    std::map<Bidegree, NRElement> decompose() const {
        std::map<Bidegree, NRElement> out;
        for (const auto& [args, dist] : coeff_)
            for (const auto& [o, c] : dist) {
                Bidegree d = entry_bidegree(args, o);
                auto it = out.find(d);
                if (it == out.end()) it = out.emplace(d, NRElement(split_, arity_)).first;
                it->second.raw_add(args, o, c);
            }
        return out;
    }

    NRElement component(const Bidegree& d) const {
        NRElement out(split_, arity_);
        for (const auto& [args, dist] : coeff_)
            for (const auto& [o, c] : dist)
                if (entry_bidegree(args, o) == d) out.raw_add(args, o, c);
        return out;
    }

    const std::map<IndexList, SparseVec>& terms() const { return coeff_; }

    /// First nonzero entry, as a witness for failed identities.
    std::optional<std::pair<IndexList, int>> first_term() const {
        if (coeff_.empty()) return std::nullopt;
        const auto& [args, dist] = *coeff_.begin();
        return std::make_pair(args, dist.begin()->first);
    }

  private:
    void check_index(int w) const {
        if (w < 0 || w >= split_.total()) throw std::out_of_range("NRElement: bad basis index");
    }
    void require_same_shape(const NRElement& other) const {
        if (!(split_ == other.split_) || arity_ != other.arity_)
            throw std::invalid_argument("NRElement: shape mismatch");
    }
    void raw_add(const IndexList& sorted_args, int out, const Scalar& c) {
        if (c == 0) return;
        auto& dist = coeff_[sorted_args];
        sv_add(dist, out, c);
        if (dist.empty()) coeff_.erase(sorted_args);
    }

    SpaceSplit split_;
    int arity_;
    std::map<IndexList, SparseVec> coeff_;
};

/// P composed-bar Q: the shuffle sum feeding Q's output into P's first
/// slot. Zero when P has arity 0.
inline NRElement nr_compose(const NRElement& P, const NRElement& Q) {
    if (!(P.split() == Q.split())) throw std::invalid_argument("nr_compose: space mismatch");
    int p = P.degree(), q = Q.degree();
    int out_arity = p + q + 1;
    if (out_arity < 0) return NRElement(P.split(), 0);
    NRElement out(P.split(), out_arity);
    if (P.arity() == 0) return out;  // nothing can absorb Q's output
    int n = P.split().total();
    auto shufs = shuffles({Q.arity(), p});
    for (const IndexList& I : exterior_basis(out_arity, n)) {
        SparseVec value;
        for (const auto& [perm, sgn] : shufs) {
            IndexList first(Q.arity()), rest(p);
            for (int i = 0; i < Q.arity(); ++i) first[i] = I[perm[i]];
            for (int i = 0; i < p; ++i) rest[i] = I[perm[Q.arity() + i]];
            SparseVec qv = Q.eval(first);
            for (const auto& [t, c] : qv) {
                IndexList pargs;
                pargs.reserve(p + 1);
                pargs.push_back(t);
                pargs.insert(pargs.end(), rest.begin(), rest.end());
                for (const auto& [o, d] : P.eval(pargs))
                    sv_add(value, o, (sgn > 0 ? c : Scalar(-c)) * d);
            }
        }
        for (const auto& [o, c] : value) out.add_term(I, o, c);
    }
    return out;
}

inline int pow_sign(long long exponent) { return (exponent % 2 != 0) ? -1 : 1; }

/// Nijenhuis-Richardson bracket [P,Q] = P o Q - (-1)^{pq} Q o P.
inline NRElement nr_bracket(const NRElement& P, const NRElement& Q) {
    int p = P.degree(), q = Q.degree();
    NRElement out = nr_compose(P, Q);
    NRElement other = nr_compose(Q, P);
    if (out.arity() != other.arity()) {
        // can only happen when both sides are zero maps of degenerate arity
        if (out.is_zero() && other.is_zero()) return out;
        throw std::logic_error("nr_bracket: arity disagreement");
    }
    if (pow_sign(static_cast<long long>(p) * q) > 0)
        out -= other;
    else
        out += other;
    return out;
}

// ---------------------------------------------------------------------------
// Independent implementation through coderivations of the exterior
// coalgebra: each map extends to an operator on (+)_k /\^k W, the
// bracket is the (graded) operator commutator, and the result is read
// back off the top corestriction block. Cross-checked against the
// shuffle formula in the test suite; both are exact.

class ExteriorOperator {
  public:
    explicit ExteriorOperator(SpaceSplit split) : split_(split) {
        int n = split.total();
        for (int k = 1; k <= n; ++k)
            for (const auto& I : exterior_basis(k, n)) {
                index_of_[I] = static_cast<int>(basis_.size());
                basis_.push_back(I);
            }
        mat_ = Matrix(static_cast<int>(basis_.size()), static_cast<int>(basis_.size()));
    }

    /// The coderivation extending f: on a wedge of length >= arity(f),
    /// sum over shuffles of f applied to the first block wedged with
    /// the rest.
    static ExteriorOperator coderivation(const NRElement& f) {
        ExteriorOperator D(f.split());
        int a = f.arity();
        if (a == 0) return D;  // constants extend by zero on /\^{>=1}
        for (std::size_t col = 0; col < D.basis_.size(); ++col) {
            const IndexList& I = D.basis_[col];
            int k = static_cast<int>(I.size());
            if (k < a) continue;
            for (const auto& [perm, sgn] : shuffles({a, k - a})) {
                IndexList head(a), tail(k - a);
                for (int i = 0; i < a; ++i) head[i] = I[perm[i]];
                for (int i = 0; i < k - a; ++i) tail[i] = I[perm[a + i]];
                for (const auto& [t, c] : f.eval(head)) {
                    IndexList wedge;
                    wedge.reserve(k - a + 1);
                    wedge.push_back(t);
                    wedge.insert(wedge.end(), tail.begin(), tail.end());
                    int s = sort_alternating(wedge);
                    if (s == 0) continue;
                    int row = D.index_of_.at(wedge);
                    D.mat_.add(row, static_cast<int>(col), Scalar(sgn * s) * c);
                }
            }
        }
        return D;
    }

    ExteriorOperator compose(const ExteriorOperator& other) const {
        ExteriorOperator out(split_);
        out.mat_ = mat_.times(other.mat_);
        return out;
    }

    ExteriorOperator& axpy(const Scalar& s, const ExteriorOperator& other) {
        for (const auto& [rc, v] : other.mat_.entries()) mat_.add(rc.first, rc.second, s * v);
        return *this;
    }

    /// Reads the block /\^arity -> /\^1 back as a multilinear map.
    NRElement corestriction(int arity) const {
        NRElement out(split_, arity);
        for (const auto& I : exterior_basis(arity, split_.total())) {
            int col = index_of_.at(I);
            for (int w = 0; w < split_.total(); ++w) {
                Scalar c = mat_.at(index_of_.at(IndexList{w}), col);
                if (c != 0) out.add_term(I, w, c);
            }
        }
        return out;
    }

    const Matrix& matrix() const { return mat_; }

  private:
    SpaceSplit split_;
    std::vector<IndexList> basis_;
    std::map<IndexList, int> index_of_;
    Matrix mat_{0, 0};
};

/// [P,Q] computed as a commutator of coderivations.
inline NRElement nr_bracket_coderivation(const NRElement& P, const NRElement& Q) {
    int p = P.degree(), q = Q.degree();
    int out_arity = p + q + 1;
    if (out_arity < 0) return NRElement(P.split(), 0);
    ExteriorOperator DP = ExteriorOperator::coderivation(P);
    ExteriorOperator DQ = ExteriorOperator::coderivation(Q);
    ExteriorOperator C = DP.compose(DQ);
    C.axpy(Scalar(-pow_sign(static_cast<long long>(p) * q)), DQ.compose(DP));
    return C.corestriction(out_arity);
}

/// Derived bracket on h = (+)_k Hom(/\^k V, g):
/// [[theta, phi]] = (-1)^(n-1) [[pi, theta], phi] for theta of V-arity n.
/// pi is the degree-1 element mu + rho; inputs must be homogeneous of
/// bidegree -1|n and -1|m.
inline NRElement courant_bracket(const NRElement& pi, const NRElement& theta,
                                 const NRElement& phi) {
    auto bt = theta.bidegree();
    auto bp = phi.bidegree();
    if ((bt && bt->first != -1) || (bp && bp->first != -1))
        throw std::invalid_argument("courant_bracket: arguments must lie in h");
    int n = theta.arity();
    NRElement inner = nr_bracket(pi, theta);
    NRElement out = nr_bracket(inner, phi);
    return out.scaled(Scalar(pow_sign(n - 1)));
}

}  // namespace rbx
