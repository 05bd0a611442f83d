#pragma once

// Weight-graded symmetric multilinear maps on finite-dimensional
// Z-graded spaces, with the graded Nijenhuis-Richardson bracket (on
// Hom(Sym(V), V)) and the graded Matsushima-Nijenhuis bracket (on
// Hom(Sym(V) (x) V, V)), plus the symmetrization map between them.
// Koszul signs route through foundation's koszul_sign exclusively.

#include "rbx/combinatorics.hpp"
#include "rbx/nr.hpp"

#include <map>
#include <set>
#include <vector>

namespace rbx {

struct GradedSpace {
    std::vector<int> degree_of;  // degree per basis index

    int dim() const { return static_cast<int>(degree_of.size()); }
    bool odd(int i) const { return degree_of[i] & 1; }
    std::vector<bool> odd_flags() const {
        std::vector<bool> f(degree_of.size());
        for (std::size_t i = 0; i < degree_of.size(); ++i) f[i] = degree_of[i] & 1;
        return f;
    }
    friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
        return a.degree_of == b.degree_of;
    }
};

inline GradedSpace direct_sum(const GradedSpace& a, const GradedSpace& b) {
    GradedSpace w = a;
    w.degree_of.insert(w.degree_of.end(), b.degree_of.begin(), b.degree_of.end());
    return w;
}

/// A degree-homogeneous element of Hom(Sym(V), V) (flavor Sym) or
/// Hom(Sym(V) (x) V, V) (flavor SymTensor), stored per weight on
/// canonical multi-indices: weakly increasing, odd indices never
/// repeated; for SymTensor the distinguished last argument is appended
/// after the symmetric part and is unconstrained.
class GradedMap {
  public:
    enum class Flavor { Sym, SymTensor };

    GradedMap(GradedSpace space, Flavor flavor, int degree)
        : space_(std::move(space)), flavor_(flavor), degree_(degree) {}

    const GradedSpace& space() const { return space_; }
    Flavor flavor() const { return flavor_; }
    int degree() const { return degree_; }
    bool is_zero() const { return coeff_.empty(); }

    /// Sym flavor: adds c * (v_args -> out), canonicalizing with the
    /// Koszul sign. Entries must respect the intrinsic degree.
    void add_term(IndexList args, int out, const Scalar& c) {
        if (flavor_ != Flavor::Sym) throw std::invalid_argument("add_term: Sym flavor only");
        if (c == 0) return;
        check_degree(args, out);
        int sign = sort_symmetric(args, space_.degree_of);
        if (sign == 0) return;
        raw_add(args, out, sign > 0 ? c : Scalar(-c));
    }

    /// SymTensor flavor: symmetric part + distinguished last argument.
    void add_term_tensor(IndexList sym_args, int last, int out, const Scalar& c) {
        if (flavor_ != Flavor::SymTensor)
            throw std::invalid_argument("add_term_tensor: SymTensor flavor only");
        if (c == 0) return;
        IndexList all = sym_args;
        all.push_back(last);
        check_degree(all, out);
        int sign = sort_symmetric(sym_args, space_.degree_of);
        if (sign == 0) return;
        sym_args.push_back(last);
        raw_add(sym_args, out, sign > 0 ? c : Scalar(-c));
    }

    /// Evaluation on basis arguments in any order (Sym flavor).
    SparseVec eval(IndexList args) const {
        if (flavor_ != Flavor::Sym) throw std::invalid_argument("eval: Sym flavor only");
        int sign = sort_symmetric(args, space_.degree_of);
        SparseVec out;
        if (sign == 0) return out;
        auto it = coeff_.find(args);
        if (it == coeff_.end()) return out;
        for (const auto& [o, c] : it->second) out[o] = sign > 0 ? c : Scalar(-c);
        return out;
    }

    SparseVec eval_tensor(IndexList sym_args, int last) const {
        if (flavor_ != Flavor::SymTensor)
            throw std::invalid_argument("eval_tensor: SymTensor flavor only");
        int sign = sort_symmetric(sym_args, space_.degree_of);
        SparseVec out;
        if (sign == 0) return out;
        sym_args.push_back(last);
        auto it = coeff_.find(sym_args);
        if (it == coeff_.end()) return out;
        for (const auto& [o, c] : it->second) out[o] = sign > 0 ? c : Scalar(-c);
        return out;
    }

    /// Multilinear expansion over sparse vectors (Sym flavor). The
    /// expansion itself introduces no Koszul signs; reordering effects
    /// are handled by eval's canonicalization. Mixing basis vectors of
    /// different degrees inside one argument is therefore only sound
    /// when the caller tracks homogeneity, which all uses here do.
    SparseVec eval_multi(const std::vector<SparseVec>& args) const {
        SparseVec out;
        IndexList idx(args.size());
        auto rec = [&](auto&& self, std::size_t depth, const Scalar& factor) -> void {
            if (depth == args.size()) {
                for (const auto& [o, c] : eval(idx)) sv_add(out, o, factor * c);
                return;
            }
            for (const auto& [b, c] : args[depth]) {
                idx[depth] = b;
                self(self, depth + 1, factor * c);
            }
        };
        rec(rec, 0, Scalar(1));
        return out;
    }

    GradedMap& operator+=(const GradedMap& o) {
        if (!(space_ == o.space_) || flavor_ != o.flavor_ || degree_ != o.degree_)
            throw std::invalid_argument("GradedMap: shape mismatch");
        for (const auto& [k, dist] : o.coeff_)
            for (const auto& [out, c] : dist) raw_add(k, out, c);
        return *this;
    }

    GradedMap scaled(const Scalar& s) const {
        GradedMap out(space_, flavor_, degree_);
        if (s == 0) return out;
        out.coeff_ = coeff_;
        for (auto& [k, dist] : out.coeff_)
            for (auto& [o, c] : dist) c *= s;
        return out;
    }

    friend GradedMap operator+(GradedMap a, const GradedMap& b) { a += b; return a; }
    friend bool operator==(const GradedMap& a, const GradedMap& b) {
        return a.space_ == b.space_ && a.flavor_ == b.flavor_ && a.degree_ == b.degree_ &&
               a.coeff_ == b.coeff_;
    }

    const std::map<IndexList, SparseVec>& terms() const { return coeff_; }

    /// Weights with nonzero components (map keys are ordered
    /// lexicographically, not by length, hence the set).
    std::vector<int> weights() const {
        std::set<int> seen;
        for (const auto& [k, dist] : coeff_) {
            (void)dist;
            seen.insert(static_cast<int>(k.size()));
        }
        return std::vector<int>(seen.begin(), seen.end());
    }

    int max_weight() const {
        int w = 0;
        for (const auto& [k, dist] : coeff_) {
            (void)dist;
            w = std::max(w, static_cast<int>(k.size()));
        }
        return w;
    }

    /// Restriction to a single weight component.
    GradedMap weight_component(int w) const {
        GradedMap out(space_, flavor_, degree_);
        for (const auto& [k, dist] : coeff_)
            if (static_cast<int>(k.size()) == w)
                for (const auto& [o, c] : dist) out.raw_add(k, o, c);
        return out;
    }

  private:
    void check_degree(const IndexList& args, int out) const {
        int total = degree_;
        for (int a : args) {
            if (a < 0 || a >= space_.dim()) throw std::out_of_range("GradedMap: bad index");
            total += space_.degree_of[a];
        }
        if (out < 0 || out >= space_.dim()) throw std::out_of_range("GradedMap: bad output");
        if (space_.degree_of[out] != total)
            throw std::invalid_argument("GradedMap: entry violates the intrinsic degree");
    }
    void raw_add(const IndexList& key, int out, const Scalar& c) {
        if (c == 0) return;
        auto& dist = coeff_[key];
        sv_add(dist, out, c);
        if (dist.empty()) coeff_.erase(key);
    }

    GradedSpace space_;
    Flavor flavor_;
    int degree_;
    std::map<IndexList, SparseVec> coeff_;
};

/// f composed-bar g in the graded symmetric world:
/// (f_i o g_j)(v_1..v_{i+j-1}) = sum over (j, i-1)-shuffles of
/// eps(sigma) f_i(g_j(v...), v...).
inline GradedMap graded_nr_compose(const GradedMap& f, const GradedMap& g) {
    if (f.flavor() != GradedMap::Flavor::Sym || g.flavor() != GradedMap::Flavor::Sym)
        throw std::invalid_argument("graded_nr_compose: Sym flavor only");
    const GradedSpace& sp = f.space();
    GradedMap out(sp, GradedMap::Flavor::Sym, f.degree() + g.degree());
    auto odd = sp.odd_flags();
    for (int i : f.weights())
        for (int j : g.weights()) {
            int k = i + j - 1;
            auto shufs = shuffles({j, i - 1});
            for (const auto& M : symmetric_basis(k, sp.dim(), odd)) {
                std::vector<int> degs(k);
                for (int t = 0; t < k; ++t) degs[t] = sp.degree_of[M[t]];
                SparseVec total;
                for (const auto& sh : shufs) {
                    int eps = koszul_sign(sh.perm, degs);
                    IndexList head(j), tail(i - 1);
                    for (int t = 0; t < j; ++t) head[t] = M[sh.perm[t]];
                    for (int t = 0; t < i - 1; ++t) tail[t] = M[sh.perm[j + t]];
                    SparseVec gv = g.weight_component(j).eval(head);
                    for (const auto& [mid, c] : gv) {
                        IndexList fargs{mid};
                        fargs.insert(fargs.end(), tail.begin(), tail.end());
                        for (const auto& [o, d] : f.weight_component(i).eval(fargs))
                            sv_add(total, o, Scalar(eps) * c * d);
                    }
                }
                for (const auto& [o, c] : total) {
                    // accumulate directly: M is canonical already
                    GradedMap term(sp, GradedMap::Flavor::Sym, out.degree());
                    term.add_term(M, o, c);
                    out += term;
                }
            }
        }
    return out;
}

/// Graded Nijenhuis-Richardson bracket [f,g] = f o g - (-1)^{mn} g o f.
inline GradedMap graded_nr_bracket(const GradedMap& f, const GradedMap& g) {
    GradedMap out = graded_nr_compose(f, g);
    GradedMap other =
        graded_nr_compose(g, f).scaled(Scalar(-pow_sign(static_cast<long long>(f.degree()) *
                                                        g.degree())));
    out += other;
    return out;
}

/// f diamond g for the Matsushima-Nijenhuis bracket; both SymTensor.
inline GradedMap graded_mn_compose(const GradedMap& f, const GradedMap& g) {
    if (f.flavor() != GradedMap::Flavor::SymTensor || g.flavor() != GradedMap::Flavor::SymTensor)
        throw std::invalid_argument("graded_mn_compose: SymTensor flavor only");
    const GradedSpace& sp = f.space();
    GradedMap out(sp, GradedMap::Flavor::SymTensor, f.degree() + g.degree());
    auto odd = sp.odd_flags();
    int n_deg = g.degree();
    for (int i : f.weights())
        for (int j : g.weights()) {
            if (i < 1 || j < 1) continue;
            int total_args = i + j - 1;
            int permuted = total_args - 1;  // the last argument stays put
            auto sh1 = (i >= 2) ? shuffles({j - 1, 1, i - 2}) : std::vector<SignedPermutation>{};
            auto sh2 = shuffles({i - 1, j - 1});
            for (const auto& S : symmetric_basis(permuted, sp.dim(), odd))
                for (int last = 0; last < sp.dim(); ++last) {
                    std::vector<int> degs(permuted);
                    for (int t = 0; t < permuted; ++t) degs[t] = sp.degree_of[S[t]];
                    SparseVec total;
                    // first sum: g eats (sym block, its own tensor arg), f eats
                    // (g-output + remaining sym block, the fixed last argument)
                    for (const auto& sh : sh1) {
                        int eps = koszul_sign(sh.perm, degs);
                        IndexList gsym(j - 1), rest(i - 2);
                        for (int t = 0; t < j - 1; ++t) gsym[t] = S[sh.perm[t]];
                        int gtensor = S[sh.perm[j - 1]];
                        for (int t = 0; t < i - 2; ++t) rest[t] = S[sh.perm[j + t]];
                        SparseVec gv = g.weight_component(j).eval_tensor(gsym, gtensor);
                        for (const auto& [mid, c] : gv) {
                            IndexList fsym{mid};
                            fsym.insert(fsym.end(), rest.begin(), rest.end());
                            for (const auto& [o, d] :
                                 f.weight_component(i).eval_tensor(fsym, last))
                                sv_add(total, o, Scalar(eps) * c * d);
                        }
                    }
                    // second sum: g eats (sym block, the fixed last argument)
                    // and its output becomes f's tensor argument
                    for (const auto& sh : sh2) {
                        int eps = koszul_sign(sh.perm, degs);
                        IndexList fsym(i - 1), gsym(j - 1);
                        long long alpha = 0;
                        for (int t = 0; t < i - 1; ++t) {
                            fsym[t] = S[sh.perm[t]];
                            alpha += sp.degree_of[fsym[t]];
                        }
                        for (int t = 0; t < j - 1; ++t) gsym[t] = S[sh.perm[i - 1 + t]];
                        int sign = pow_sign(static_cast<long long>(n_deg) * alpha);
                        SparseVec gv = g.weight_component(j).eval_tensor(gsym, last);
                        for (const auto& [mid, c] : gv)
                            for (const auto& [o, d] : f.weight_component(i).eval_tensor(fsym, mid))
                                sv_add(total, o, Scalar(eps * sign) * c * d);
                    }
                    for (const auto& [o, c] : total) {
                        GradedMap term(sp, GradedMap::Flavor::SymTensor, out.degree());
                        term.add_term_tensor(S, last, o, c);
                        out += term;
                    }
                }
        }
    return out;
}

/// Graded Matsushima-Nijenhuis bracket.
inline GradedMap graded_mn_bracket(const GradedMap& f, const GradedMap& g) {
    GradedMap out = graded_mn_compose(f, g);
    out += graded_mn_compose(g, f).scaled(
        Scalar(-pow_sign(static_cast<long long>(f.degree()) * g.degree())));
    return out;
}

/// Symmetrization Phi: Hom(Sym(V) (x) V, V) -> Hom(Sym(V), V),
/// Phi(f_k)(v_1..v_k) = sum over (k-1,1)-shuffles eps(sigma)
/// f_k(v_sigma(1..k-1); v_sigma(k)).
inline GradedMap phi_map(const GradedMap& f) {
    if (f.flavor() != GradedMap::Flavor::SymTensor)
        throw std::invalid_argument("phi: SymTensor flavor only");
    const GradedSpace& sp = f.space();
    GradedMap out(sp, GradedMap::Flavor::Sym, f.degree());
    auto odd = sp.odd_flags();
    for (int k : f.weights()) {
        auto shufs = shuffles({k - 1, 1});
        for (const auto& M : symmetric_basis(k, sp.dim(), odd)) {
            std::vector<int> degs(k);
            for (int t = 0; t < k; ++t) degs[t] = sp.degree_of[M[t]];
            SparseVec total;
            for (const auto& sh : shufs) {
                int eps = koszul_sign(sh.perm, degs);
                IndexList sym(k - 1);
                for (int t = 0; t < k - 1; ++t) sym[t] = M[sh.perm[t]];
                int last = M[sh.perm[k - 1]];
                for (const auto& [o, c] : f.weight_component(k).eval_tensor(sym, last))
                    sv_add(total, o, Scalar(eps) * c);
            }
            for (const auto& [o, c] : total) {
                GradedMap term(sp, GradedMap::Flavor::Sym, out.degree());
                term.add_term(M, o, c);
                out += term;
            }
        }
    }
    return out;
}

}  // namespace rbx
