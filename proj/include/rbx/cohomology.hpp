#pragma once

// Coboundary operators and cohomology of Lie algebras (adjoint
// coefficients), LieRep pairs, relative Rota-Baxter operators, relative
// Rota-Baxter Lie algebras and Rota-Baxter Lie algebras, plus the long
// exact sequences tying them together.
//
// Every differential is computed along two independent routes - a
// Nijenhuis-Richardson/derived-bracket form and an explicit
// structure-constant formula - and the library refuses to return a
// value the two routes disagree on.

#include "rbx/complexes.hpp"
#include "rbx/structures.hpp"

#include <functional>
#include <string>
#include <vector>

namespace rbx {

enum class ComplexKind { CE, LieRepPair, OOperator, RelativeRB, RotaBaxter, TLB };

inline void require_equal(const NRElement& a, const NRElement& b, const char* what) {
    if (!(a == b)) throw std::logic_error(std::string("dual-route disagreement in ") + what);
}

// ---------------------------------------------------------------------------
// Chevalley-Eilenberg differential with adjoint coefficients.

/// d f = (-1)^(n-1) [mu, f] for f of arity n; arity 0 is the
/// augmentation x -> -ad(x) used by the classical degree-0 space.
inline NRElement d_ce(const LieAlgebra& alg, const NRElement& f) {
    SpaceSplit sp = f.split();
    NRElement mu = alg.mu_element(sp);
    int n = f.arity();
    return nr_bracket(mu, f).scaled(Scalar(pow_sign(n - 1)));
}

/// The textbook two-sum formula, as the independent route.
inline NRElement d_ce_explicit(const LieAlgebra& alg, const NRElement& f) {
    SpaceSplit sp = f.split();
    int n = f.arity();
    NRElement out(sp, n + 1);
    for (const auto& I : exterior_basis(n + 1, sp.dim_g)) {
        SparseVec val;
        for (int i = 0; i <= n; ++i) {
            IndexList rest;
            for (int t = 0; t <= n; ++t)
                if (t != i) rest.push_back(I[t]);
            SparseVec inner = f.eval(rest);
            for (const auto& [k, c] : alg.bracket_vec({{I[i], Scalar(1)}}, inner))
                sv_add(val, k, Scalar(pow_sign(i)) * c);
        }
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                IndexList rest;
                for (int t = 0; t <= n; ++t)
                    if (t != i && t != j) rest.push_back(I[t]);
                for (const auto& [k, c] : alg.bracket(I[i], I[j])) {
                    IndexList args{k};
                    args.insert(args.end(), rest.begin(), rest.end());
                    for (const auto& [o, d] : f.eval(args))
                        sv_add(val, o, Scalar(pow_sign(i + j)) * c * d);
                }
            }
        for (const auto& [o, c] : val) out.add_term(I, o, c);
    }
    return out;
}

inline NRElement d_ce_checked(const LieAlgebra& alg, const NRElement& f) {
    NRElement a = d_ce(alg, f);
    if (f.arity() >= 1) require_equal(a, d_ce_explicit(alg, f), "d_ce");
    return a;
}

// ---------------------------------------------------------------------------
// LieRep pair differential.

/// A LieRep n-cochain lives in C^{(n-1)|0}: components /\^n g -> g and
/// /\^{n-1} g (x) V -> V only.
inline void require_lierep_cochain(const NRElement& f, const char* who) {
    int n = f.arity();
    for (const auto& [args, dist] : f.terms())
        for (const auto& [o, c] : dist) {
            (void)c;
            Bidegree d = f.entry_bidegree(args, o);
            if (!(d.k == n - 1 && d.l == 0))
                throw std::invalid_argument(std::string(who) +
                                            ": input is not a LieRep cochain (stray bidegree)");
        }
}

/// partial f = (-1)^(n-1) [mu + rho, f]; degree-0 input is rejected
/// (the space of 0-cochains of a LieRep pair is 0).
inline NRElement partial_nr(const Representation& rep, const NRElement& f) {
    if (f.arity() == 0) throw std::invalid_argument("partial: degree-0 cochain space is 0");
    require_lierep_cochain(f, "partial");
    return nr_bracket(rep.pi(), f).scaled(Scalar(pow_sign(f.arity() - 1)));
}

/// Explicit form: the g-component is d_CE of the g-part; the
/// V-component is the three-sum action formula.
inline NRElement partial_explicit(const Representation& rep, const NRElement& f) {
    SpaceSplit sp = rep.split();
    int n = f.arity();
    const LieAlgebra& g = rep.algebra();
    NRElement f_g = f.component({n - 1, 0, Target::IntoG});
    NRElement f_v = f.component({n - 1, 0, Target::IntoV});

    NRElement out = d_ce_explicit(g, f_g);  // lands in the IntoG block
    // V-component on (x_1..x_n, v)
    for (const auto& gi : exterior_basis(n, sp.dim_g))
        for (int a = 0; a < sp.dim_v; ++a) {
            SparseVec val;  // over V
            // sum over i<j: f_v([x_i,x_j], ..., v)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    IndexList rest;
                    for (int t = 0; t < n; ++t)
                        if (t != i && t != j) rest.push_back(gi[t]);
                    for (const auto& [k, c] : g.bracket(gi[i], gi[j])) {
                        IndexList args{k};
                        args.insert(args.end(), rest.begin(), rest.end());
                        args.push_back(sp.dim_g + a);
                        for (const auto& [o, d] : f_v.eval(args))
                            sv_add(val, o, Scalar(pow_sign(i + j)) * c * d);
                    }
                }
            // (-1)^(n-1) rho(f_g(x_1..x_n)) v
            {
                IndexList args(gi.begin(), gi.end());
                SparseVec fg = f_g.eval(args);
                SparseVec fg_g;  // strip to g-coordinates
                for (const auto& [o, c] : fg) fg_g[o] = c;
                Matrix r = rep.rho_of(fg_g);
                for (int b = 0; b < sp.dim_v; ++b) {
                    Scalar c = r.at(b, a);
                    if (c != 0) sv_add(val, sp.dim_g + b, Scalar(pow_sign(n - 1)) * c);
                }
            }
            // sum over i: rho(x_i) f_v(..., v) - f_v(..., rho(x_i) v)
            for (int i = 0; i < n; ++i) {
                IndexList rest;
                for (int t = 0; t < n; ++t)
                    if (t != i) rest.push_back(gi[t]);
                IndexList args = rest;
                args.push_back(sp.dim_g + a);
                SparseVec fv = f_v.eval(args);
                const Matrix& r = rep.rho(gi[i]);
                for (const auto& [o, c] : fv) {
                    int b = o - sp.dim_g;
                    for (int bb = 0; bb < sp.dim_v; ++bb) {
                        Scalar rc = r.at(bb, b);
                        if (rc != 0) sv_add(val, sp.dim_g + bb, Scalar(pow_sign(i)) * rc * c);
                    }
                }
                for (int b = 0; b < sp.dim_v; ++b) {
                    Scalar rc = r.at(b, a);
                    if (rc == 0) continue;
                    IndexList args2 = rest;
                    args2.push_back(sp.dim_g + b);
                    for (const auto& [o, c] : f_v.eval(args2))
                        sv_add(val, o, Scalar(-pow_sign(i)) * rc * c);
                }
            }
            IndexList full = gi;
            full.push_back(sp.dim_g + a);
            for (const auto& [o, c] : val) out.add_term(full, o, c);
        }
    return out;
}

inline NRElement partial_checked(const Representation& rep, const NRElement& f) {
    NRElement a = partial_nr(rep, f);
    require_equal(a, partial_explicit(rep, f), "partial");
    return a;
}

// ---------------------------------------------------------------------------
// Differential of the relative Rota-Baxter operator complex.

/// delta theta = (-1)^(a-1) [[pi,T], theta] for theta: /\^a V -> g
/// (an (a+1)-cochain of the operator complex).
inline NRElement delta_derived(const RelativeRBO& op, const NRElement& theta) {
    int a = theta.arity();
    for (const auto& [args, dist] : theta.terms())
        for (const auto& [o, c] : dist) {
            (void)c;
            Bidegree d = theta.entry_bidegree(args, o);
            if (!(d.k == -1 && d.l == a && d.target == Target::IntoG))
                throw std::invalid_argument("delta: input is not an operator cochain");
        }
    NRElement inner = nr_bracket(op.rep().pi(), op.t_element());
    return nr_bracket(inner, theta).scaled(Scalar(pow_sign(a - 1)));
}

/// Three-sum closed formula.
inline NRElement delta_explicit(const RelativeRBO& op, const NRElement& theta) {
    const Representation& rep = op.rep();
    const LieAlgebra& g = rep.algebra();
    SpaceSplit sp = rep.split();
    int n = theta.arity() + 1;  // output V-arity
    NRElement out(sp, n);
    auto theta_of = [&](const IndexList& vs) {  // g-valued
        IndexList args;
        for (int v : vs) args.push_back(sp.dim_g + v);
        SparseVec raw = theta.eval(args);
        SparseVec out_g;
        for (const auto& [o, c] : raw) out_g[o] = c;
        return out_g;
    };
    for (const auto& vi : exterior_basis(n, sp.dim_v)) {
        SparseVec val;  // over g
        for (int i = 0; i < n; ++i) {
            IndexList rest;
            for (int t = 0; t < n; ++t)
                if (t != i) rest.push_back(vi[t]);
            SparseVec th = theta_of(rest);
            // [T v_i, theta(rest)]
            SparseVec tv = op.apply_t({{vi[i], Scalar(1)}});
            for (const auto& [k, c] : g.bracket_vec(tv, th))
                sv_add(val, k, Scalar(pow_sign(i)) * c);
            // T rho(theta(rest)) v_i
            Matrix r = rep.rho_of(th);
            SparseVec rv;
            for (int b = 0; b < sp.dim_v; ++b) {
                Scalar c = r.at(b, vi[i]);
                if (c != 0) rv[b] = c;
            }
            for (const auto& [k, c] : op.apply_t(rv)) sv_add(val, k, Scalar(pow_sign(i)) * c);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                IndexList rest;
                for (int t = 0; t < n; ++t)
                    if (t != i && t != j) rest.push_back(vi[t]);
                Matrix ri = rep.rho_of(op.apply_t({{vi[i], Scalar(1)}}));
                Matrix rj = rep.rho_of(op.apply_t({{vi[j], Scalar(1)}}));
                for (int b = 0; b < sp.dim_v; ++b) {
                    Scalar c = ri.at(b, vi[j]) - rj.at(b, vi[i]);
                    if (c == 0) continue;
                    IndexList vs{b};
                    vs.insert(vs.end(), rest.begin(), rest.end());
                    for (const auto& [k, d] : theta_of(vs))
                        sv_add(val, k, Scalar(pow_sign(i + j)) * c * d);
                }
            }
        IndexList full;
        for (int v : vi) full.push_back(sp.dim_g + v);
        for (const auto& [o, c] : val) out.add_term(full, o, c);
    }
    return out;
}

inline NRElement delta_checked(const RelativeRBO& op, const NRElement& theta) {
    NRElement a = delta_derived(op, theta);
    require_equal(a, delta_explicit(op, theta), "delta");
    return a;
}

// ---------------------------------------------------------------------------
// h_T, the operator-direction component of the relative coboundary.

/// (-1)^(n-2)/n! times the n-fold bracket [..[[f,T],T],..,T].
inline NRElement h_t_iterated(const RelativeRBO& op, const NRElement& f) {
    int n = f.arity();
    if (n == 0) throw std::invalid_argument("h_T: needs arity >= 1");
    require_lierep_cochain(f, "h_T");
    NRElement t = op.t_element();
    NRElement x = f;
    Scalar fact(1);
    for (int i = 1; i <= n; ++i) {
        x = nr_bracket(x, t);
        fact *= i;
    }
    return x.scaled(Scalar(pow_sign(n - 2)) / fact);
}

/// Two-term closed formula:
/// (h_T f)(v_1..v_n) = (-1)^n f_g(Tv_1..Tv_n)
///   + sum_i (-1)^(i+1) T f_V(Tv_1..^i..Tv_n, v_i).
inline NRElement h_t_explicit(const RelativeRBO& op, const NRElement& f) {
    const Representation& rep = op.rep();
    SpaceSplit sp = rep.split();
    int n = f.arity();
    NRElement f_g = f.component({n - 1, 0, Target::IntoG});
    NRElement f_v = f.component({n - 1, 0, Target::IntoV});
    NRElement out(sp, n);
    auto t_of = [&](int v) { return op.apply_t({{v, Scalar(1)}}); };  // over g
    for (const auto& vi : exterior_basis(n, sp.dim_v)) {
        SparseVec val;
        {
            std::vector<SparseVec> args;
            for (int v : vi) args.push_back(t_of(v));
            for (const auto& [o, c] : f_g.eval_multi(args))
                sv_add(val, o, Scalar(pow_sign(n)) * c);
        }
        for (int i = 0; i < n; ++i) {
            std::vector<SparseVec> args;
            for (int t = 0; t < n; ++t)
                if (t != i) args.push_back(t_of(vi[t]));
            args.push_back({{sp.dim_g + vi[i], Scalar(1)}});
            SparseVec fv = f_v.eval_multi(args);
            SparseVec fv_v;
            for (const auto& [o, c] : fv) fv_v[o - sp.dim_g] = c;
            for (const auto& [k, c] : op.apply_t(fv_v)) sv_add(val, k, Scalar(pow_sign(i)) * c);
        }
        IndexList full;
        for (int v : vi) full.push_back(sp.dim_g + v);
        for (const auto& [o, c] : val) out.add_term(full, o, c);
    }
    return out;
}

inline NRElement h_t_checked(const RelativeRBO& op, const NRElement& f) {
    NRElement a = h_t_iterated(op, f);
    require_equal(a, h_t_explicit(op, f), "h_T");
    return a;
}

// ---------------------------------------------------------------------------
// The relative Rota-Baxter coboundary D(f, theta) = (partial f,
// delta theta + h_T f). Cochains are pairs (f of arity n, theta of
// arity n-1); at degree 1 the theta component is absent.

struct RelCochain {
    NRElement f;      // in C^{(n-1)|0}
    NRElement theta;  // /\^{n-1} V -> g
};

inline RelCochain big_d(const RelativeRBO& op, const RelCochain& c) {
    NRElement df = partial_checked(op.rep(), c.f);
    NRElement dtheta = h_t_checked(op, c.f);
    if (c.theta.arity() >= 1) {
        if (c.theta.arity() != c.f.arity() - 1)
            throw std::invalid_argument("big_d: theta must have arity n-1");
        dtheta += delta_checked(op, c.theta);
    } else if (!c.theta.is_zero()) {
        throw std::invalid_argument("big_d: degree-1 cochains have no theta component");
    }
    return {std::move(df), std::move(dtheta)};
}

// ---------------------------------------------------------------------------
// Rota-Baxter Lie algebra coboundary. Cochains live on g alone; the
// operator direction is Omega.

/// (Omega f)(x_1..x_n) = (-1)^n ( f(Tx_1..Tx_n)
///   - sum_i T f(Tx_1,..,x_i,..,Tx_n) ).
inline NRElement omega_op(const RBO& op, const NRElement& f) {
    const LieAlgebra& g = op.algebra();
    SpaceSplit sp{g.dim(), 0};
    if (!(f.split() == sp)) throw std::invalid_argument("omega: f must live on g");
    int n = f.arity();
    NRElement out(sp, n);
    auto t_of = [&](int x) {
        SparseVec v;
        for (int i = 0; i < g.dim(); ++i) {
            Scalar c = op.t().at(i, x);
            if (c != 0) v[i] = c;
        }
        return v;
    };
    auto t_vec = [&](const SparseVec& x) {
        SparseVec v;
        for (const auto& [j, c] : x)
            for (int i = 0; i < g.dim(); ++i) {
                Scalar tc = op.t().at(i, j);
                if (tc != 0) sv_add(v, i, c * tc);
            }
        return v;
    };
    for (const auto& I : exterior_basis(n, g.dim())) {
        SparseVec val;
        {
            std::vector<SparseVec> args;
            for (int x : I) args.push_back(t_of(x));
            for (const auto& [o, c] : f.eval_multi(args)) sv_add(val, o, Scalar(pow_sign(n)) * c);
        }
        for (int i = 0; i < n; ++i) {
            std::vector<SparseVec> args;
            for (int t = 0; t < n; ++t)
                args.push_back(t == i ? SparseVec{{I[t], Scalar(1)}} : t_of(I[t]));
            SparseVec ft = f.eval_multi(args);
            for (const auto& [k, c] : t_vec(ft)) sv_add(val, k, Scalar(-pow_sign(n)) * c);
        }
        for (const auto& [o, c] : val) out.add_term(I, o, c);
    }
    return out;
}

// Embedding of g-only maps into the adjoint split {m, m}.

/// f: /\^n g -> g placed in the ambient split, g-arguments unchanged.
inline NRElement embed_g(const NRElement& f, const SpaceSplit& big) {
    NRElement out(big, f.arity());
    for (const auto& [args, dist] : f.terms())
        for (const auto& [o, c] : dist) out.add_term(args, o, c);
    return out;
}

/// f viewed as /\^{n-1} g (x) V -> V through V = g.
inline NRElement embed_as_v(const NRElement& f, const SpaceSplit& big) {
    int n = f.arity();
    NRElement out(big, n);
    int m = big.dim_g;
    for (const auto& gi : exterior_basis(n - 1, m))
        for (int a = 0; a < m; ++a) {
            IndexList args(gi.begin(), gi.end());
            args.push_back(a);
            SparseVec val = f.eval(args);
            IndexList full(gi.begin(), gi.end());
            full.push_back(m + a);
            for (const auto& [o, c] : val) out.add_term(full, m + o, c);
        }
    return out;
}

/// theta: /\^{n-1} g -> g viewed as /\^{n-1} V -> g.
inline NRElement embed_theta(const NRElement& th, const SpaceSplit& big) {
    NRElement out(big, th.arity());
    int m = big.dim_g;
    for (const auto& [args, dist] : th.terms()) {
        IndexList shifted;
        for (int a : args) shifted.push_back(m + a);
        for (const auto& [o, c] : dist) out.add_term(shifted, o, c);
    }
    return out;
}

/// Restriction inverse to embed_g / embed_theta.
inline NRElement restrict_g(const NRElement& f, const SpaceSplit& small) {
    NRElement out(small, f.arity());
    for (const auto& [args, dist] : f.terms()) {
        bool pure = true;
        for (int a : args)
            if (a >= small.dim_g) pure = false;
        if (!pure) continue;
        for (const auto& [o, c] : dist)
            if (o < small.dim_g) out.add_term(args, o, c);
    }
    return out;
}

inline NRElement restrict_theta(const NRElement& th, const SpaceSplit& small, int big_dim_g) {
    NRElement out(small, th.arity());
    for (const auto& [args, dist] : th.terms()) {
        IndexList shifted;
        for (int a : args) shifted.push_back(a - big_dim_g);
        for (const auto& [o, c] : dist) out.add_term(shifted, o, c);
    }
    return out;
}

/// D_RB(f, theta) = (d_CE f, delta theta + Omega f), computed both from
/// the closed formulas and as p o D o i through the relative complex
/// over the adjoint representation.
struct RBCochain {
    NRElement f;      // /\^n g -> g
    NRElement theta;  // /\^{n-1} g -> g
};

inline RBCochain d_rb(const RBO& op, const RBCochain& c) {
    const LieAlgebra& g = op.algebra();
    SpaceSplit small{g.dim(), 0};
    int n = c.f.arity();

    // closed route
    NRElement df = d_ce_checked(g, c.f);
    NRElement dth = omega_op(op, c.f);
    RelativeRBO rel = op.as_relative();
    SpaceSplit big = rel.split();
    if (c.theta.arity() >= 1) {
        if (c.theta.arity() != n - 1) throw std::invalid_argument("d_rb: theta arity");
        NRElement dth_big = delta_checked(rel, embed_theta(c.theta, big));
        dth += restrict_theta(dth_big, small, big.dim_g);
    }

    // embedded route: i(f, theta) = (f, f, theta)
    RelCochain lifted{embed_g(c.f, big) + embed_as_v(c.f, big), embed_theta(c.theta, big)};
    RelCochain image = big_d(rel, lifted);
    NRElement img_f = image.f.component({n, 0, Target::IntoG});
    NRElement img_v = image.f.component({n, 0, Target::IntoV});
    NRElement df_big = embed_g(df, big);
    require_equal(img_f, df_big, "d_rb (subcomplex, g-part)");
    require_equal(img_v, embed_as_v(df, big), "d_rb (subcomplex, V-part)");
    require_equal(image.theta, embed_theta(dth, big), "d_rb (operator part)");

    return {std::move(df), std::move(dth)};
}

// ---------------------------------------------------------------------------
// Ladders.

inline CochainSpace ce_space(const LieAlgebra& alg, int n, bool augmented) {
    SpaceSplit sp{alg.dim(), 0};
    if (n == 0) return augmented ? CochainSpace{sp, {{0, 0, Target::IntoG}}} : CochainSpace{sp, {}};
    return {sp, {{n, 0, Target::IntoG}}};
}

/// CE ladder. `augmented` switches the degree-0 space: the classical
/// complex has C^0 = g (so H^1 = Der/Inner); the deformation-complex
/// convention used inside the long exact sequences has C^0 = 0.
inline Ladder build_ladder_ce(const LieAlgebra& alg, int max_degree, bool augmented) {
    Ladder L;
    for (int n = 0; n <= max_degree + 1; ++n) L.spaces.push_back(ce_space(alg, n, augmented));
    for (int n = 0; n <= max_degree; ++n)
        L.d.push_back(matrix_of(L.spaces[n], L.spaces[n + 1], [&](std::vector<NRElement> comps) {
            if (comps.empty()) return Vec(L.spaces[n + 1].dim(), Scalar(0));
            return L.spaces[n + 1].to_coords({d_ce_checked(alg, comps[0])});
        }));
    return L;
}

inline CochainSpace lierep_space(const Representation& rep, int n) {
    SpaceSplit sp = rep.split();
    if (n == 0) return {sp, {}};
    return {sp, {{n, 0, Target::IntoG}, {n - 1, 1, Target::IntoV}}};
}

inline Ladder build_ladder_lierep(const Representation& rep, int max_degree) {
    Ladder L;
    for (int n = 0; n <= max_degree + 1; ++n) L.spaces.push_back(lierep_space(rep, n));
    for (int n = 0; n <= max_degree; ++n)
        L.d.push_back(matrix_of(L.spaces[n], L.spaces[n + 1], [&](std::vector<NRElement> comps) {
            if (comps.empty()) return Vec(L.spaces[n + 1].dim(), Scalar(0));
            NRElement f = comps[0] + comps[1];
            NRElement img = partial_checked(rep, f);
            int m = f.arity();
            return L.spaces[n + 1].to_coords({img.component({m, 0, Target::IntoG}),
                                              img.component({m, 0, Target::IntoV})});
        }));
    return L;
}

inline CochainSpace oop_space(const RelativeRBO& op, int n) {
    SpaceSplit sp = op.split();
    if (n <= 1) return {sp, {}};
    return {sp, {{0, n - 1, Target::IntoG}}};
}

inline Ladder build_ladder_oop(const RelativeRBO& op, int max_degree) {
    Ladder L;
    for (int n = 0; n <= max_degree + 1; ++n) L.spaces.push_back(oop_space(op, n));
    for (int n = 0; n <= max_degree; ++n)
        L.d.push_back(matrix_of(L.spaces[n], L.spaces[n + 1], [&](std::vector<NRElement> comps) {
            if (comps.empty()) return Vec(L.spaces[n + 1].dim(), Scalar(0));
            return L.spaces[n + 1].to_coords({delta_checked(op, comps[0])});
        }));
    return L;
}

inline CochainSpace relrb_space(const RelativeRBO& op, int n) {
    SpaceSplit sp = op.split();
    if (n == 0) return {sp, {}};
    if (n == 1) return {sp, {{1, 0, Target::IntoG}, {0, 1, Target::IntoV}}};
    return {sp, {{n, 0, Target::IntoG}, {n - 1, 1, Target::IntoV}, {0, n - 1, Target::IntoG}}};
}

inline Ladder build_ladder_relrb(const RelativeRBO& op, int max_degree) {
    Ladder L;
    for (int n = 0; n <= max_degree + 1; ++n) L.spaces.push_back(relrb_space(op, n));
    for (int n = 0; n <= max_degree; ++n)
        L.d.push_back(matrix_of(L.spaces[n], L.spaces[n + 1], [&](std::vector<NRElement> comps) {
            if (comps.empty()) return Vec(L.spaces[n + 1].dim(), Scalar(0));
            SpaceSplit sp = op.split();
            NRElement f = comps[0] + comps[1];
            NRElement theta = comps.size() > 2 ? comps[2] : NRElement(sp, 0);
            RelCochain img = big_d(op, {f, theta});
            int m = f.arity();
            return L.spaces[n + 1].to_coords({img.f.component({m, 0, Target::IntoG}),
                                              img.f.component({m, 0, Target::IntoV}), img.theta});
        }));
    return L;
}

inline CochainSpace rb_space(const RBO& op, int n) {
    SpaceSplit sp{op.algebra().dim(), 0};
    if (n == 0) return {sp, {}};
    if (n == 1) return {sp, {{1, 0, Target::IntoG}}};
    return {sp, {{n, 0, Target::IntoG}, {n - 1, 0, Target::IntoG}}};
}

inline Ladder build_ladder_rb(const RBO& op, int max_degree) {
    Ladder L;
    for (int n = 0; n <= max_degree + 1; ++n) L.spaces.push_back(rb_space(op, n));
    for (int n = 0; n <= max_degree; ++n)
        L.d.push_back(matrix_of(L.spaces[n], L.spaces[n + 1], [&](std::vector<NRElement> comps) {
            if (comps.empty()) return Vec(L.spaces[n + 1].dim(), Scalar(0));
            SpaceSplit sp{op.algebra().dim(), 0};
            NRElement theta = comps.size() > 1 ? comps[1] : NRElement(sp, 0);
            RBCochain img = d_rb(op, {comps[0], theta});
            return L.spaces[n + 1].to_coords({img.f, img.theta});
        }));
    return L;
}

// ---------------------------------------------------------------------------
// Cohomology of a ladder.

struct CohomologyReport {
    int degree = 0;
    int dim_cochains = 0;
    int dim_cocycles = 0;
    int dim_coboundaries = 0;
    int betti = 0;
    std::vector<Vec> representatives;  // coordinates in the fixed basis
};

inline CohomologyReport ladder_cohomology(const Ladder& L, int n) {
    if (n < 0 || n >= L.top()) throw std::invalid_argument("ladder_cohomology: degree out of range");
    CohomologyReport r;
    r.degree = n;
    r.dim_cochains = L.dim(n);
    const Matrix& dn = L.d[n];
    std::vector<Vec> cocycles = kernel_basis(dn);
    r.dim_cocycles = static_cast<int>(cocycles.size());
    std::vector<Vec> image_cols;
    if (n >= 1) {
        const Matrix& dprev = L.d[n - 1];
        r.dim_coboundaries = rank(dprev);
        for (int c = 0; c < dprev.cols(); ++c) {
            Vec col(dprev.rows(), Scalar(0));
            for (int row = 0; row < dprev.rows(); ++row) col[row] = dprev.at(row, c);
            image_cols.push_back(std::move(col));
        }
    }
    r.betti = r.dim_cocycles - r.dim_coboundaries;
    // representatives: kernel vectors independent modulo the image
    std::vector<Vec> span = image_cols;
    int base_rank = r.dim_coboundaries;
    for (const auto& z : cocycles) {
        std::vector<Vec> extended = span;
        extended.push_back(z);
        int rk = rank(from_columns(extended, r.dim_cochains));
        if (rk > base_rank) {
            r.representatives.push_back(z);
            span = std::move(extended);
            base_rank = rk;
        }
    }
    if (static_cast<int>(r.representatives.size()) != r.betti)
        throw std::logic_error("ladder_cohomology: representative count != betti");
    return r;
}

// ---------------------------------------------------------------------------
// Long exact sequence checking.

struct LesColumns {
    Ladder A, B, C;                 // short exact 0 -> A -> B -> C -> 0
    std::vector<Matrix> iota, proj; // chain maps per degree
    std::function<Vec(int, const Vec&)> connect;  // C^n cocycle -> A^{n+1} cocycle
};

namespace detail {

/// Class coordinates of a cocycle with respect to chosen
/// representatives modulo coboundaries.
inline Vec class_coords(const CohomologyReport& h, const std::vector<Vec>& boundary_cols,
                        const Vec& cocycle) {
    std::vector<Vec> cols = h.representatives;
    for (const auto& b : boundary_cols) cols.push_back(b);
    Matrix m = from_columns(cols, h.dim_cochains);
    auto sol = solve(m, cocycle);
    if (!sol) throw std::logic_error("class_coords: vector is not a cocycle class member");
    Vec out(h.representatives.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*sol)[i];
    return out;
}

inline std::vector<Vec> boundary_columns(const Ladder& L, int n) {
    std::vector<Vec> cols;
    if (n < 1) return cols;
    const Matrix& d = L.d[n - 1];
    for (int c = 0; c < d.cols(); ++c) {
        Vec col(d.rows(), Scalar(0));
        for (int r = 0; r < d.rows(); ++r) col[r] = d.at(r, c);
        cols.push_back(std::move(col));
    }
    return cols;
}

}  // namespace detail

/// Verifies exactness of ... -> H^n(A) -> H^n(B) -> H^n(C) -> H^{n+1}(A) -> ...
/// at every node with n <= max_degree, and cross-checks the stated
/// connecting map against the zig-zag construction on every C-class.
inline VerifyReport les_check(const LesColumns& les, int max_degree) {
    VerifyReport out;
    // cohomology of all three columns through degree max_degree + 1 for A
    std::vector<CohomologyReport> HA, HB, HC;
    for (int n = 0; n <= max_degree + 1; ++n) HA.push_back(ladder_cohomology(les.A, n));
    for (int n = 0; n <= max_degree; ++n) {
        HB.push_back(ladder_cohomology(les.B, n));
        HC.push_back(ladder_cohomology(les.C, n));
    }

    // induced maps on cohomology, as matrices in the representative bases
    auto induced = [&](const CohomologyReport& src, const CohomologyReport& dst,
                       const Ladder& dstL, int dst_degree,
                       const std::function<Vec(const Vec&)>& apply) {
        Matrix m(static_cast<int>(dst.representatives.size()),
                 static_cast<int>(src.representatives.size()));
        auto bcols = detail::boundary_columns(dstL, dst_degree);
        for (std::size_t c = 0; c < src.representatives.size(); ++c) {
            Vec img = apply(src.representatives[c]);
            Vec cls = detail::class_coords(dst, bcols, img);
            for (std::size_t r = 0; r < cls.size(); ++r)
                if (cls[r] != 0) m.set(static_cast<int>(r), static_cast<int>(c), cls[r]);
        }
        return m;
    };

    for (int n = 0; n <= max_degree; ++n) {
        Matrix i_n = induced(HA[n], HB[n], les.B, n,
                             [&](const Vec& v) { return les.iota[n].apply(v); });
        Matrix p_n = induced(HB[n], HC[n], les.C, n,
                             [&](const Vec& v) { return les.proj[n].apply(v); });
        Matrix c_n = induced(HC[n], HA[n + 1], les.A, n + 1,
                             [&](const Vec& v) { return les.connect(n, v); });
        Matrix i_next(static_cast<int>(HB.size()) > n + 1
                          ? induced(HA[n + 1], HB[n + 1], les.B, n + 1,
                                    [&](const Vec& v) { return les.iota[n + 1].apply(v); })
                          : Matrix(0, static_cast<int>(HA[n + 1].representatives.size())));

        auto exact_at = [&](const std::string& label, const Matrix& incoming,
                            const Matrix& outgoing, int dim_mid) {
            bool composes_to_zero = outgoing.times(incoming).is_zero();
            bool ranks_match = rank(incoming) + rank(outgoing) == dim_mid;
            out.add("les." + label, composes_to_zero && ranks_match,
                    composes_to_zero ? "rank defect" : "composition nonzero");
        };
        exact_at("B_deg" + std::to_string(n), i_n, p_n, HB[n].betti);
        exact_at("C_deg" + std::to_string(n), p_n, c_n, HC[n].betti);
        if (n + 1 <= max_degree)
            exact_at("A_deg" + std::to_string(n + 1), c_n, i_next, HA[n + 1].betti);

        // connecting map vs zig-zag on every representative class of C^n
        auto bcols_next = detail::boundary_columns(les.A, n + 1);
        bool zigzag_ok = true;
        for (const auto& z : HC[n].representatives) {
            auto lift = solve(les.proj[n], z);
            if (!lift) { zigzag_ok = false; break; }
            Vec db = les.B.d[n].apply(*lift);
            auto back = solve(les.iota[n + 1], db);
            if (!back) { zigzag_ok = false; break; }
            Vec direct = les.connect(n, z);
            Vec c1 = detail::class_coords(HA[n + 1], bcols_next, *back);
            Vec c2 = detail::class_coords(HA[n + 1], bcols_next, direct);
            if (c1 != c2) { zigzag_ok = false; break; }
        }
        out.add("les.connecting_deg" + std::to_string(n), zigzag_ok,
                "stated connecting map disagrees with zig-zag");
    }
    return out;
}

/// Long exact sequence of a relative Rota-Baxter Lie algebra:
/// A = operator complex, B = relative complex, C = LieRep complex,
/// connecting map [alpha] -> [h_T alpha].
inline LesColumns les_relative(const RelativeRBO& op, int max_degree) {
    LesColumns les;
    les.A = build_ladder_oop(op, max_degree + 2);
    les.B = build_ladder_relrb(op, max_degree + 2);
    les.C = build_ladder_lierep(op.rep(), max_degree + 2);
    for (int n = 0; n <= max_degree + 2; ++n) {
        les.iota.push_back(matrix_of(
            les.A.spaces[n], les.B.spaces[n], [&](std::vector<NRElement> comps) {
                SpaceSplit sp = op.split();
                std::vector<NRElement> b;
                int blocks = static_cast<int>(les.B.spaces[n].blocks.size());
                if (blocks == 0) return Vec{};
                for (int i = 0; i + 1 < blocks; ++i)
                    b.emplace_back(sp, les.B.spaces[n].blocks[i].arity());
                if (comps.empty())
                    b.emplace_back(sp, les.B.spaces[n].blocks[blocks - 1].arity());
                else
                    b.push_back(comps[0]);
                return les.B.spaces[n].to_coords(b);
            }));
        les.proj.push_back(matrix_of(
            les.B.spaces[n], les.C.spaces[n], [&](std::vector<NRElement> comps) {
                if (comps.empty()) return Vec{};
                return les.C.spaces[n].to_coords({comps[0], comps[1]});
            }));
    }
    les.connect = [op](int n, const Vec& z) -> Vec {
        CochainSpace src = lierep_space(op.rep(), n);
        CochainSpace dst = oop_space(op, n + 1);
        auto comps = src.from_coords(z);
        NRElement f = comps[0] + comps[1];
        return dst.to_coords({h_t_checked(op, f)});
    };
    return les;
}

/// Long exact sequence of a Rota-Baxter Lie algebra: A = operator
/// complex over the adjoint representation, B = Rota-Baxter complex,
/// C = Chevalley-Eilenberg complex (deformation convention),
/// connecting map [alpha] -> [Omega alpha].
inline LesColumns les_rb(const RBO& op, int max_degree) {
    LesColumns les;
    RelativeRBO rel = op.as_relative();
    SpaceSplit big = rel.split();
    SpaceSplit small{op.algebra().dim(), 0};
    les.A = build_ladder_oop(rel, max_degree + 2);
    les.B = build_ladder_rb(op, max_degree + 2);
    les.C = build_ladder_ce(op.algebra(), max_degree + 2, /*augmented=*/false);
    for (int n = 0; n <= max_degree + 2; ++n) {
        les.iota.push_back(matrix_of(
            les.A.spaces[n], les.B.spaces[n], [&](std::vector<NRElement> comps) {
                int blocks = static_cast<int>(les.B.spaces[n].blocks.size());
                if (blocks == 0) return Vec{};
                std::vector<NRElement> b;
                for (int i = 0; i + 1 < blocks; ++i)
                    b.emplace_back(small, les.B.spaces[n].blocks[i].arity());
                if (comps.empty())
                    b.emplace_back(small, les.B.spaces[n].blocks[blocks - 1].arity());
                else
                    b.push_back(restrict_theta(comps[0], small, big.dim_g));
                return les.B.spaces[n].to_coords(b);
            }));
        les.proj.push_back(matrix_of(
            les.B.spaces[n], les.C.spaces[n], [&](std::vector<NRElement> comps) {
                if (comps.empty()) return Vec{};
                return les.C.spaces[n].to_coords({comps[0]});
            }));
    }
    les.connect = [op, big](int n, const Vec& z) -> Vec {
        CochainSpace src = ce_space(op.algebra(), n, false);
        CochainSpace dst = oop_space(op.as_relative(), n + 1);
        auto comps = src.from_coords(z);
        NRElement om = omega_op(op, comps[0]);
        return dst.to_coords({embed_theta(om, big)});
    };
    return les;
}

}  // namespace rbx
