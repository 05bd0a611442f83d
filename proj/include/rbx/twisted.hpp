#pragma once

// The L-infinity algebra controlling simultaneous deformations of a
// relative Rota-Baxter Lie algebra, twisted at the Maurer-Cartan
// element the structure itself defines. Elements are pairs
// (f, theta) with f an n-cochain of the LieRep pair and theta an
// (n-1)-ary map V -> g; such a pair sits in homogeneous degree n - 2.
//
// Every bracket is available along two routes: the closed formulas
// (l_1, l_2 and the m >= 3 family) and a generic evaluator that
// expands the twist series through the untwisted higher derived
// brackets. The two are cross-checked in the test and acceptance
// suites.

#include "rbx/cohomology.hpp"

#include <vector>

namespace rbx {

struct TwistedElement {
    NRElement f;      // arity n   (zero element when the part is absent)
    NRElement theta;  // arity n-1 (arity 0 when n <= 1)
    int n = 0;        // cochain degree; L-infinity degree is n - 2

    static TwistedElement zero(const SpaceSplit& sp, int n) {
        return {NRElement(sp, std::max(n, 0)), NRElement(sp, std::max(n - 1, 0)), n};
    }

    bool is_zero() const { return f.is_zero() && theta.is_zero(); }

    TwistedElement& operator+=(const TwistedElement& o) {
        if (o.is_zero()) return *this;
        if (is_zero() && n != o.n) *this = zero(o.f.split(), o.n);
        if (n != o.n) throw std::invalid_argument("TwistedElement: degree mismatch");
        f += o.f;
        theta += o.theta;
        return *this;
    }

    TwistedElement scaled(const Scalar& s) const { return {f.scaled(s), theta.scaled(s), n}; }
};

class TwistedComplex {
  public:
    explicit TwistedComplex(RelativeRBO op)
        : op_(std::move(op)), pi_(op_.rep().pi()), t_(op_.t_element()) {}

    const RelativeRBO& op() const { return op_; }
    SpaceSplit split() const { return op_.split(); }

    /// ad_T^k(f) scaled by 1/k!.
    NRElement iterated_t(const NRElement& f, int k) const {
        NRElement x = f;
        Scalar fact(1);
        for (int i = 1; i <= k; ++i) {
            x = nr_bracket(x, t_);
            fact *= i;
        }
        return x.scaled(Scalar(1) / fact);
    }

    /// Closed form of the twisted l_1.
    TwistedElement l1(const TwistedElement& x) const {
        int n = x.n;
        if (n < 1) return TwistedElement::zero(split(), n + 1);
        TwistedElement out = TwistedElement::zero(split(), n + 1);
        out.f = nr_bracket(pi_, x.f).scaled(Scalar(-1));
        out.theta = iterated_t(x.f, n);
        if (x.theta.arity() >= 1) out.theta += nr_bracket(nr_bracket(pi_, t_), x.theta);
        return out;
    }

    /// Closed form of the twisted l_2.
    TwistedElement l2(const TwistedElement& x1, const TwistedElement& x2) const {
        int n1 = x1.n, n2 = x2.n;
        if (n1 < 1 || n2 < 1) return TwistedElement::zero(split(), n1 + n2 - 1);
        TwistedElement out = TwistedElement::zero(split(), n1 + n2 - 1);
        out.f = nr_bracket(x1.f, x2.f).scaled(Scalar(pow_sign(n1 - 1)));
        NRElement th(split(), std::max(n1 + n2 - 2, 0));
        if (x1.theta.arity() >= 1 && x2.theta.arity() >= 1)
            th += nr_bracket(nr_bracket(pi_, x1.theta), x2.theta);
        if (x2.theta.arity() >= 1 && n1 >= 1)
            th += nr_bracket(iterated_t(x1.f, n1 - 1), x2.theta);
        if (x1.theta.arity() >= 1 && n2 >= 1)
            th += nr_bracket(iterated_t(x2.f, n2 - 1), x1.theta)
                      .scaled(Scalar(pow_sign(static_cast<long long>(n1) * n2)));
        out.theta = th;
        return out;
    }

    /// Closed form of the twisted l_m for m >= 3: the f-part vanishes
    /// and the theta-part is the alternating sum of T-iterated
    /// f-components bracketed through the other arguments' thetas.
    TwistedElement lm(const std::vector<TwistedElement>& xs) const {
        int m = static_cast<int>(xs.size());
        if (m < 3) throw std::invalid_argument("lm: use l1/l2 below arity 3");
        int n_out = 3 - 2 * m;
        for (const auto& x : xs) n_out += x.n;
        TwistedElement out = TwistedElement::zero(split(), n_out);
        if (n_out < 1) return out;
        for (const auto& x : xs)
            if (x.n < 1) return out;  // inputs from the zero space
        for (int i = 0; i < m; ++i) {
            int ni = xs[i].n;
            int t_count = ni + 1 - m;
            if (t_count < 0) continue;
            long long alpha = 0;
            for (int j = 0; j < i; ++j) alpha += xs[j].n;
            alpha *= ni;
            NRElement y = iterated_t(xs[i].f, t_count);
            bool dead = false;
            for (int j = 0; j < m && !dead; ++j) {
                if (j == i) continue;
                if (xs[j].theta.arity() < 1) { dead = true; break; }
                y = nr_bracket(y, xs[j].theta);
            }
            if (dead) continue;
            out.theta += y.scaled(Scalar(pow_sign(alpha)));
        }
        return out;
    }

    /// Dispatcher over the closed formulas.
    TwistedElement bracket(const std::vector<TwistedElement>& xs) const {
        if (xs.empty()) throw std::invalid_argument("bracket: no arguments");
        if (xs.size() == 1) return l1(xs[0]);
        if (xs.size() == 2) return l2(xs[0], xs[1]);
        return lm(xs);
    }

    /// Generic route: expands l_k^{pi,T}(x_1..x_m) =
    /// sum_j 1/j! l_{j+m}((s^-1 pi, T), ..., x_1, .., x_m) through the
    /// untwisted derived brackets of the V-data with Delta = 0.
    TwistedElement bracket_generic(const std::vector<TwistedElement>& xs) const {
        int m = static_cast<int>(xs.size());
        int n_out = 3 - 2 * m;
        int max_n = 2;
        for (const auto& x : xs) {
            n_out += x.n;
            max_n = std::max(max_n, x.n);
        }
        TwistedElement acc = TwistedElement::zero(split(), n_out);
        if (n_out < 1) return acc;  // target space is 0
        for (const auto& x : xs)
            if (x.n < 1) return acc;
        Scalar fact(1);
        for (int j = 0; j <= max_n + 2; ++j) {
            if (j > 0) fact *= j;
            TwistedElement term = untwisted_expanded(j, xs);
            acc += term.scaled(Scalar(1) / fact);
        }
        return acc;
    }

    /// Maurer-Cartan sum sum_k 1/k! l_k(x,..,x) of a degree-0 element
    /// (n = 2); the series terminates at k = 3.
    TwistedElement mc_sum(const TwistedElement& x) const {
        if (x.n != 2) throw std::invalid_argument("mc_sum: element must have degree 0 (n = 2)");
        TwistedElement acc = l1(x);
        acc += l2(x, x).scaled(Scalar(1, 2));
        acc += lm({x, x, x}).scaled(Scalar(1, 6));
        return acc;
    }

  private:
    // untwisted l_{j+m} with j copies of (s^-1 pi, T) in front, fully
    // expanded over component choices
    TwistedElement untwisted_expanded(int j, const std::vector<TwistedElement>& xs) const {
        int m = static_cast<int>(xs.size());
        int k = j + m;
        int n_out = 3 - 2 * m;
        for (const auto& x : xs) n_out += x.n;
        TwistedElement acc = TwistedElement::zero(split(), n_out);

        // a slot is either an alpha copy (components pi | T) or an input
        // (components f | theta); choice[i] = true means the F-component
        std::vector<bool> choice(k, false);
        auto component = [&](int slot, bool pick_f) -> const NRElement* {
            if (slot < j) return pick_f ? &pi_ : &t_;
            const TwistedElement& x = xs[slot - j];
            if (pick_f) return &x.f;
            return x.theta.arity() >= 1 ? &x.theta : nullptr;
        };
        auto degree_of_slot = [&](int slot) { return slot < j ? 0 : xs[slot - j].n - 2; };

        auto rec = [&](auto&& self, int slot) -> void {
            if (slot == k) {
                // locate F components
                std::vector<int> fpos;
                for (int i = 0; i < k; ++i)
                    if (choice[i]) fpos.push_back(i);
                if (fpos.empty()) return;  // Delta = 0 kills the all-H pattern
                if (fpos.size() == 2 && k == 2) {
                    const NRElement* q1 = component(0, true);
                    const NRElement* q2 = component(1, true);
                    if (!q1 || !q2) return;
                    NRElement br = nr_bracket(*q1, *q2).scaled(Scalar(pow_sign(q1->degree())));
                    TwistedElement term = TwistedElement::zero(split(), n_out);
                    term.f = br;
                    acc += term;
                    return;
                }
                if (fpos.size() != 1) return;  // vanishes
                int fp = fpos[0];
                const NRElement* q = component(fp, true);
                if (!q) return;
                // Koszul sign for moving the F component to the front
                long long exp = 0;
                for (int i = 0; i < fp; ++i) exp += degree_of_slot(i);
                exp *= degree_of_slot(fp);
                NRElement y = *q;
                for (int i = 0; i < k; ++i) {
                    if (i == fp) continue;
                    const NRElement* h = component(i, false);
                    if (!h) return;
                    y = nr_bracket(y, *h);
                }
                // project onto h: bidegree -1|* components only
                NRElement proj(split(), y.arity());
                for (const auto& [d, comp] : y.decompose())
                    if (d.k == -1 && d.target == Target::IntoG) proj += comp;
                TwistedElement term = TwistedElement::zero(split(), n_out);
                term.theta = proj.scaled(Scalar(pow_sign(exp)));
                acc += term;
                return;
            }
            for (bool pick : {true, false}) {
                choice[slot] = pick;
                self(self, slot + 1);
            }
        };
        rec(rec, 0);
        return acc;
    }

    RelativeRBO op_;
    NRElement pi_, t_;
};

/// Generalized Jacobi defect of the twisted brackets at total arity
/// `n` on the given ordered inputs (zero for a correct L-infinity
/// structure).
inline TwistedElement twisted_jacobi_defect(const TwistedComplex& tw,
                                            const std::vector<TwistedElement>& xs) {
    int n = static_cast<int>(xs.size());
    std::vector<int> degs(n);
    for (int i = 0; i < n; ++i) degs[i] = xs[i].n - 2;
    int out_n = 0;
    {
        int s = 3 - 2 * n;
        for (const auto& x : xs) s += x.n;
        out_n = s + 1;  // one more bracket application adds +1 to the degree
    }
    TwistedElement acc = TwistedElement::zero(tw.split(), out_n);
    for (int i = 1; i <= n; ++i) {
        for (const auto& sh : shuffles({i, n - i})) {
            int eps = koszul_sign(sh.perm, degs);
            std::vector<TwistedElement> inner;
            for (int s = 0; s < i; ++s) inner.push_back(xs[sh.perm[s]]);
            TwistedElement mid = tw.bracket(inner);
            std::vector<TwistedElement> outer{mid};
            for (int s = i; s < n; ++s) outer.push_back(xs[sh.perm[s]]);
            acc += tw.bracket(outer).scaled(Scalar(eps));
        }
    }
    return acc;
}

}  // namespace rbx
