#pragma once

// Concrete algebraic structures: Lie algebras, representations,
// (relative) Rota-Baxter operators, morphisms. Verification reduces to
// Nijenhuis-Richardson bracket identities, each cross-checked against a
// direct matrix/structure-constant computation.

#include "rbx/nr.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace rbx {

struct CheckResult {
    std::string name;
    bool ok = true;
    std::string witness;  // empty when ok
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
    void add(std::string name, bool pass, std::string witness = "") {
        checks.push_back({std::move(name), pass, pass ? "" : std::move(witness)});
    }
};

inline std::string describe_term(const IndexList& args, int out) {
    std::ostringstream os;
    os << "args(";
    for (std::size_t i = 0; i < args.size(); ++i) os << (i ? "," : "") << args[i] + 1;
    os << ") -> " << out + 1;
    return os.str();
}

inline std::string witness_of(const NRElement& defect) {
    auto t = defect.first_term();
    if (!t) return "";
    return describe_term(t->first, t->second);
}

class LieAlgebra {
  public:
    explicit LieAlgebra(int dim) : dim_(dim), table_(dim, std::vector<SparseVec>(dim)) {}

    int dim() const { return dim_; }

    /// Sets [e_i, e_j] = value (i != j); the opposite order is filled in
    /// with the opposite sign.
    void set_bracket(int i, int j, const SparseVec& value) {
        if (i == j) throw std::invalid_argument("set_bracket: [x,x] is identically 0");
        table_[i][j] = value;
        SparseVec neg;
        for (const auto& [k, c] : value) neg[k] = -c;
        table_[j][i] = neg;
    }

    const SparseVec& bracket(int i, int j) const { return table_[i][j]; }

    SparseVec bracket_vec(const SparseVec& x, const SparseVec& y) const {
        SparseVec out;
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y)
                for (const auto& [k, c] : table_[i][j]) sv_add(out, k, a * b * c);
        return out;
    }

    /// ad(x) as a matrix, columns indexed by the second argument.
    Matrix ad(const SparseVec& x) const {
        Matrix m(dim_, dim_);
        for (int j = 0; j < dim_; ++j) {
            SparseVec ej{{j, Scalar(1)}};
            for (const auto& [k, c] : bracket_vec(x, ej)) m.add(k, j, c);
        }
        return m;
    }

    /// mu as the bidegree 1|0 IntoG element of an ambient split (the
    /// V-part of the split may be 0).
    NRElement mu_element(const SpaceSplit& split) const {
        if (split.dim_g != dim_) throw std::invalid_argument("mu_element: split mismatch");
        NRElement mu(split, 2);
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j)
                for (const auto& [k, c] : table_[i][j]) mu.add_term({i, j}, k, c);
        return mu;
    }

  private:
    int dim_;
    std::vector<std::vector<SparseVec>> table_;
};

/// [mu,mu]_NR = 0 is the Jacobi identity; on failure the witness is a
/// basis triple with a nonzero Jacobiator.
inline VerifyReport verify_lie(const LieAlgebra& alg) {
    VerifyReport rep;
    SpaceSplit split{alg.dim(), 0};
    NRElement mu = alg.mu_element(split);
    NRElement jac = nr_bracket(mu, mu);
    rep.add("lie.jacobi", jac.is_zero(), witness_of(jac));
    return rep;
}

class Representation {
  public:
    Representation(LieAlgebra base, std::vector<Matrix> rho)
        : base_(std::move(base)), rho_(std::move(rho)) {
        if (static_cast<int>(rho_.size()) != base_.dim())
            throw std::invalid_argument("Representation: one matrix per basis vector");
        dim_v_ = rho_.empty() ? 0 : rho_[0].rows();
        for (const auto& m : rho_)
            if (m.rows() != dim_v_ || m.cols() != dim_v_)
                throw std::invalid_argument("Representation: matrices must be square, equal size");
    }

    static Representation adjoint(const LieAlgebra& alg) {
        std::vector<Matrix> rho;
        for (int i = 0; i < alg.dim(); ++i) rho.push_back(alg.ad({{i, Scalar(1)}}));
        return Representation(alg, std::move(rho));
    }

    const LieAlgebra& algebra() const { return base_; }
    int dim_v() const { return dim_v_; }
    SpaceSplit split() const { return {base_.dim(), dim_v_}; }
    const Matrix& rho(int i) const { return rho_[i]; }

    /// rho(x) for a g-vector x.
    Matrix rho_of(const SparseVec& x) const {
        Matrix m(dim_v_, dim_v_);
        for (const auto& [i, c] : x)
            for (const auto& [rc, v] : rho_[i].entries()) m.add(rc.first, rc.second, c * v);
        return m;
    }

    /// rho as the bidegree 1|0 IntoV element: g (x) V -> V.
    NRElement rho_element() const {
        SpaceSplit sp = split();
        NRElement r(sp, 2);
        for (int i = 0; i < base_.dim(); ++i)
            for (const auto& [rc, v] : rho_[i].entries())
                r.add_term({i, sp.dim_g + rc.second}, sp.dim_g + rc.first, v);
        return r;
    }

    /// pi = mu + rho, the degree-1 element whose square-zero condition
    /// says (g, rho) is a LieRep pair.
    NRElement pi() const { return base_.mu_element(split()) + rho_element(); }

  private:
    LieAlgebra base_;
    std::vector<Matrix> rho_;
    int dim_v_ = 0;
};

/// [pi,pi]_NR = 0, cross-checked against rho([x,y]) = [rho(x),rho(y)].
inline VerifyReport verify_rep(const Representation& rep) {
    VerifyReport out;
    NRElement pi = rep.pi();
    NRElement sq = nr_bracket(pi, pi);
    bool nr_ok = sq.is_zero();
    out.add("rep.pi_square_zero", nr_ok, witness_of(sq));

    bool mat_ok = true;
    std::string w;
    const LieAlgebra& g = rep.algebra();
    for (int i = 0; i < g.dim() && mat_ok; ++i)
        for (int j = i + 1; j < g.dim() && mat_ok; ++j) {
            Matrix lhs = rep.rho_of(g.bracket(i, j));
            Matrix comm = rep.rho(i).times(rep.rho(j));
            Matrix ji = rep.rho(j).times(rep.rho(i));
            for (const auto& [rc, v] : ji.entries()) comm.add(rc.first, rc.second, -v);
            if (!(lhs == comm)) {
                mat_ok = false;
                w = "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            }
        }
    bool jac_ok = verify_lie(g).ok();
    out.add("rep.matrix_commutator", mat_ok && jac_ok,
            jac_ok ? w : "base Jacobi fails");
    if (nr_ok != (mat_ok && jac_ok))
        throw std::logic_error("verify_rep: NR route disagrees with matrix route");
    return out;
}

class RelativeRBO {
  public:
    RelativeRBO(Representation rep, Matrix t) : rep_(std::move(rep)), t_(std::move(t)) {
        if (t_.rows() != rep_.algebra().dim() || t_.cols() != rep_.dim_v())
            throw std::invalid_argument("RelativeRBO: T must be dim(g) x dim(V)");
    }

    const Representation& rep() const { return rep_; }
    const Matrix& t() const { return t_; }
    SpaceSplit split() const { return rep_.split(); }

    /// T(u) in g for a V-vector u.
    SparseVec apply_t(const SparseVec& u) const {
        SparseVec out;
        for (const auto& [a, c] : u)
            for (int i = 0; i < t_.rows(); ++i) {
                Scalar v = t_.at(i, a);
                if (v != 0) sv_add(out, i, c * v);
            }
        return out;
    }

    /// T as the bidegree -1|1 IntoG element: V -> g.
    NRElement t_element() const {
        SpaceSplit sp = split();
        NRElement e(sp, 1);
        for (const auto& [rc, v] : t_.entries()) e.add_term({sp.dim_g + rc.second}, rc.first, v);
        return e;
    }

  private:
    Representation rep_;
    Matrix t_;
};

/// Defect of [Tu,Tv] = T(rho(Tu)v - rho(Tv)u) on a basis pair; empty
/// SparseVec means the identity holds there.
inline SparseVec rbo_defect(const RelativeRBO& op, int a, int b) {
    const Representation& rep = op.rep();
    SparseVec ua{{a, Scalar(1)}}, ub{{b, Scalar(1)}};
    SparseVec tu = op.apply_t(ua), tv = op.apply_t(ub);
    SparseVec lhs = rep.algebra().bracket_vec(tu, tv);
    // rho(Tu)v - rho(Tv)u as V-vectors
    Matrix m1 = rep.rho_of(tu), m2 = rep.rho_of(tv);
    SparseVec inner;
    for (int r = 0; r < rep.dim_v(); ++r) {
        Scalar c = m1.at(r, b) - m2.at(r, a);
        if (c != 0) inner[r] = c;
    }
    SparseVec rhs = op.apply_t(inner);
    SparseVec defect = lhs;
    for (const auto& [k, c] : rhs) sv_add(defect, k, -c);
    return defect;
}

/// Direct identity on all basis pairs, plus the Maurer-Cartan
/// reformulation [[pi,T],T] = 0; the two verdicts must agree.
inline VerifyReport verify_relative_rbo(const RelativeRBO& op) {
    VerifyReport out;
    bool direct_ok = true;
    std::string w;
    for (int a = 0; a < op.rep().dim_v() && direct_ok; ++a)
        for (int b = a + 1; b < op.rep().dim_v() && direct_ok; ++b)
            if (!rbo_defect(op, a, b).empty()) {
                direct_ok = false;
                w = "pair (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
            }
    out.add("rbo.identity", direct_ok, w);

    NRElement pi = op.rep().pi();
    NRElement t = op.t_element();
    NRElement mc = nr_bracket(nr_bracket(pi, t), t);
    bool mc_ok = mc.is_zero();
    out.add("rbo.maurer_cartan", mc_ok, witness_of(mc));
    if (direct_ok != mc_ok)
        throw std::logic_error("verify_relative_rbo: direct identity disagrees with MC form");
    return out;
}

class RBO {
  public:
    RBO(LieAlgebra alg, Matrix t) : alg_(std::move(alg)), t_(std::move(t)) {
        if (t_.rows() != alg_.dim() || t_.cols() != alg_.dim())
            throw std::invalid_argument("RBO: T must be dim(g) x dim(g)");
    }
    const LieAlgebra& algebra() const { return alg_; }
    const Matrix& t() const { return t_; }

    /// The same operator viewed over the adjoint representation.
    RelativeRBO as_relative() const { return RelativeRBO(Representation::adjoint(alg_), t_); }

  private:
    LieAlgebra alg_;
    Matrix t_;
};

inline VerifyReport verify_rbo(const RBO& op) { return verify_relative_rbo(op.as_relative()); }

/// Maurer-Cartan test on raw data: (1/2)[pi,pi] = 0 and
/// (1/2)[[pi,T],T] = 0. Deliberately accepts unverified input; the two
/// components vanishing together is equivalent to (g,mu,rho,T) being a
/// relative Rota-Baxter Lie algebra.
inline VerifyReport mc_check(const Representation& rep, const Matrix& t) {
    VerifyReport out;
    NRElement pi = rep.pi();
    NRElement half_sq = nr_bracket(pi, pi).scaled(Scalar(1, 2));
    out.add("mc.lie_rep", half_sq.is_zero(), witness_of(half_sq));
    RelativeRBO op(rep, t);
    NRElement tt = op.t_element();
    NRElement half_op = nr_bracket(nr_bracket(pi, tt), tt).scaled(Scalar(1, 2));
    out.add("mc.operator", half_op.is_zero(), witness_of(half_op));
    return out;
}

/// Binary product v |> w = rho(Tv)w on V induced by a verified relative
/// Rota-Baxter operator.
struct PreLieProduct {
    int dim = 0;
    std::vector<std::vector<SparseVec>> table;  // table[a][b] = u_a |> u_b

    SparseVec product(const SparseVec& x, const SparseVec& y) const {
        SparseVec out;
        for (const auto& [a, ca] : x)
            for (const auto& [b, cb] : y)
                for (const auto& [k, c] : table[a][b]) sv_add(out, k, ca * cb * c);
        return out;
    }

    /// Commutator bracket; for products coming from relative RBOs this
    /// is the sub-adjacent Lie algebra.
    LieAlgebra commutator_algebra() const {
        LieAlgebra g(dim);
        for (int a = 0; a < dim; ++a)
            for (int b = a + 1; b < dim; ++b) {
                SparseVec v = table[a][b];
                for (const auto& [k, c] : table[b][a]) sv_add(v, k, -c);
                g.set_bracket(a, b, v);
            }
        return g;
    }
};

inline PreLieProduct prelie_from_rbo(const RelativeRBO& op) {
    if (!verify_relative_rbo(op).ok())
        throw std::invalid_argument("prelie_from_rbo: operator does not verify");
    const Representation& rep = op.rep();
    PreLieProduct p;
    p.dim = rep.dim_v();
    p.table.assign(p.dim, std::vector<SparseVec>(p.dim));
    for (int a = 0; a < p.dim; ++a) {
        Matrix m = rep.rho_of(op.apply_t({{a, Scalar(1)}}));
        for (int b = 0; b < p.dim; ++b)
            for (int r = 0; r < p.dim; ++r) {
                Scalar c = m.at(r, b);
                if (c != 0) p.table[a][b][r] = c;
            }
    }
    return p;
}

/// Pre-Lie identity: the associator (x|>y)|>z - x|>(y|>z) is symmetric
/// in x and y; checked on all basis triples.
inline bool prelie_identity_holds(const PreLieProduct& p) {
    auto assoc = [&](int x, int y, int z) {
        SparseVec ex{{x, Scalar(1)}}, ey{{y, Scalar(1)}}, ez{{z, Scalar(1)}};
        SparseVec left = p.product(p.product(ex, ey), ez);
        for (const auto& [k, c] : p.product(ex, p.product(ey, ez))) sv_add(left, k, -c);
        return left;
    };
    for (int x = 0; x < p.dim; ++x)
        for (int y = 0; y < p.dim; ++y)
            for (int z = 0; z < p.dim; ++z) {
                SparseVec d = assoc(x, y, z);
                for (const auto& [k, c] : assoc(y, x, z)) sv_add(d, k, -c);
                if (!d.empty()) return false;
            }
    return true;
}

struct Morphism {
    Matrix phi;  // g' -> g
    Matrix psi;  // V' -> V
};

inline SparseVec apply_matrix(const Matrix& m, const SparseVec& x) {
    SparseVec out;
    for (const auto& [j, c] : x)
        for (int i = 0; i < m.rows(); ++i) {
            Scalar v = m.at(i, j);
            if (v != 0) sv_add(out, i, c * v);
        }
    return out;
}

/// Homomorphism conditions: phi a Lie map, T psi = phi T', and psi
/// intertwines the representations.
inline VerifyReport verify_morphism(const RelativeRBO& source, const RelativeRBO& target,
                                    const Morphism& m) {
    VerifyReport out;
    const LieAlgebra& gs = source.rep().algebra();
    const LieAlgebra& gt = target.rep().algebra();
    if (m.phi.cols() != gs.dim() || m.phi.rows() != gt.dim() ||
        m.psi.cols() != source.rep().dim_v() || m.psi.rows() != target.rep().dim_v())
        throw std::invalid_argument("verify_morphism: dimension mismatch");

    bool lie_ok = true;
    std::string w;
    for (int i = 0; i < gs.dim() && lie_ok; ++i)
        for (int j = i + 1; j < gs.dim() && lie_ok; ++j) {
            SparseVec lhs = apply_matrix(m.phi, gs.bracket(i, j));
            SparseVec rhs = gt.bracket_vec(apply_matrix(m.phi, {{i, Scalar(1)}}),
                                           apply_matrix(m.phi, {{j, Scalar(1)}}));
            for (const auto& [k, c] : rhs) sv_add(lhs, k, -c);
            if (!lhs.empty()) {
                lie_ok = false;
                w = "pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            }
        }
    out.add("morphism.lie", lie_ok, w);

    Matrix lhs = target.t().times(m.psi);
    Matrix rhs = m.phi.times(source.t());
    for (const auto& [rc, v] : rhs.entries()) lhs.add(rc.first, rc.second, -v);
    out.add("morphism.operator_square", lhs.is_zero(), "T psi != phi T'");

    bool rep_ok = true;
    std::string wr;
    for (int i = 0; i < gs.dim() && rep_ok; ++i) {
        Matrix l = m.psi.times(source.rep().rho(i));
        Matrix r = target.rep().rho_of(apply_matrix(m.phi, {{i, Scalar(1)}})).times(m.psi);
        for (const auto& [rc, v] : r.entries()) l.add(rc.first, rc.second, -v);
        if (!l.is_zero()) {
            rep_ok = false;
            wr = "generator " + std::to_string(i + 1);
        }
    }
    out.add("morphism.representation", rep_ok, wr);
    return out;
}

}  // namespace rbx
