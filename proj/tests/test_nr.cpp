#include "rbx/nr.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace rbx;
using rbxtest::rand_bigraded;
using rbxtest::rand_lierep_cochain;

namespace {

SpaceSplit sp22{2, 2};

NRElement identity_on_g(const SpaceSplit& sp) {
    NRElement e(sp, 1);
    for (int i = 0; i < sp.dim_g; ++i) e.add_term({i}, i, 1);
    return e;
}

}  // namespace

TEST_CASE("lift of id_g acts as (x,v) -> (x,0)", "[nr]") {
    NRElement f = identity_on_g(sp22);
    REQUIRE(f.bidegree() == std::make_pair(0, 0));
    // argument (x, v) with x = e1 + 2 e2, v = u1
    SparseVec arg{{0, Scalar(1)}, {1, Scalar(2)}, {2, Scalar(1)}};
    SparseVec out = f.eval_multi({arg});
    REQUIRE(out == SparseVec{{0, Scalar(1)}, {1, Scalar(2)}});
}

TEST_CASE("lift of a map V -> g picks the V component", "[nr]") {
    // f(u_a) = e_a
    NRElement f(sp22, 1);
    f.add_term({2}, 0, 1);
    f.add_term({3}, 1, 1);
    REQUIRE(f.bidegree() == std::make_pair(-1, 1));
    SparseVec arg{{0, Scalar(5)}, {2, Scalar(1)}, {3, Scalar(-2)}};
    SparseVec out = f.eval_multi({arg});
    REQUIRE(out == SparseVec{{0, Scalar(1)}, {1, Scalar(-2)}});
}

TEST_CASE("lift of mu on aff(1) evaluates a single shuffle", "[nr]") {
    NRElement mu = rbx::examples::aff1().mu_element(sp22);
    SparseVec e1{{0, Scalar(1)}}, e2{{1, Scalar(1)}};
    REQUIRE(mu.eval_multi({e1, e2}) == SparseVec{{1, Scalar(1)}});
    // alternating: swapping the pair flips the sign
    REQUIRE(mu.eval_multi({e2, e1}) == SparseVec{{1, Scalar(-1)}});
}

TEST_CASE("bidegree of mixed cochains", "[nr]") {
    Representation ad = Representation::adjoint(rbx::examples::aff1());
    NRElement pi = ad.pi();
    REQUIRE(pi.bidegree() == std::make_pair(1, 0));

    RelativeRBO t0 = rbx::examples::aff1_t0();
    REQUIRE(t0.t_element().bidegree() == std::make_pair(-1, 1));

    // mu + T is inhomogeneous but they have different arities; build an
    // inhomogeneous same-arity example instead: mu (1|0) plus a map
    // /\^2 V -> V of bidegree 0|1.
    NRElement mixed = rbx::examples::aff1().mu_element(sp22);
    NRElement other(sp22, 2);
    other.add_term({2, 3}, 2, 1);
    mixed += other;
    REQUIRE_FALSE(mixed.bidegree().has_value());
    REQUIRE(mixed.decompose().size() == 2);
}

TEST_CASE("[mu,mu] vanishes on aff(1) and heis3, detects broken Jacobi", "[nr]") {
    SpaceSplit s2{2, 0}, s3{3, 0};
    NRElement mu_aff = rbx::examples::aff1().mu_element(s2);
    REQUIRE(nr_bracket(mu_aff, mu_aff).is_zero());

    NRElement mu_h = rbx::examples::heis3().mu_element(s3);
    REQUIRE(nr_bracket(mu_h, mu_h).is_zero());

    NRElement mu_bad = rbx::examples::broken_jacobi3().mu_element(s3);
    NRElement sq = nr_bracket(mu_bad, mu_bad);
    REQUIRE_FALSE(sq.is_zero());
    auto witness = sq.first_term();
    REQUIRE(witness.has_value());
    REQUIRE(witness->first == IndexList{0, 1, 2});
}

TEST_CASE("[mu, id_g] = mu on any Lie algebra", "[nr]") {
    for (const LieAlgebra& g : {rbx::examples::aff1(), rbx::examples::sl2()}) {
        SpaceSplit sp{g.dim(), 0};
        NRElement mu = g.mu_element(sp);
        REQUIRE(nr_bracket(mu, identity_on_g(sp)) == mu);
    }
}

TEST_CASE("courant bracket: MC equation of Rota-Baxter operators", "[nr]") {
    RelativeRBO t0 = rbx::examples::aff1_t0();
    NRElement pi = t0.rep().pi();

    NRElement zero_t(sp22, 1);
    REQUIRE(courant_bracket(pi, zero_t, zero_t).is_zero());

    NRElement t = t0.t_element();
    REQUIRE(courant_bracket(pi, t, t).is_zero());

    // non Rota-Baxter operator: T e2 = e2, T e1 = 0
    Matrix bad(2, 2);
    bad.set(1, 1, 1);
    NRElement tb = RelativeRBO(t0.rep(), bad).t_element();
    REQUIRE_FALSE(courant_bracket(pi, tb, tb).is_zero());
}

TEST_CASE("graded antisymmetry of the NR bracket", "[nr][property]") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 24; ++trial) {
        SpaceSplit sp{2, 1};
        int p = trial % 3, q = (trial / 3) % 3;
        NRElement P = rand_lierep_cochain(rng, sp, p + 1);
        NRElement Q = rand_lierep_cochain(rng, sp, q + 1);
        NRElement lhs = nr_bracket(P, Q);
        NRElement rhs = nr_bracket(Q, P).scaled(Scalar(-pow_sign(p * q)));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("graded Jacobi identity of the NR bracket", "[nr][property]") {
    std::mt19937 rng(78);
    for (int trial = 0; trial < 12; ++trial) {
        SpaceSplit sp{2, 1};
        int p = trial % 2 + 1, q = (trial / 2) % 2, r = (trial / 4) % 2 + 1;
        NRElement P = rand_lierep_cochain(rng, sp, p + 1);
        NRElement Q = rand_lierep_cochain(rng, sp, q + 1);
        NRElement R = rand_lierep_cochain(rng, sp, r + 1);
        NRElement lhs = nr_bracket(P, nr_bracket(Q, R));
        NRElement rhs = nr_bracket(nr_bracket(P, Q), R);
        rhs += nr_bracket(Q, nr_bracket(P, R)).scaled(Scalar(pow_sign(p * q)));
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("bidegree additivity of the NR bracket", "[nr][property]") {
    std::mt19937 rng(79);
    SpaceSplit sp{2, 2};
    struct Case { int k1, l1; Target t1; int k2, l2; Target t2; };
    std::vector<Case> cases{
        {1, 0, Target::IntoG, -1, 1, Target::IntoG},
        {1, 0, Target::IntoV, -1, 1, Target::IntoG},
        {0, 0, Target::IntoG, 1, 0, Target::IntoG},
        {0, 1, Target::IntoV, -1, 1, Target::IntoG},
        {-1, 1, Target::IntoG, 1, 0, Target::IntoG},
    };
    for (const auto& c : cases) {
        NRElement f = rand_bigraded(rng, sp, c.k1, c.l1, c.t1);
        NRElement g = rand_bigraded(rng, sp, c.k2, c.l2, c.t2);
        NRElement br = nr_bracket(f, g);
        auto bd = br.bidegree();
        if (bd) {
            REQUIRE(bd->first == c.k1 + c.k2);
            REQUIRE(bd->second == c.l1 + c.l2);
        } else {
            REQUIRE(br.is_zero());
        }
    }
}

TEST_CASE("maps of bidegree -1|* form an abelian subalgebra", "[nr][property]") {
    std::mt19937 rng(80);
    SpaceSplit sp{2, 2};
    for (int trial = 0; trial < 12; ++trial) {
        int k = 1 + trial % 2, l = 1 + (trial / 2) % 2;
        NRElement f = rand_bigraded(rng, sp, -1, k, Target::IntoG);
        NRElement g = rand_bigraded(rng, sp, -1, l, Target::IntoG);
        REQUIRE(nr_bracket(f, g).is_zero());
    }
}

TEST_CASE("shuffle formula agrees with coderivation commutator", "[nr][oracle]") {
    std::mt19937 rng(81);
    for (int trial = 0; trial < 20; ++trial) {
        SpaceSplit sp{2, trial % 2 + 1};
        int p = trial % 3, q = (trial / 3) % 3;
        NRElement P = rand_lierep_cochain(rng, sp, p + 1);
        NRElement Q = rand_lierep_cochain(rng, sp, q + 1);
        REQUIRE(nr_bracket(P, Q) == nr_bracket_coderivation(P, Q));
    }
    // also across mixed bidegrees
    SpaceSplit sp{2, 2};
    for (int trial = 0; trial < 10; ++trial) {
        NRElement f = rand_bigraded(rng, sp, trial % 2, 1, Target::IntoG);
        NRElement g = rand_bigraded(rng, sp, -1, 1 + trial % 2, Target::IntoG);
        REQUIRE(nr_bracket(f, g) == nr_bracket_coderivation(f, g));
    }
}
