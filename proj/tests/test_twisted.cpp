#include "rbx/twisted.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace rbx;
using namespace rbx::examples;
using rbxtest::rand_bigraded;
using rbxtest::rand_lierep_cochain;

namespace {

TwistedElement rand_element(std::mt19937& rng, const RelativeRBO& op, int n) {
    SpaceSplit sp = op.split();
    TwistedElement x = TwistedElement::zero(sp, n);
    x.f = rand_lierep_cochain(rng, sp, n);
    if (n >= 2) x.theta = rand_bigraded(rng, sp, -1, n - 1, Target::IntoG);
    return x;
}

}  // namespace

TEST_CASE("l1 equals the coboundary up to (-1)^(n-2)", "[twisted]") {
    RelativeRBO t0 = aff1_t0();
    TwistedComplex tw(t0);
    std::mt19937 rng(41);
    for (int n = 1; n <= 3; ++n)
        for (int trial = 0; trial < 6; ++trial) {
            TwistedElement x = rand_element(rng, t0, n);
            RelCochain d = big_d(t0, {x.f, x.theta});
            TwistedElement l = tw.l1(x);
            REQUIRE(l.f == d.f.scaled(Scalar(pow_sign(n - 2))));
            REQUIRE(l.theta == d.theta.scaled(Scalar(pow_sign(n - 2))));
        }
}

TEST_CASE("l2 on pure theta inputs reduces to [[pi,th1],th2]", "[twisted]") {
    RelativeRBO t0 = aff1_t0();
    TwistedComplex tw(t0);
    NRElement pi = t0.rep().pi();
    std::mt19937 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        int a1 = 1 + trial % 2, a2 = 1 + (trial / 2) % 2;
        TwistedElement x1 = TwistedElement::zero(t0.split(), a1 + 1);
        TwistedElement x2 = TwistedElement::zero(t0.split(), a2 + 1);
        x1.theta = rand_bigraded(rng, t0.split(), -1, a1, Target::IntoG);
        x2.theta = rand_bigraded(rng, t0.split(), -1, a2, Target::IntoG);
        TwistedElement got = tw.l2(x1, x2);
        REQUIRE(got.f.is_zero());
        // independent route through the derived bracket on h
        NRElement want = courant_bracket(pi, x1.theta, x2.theta).scaled(Scalar(pow_sign(a1 - 1)));
        REQUIRE(got.theta == want);
    }
}

TEST_CASE("closed formulas agree with the generic twist expansion", "[twisted][oracle]") {
    std::mt19937 rng(47);
    for (const RelativeRBO& op : {aff1_t0(), aff1_rbo_nil()}) {
        TwistedComplex tw(op);
        for (int trial = 0; trial < 8; ++trial) {
            int m = 1 + trial % 3;
            std::vector<TwistedElement> xs;
            for (int i = 0; i < m; ++i) xs.push_back(rand_element(rng, op, 1 + (trial + i) % 3));
            TwistedElement closed = tw.bracket(xs);
            TwistedElement generic = tw.bracket_generic(xs);
            REQUIRE(closed.f == generic.f);
            REQUIRE(closed.theta == generic.theta);
        }
    }
}

TEST_CASE("generalized Jacobi of the twisted brackets", "[twisted][property]") {
    std::mt19937 rng(53);
    RelativeRBO t0 = aff1_t0();
    TwistedComplex tw(t0);
    for (int arity = 1; arity <= 4; ++arity)
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<TwistedElement> xs;
            for (int i = 0; i < arity; ++i) xs.push_back(rand_element(rng, t0, 1 + (trial + i) % 2));
            TwistedElement defect = twisted_jacobi_defect(tw, xs);
            REQUIRE(defect.f.is_zero());
            REQUIRE(defect.theta.is_zero());
        }
}

TEST_CASE("MC diagonal: second Rota-Baxter structures from the aff(1) family", "[twisted]") {
    RelativeRBO t0 = aff1_t0();
    TwistedComplex tw(t0);
    SpaceSplit sp = t0.split();

    // T' = T1 - T0 where T1 = [[1,1],[-1,-1]] is another solution of the
    // brute-forced quadratic system
    TwistedElement x = TwistedElement::zero(sp, 2);
    {
        Matrix tp = aff1_rbo_nil().t();
        for (const auto& [rc, v] : t0.t().entries()) tp.add(rc.first, rc.second, -v);
        RelativeRBO diff_op(t0.rep(), tp);
        x.theta = diff_op.t_element();
    }
    TwistedElement mc = tw.mc_sum(x);
    REQUIRE(mc.f.is_zero());
    REQUIRE(mc.theta.is_zero());

    // scaled deformation: mu' = mu, rho' = rho (doubling the pair keeps it
    // a LieRep pair and T0 stays Rota-Baxter for it), T' = 0
    TwistedElement y = TwistedElement::zero(sp, 2);
    y.f = t0.rep().pi();
    TwistedElement mc2 = tw.mc_sum(y);
    REQUIRE(mc2.f.is_zero());
    REQUIRE(mc2.theta.is_zero());

    // non-solution: T' = [[0,1],[0,0]] alone does not deform T0
    TwistedElement bad = TwistedElement::zero(sp, 2);
    Matrix tb(2, 2);
    tb.set(0, 1, 1);
    bad.theta = RelativeRBO(t0.rep(), tb).t_element();
    REQUIRE_FALSE(tw.mc_sum(bad).is_zero());
}

TEST_CASE("strict extension: iota and p are strict morphisms", "[twisted]") {
    RelativeRBO t0 = aff1_t0();
    TwistedComplex tw(t0);
    SpaceSplit sp = t0.split();
    NRElement pi = t0.rep().pi();
    std::mt19937 rng(59);

    for (int trial = 0; trial < 8; ++trial) {
        int a1 = 1 + trial % 2, a2 = 1 + (trial / 2) % 2;
        NRElement th1 = rand_bigraded(rng, sp, -1, a1, Target::IntoG);
        NRElement th2 = rand_bigraded(rng, sp, -1, a2, Target::IntoG);
        TwistedElement i1 = TwistedElement::zero(sp, a1 + 1);
        i1.theta = th1;
        TwistedElement i2 = TwistedElement::zero(sp, a2 + 1);
        i2.theta = th2;

        // p o iota = 0: the f-part of any bracket of iota-images vanishes,
        // and the higher brackets of pure theta elements vanish outright
        REQUIRE(tw.l1(i1).f.is_zero());
        REQUIRE(tw.l2(i1, i2).f.is_zero());
        REQUIRE(tw.lm({i1, i2, i2}).f.is_zero());
        REQUIRE(tw.lm({i1, i2, i2}).theta.is_zero());

        // iota strict w.r.t. the desuspended operator-complex structure:
        // l1(iota th) = iota((-1)^(a-1) delta th),
        // l2(iota th1, iota th2) = iota((-1)^(a1-1) [[th1, th2]])
        REQUIRE(tw.l1(i1).theta == delta_checked(t0, th1).scaled(Scalar(pow_sign(a1 - 1))));
        REQUIRE(tw.l2(i1, i2).theta ==
                courant_bracket(pi, th1, th2).scaled(Scalar(pow_sign(a1 - 1))));

        // p strict w.r.t. the desuspended LieRep structure:
        // p l1 = -[pi, p(.)], p l2 = (-1)^(n1-1)[p(.), p(.)], p l_3 = 0
        int n1 = 1 + trial % 3, n2 = 1 + (trial / 3) % 3;
        TwistedElement x1 = rand_element(rng, t0, n1);
        TwistedElement x2 = rand_element(rng, t0, n2);
        REQUIRE(tw.l1(x1).f == nr_bracket(pi, x1.f).scaled(Scalar(-1)));
        REQUIRE(tw.l2(x1, x2).f == nr_bracket(x1.f, x2.f).scaled(Scalar(pow_sign(n1 - 1))));
        REQUIRE(tw.lm({x1, x2, x2}).f.is_zero());
    }
}
