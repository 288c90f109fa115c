#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zigzag/classify.hpp"

using namespace zigzag;

namespace {

ExtScalar ap_5pi(int K = 40) { return ExtScalar::from_long(5, 5, K).mul_pi_pow(1); }

}  // namespace

TEST_CASE("invariants of (5, 23, 5 pi)") {
    InvariantBundle inv = compute_invariants(5, 23, ap_5pi());
    CHECK(inv.b == 3);
    CHECK(inv.t == 1);
    CHECK(inv.tau == HalfInt{5});  // 5/2
    CHECK(inv.window == TauWindow::GtT1);
    // t at (5, 11): v(3 - 11) = v(-8) = 0
    InvariantBundle inv2 = compute_invariants(5, 11, ap_5pi());
    CHECK(inv2.t == 0);
    // wrong slope rejected
    CHECK_THROWS_AS(compute_invariants(5, 23, ExtScalar::from_long(5, 5, 40)),
                    precondition_error);
}

TEST_CASE("tetrachotomy at the worked instance") {
    GaloisDesc d = classify(5, 23, ap_5pi(), Slope::ThreeHalves);
    CHECK(!d.irreducible);
    CHECK(d.w1 == 2);
    CHECK(d.w2 == 2);
    // lambda_2 is a root of X^2 + 1 = (X-2)(X-3) over F_5
    REQUIRE(d.lam.kind == LambdaDesc::Kind::InFp);
    CHECK((d.lam.value == 2 || d.lam.value == 3));
    std::array<fp_t, 2> roots{};
    bool split = false;
    LambdaDesc lam = LambdaDesc::from_trace(0, 5, &split, &roots);
    CHECK(split);
    CHECK(((roots[0] == 2 && roots[1] == 3) || (roots[0] == 3 && roots[1] == 2)));
    (void)lam;
}

TEST_CASE("tetrachotomy branches across windows") {
    long p = 5, r = 23;
    int K = 40;
    struct Case {
        TauWindow w;
        bool irred;
        long exp_or_w1;
    };
    // over E = Q_p(sqrt p) the valuation tau is a half-integer, so the open
    // windows (t, t+1/2) and (t+1/2, t+1) contain no instances; the middle
    // irreducible branch is hit exactly at tau = t + 1/2
    for (Case c : {Case{TauWindow::LtT, true, 4}, Case{TauWindow::EqT, false, 3},
                   Case{TauWindow::EqTHalf, true, 8}, Case{TauWindow::EqT1, false, 2},
                   Case{TauWindow::GtT1, false, 2}}) {
        auto inst = scan_instance(p, r, K, c.w);
        REQUIRE(inst.has_value());
        GaloisDesc d = classify(p, r, inst->ap, Slope::ThreeHalves);
        INFO(window_name(c.w));
        CHECK(d.irreducible == c.irred);
        if (c.irred)
            CHECK(d.ind_exp == c.exp_or_w1);
        else
            CHECK(d.w1 == c.exp_or_w1);
    }
}

TEST_CASE("scaling a_p by a deep one-unit never changes the branch") {
    long p = 5, r = 23;
    int K = 40;
    for (TauWindow w : {TauWindow::EqT, TauWindow::EqT1, TauWindow::GtT1}) {
        auto inst = scan_instance(p, r, K, w);
        REQUIRE(inst.has_value());
        GaloisDesc base = classify(p, r, inst->ap, Slope::ThreeHalves);
        // 1 + pi^12 is far below every residue and window comparison here
        ExtScalar unit = ExtScalar::one(p, K) + ExtScalar::one(p, K).mul_pi_pow(12);
        GaloisDesc moved = classify(p, r, inst->ap * unit, Slope::ThreeHalves);
        CHECK(same_galois(base, moved));
    }
}

TEST_CASE("dichotomy and trichotomy branch structures") {
    long p = 5;
    int K = 40;
    // slope 1/2: r = 1 mod (p-1), v(a_p) = 1/2
    {
        long r = 13;  // 13 = 1 mod 4, t = v(1-13) = 0
        ExtScalar ap = ExtScalar::pi(p, K);  // tau = v((ap^2-rp)/(p ap)) = v(p(1-r))-3/2
        GaloisDesc d = classify(p, r, ap, Slope::Half);
        // tau = 1 + v(1-r) - 3/2 = -1/2 < t = 0 is impossible; compute and
        // just check the branch shape agrees with the comparison
        ExtScalar c = (ap * ap - ExtScalar::from_long(p, 13 * 5, K)).div(ap.mul_p_pow(1));
        HalfInt tau = *c.valuation();
        if (tau < HalfInt::whole(0))
            CHECK(d.irreducible);
        else {
            CHECK(!d.irreducible);
            CHECK(d.w1 == 1);
            CHECK(d.w2 == 1);
        }
    }
    // slope 1: r = 2 mod (p-1), v(a_p) = 1
    {
        long r = 14;  // 14 = 2 mod 4, t = v(2-14) = 0... v_5(12) = 0
        ExtScalar ap = ExtScalar::from_long(p, p, K);  // vpi 2
        GaloisDesc d = classify(p, r, ap, Slope::One);
        ExtScalar c = (ap * ap -
                       ExtScalar::from_mpz(p, binom_exact(14, 2), K).mul_p_pow(2))
                          .div(ap.mul_p_pow(1));
        HalfInt tau = *c.valuation();
        HalfInt T = HalfInt::whole(0);
        if (tau < T) CHECK((d.irreducible && d.ind_exp == 3));
        else if (tau == T) CHECK(!d.irreducible);
        else CHECK((d.irreducible && d.ind_exp == 2 + p));
    }
    CHECK_THROWS_AS(classify(5, 12, ap_5pi(), Slope::ThreeHalves), precondition_error);
    CHECK_THROWS_AS(classify(5, 3, ap_5pi(), Slope::ThreeHalves), precondition_error);
}

TEST_CASE("local correspondence maps") {
    long p = 5;
    // ind(omega_2^4) at p=5 goes to pi(3, 0, 1)
    GaloisDesc g;
    g.p = p;
    g.irreducible = true;
    g.ind_exp = 4;
    auto reps = llc_forward(g);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].r == 3);
    CHECK(reps[0].lam.kind == LambdaDesc::Kind::Zero);
    CHECK(reps[0].eta.omega == 0);
    // forward then inverse is the identity on reducible descriptors
    GaloisDesc h;
    h.p = p;
    h.irreducible = false;
    h.lam = LambdaDesc::unit(2);
    h.w1 = 3;
    h.w2 = 0;
    auto pair = llc_forward(h);
    REQUIRE(pair.size() == 2);
    GaloisDesc back = llc_inverse(pair);
    CHECK(same_galois(h, back));
    // branch-4 shape: exponents tie, lambda pair normalizes
    GaloisDesc b4;
    b4.p = p;
    b4.irreducible = false;
    b4.lam = LambdaDesc::unit(2);
    b4.w1 = 2;
    b4.w2 = 2;
    auto pair4 = llc_forward(b4);
    REQUIRE(pair4.size() == 2);
    CHECK(pair4[0].r == p - 2);
    CHECK(pair4[1].r == p - 2);
    CHECK(same_galois(b4, llc_inverse(pair4)));
    // lambda_1 lambda_1^-1 = 1
    CHECK(fp_inv(2, p) == 3);
}

TEST_CASE("nine-part expectations") {
    auto lt = ninepart_expectation(TauWindow::GtT1);
    CHECK(lt.f1 == FactorPres::Zero);
    CHECK(lt.f2 == FactorPres::Zero);
    CHECK(lt.f3 == FactorPres::Quadratic);
    auto eq = ninepart_expectation(TauWindow::EqT);
    CHECK(eq.f1 == FactorPres::TMinusLam1Inv);
    CHECK(eq.f2 == FactorPres::TMinusLam1);
    auto half = ninepart_expectation(TauWindow::EqTHalf);
    CHECK(half.f2 == FactorPres::T);
    CHECK(half.f3 == FactorPres::T);
    auto gap = ninepart_expectation(TauWindow::BetweenTAndHalf);
    CHECK(gap.f3_vanishing_unproven);
}

TEST_CASE("classifier consistency across windows at (5,23)") {
    long p = 5, r = 23;
    int K = 40;
    for (TauWindow w : {TauWindow::LtT, TauWindow::EqT, TauWindow::BetweenTAndHalf,
                        TauWindow::EqTHalf, TauWindow::BetweenHalfAndT1, TauWindow::EqT1,
                        TauWindow::GtT1}) {
        auto inst = scan_instance(p, r, K, w);
        if (!inst) continue;  // some windows may be unreachable for this r
        VerificationReport rep = classifier_consistency(*inst);
        INFO(rep.summary());
        CHECK(rep.passed());
    }
}

TEST_CASE("worked consistency instance (5, 23, 5 pi)") {
    Instance I = Instance::make(5, 23, ap_5pi(), 40);
    VerificationReport rep = classifier_consistency(I);
    INFO(rep.summary());
    CHECK(rep.passed());
    GaloisDesc d = classify(5, 23, ap_5pi(), Slope::ThreeHalves);
    CHECK((d.lam.value == 2 || d.lam.value == 3));
}
