#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zigzag/symmod.hpp"

using namespace zigzag;

namespace {

FpPoly random_poly(std::mt19937& rng, long p, long r) {
    FpPoly P = FpPoly::zero(p, r);
    for (long j = 0; j <= r; ++j) P.c[j] = rng() % p;
    return P;
}

Gamma2 random_gamma(std::mt19937& rng, long p) {
    while (true) {
        Gamma2 g{p, static_cast<fp_t>(rng() % p), static_cast<fp_t>(rng() % p),
                 static_cast<fp_t>(rng() % p), static_cast<fp_t>(rng() % p)};
        if (g.det() != 0) return g;
    }
}

Gamma2 mul(const Gamma2& g, const Gamma2& h) {
    long p = g.p;
    return Gamma2{p, fp_norm(1L * g.a * h.a + 1L * g.b * h.c, p),
                  fp_norm(1L * g.a * h.b + 1L * g.b * h.d, p),
                  fp_norm(1L * g.c * h.a + 1L * g.d * h.c, p),
                  fp_norm(1L * g.c * h.b + 1L * g.d * h.d, p)};
}

// Orbit span using every element of GL_2(F_p); slow oracle for the
// generator-closure construction used by QuotientBasis.
FpSpan full_orbit_span(long p, const FpPoly& seed) {
    FpSpan span(p, seed.r + 1);
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b)
            for (long c = 0; c < p; ++c)
                for (long d = 0; d < p; ++d) {
                    Gamma2 g{p, static_cast<fp_t>(a), static_cast<fp_t>(b),
                             static_cast<fp_t>(c), static_cast<fp_t>(d)};
                    if (g.det() == 0) continue;
                    span.insert(gamma_act(g, seed).c);
                }
    return span;
}

}  // namespace

TEST_CASE("gamma action basics") {
    std::mt19937 rng(3);
    long p = 7, r = 15;
    FpPoly P = random_poly(rng, p, r);
    CHECK(gamma_act(Gamma2{p, 1, 0, 0, 1}, P) == P);
    // antidiagonal swaps the variables
    FpPoly m = FpPoly::monomial(p, r, 4);
    CHECK(gamma_act(Gamma2{p, 0, 1, 1, 0}, m) == FpPoly::monomial(p, r, r - 4));
    // scalars act by u^r
    fp_t u = 3;
    CHECK(gamma_act(Gamma2{p, u, 0, 0, u}, P) == P.scaled(fp_pow(u, r, p)));
}

TEST_CASE("gamma action is a group action") {
    std::mt19937 rng(4);
    for (long p : {5L, 7L}) {
        long r = 2 * p + 1;
        for (int iter = 0; iter < 60; ++iter) {
            FpPoly P = random_poly(rng, p, r);
            Gamma2 g = random_gamma(rng, p), h = random_gamma(rng, p);
            CHECK(gamma_act(g, gamma_act(h, P)) == gamma_act(mul(g, h), P));
        }
    }
}

TEST_CASE("theta transforms by the determinant") {
    std::mt19937 rng(5);
    for (long p : {5L, 7L}) {
        FpPoly theta = FpPoly::theta(p);
        for (int iter = 0; iter < 40; ++iter) {
            Gamma2 g = random_gamma(rng, p);
            CHECK(gamma_act(g, theta) == theta.scaled(g.det()));
        }
    }
}

TEST_CASE("theta division") {
    long p = 5;
    FpPoly theta = FpPoly::theta(p);
    auto q = theta_factor(theta);
    REQUIRE(q.has_value());
    CHECK(q->r == 0);
    CHECK(q->c[0] == 1);
    // X^r is not divisible
    CHECK(!theta_factor(FpPoly::monomial(p, 23, 0)).has_value());
    // theta^2 * X: two exact divisions
    FpPoly t2x = theta * theta * FpPoly::monomial(p, 1, 0);
    auto once = theta_factor(t2x);
    REQUIRE(once.has_value());
    auto twice = theta_factor(*once);
    REQUIRE(twice.has_value());
    CHECK(*twice == FpPoly::monomial(p, 1, 0));
    // random products divide back exactly
    std::mt19937 rng(6);
    for (int iter = 0; iter < 30; ++iter) {
        FpPoly f = random_poly(rng, p, 9);
        auto back = theta_factor(theta * f);
        REQUIRE(back.has_value());
        CHECK(*back == f);
    }
}

TEST_CASE("generator closure matches the full-orbit span") {
    long p = 5, r = 11;
    QuotientBasis Q(p, r);
    FpSpan oracle = full_orbit_span(p, FpPoly::monomial(p, r, 1));
    // X_(r-1) + V** has codim dimQ; the oracle span must be contained in W:
    // every orbit vector has zero class.
    for (const auto& row : oracle.rows()) {
        FpPoly v{p, r, row};
        CHECK(Q.class_is_zero(v));
    }
    // and the dimensions agree: dim X_(r-1) from the oracle plus theta^2
    // contributions gives r+1 - dimQ
    FpSpan w2(p, r + 1);
    for (const auto& row : oracle.rows()) w2.insert(row);
    for (long i = 0; i <= r - 2 * p - 2; ++i) {
        std::vector<fp_t> v(r + 1, 0);
        v[i + 2] = 1;
        v[i + p + 1] = fp_norm(-2, p);
        v[i + 2 * p] = 1;
        w2.insert(v);
    }
    CHECK(w2.dim() == r + 1 - Q.dim_q());
}

TEST_CASE("Q structure at the worked instances") {
    {
        QuotientBasis Q(5, 11);
        CHECK(Q.qcase() == 1);
        CHECK(Q.dim_q() == 6);
        CHECK(Q.split_case1());
        auto rep = Q.structure_report();
        CHECK(rep.passed());
    }
    {
        QuotientBasis Q(5, 23);
        CHECK(Q.qcase() == 2);
        CHECK(Q.dim_q() == 8);
        CHECK(Q.nonsplit_case2());
        auto rep = Q.structure_report();
        CHECK(rep.passed());
    }
    {
        QuotientBasis Q(7, 33);  // 33 = 5 mod 7: case 1
        CHECK(Q.qcase() == 1);
        CHECK(Q.dim_q() == 10);
        CHECK(Q.structure_report().passed());
    }
    CHECK_THROWS_AS(QuotientBasis(5, 10), precondition_error);
}

TEST_CASE("projection equivariance") {
    std::mt19937 rng(8);
    for (auto pr : {std::pair<long, long>{5, 11}, {5, 23}, {7, 15}}) {
        long p = pr.first, r = pr.second;
        QuotientBasis Q(p, r);
        for (int iter = 0; iter < 25; ++iter) {
            FpPoly P = random_poly(rng, p, r);
            Gamma2 g = random_gamma(rng, p);
            for (JHFactor J : {J1(p), J3(p)}) {
                if (J == J3(p)) continue;  // J3 needs classes inside im V_r^*
                FpPoly lhs = Q.project(gamma_act(g, P), J);
                FpPoly rhs = gamma_act(g, Q.project(P, J)).scaled(fp_pow(g.det(), J.twist, p));
                CHECK(lhs == rhs);
            }
            // J3-equivariance on theta * V_(r-p-1)
            FpPoly V = FpPoly::theta(p) * random_poly(rng, p, r - p - 1);
            FpPoly lhs = Q.project(gamma_act(g, V), J3(p));
            FpPoly rhs = gamma_act(g, Q.project(V, J3(p))).scaled(fp_pow(g.det(), 2, p));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("W is Gamma-stable") {
    std::mt19937 rng(9);
    long p = 5, r = 23;
    QuotientBasis Q(p, r);
    // elements with zero class stay zero-class under random group elements
    FpPoly theta = FpPoly::theta(p);
    FpPoly w = theta * theta * FpPoly::monomial(p, r - 2 * p - 2, 3);
    for (int iter = 0; iter < 20; ++iter) {
        Gamma2 g = random_gamma(rng, p);
        CHECK(Q.class_is_zero(gamma_act(g, w)));
    }
    FpPoly x = FpPoly::monomial(p, r, 1);  // X^(r-1)Y generates W's first part
    for (int iter = 0; iter < 20; ++iter) {
        Gamma2 g = random_gamma(rng, p);
        CHECK(Q.class_is_zero(gamma_act(g, x)));
    }
    // X^r lies in X_(r-1) as well
    CHECK(Q.class_is_zero(FpPoly::monomial(p, r, 0)));
}

TEST_CASE("worked projection values") {
    long p = 5, r = 23;
    QuotientBasis Q(p, r);
    // X^(r-2)Y^2 -> (2-r) X^(p-2) in J3
    FpPoly img = Q.project(FpPoly::monomial(p, r, 2), J3(p));
    CHECK(img == FpPoly::monomial(p, p - 2, 0, fp_norm(2 - r, p)));
    // J2 projection undefined in case 1
    QuotientBasis Q1(5, 11);
    CHECK_THROWS_AS(Q1.project(FpPoly::monomial(5, 11, 2), J2(5)), precondition_error);
}
