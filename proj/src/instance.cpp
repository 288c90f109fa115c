#include "zigzag/instance.hpp"

#include <sstream>

namespace zigzag {

bool in_window(HalfInt tau, long t, TauWindow w) {
    HalfInt T = HalfInt::whole(t);
    HalfInt Th = HalfInt{2 * t + 1};
    HalfInt T1 = HalfInt::whole(t + 1);
    switch (w) {
        case TauWindow::LtT: return tau < T;
        case TauWindow::EqT: return tau == T;
        case TauWindow::BetweenTAndHalf: return T < tau && tau < Th;
        case TauWindow::EqTHalf: return tau == Th;
        case TauWindow::BetweenHalfAndT1: return Th < tau && tau < T1;
        case TauWindow::EqT1: return tau == T1;
        case TauWindow::GtT1: return tau > T1;
    }
    return false;
}

const char* window_name(TauWindow w) {
    switch (w) {
        case TauWindow::LtT: return "tau<t";
        case TauWindow::EqT: return "tau=t";
        case TauWindow::BetweenTAndHalf: return "t<tau<t+1/2";
        case TauWindow::EqTHalf: return "tau=t+1/2";
        case TauWindow::BetweenHalfAndT1: return "t+1/2<tau<t+1";
        case TauWindow::EqT1: return "tau=t+1";
        case TauWindow::GtT1: return "tau>t+1";
    }
    return "?";
}

int Instance::min_precision(long p, long r) {
    long t = 0, n = 0;
    if (!exceptional_shape(p, r, 3, &t, &n)) return 20;
    return static_cast<int>(2 * (t + 5));
}

Instance Instance::make(long p, long r, const ExtScalar& ap, int K) {
    if (p < 5) throw precondition_error("instance: p >= 5 required");
    Instance inst;
    inst.p = p;
    inst.r = r;
    inst.K = K;
    inst.ap = ap;
    if (!exceptional_shape(p, r, 3, &inst.t, &inst.n))
        throw precondition_error("instance: r = 3 + n(p-1)p^t with n > 0 required");
    if (ap.is_zero() || ap.vpi() != 3)
        throw precondition_error("instance: slope 3/2 requires v(a_p) = 3/2");
    if (K < 2 * (inst.t + 5))
        throw precondition_error("instance: precision K >= 2(t+5) required");

    ExtScalar p3 = ExtScalar::one(p, K).mul_p_pow(3);
    ExtScalar denom = ap.mul_p_pow(1);
    mpz_class m_c = mpz_class(r - 2) * binom_exact(r - 1, 2);
    inst.c = (ap * ap - ExtScalar::from_mpz(p, m_c, K) * p3).div(denom);
    inst.ctilde = (ap * ap - ExtScalar::from_mpz(p, binom_exact(r, 3), K) * p3).div(denom);

    auto tv = inst.c.valuation();
    auto tvt = inst.ctilde.valuation();
    if (!tv || !tvt)
        throw precision_error("instance: tau undecidable, the defining constant vanishes "
                              "within precision");
    inst.tau = *tv;
    inst.tautilde = *tvt;

    // consistency between tau and tau~: below t + 1/2 they coincide, and
    // they cross that bound together
    HalfInt th = HalfInt{2 * inst.t + 1};
    bool ok = true;
    if (inst.tautilde < th) ok = ok && inst.tau == inst.tautilde;
    if (inst.tautilde >= th) ok = ok && inst.tau >= th;
    if (inst.tau < th) ok = ok && inst.tau == inst.tautilde;
    if (inst.tau >= th) ok = ok && inst.tautilde >= th;
    if (!ok)
        throw std::runtime_error("instance: tau / tau~ relation violated (engine bug)");
    return inst;
}

std::optional<Instance> scan_instance(long p, long r, int K, TauWindow w) {
    long t = 0, n = 0;
    if (!exceptional_shape(p, r, 3, &t, &n)) return std::nullopt;
    // tau = 1/2 + v(u^2 - M) for a_p = pi^3 u, with M = (r-2) C(r-1,2);
    // scan unit digit patterns u = u0 + u1 pi + ... + u5 pi^5.
    int scanK = std::max(K, 16);
    ExtScalar M = ExtScalar::from_mpz(p, mpz_class(r - 2) * binom_exact(r - 1, 2), scanK);
    std::vector<int> dig(6, 0);
    for (long u0 = 1; u0 < p; ++u0) {
        dig[0] = static_cast<int>(u0);
        for (long u1 = 0; u1 < p; ++u1) {
            dig[1] = static_cast<int>(u1);
            for (long u2 = 0; u2 < p; ++u2) {
                dig[2] = static_cast<int>(u2);
                for (long u3 = 0; u3 < p; ++u3) {
                    dig[3] = static_cast<int>(u3);
                    for (long u4 = 0; u4 < p; ++u4) {
                        dig[4] = static_cast<int>(u4);
                        ExtScalar u = ExtScalar::zero(p);
                        for (int i = 0; i < 5; ++i)
                            if (dig[i])
                                u += ExtScalar::from_long(p, dig[i], scanK).mul_pi_pow(i);
                        ExtScalar probe = u * u - M;
                        if (probe.is_zero()) continue;  // too close to the branch locus
                        HalfInt tau{probe.vpi() + 1};
                        if (!in_window(tau, t, w)) continue;
                        Instance inst = Instance::make(p, r, u.mul_pi_pow(3), K);
                        if (in_window(inst.tau, t, w)) return inst;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace zigzag
