#include "zigzag/classify.hpp"

#include <algorithm>
#include <sstream>

namespace zigzag {

long slope_b(Slope s) {
    switch (s) {
        case Slope::Half: return 1;
        case Slope::One: return 2;
        case Slope::ThreeHalves: return 3;
    }
    return 0;
}

bool operator==(const Eta& a, const Eta& b) { return a.unram == b.unram && a.omega == b.omega; }

LambdaDesc LambdaDesc::unit(fp_t v) {
    LambdaDesc d;
    d.kind = Kind::InFp;
    d.value = v;
    return d;
}

LambdaDesc LambdaDesc::from_trace(fp_t trace, long p, bool* split_out,
                                  std::array<fp_t, 2>* roots_out) {
    trace %= p;
    // discriminant of X^2 - trace X + 1
    long disc = ((1L * trace * trace - 4) % p + p) % p;
    long sq = -1;
    for (long x = 0; x < p; ++x)
        if (x * x % p == disc) {
            sq = x;
            break;
        }
    if (sq < 0) {
        LambdaDesc d;
        d.kind = Kind::RootPair;
        d.trace = trace;
        if (split_out) *split_out = false;
        return d;
    }
    fp_t inv2 = fp_inv(2, p);
    fp_t r1 = static_cast<fp_t>(1UL * ((trace + sq) % p) * inv2 % p);
    fp_t r2 = static_cast<fp_t>(1UL * (((trace - sq) % p + p) % p) * inv2 % p);
    if (split_out) *split_out = true;
    if (roots_out) *roots_out = {r1, r2};
    // the unordered pair {lam, 1/lam}: normalize to the smaller root
    LambdaDesc d;
    d.kind = Kind::InFp;
    d.value = std::min(r1, r2);
    if (d.value == 0) throw std::runtime_error("from_trace: degenerate root");
    return d;
}

LambdaDesc LambdaDesc::inverse(long p) const {
    LambdaDesc d = *this;
    if (kind == Kind::InFp) d.value = fp_inv(value, p);
    return d;  // Zero stays zero; a root pair is closed under inversion
}

std::string LambdaDesc::str(long p) const {
    switch (kind) {
        case Kind::Zero: return "0";
        case Kind::InFp: return std::to_string(value);
        case Kind::RootPair:
            return "root of X^2 - " + std::to_string(trace) + "X + 1 over F_" +
                   std::to_string(p);
    }
    return "?";
}

bool operator==(const LambdaDesc& a, const LambdaDesc& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == LambdaDesc::Kind::InFp) return a.value == b.value;
    if (a.kind == LambdaDesc::Kind::RootPair) return a.trace == b.trace;
    return true;
}

long GaloisDesc::canonical_ind_exp() const {
    long mod = p * p - 1;
    long e = ((ind_exp + eta.omega * (p + 1)) % mod + mod) % mod;
    return std::min(e, e * p % mod);
}

std::string GaloisDesc::str() const {
    std::ostringstream os;
    if (irreducible) {
        os << "ind(omega2^" << ind_exp << ")";
        if (eta.omega) os << " x omega^" << eta.omega;
        if (eta.unram != 1) os << " x mu_" << eta.unram;
    } else {
        os << "mu_{" << lam.str(p) << "} omega^" << w1 << " (+) mu_{1/lam} omega^" << w2;
        if (eta.omega || eta.unram != 1)
            os << " x (omega^" << eta.omega << ", mu_" << eta.unram << ")";
    }
    return os.str();
}

std::string SmoothDesc::str() const {
    std::ostringstream os;
    os << "pi(" << r << ", " << lam.str(p) << ", omega^" << eta.omega;
    if (eta.unram != 1) os << " mu_" << eta.unram;
    os << ")";
    if (corner) os << "[corner]";
    return os.str();
}

bool same_galois(const GaloisDesc& a, const GaloisDesc& b) {
    if (a.p != b.p || a.irreducible != b.irreducible) return false;
    long p = a.p;
    if (a.irreducible)
        return a.canonical_ind_exp() == b.canonical_ind_exp() && a.eta.unram == b.eta.unram;
    long m = p - 1;
    auto norm = [&](const GaloisDesc& g) {
        long w1 = ((g.w1 + g.eta.omega) % m + m) % m;
        long w2 = ((g.w2 + g.eta.omega) % m + m) % m;
        return std::make_pair(w1, w2);
    };
    auto [aw1, aw2] = norm(a);
    auto [bw1, bw2] = norm(b);
    if (a.eta.unram != b.eta.unram) return false;  // unramified parts folded upstream
    // match directly or with the summands swapped
    if (aw1 == bw1 && aw2 == bw2 && a.lam == b.lam) return true;
    if (aw1 == bw2 && aw2 == bw1 && a.lam == b.lam.inverse(p)) return true;
    // a root pair is invariant under the swap
    if (a.lam.kind == LambdaDesc::Kind::RootPair && aw1 == bw2 && aw2 == bw1 &&
        a.lam == b.lam)
        return true;
    // when the two omega-exponents tie, {lam, 1/lam} is the invariant
    if (aw1 == aw2 && aw1 == bw1 && bw1 == bw2 && a.lam.kind == LambdaDesc::Kind::InFp &&
        b.lam.kind == LambdaDesc::Kind::InFp) {
        fp_t amin = std::min(a.lam.value, fp_inv(a.lam.value, p));
        fp_t bmin = std::min(b.lam.value, fp_inv(b.lam.value, p));
        return amin == bmin;
    }
    return false;
}

InvariantBundle compute_invariants(long p, long r, const ExtScalar& ap) {
    Instance inst = Instance::make(p, r, ap, std::max(ap.is_zero() ? 0 : ap.ndigits(),
                                                      Instance::min_precision(p, r)));
    InvariantBundle b;
    b.p = p;
    b.r = r;
    b.b = 3;
    b.t = inst.t;
    b.n = inst.n;
    b.c = inst.c;
    b.ctilde = inst.ctilde;
    b.tau = inst.tau;
    b.tautilde = inst.tautilde;
    for (TauWindow w : {TauWindow::LtT, TauWindow::EqT, TauWindow::BetweenTAndHalf,
                        TauWindow::EqTHalf, TauWindow::BetweenHalfAndT1, TauWindow::EqT1,
                        TauWindow::GtT1})
        if (in_window(b.tau, b.t, w)) b.window = w;
    return b;
}

GaloisDesc classify(long p, long r, const ExtScalar& ap, Slope slope) {
    long b = slope_b(slope);
    if (p < 5) throw precondition_error("classify: p >= 5 required");
    if (r <= b)
        throw precondition_error("classify: r <= b is externally known (small weight)");
    if ((r - b) % (p - 1) != 0)
        throw precondition_error(
            "classify: non-exceptional weight is out of scope (generic-slope results "
            "are not reimplemented)");
    if (ap.is_zero() || ap.vpi() != b)
        throw precondition_error("classify: v(a_p) must equal the chosen slope");
    int K = ap.ndigits();
    ExtScalar one = ExtScalar::one(p, K);
    mpz_class mid;
    long tt = 0;
    switch (slope) {
        case Slope::Half: mid = r; break;
        case Slope::One: mid = binom_exact(r, 2); break;
        case Slope::ThreeHalves: mid = mpz_class(r - 2) * binom_exact(r - 1, 2); break;
    }
    {
        mpz_class d(r - b);
        mpz_class tmp;
        tt = static_cast<long>(
            mpz_remove(tmp.get_mpz_t(), d.get_mpz_t(), mpz_class(p).get_mpz_t()));
    }
    ExtScalar c = (ap * ap - ExtScalar::from_mpz(p, mid, K).mul_p_pow(b)).div(ap.mul_p_pow(1));
    auto tauv = c.valuation();
    if (!tauv)
        throw precision_error("classify: the branch constant vanishes within precision; "
                              "the boundary comparison is undecidable");
    HalfInt tau = *tauv;
    HalfInt T = HalfInt::whole(tt);

    GaloisDesc out;
    out.p = p;
    auto residue_of = [&](const ExtScalar& x) { return static_cast<fp_t>(x.residue()); };

    switch (slope) {
        case Slope::Half: {
            if (tau < T) {
                out.irreducible = true;
                out.ind_exp = b + 1;
            } else {
                out.irreducible = false;
                ExtScalar tr = ExtScalar::from_long(p, 1 - r, K).inv() * c;
                out.lam = LambdaDesc::from_trace(residue_of(tr), p);
                out.w1 = b;
                out.w2 = 1;
            }
            break;
        }
        case Slope::One: {
            if (tau < T) {
                out.irreducible = true;
                out.ind_exp = b + 1;
            } else if (tau == T) {
                out.irreducible = false;
                ExtScalar lam = ExtScalar::from_long(p, 2, K)
                                    .div(ExtScalar::from_long(p, 2 - r, K)) *
                                c;
                out.lam = LambdaDesc::unit(residue_of(lam));
                out.w1 = b;
                out.w2 = 1;
            } else {
                out.irreducible = true;
                out.ind_exp = b + p;
            }
            break;
        }
        case Slope::ThreeHalves: {
            HalfInt T1 = HalfInt::whole(tt + 1);
            if (tau < T) {
                out.irreducible = true;
                out.ind_exp = b + 1;
            } else if (tau == T) {
                out.irreducible = false;
                ExtScalar lam = ExtScalar::from_long(p, 3, K)
                                    .div(ExtScalar::from_long(p, 3 - r, K)) *
                                c;
                out.lam = LambdaDesc::unit(residue_of(lam));
                out.w1 = b;
                out.w2 = 1;
            } else if (tau < T1) {
                out.irreducible = true;
                out.ind_exp = b + p;
            } else {
                out.irreducible = false;
                mpz_class den = mpz_class(b - 1 - r) * (b - r);
                ExtScalar tr = ExtScalar::from_long(p, b - 1, K)
                                   .div(ExtScalar::from_mpz(p, den, K)) *
                               c.mul_p_pow(-1);
                out.lam = LambdaDesc::from_trace(residue_of(tr), p);
                out.w1 = b - 1;
                out.w2 = 2;
            }
            break;
        }
    }
    return out;
}

std::vector<SmoothDesc> llc_forward(const GaloisDesc& g) {
    long p = g.p;
    long mod2 = p * p - 1;
    if (g.irreducible) {
        long e = ((g.ind_exp + g.eta.omega * (p + 1)) % mod2 + mod2) % mod2;
        if (e % (p + 1) == 0)
            throw precondition_error("llc_forward: exponent divisible by p+1 is reducible");
        long r1 = e % (p + 1);  // r + 1 in [1, p]
        long r = r1 - 1;
        long a = ((e - r1) / (p + 1)) % (p - 1);
        SmoothDesc pi;
        pi.p = p;
        pi.r = r;
        pi.lam = LambdaDesc::zero();
        pi.eta = Eta{g.eta.unram, a};
        return {pi};
    }
    // normalize to (mu_lam omega^(r+1) (+) mu_(1/lam)) x eta'
    long m = p - 1;
    long r1 = ((g.w1 - g.w2) % m + m) % m;  // r+1 mod (p-1), taken in [1, p-1]
    if (r1 == 0) r1 = m;
    long r = r1 - 1;
    Eta eta{g.eta.unram, ((g.eta.omega + g.w2) % m + m) % m};
    LambdaDesc lam = g.lam;
    SmoothDesc pi1{p, r, lam, eta, false};
    long rdual = ((p - 3 - r) % m + m) % m;
    Eta eta2{eta.unram, ((eta.omega + r + 1) % m + m) % m};
    SmoothDesc pi2{p, rdual, lam.inverse(p), eta2, false};
    auto corner = [&](SmoothDesc& s) {
        if (s.lam.kind == LambdaDesc::Kind::InFp && (s.lam.value == 1 || s.lam.value == p - 1) &&
            (s.r == 0 || s.r == p - 1))
            s.corner = true;
    };
    corner(pi1);
    corner(pi2);
    return {pi1, pi2};
}

GaloisDesc llc_inverse(const std::vector<SmoothDesc>& reps) {
    if (reps.empty()) throw precondition_error("llc_inverse: empty input");
    long p = reps[0].p;
    long m = p - 1;
    if (reps.size() == 1) {
        const SmoothDesc& pi = reps[0];
        if (!(pi.lam.kind == LambdaDesc::Kind::Zero))
            throw precondition_error("llc_inverse: a single factor must be supersingular");
        GaloisDesc g;
        g.p = p;
        g.irreducible = true;
        g.ind_exp = pi.r + 1;
        g.eta = pi.eta;
        return g;
    }
    if (reps.size() != 2) throw precondition_error("llc_inverse: expected one or two factors");
    for (int swap = 0; swap < 2; ++swap) {
        const SmoothDesc& a = reps[swap ? 1 : 0];
        const SmoothDesc& bdesc = reps[swap ? 0 : 1];
        if (a.lam.kind == LambdaDesc::Kind::Zero) continue;
        long rdual = ((p - 3 - a.r) % m + m) % m;
        bool lam_ok = bdesc.lam == a.lam.inverse(p);
        bool eta_ok = bdesc.eta.unram == a.eta.unram &&
                      ((a.eta.omega + a.r + 1) % m + m) % m ==
                          ((bdesc.eta.omega % m) + m) % m;
        if (bdesc.r == rdual && lam_ok && eta_ok) {
            GaloisDesc g;
            g.p = p;
            g.irreducible = false;
            g.lam = a.lam;
            g.w1 = (a.r + 1) % m;
            g.w2 = 0;
            g.eta = a.eta;
            return g;
        }
    }
    throw precondition_error("llc_inverse: the pair is not a matched dual pair");
}

NinepartRow ninepart_expectation(TauWindow w) {
    NinepartRow row;
    switch (w) {
        case TauWindow::LtT:
            row.f1 = FactorPres::SupersingularByLLC;
            break;
        case TauWindow::EqT:
            row.f1 = FactorPres::TMinusLam1Inv;
            row.f2 = FactorPres::TMinusLam1;
            break;
        case TauWindow::BetweenTAndHalf:
            row.f2 = FactorPres::SupersingularByLLC;
            row.f3_vanishing_unproven = true;
            break;
        case TauWindow::EqTHalf:
            row.f2 = FactorPres::T;
            row.f3 = FactorPres::T;
            break;
        case TauWindow::BetweenHalfAndT1:
            row.f3 = FactorPres::T;
            break;
        case TauWindow::EqT1:
        case TauWindow::GtT1:
            row.f3 = FactorPres::Quadratic;
            break;
    }
    return row;
}

VerificationReport classifier_consistency(const Instance& I) {
    long p = I.p;
    VerificationReport rep;
    rep.title = "classifier-consistency";
    rep.param("p=" + std::to_string(p));
    rep.param("r=" + std::to_string(I.r));
    rep.param("ap=" + I.ap.str());
    InvariantBundle inv = compute_invariants(p, I.r, I.ap);
    rep.param(std::string("window=") + window_name(inv.window));
    GaloisDesc cls = classify(p, I.r, I.ap, Slope::ThreeHalves);
    rep.param("branch=" + cls.str());

    // assemble the smooth factors predicted by the surviving F_i
    NinepartRow row = ninepart_expectation(inv.window);
    std::vector<SmoothDesc> survivors;
    int K = I.K;
    auto lam1 = [&] {
        ExtScalar v = ExtScalar::from_long(p, 3, K)
                          .div(ExtScalar::from_long(p, 3 - I.r, K)) *
                      I.c;
        return static_cast<fp_t>(v.residue());
    };
    auto push = [&](long m, long twist, LambdaDesc lam) {
        SmoothDesc s;
        s.p = p;
        s.r = m;
        s.lam = lam;
        s.eta = Eta{1, twist};
        survivors.push_back(s);
    };
    auto push_factor = [&](int i, FactorPres pres) {
        long m = i == 1 ? p - 4 : i == 2 ? 1 : p - 2;
        long tw = i == 1 ? 3 : i == 2 ? 1 : 2;
        switch (pres) {
            case FactorPres::Zero: break;
            case FactorPres::SupersingularByLLC:
            case FactorPres::T:
                push(m, tw, LambdaDesc::zero());
                break;
            case FactorPres::TMinusLam1Inv:
                push(m, tw, LambdaDesc::unit(fp_inv(lam1(), p)));
                break;
            case FactorPres::TMinusLam1:
                push(m, tw, LambdaDesc::unit(lam1()));
                break;
            case FactorPres::Quadratic: {
                ExtScalar tr = ExtScalar::from_long(p, 2, K)
                                   .div(ExtScalar::from_mpz(
                                       p, mpz_class(2 - I.r) * (3 - I.r), K)) *
                               I.c.mul_p_pow(-1);
                fp_t d = static_cast<fp_t>(tr.residue());
                LambdaDesc lam = LambdaDesc::from_trace(d, p);
                push(m, tw, lam);
                push(m, tw, lam.inverse(p));
                break;
            }
        }
    };
    push_factor(1, row.f1);
    push_factor(2, row.f2);
    push_factor(3, row.f3);

    GaloisDesc assembled;
    if (survivors.size() == 2 && survivors[0].lam.kind != LambdaDesc::Kind::Zero) {
        assembled = llc_inverse(survivors);
    } else if (survivors.size() == 2) {
        // two supersingular factors must name the same representation
        GaloisDesc g1 = llc_inverse({survivors[0]});
        GaloisDesc g2 = llc_inverse({survivors[1]});
        rep.add("paired supersingular factors agree", same_galois(g1, g2));
        assembled = g1;
    } else if (survivors.size() == 1) {
        assembled = llc_inverse(survivors);
    } else {
        rep.add("assembly", false, std::nullopt, "unexpected survivor count");
        return rep;
    }
    rep.param("assembled=" + assembled.str());
    rep.add("classifier branch matches the surviving factors",
            same_galois(cls, assembled));

    // round trip through the forward map
    GaloisDesc back = llc_inverse(llc_forward(cls));
    rep.add("LLC forward/inverse round trip", same_galois(cls, back));
    return rep;
}

}  // namespace zigzag
