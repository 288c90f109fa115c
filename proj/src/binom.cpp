#include "zigzag/binom.hpp"

#include <sstream>

namespace zigzag {

namespace {

mpz_class ppow(long p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

long vp(long p, const mpz_class& x) {
    if (x == 0) throw precondition_error("vp of 0");
    mpz_class t;
    return static_cast<long>(
        mpz_remove(t.get_mpz_t(), x.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

// v_p(LHS - RHS) - e, i.e. how much slack the congruence LHS = RHS mod p^e
// has; nullopt margin means the two sides agree exactly.
CheckResult congruence_check(const std::string& id, const mpz_class& lhs, const mpz_class& rhs,
                             long p, long e) {
    CheckResult c;
    c.id = id;
    mpz_class diff = lhs - rhs;
    if (diff == 0) {
        c.pass = true;
        return c;
    }
    long v = vp(p, diff);
    c.pass = v >= e;
    c.margin = HalfInt::whole(v - e);
    if (!c.pass) {
        std::ostringstream os;
        os << "difference has v_p = " << v << " < " << e;
        c.witness = os.str();
    }
    return c;
}

// num/den mod p^e with den invertible mod p.
mpz_class rational_mod(const mpz_class& num, const mpz_class& den, long p, long e) {
    if (e <= 0) return 0;
    mpz_class mod = ppow(p, e);
    mpz_class inv;
    if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()))
        throw precondition_error("rational_mod: denominator not prime to p");
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), mpz_class(num * inv).get_mpz_t(), mod.get_mpz_t());
    return r;
}

}  // namespace

mpz_class binom_exact(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

long val_binom(long p, long n, long k) {
    if (k < 0 || k > n) throw precondition_error("val_binom: k out of range");
    mpz_class b = binom_exact(n, k);
    return vp(p, b);
}

long kummer_carries(long p, long n, long k) {
    if (k < 0 || k > n) throw precondition_error("kummer_carries: k out of range");
    long a = k, b = n - k, carries = 0, carry = 0;
    while (a > 0 || b > 0 || carry > 0) {
        long s = a % p + b % p + carry;
        carry = s >= p ? 1 : 0;
        carries += carry;
        a /= p;
        b /= p;
        if (a == 0 && b == 0 && carry == 0) break;
    }
    return carries;
}

mpz_class residue_class_sum(const SumSpec& spec, bool* empty) {
    long lo = 0, hi = spec.r;
    switch (spec.range) {
        case SumRange::Open: lo = 1; hi = spec.r - 1; break;
        case SumRange::OneToRm2: lo = 2; hi = spec.r - 2; break;
        case SumRange::TwoToRm1: lo = 3; hi = spec.r - 1; break;
        case SumRange::TwoLeRm1: lo = 2; hi = spec.r - 2; break;
        case SumRange::TwoOpen: lo = 3; hi = spec.r - 1; break;
        case SumRange::All: lo = 0; hi = spec.r; break;
    }
    mpz_class acc = 0;
    bool any = false;
    long m = spec.p - 1;
    long cls = ((spec.cls % m) + m) % m;
    for (long j = lo; j <= hi; ++j) {
        if (((j % m) + m) % m != cls) continue;
        any = true;
        acc += binom_exact(j, spec.weight) * binom_exact(spec.r, j);
    }
    if (empty) *empty = !any;
    return acc;
}

bool exceptional_shape(long p, long r, long b, long* t_out, long* n_out) {
    if (r <= b) return false;
    if ((r - b) % (p - 1) != 0) return false;
    mpz_class d(r - b);
    long t = vp(p, d);
    mpz_class n = d / ((p - 1) * ppow(p, t));
    if (t_out) *t_out = t;
    if (n_out) *n_out = static_cast<long>(n.get_si());
    return true;
}

VerificationReport check_congruence_lemma(long p, long r, CongruenceLemma which) {
    long b = which == CongruenceLemma::L1 ? 3 : which == CongruenceLemma::L2 ? 2 : 1;
    long bump = which == CongruenceLemma::L1 ? 4 : which == CongruenceLemma::L2 ? 3 : 2;
    long imin = bump;
    VerificationReport rep;
    rep.title = "congruence-lemma-" + std::to_string(b);
    rep.param("p=" + std::to_string(p));
    rep.param("r=" + std::to_string(r));
    if (r <= b || (r - b) % (p - 1) != 0)
        throw precondition_error("congruence lemma needs r = " + std::to_string(b) +
                                 " mod (p-1), r > " + std::to_string(b));
    long t = vp(p, mpz_class(r - b));
    long threshold = t + bump;
    long worst = -1;
    bool ok = true;
    std::string witness;
    for (long i = imin; i <= r; ++i) {
        long v = i + val_binom(p, r, i);
        long margin = v - threshold;
        if (worst < 0 || margin < worst) worst = margin;
        if (margin < 0 && ok) {
            ok = false;
            witness = "i=" + std::to_string(i);
        }
    }
    CheckResult c;
    c.id = "p^i*C(r,i) = 0 mod p^(t+" + std::to_string(bump) + ")";
    c.pass = ok;
    if (worst >= 0) c.margin = HalfInt::whole(worst);
    c.witness = witness;
    rep.checks.push_back(c);
    return rep;
}

int sum_prop_parts(SumProp prop) {
    switch (prop) {
        case SumProp::P4: return 5;
        case SumProp::P5: return 3;
        case SumProp::P6: return 5;
        case SumProp::P7: return 4;
        case SumProp::P8: return 5;
    }
    return 0;
}

VerificationReport check_sum_proposition(long p, long r, SumProp prop, int part) {
    VerificationReport rep;
    rep.param("p=" + std::to_string(p));
    rep.param("r=" + std::to_string(r));
    rep.param("part=" + std::to_string(part));
    if (part < 1 || part > sum_prop_parts(prop))
        throw precondition_error("sum proposition: part index out of range");

    long t = 0, n = 0;
    auto need_shape = [&](long b) {
        if (!exceptional_shape(p, r, b, &t, &n))
            throw precondition_error("proposition needs r = " + std::to_string(b) +
                                     " + n(p-1)p^t with n > 0");
    };
    auto S = [&](long cls, long weight, SumRange range) {
        SumSpec spec{p, r, cls, weight, range};
        return residue_class_sum(spec);
    };

    switch (prop) {
        case SumProp::P4: {
            need_shape(3);
            rep.title = "sum-prop-class3-open";
            if (part == 1) {
                mpz_class B1 = binom_exact(2 * p + 1, p - 1);
                mpz_class B2 = binom_exact(2 * p + 1, p + 2);
                rep.add("C(2p+1,p-1) = C(2p+1,p+2)", B1 == B2);
                // RHS over the common denominator 6(1-p)^2
                mpz_class q(3 - r);
                mpz_class num = q * (1 - p) * (6 * p * p + 5 * p - 3 * B1) +
                                q * q * (-3 * p * p - 3 * p + 3 * B1);
                mpz_class den = 6 * (1 - p) * (1 - p);
                mpz_class rhs = rational_mod(num, den, p, t + 3);
                rep.checks.push_back(
                    congruence_check("S0 closed form mod p^(t+3)", S(3, 0, SumRange::Open), rhs,
                                     p, t + 3));
            } else if (part == 2) {
                mpz_class rhs = rational_mod(mpz_class(p) * r * (3 - r), 2, p, t + 2);
                rep.checks.push_back(congruence_check("S1 = pr(3-r)/2 mod p^(t+2)",
                                                      S(3, 1, SumRange::Open), rhs, p, t + 2));
            } else if (part == 3) {
                rep.checks.push_back(congruence_check("S2 = 0 mod p^(t+1)",
                                                      S(3, 2, SumRange::Open), 0, p, t + 1));
            } else if (part == 4) {
                mpz_class rhs = rational_mod(binom_exact(r, 3), 1 - p, p, t);
                rep.checks.push_back(congruence_check("S3 = C(r,3)/(1-p) mod p^t",
                                                      S(3, 3, SumRange::Open), rhs, p, t));
            } else {
                bool ok = true;
                long worst = -1;
                std::string wit;
                for (long i = 4; i <= r; ++i) {
                    mpz_class lhs = ppow(p, i) * S(3, i, SumRange::Open);
                    CheckResult c = congruence_check("", lhs, 0, p, t + 4);
                    if (c.margin && (worst < 0 || c.margin->num() < worst))
                        worst = c.margin->num();
                    if (!c.pass && ok) {
                        ok = false;
                        wit = "i=" + std::to_string(i);
                    }
                }
                CheckResult c;
                c.id = "p^i*Si = 0 mod p^(t+4), i >= 4";
                c.pass = ok;
                if (worst >= 0) c.margin = HalfInt::whole(worst);
                c.witness = wit;
                rep.checks.push_back(c);
            }
            break;
        }
        case SumProp::P5: {
            // here the r argument plays the role of s = 1 + n(p-1)p^t
            need_shape(1);
            rep.title = "sum-prop-class1-all";
            long s = r;
            if (part == 1) {
                mpz_class rhs = 1 + n * ppow(p, t + 1);
                rep.checks.push_back(congruence_check("sum C(s,j) mod p^(t+2)",
                                                      S(1, 0, SumRange::All), rhs, p, t + 2));
            } else if (part == 2) {
                mpz_class num = mpz_class(s) * (p - 2) -
                                mpz_class(s) * n * ppow(p, t + 1) * (p - 1);
                mpz_class rhs = rational_mod(num, p - 1, p, t + 2);
                rep.checks.push_back(congruence_check("sum j*C(s,j) mod p^(t+2)",
                                                      S(1, 1, SumRange::All), rhs, p, t + 2));
            } else {
                bool ok = true;
                long worst = -1;
                std::string wit;
                for (long i = 2; i <= s; ++i) {
                    mpz_class lhs = ppow(p, i) * S(1, i, SumRange::All);
                    CheckResult c = congruence_check("", lhs, 0, p, t + 2);
                    if (c.margin && (worst < 0 || c.margin->num() < worst))
                        worst = c.margin->num();
                    if (!c.pass && ok) {
                        ok = false;
                        wit = "i=" + std::to_string(i);
                    }
                }
                CheckResult c;
                c.id = "p^i*sum = 0 mod p^(t+2), i >= 2";
                c.pass = ok;
                if (worst >= 0) c.margin = HalfInt::whole(worst);
                c.witness = wit;
                rep.checks.push_back(c);
            }
            break;
        }
        case SumProp::P6: {
            need_shape(3);
            rep.title = "sum-prop-class1-inner";
            if (part == 1) {
                rep.checks.push_back(congruence_check("S0 = 3-r mod p^(t+1)",
                                                      S(1, 0, SumRange::OneToRm2),
                                                      mpz_class(3 - r), p, t + 1));
            } else if (part == 2) {
                rep.checks.push_back(congruence_check("S1 = 0 mod p^(t+1)",
                                                      S(1, 1, SumRange::OneToRm2), 0, p, t + 1));
            } else if (part == 3) {
                rep.checks.push_back(congruence_check("S2 = 0 mod p^t",
                                                      S(1, 2, SumRange::OneToRm2), 0, p, t));
            } else if (part == 4) {
                mpz_class rhs = rational_mod(binom_exact(r, 3), 1 - p, p, t);
                rep.checks.push_back(congruence_check("S3 = C(r,3)/(1-p) mod p^t",
                                                      S(1, 3, SumRange::OneToRm2), rhs, p, t));
            } else {
                bool ok = true;
                long worst = -1;
                std::string wit;
                for (long i = 4; i <= r; ++i) {
                    mpz_class lhs = ppow(p, i) * S(1, i, SumRange::OneToRm2);
                    CheckResult c = congruence_check("", lhs, 0, p, t + 4);
                    if (c.margin && (worst < 0 || c.margin->num() < worst))
                        worst = c.margin->num();
                    if (!c.pass && ok) {
                        ok = false;
                        wit = "i=" + std::to_string(i);
                    }
                }
                CheckResult c;
                c.id = "p^i*Si = 0 mod p^(t+4), i >= 4";
                c.pass = ok;
                if (worst >= 0) c.margin = HalfInt::whole(worst);
                c.witness = wit;
                rep.checks.push_back(c);
            }
            break;
        }
        case SumProp::P7: {
            need_shape(2);
            rep.title = "sum-prop-class2-open";
            if (part == 1) {
                mpz_class q(2 - r), P(p);
                mpz_class num = P * q + 3 * P * P * q - P * P * q * q;
                mpz_class rhs = rational_mod(num, 2, p, t + 3);
                rep.checks.push_back(congruence_check("S0 closed form mod p^(t+3)",
                                                      S(2, 0, SumRange::Open), rhs, p, t + 3));
            } else if (part == 2) {
                mpz_class rhs = rational_mod(mpz_class(p) * r * (2 - r), 1 - p, p, t + 2);
                rep.checks.push_back(congruence_check("S1 = pr(2-r)/(1-p) mod p^(t+2)",
                                                      S(2, 1, SumRange::Open), rhs, p, t + 2));
            } else if (part == 3) {
                mpz_class rhs = rational_mod(binom_exact(r, 2), 1 - p, p, t + 1);
                rep.checks.push_back(congruence_check("S2 = C(r,2)/(1-p) mod p^(t+1)",
                                                      S(2, 2, SumRange::Open), rhs, p, t + 1));
            } else {
                bool ok = true;
                long worst = -1;
                std::string wit;
                for (long i = 3; i <= r; ++i) {
                    mpz_class lhs = ppow(p, i) * S(2, i, SumRange::Open);
                    CheckResult c = congruence_check("", lhs, 0, p, t + 3);
                    if (c.margin && (worst < 0 || c.margin->num() < worst))
                        worst = c.margin->num();
                    if (!c.pass && ok) {
                        ok = false;
                        wit = "i=" + std::to_string(i);
                    }
                }
                CheckResult c;
                c.id = "p^i*Si = 0 mod p^(t+3), i >= 3";
                c.pass = ok;
                if (worst >= 0) c.margin = HalfInt::whole(worst);
                c.witness = wit;
                rep.checks.push_back(c);
            }
            break;
        }
        case SumProp::P8: {
            need_shape(3);
            rep.title = "sum-prop-class2-upper";
            if (part == 1) {
                mpz_class num = 2 * (3 - binom_exact(r, 2)) + 5 * n * ppow(p, t + 1);
                mpz_class rhs = rational_mod(num, 2, p, t + 2);
                rep.checks.push_back(congruence_check("S0 = 3-C(r,2)+5np^(t+1)/2 mod p^(t+2)",
                                                      S(2, 0, SumRange::TwoToRm1), rhs, p,
                                                      t + 2));
            } else if (part == 2) {
                rep.checks.push_back(congruence_check("S1 = r(3-r) mod p^(t+1)",
                                                      S(2, 1, SumRange::TwoToRm1),
                                                      mpz_class(r) * (3 - r), p, t + 1));
            } else if (part == 3) {
                rep.checks.push_back(congruence_check("S2 = 0 mod p^(t+1)",
                                                      S(2, 2, SumRange::TwoToRm1), 0, p, t + 1));
            } else if (part == 4) {
                mpz_class rhs = rational_mod(binom_exact(r, 3), p - 1, p, t + 1);
                rep.checks.push_back(congruence_check("S3 = C(r,3)/(p-1) mod p^(t+1)",
                                                      S(2, 3, SumRange::TwoToRm1), rhs, p,
                                                      t + 1));
            } else {
                bool ok = true;
                long worst = -1;
                std::string wit;
                for (long i = 4; i <= r; ++i) {
                    mpz_class lhs = ppow(p, i) * S(2, i, SumRange::TwoToRm1);
                    CheckResult c = congruence_check("", lhs, 0, p, t + 4);
                    if (c.margin && (worst < 0 || c.margin->num() < worst))
                        worst = c.margin->num();
                    if (!c.pass && ok) {
                        ok = false;
                        wit = "i=" + std::to_string(i);
                    }
                }
                CheckResult c;
                c.id = "p^i*Si = 0 mod p^(t+4), i >= 4";
                c.pass = ok;
                if (worst >= 0) c.margin = HalfInt::whole(worst);
                c.witness = wit;
                rep.checks.push_back(c);
            }
            break;
        }
    }
    return rep;
}

BetaFamily beta_coefficients(long p, long r, VerificationReport& report) {
    long t = 0, n = 0;
    if (!exceptional_shape(p, r, 3, &t, &n))
        throw precondition_error("beta family needs r = 3 + n(p-1)p^t, n > 0");
    if (2 * p >= r - 1)
        throw precondition_error("beta family: unsupported instance, 2p >= r-1");
    report.title = "beta-family";
    report.param("p=" + std::to_string(p));
    report.param("r=" + std::to_string(r));

    BetaFamily fam;
    fam.p = p;
    fam.r = r;
    fam.t = t;
    mpz_class mod1 = ppow(p, t + 1);
    if (!mpz_invert(fam.bprime.get_mpz_t(), mpz_class(2).get_mpz_t(), mod1.get_mpz_t()))
        throw precondition_error("beta family: p = 2");

    for (long j = 2; j < r - 1; ++j)
        if ((j - 2) % (p - 1) == 0) fam.indices.push_back(j);
    fam.values.resize(fam.indices.size());

    mpz_class beta2 = 0, sum_open = 0;
    for (long j : fam.indices) {
        if (j == 2) continue;
        beta2 -= fam.bprime * j * binom_exact(r, j);
        if (j != 2 * p) sum_open += binom_exact(r, j);
    }
    mpz_class beta2p = -sum_open - beta2;
    for (size_t k = 0; k < fam.indices.size(); ++k) {
        long j = fam.indices[k];
        if (j == 2)
            fam.values[k] = beta2;
        else if (j == 2 * p)
            fam.values[k] = beta2p;
        else
            fam.values[k] = binom_exact(r, j);
    }

    // (1) beta_j = C(r,j) mod p^t
    {
        bool ok = true;
        long worst = -1;
        std::string wit;
        for (size_t k = 0; k < fam.indices.size(); ++k) {
            CheckResult c = congruence_check("", fam.values[k],
                                             binom_exact(r, fam.indices[k]), p, t);
            if (c.margin && (worst < 0 || c.margin->num() < worst)) worst = c.margin->num();
            if (!c.pass && ok) {
                ok = false;
                wit = "j=" + std::to_string(fam.indices[k]);
            }
        }
        CheckResult c;
        c.id = "beta_j = C(r,j) mod p^t";
        c.pass = ok;
        if (worst >= 0) c.margin = HalfInt::whole(worst);
        c.witness = wit;
        report.checks.push_back(c);
    }
    // (2) weighted sums vanish: i = 0 exactly, i = 1, 2 mod p^(t+2-i)
    auto wsum = [&](long i) {
        mpz_class acc = 0;
        for (size_t k = 0; k < fam.indices.size(); ++k)
            acc += binom_exact(fam.indices[k], i) * fam.values[k];
        return acc;
    };
    report.add("sum beta_j = 0 exactly", wsum(0) == 0);
    report.checks.push_back(congruence_check("sum j*beta_j = 0 mod p^(t+1)", wsum(1), 0, p, t + 1));
    report.checks.push_back(
        congruence_check("sum C(j,2)*beta_j = 0 mod p^t", wsum(2), 0, p, t));
    // (3)
    {
        mpz_class lhs = ppow(p, 3) * wsum(3);
        mpz_class rhs_num = ppow(p, 3) * binom_exact(r, 3);
        // compare lhs with rhs_num/(p-1) mod p^(t+3)
        mpz_class rhs = rational_mod(rhs_num, p - 1, p, t + 3);
        report.checks.push_back(
            congruence_check("p^3 sum C(j,3)beta_j = p^3 C(r,3)/(p-1) mod p^(t+3)", lhs, rhs, p,
                             t + 3));
    }
    // (4) i >= 4
    {
        bool ok = true;
        long worst = -1;
        std::string wit;
        for (long i = 4; i <= r; ++i) {
            CheckResult c = congruence_check("", ppow(p, i) * wsum(i), 0, p, t + 3);
            if (c.margin && (worst < 0 || c.margin->num() < worst)) worst = c.margin->num();
            if (!c.pass && ok) {
                ok = false;
                wit = "i=" + std::to_string(i);
            }
        }
        CheckResult c;
        c.id = "p^i sum C(j,i)beta_j = 0 mod p^(t+3), i >= 4";
        c.pass = ok;
        if (worst >= 0) c.margin = HalfInt::whole(worst);
        c.witness = wit;
        report.checks.push_back(c);
    }
    return fam;
}

}  // namespace zigzag
