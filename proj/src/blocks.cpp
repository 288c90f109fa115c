#include "zigzag/blocks.hpp"

#include <sstream>

namespace zigzag {

const char* block_name(BlockId id) {
    switch (id) {
        case BlockId::Chi: return "chi";
        case BlockId::ChiPrime: return "chi-prime";
        case BlockId::Phi: return "phi";
        case BlockId::Xi: return "xi";
        case BlockId::XiPrime: return "xi-prime";
        case BlockId::XiDblPrime: return "xi-dblprime";
        case BlockId::Psi: return "psi";
        case BlockId::PsiPrime: return "psi-prime";
    }
    return "?";
}

bool block_takes_param(BlockId id) {
    return id == BlockId::ChiPrime || id == BlockId::Psi || id == BlockId::PsiPrime;
}

namespace {

TreeVertex g0_zero(long n) { return TreeVertex::g0(std::vector<int>(n, 0)); }

TreeVertex g0_mu(long n, long mu) {
    std::vector<int> w(n, 0);
    w[0] = static_cast<int>(mu);
    return TreeVertex::g0(std::move(w));
}

// Y^r - X^(r-3) Y^3
EPoly chi_value(const Instance& I) {
    EPoly v = EPoly::zero(I.p, I.r, I.K);
    v.c[I.r] = ExtScalar::one(I.p, I.K);
    v.c[3] = -ExtScalar::one(I.p, I.K);
    return v;
}

// X^(r-2)Y^2 + (r-3) X^p Y^(r-p) - (r-2) X Y^(r-1)
EPoly xi_value(const Instance& I) {
    EPoly v = EPoly::zero(I.p, I.r, I.K);
    v.c[2] = ExtScalar::one(I.p, I.K);
    v.c[I.r - I.p] = ExtScalar::from_long(I.p, I.r - 3, I.K);
    v.c[I.r - 1] = ExtScalar::from_long(I.p, -(I.r - 2), I.K);
    return v;
}

// X^(r-2)Y^2 - X Y^(r-1)
EPoly phi_value(const Instance& I) {
    EPoly v = EPoly::zero(I.p, I.r, I.K);
    v.c[2] = ExtScalar::one(I.p, I.K);
    v.c[I.r - 1] = -ExtScalar::one(I.p, I.K);
    return v;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw precondition_error(msg);
}

HalfInt th(const Instance& I) { return HalfInt{2 * I.t + 1}; }  // t + 1/2

}  // namespace

TreeFunction build_block(BlockId id, long param, const Instance& I) {
    long p = I.p;
    int K = I.K;
    TreeFunction f(p, I.r, K);
    ExtScalar one = ExtScalar::one(p, K);
    switch (id) {
        case BlockId::Chi: {
            EPoly v = chi_value(I);
            ExtScalar coeff = one;
            for (long n = 0; n <= I.t; ++n) {
                f.add_term(g0_zero(n), v.scaled(coeff));
                coeff *= I.ap;
            }
            break;
        }
        case BlockId::ChiPrime: {
            require(param % p != 0, "chi-prime needs a nonzero residue parameter");
            require(I.tau <= HalfInt::whole(I.t), "chi-prime needs tau <= t");
            EPoly v = chi_value(I).scaled(eteich(p, K, param).inv());
            ExtScalar coeff = one;
            for (long n = 0; n <= I.t; ++n) {
                f.add_term(g0_zero(n), v.scaled(coeff));
                coeff *= I.ap;
            }
            break;
        }
        case BlockId::Phi: {
            require(I.tau <= HalfInt::whole(I.t), "phi needs tau <= t");
            EPoly v = phi_value(I);
            ExtScalar q = one.mul_p_pow(2).div(I.ap);
            ExtScalar coeff = one;
            for (long n = 0; n <= 2 * I.t + 1; ++n) {
                f.add_term(g0_zero(n), v.scaled(coeff));
                coeff *= q;
            }
            break;
        }
        case BlockId::Xi: {
            require(I.tau > th(I), "xi needs tau > t + 1/2");
            EPoly v = xi_value(I);
            ExtScalar pref = -ExtScalar::from_long(p, 3 - I.r, K).mul_p_pow(2).inv();
            ExtScalar q = I.ap.mul_p_pow(-1);
            ExtScalar coeff = pref * q;
            for (long n = 0; n <= 2 * I.t + 1; ++n) {
                f.add_term(g0_zero(n), v.scaled(coeff));
                coeff *= q;
            }
            break;
        }
        case BlockId::XiPrime:
        case BlockId::XiDblPrime: {
            if (id == BlockId::XiPrime)
                require(I.tau > th(I), "xi-prime needs tau > t + 1/2");
            else
                require(I.tau < HalfInt::whole(I.t + 1), "xi-dblprime needs tau < t + 1");
            EPoly v = xi_value(I);
            ExtScalar pref = id == BlockId::XiPrime ? one.mul_p_pow(-2)
                                                    : (I.c.mul_p_pow(1)).inv();
            ExtScalar q = I.ap.mul_p_pow(-1);
            ExtScalar coeff = pref * q;
            for (long n = 1; n <= 2 * I.t + 2; ++n) {
                f.add_term(g0_zero(n), v.scaled(coeff));
                coeff *= q;
            }
            break;
        }
        case BlockId::Psi:
        case BlockId::PsiPrime: {
            require(param % p != 0, "psi needs a nonzero residue parameter");
            if (id == BlockId::Psi)
                require(I.tau >= HalfInt::whole(I.t + 1), "psi needs tau >= t + 1");
            else
                require(I.tau < HalfInt::whole(I.t + 1), "psi-prime needs tau < t + 1");
            EPoly v = chi_value(I).scaled(eteich(p, K, param).inv());
            ExtScalar pref = id == BlockId::Psi ? one.mul_p_pow(-2)
                                                : (I.c.mul_p_pow(1)).inv();
            ExtScalar coeff = pref * I.ap;
            for (long n = 1; n <= I.t + 1; ++n) {
                f.add_term(g0_mu(n, param), v.scaled(coeff));
                coeff *= I.ap;
            }
            break;
        }
    }
    return f;
}

TelescopeClaim telescope_claim(BlockId id, long param, const Instance& I) {
    long p = I.p, r = I.r;
    int K = I.K;
    ExtScalar one = ExtScalar::one(p, K);
    TelescopeClaim claim;
    claim.principal = TreeFunction(p, r, K);
    auto mono = [&](long j, const ExtScalar& s) { return EPoly::monomial(p, r, K, j, s); };
    switch (id) {
        case BlockId::Chi:
        case BlockId::ChiPrime: {
            ExtScalar w = id == BlockId::Chi ? one : eteich(p, K, param).inv();
            claim.principal.add_term(TreeVertex::alpha(), mono(r, w));
            claim.principal.add_term(TreeVertex::origin(), mono(3, I.ap * w));
            claim.allowed_monomials = {0, 1};
            claim.residual_scale = HalfInt::whole(I.t + 1);
            claim.obound = id == BlockId::Chi ? HalfInt::whole(I.t0() + 2)
                                              : I.tau + HalfInt::whole(2);
            break;
        }
        case BlockId::Phi: {
            claim.principal.add_term(TreeVertex::alpha(), mono(r - 1, -one.mul_p_pow(1)));
            claim.principal.add_term(TreeVertex::origin(), mono(2, -I.ap));
            claim.allowed_monomials = {1, r - 1};
            claim.residual_scale = I.tau + HalfInt::whole(1);
            claim.obound = HalfInt::whole(I.t + 2);
            break;
        }
        case BlockId::Xi: {
            ExtScalar d = ExtScalar::from_long(p, 3 - r, K).mul_p_pow(2).inv();
            claim.principal.add_term(TreeVertex::alpha(),
                                     mono(r - 1, I.ap * ExtScalar::from_long(p, r - 2, K) * d));
            EPoly v = EPoly::zero(p, r, K);
            ExtScalar c2 = I.ap * I.ap * d.mul_p_pow(-1);
            v.c[2] = c2;
            v.c[r - p] = c2 * ExtScalar::from_long(p, r - 3, K);
            claim.principal.add_term(TreeVertex::origin(), v);
            claim.obound = HalfInt{1};  // O(sqrt p)
            break;
        }
        case BlockId::XiPrime: {
            claim.principal.add_term(
                TreeVertex::origin(),
                mono(r - 1, I.ap.mul_p_pow(-2) * ExtScalar::from_long(p, 2 - r, K)));
            EPoly v = EPoly::zero(p, r, K);
            ExtScalar c2 = -(I.ap * I.ap).mul_p_pow(-3);
            v.c[2] = c2;
            v.c[r - p] = c2 * ExtScalar::from_long(p, r - 3, K);
            claim.principal.add_term(TreeVertex::g0({0}), v);
            claim.obound = HalfInt{2 * I.t + 1};  // O(p^(t+1/2))
            break;
        }
        case BlockId::XiDblPrime: {
            ExtScalar pc_inv = I.c.mul_p_pow(1).inv();
            claim.principal.add_term(
                TreeVertex::origin(),
                mono(r - 1, I.ap * pc_inv * ExtScalar::from_long(p, 2 - r, K)));
            claim.principal.add_term(TreeVertex::g0({0}),
                                     mono(2, -(I.ap * I.ap * pc_inv).mul_p_pow(-1)));
            HalfInt eps = std::min(HalfInt::whole(I.t + 1) - I.tau, HalfInt{1});
            claim.obound = eps;
            break;
        }
        case BlockId::Psi:
        case BlockId::PsiPrime: {
            ExtScalar w = eteich(p, K, param).inv();
            ExtScalar pref = id == BlockId::Psi ? one.mul_p_pow(-2) : I.c.mul_p_pow(1).inv();
            // [mu]^(-1) ([mu]X + Y)^r at the origin
            EPoly head = mono(r, w).sub_upper(eteich(p, K, param));
            claim.principal.add_term(TreeVertex::origin(), head.scaled(I.ap * pref));
            claim.principal.add_term(
                g0_mu(1, param),
                mono(3, I.ap * I.ap * pref * w));
            claim.obound = id == BlockId::Psi ? HalfInt{2 * I.t + 1} : HalfInt{1};
            break;
        }
    }
    return claim;
}

VerificationReport verify_telescoping(BlockId id, long param, const Instance& I) {
    VerificationReport rep;
    rep.title = std::string("telescoping-") + block_name(id);
    rep.param("p=" + std::to_string(I.p));
    rep.param("r=" + std::to_string(I.r));
    rep.param("ap=" + I.ap.str());
    rep.param("tau=" + I.tau.str());
    rep.param("t=" + std::to_string(I.t));
    if (block_takes_param(id)) rep.param("mu=" + std::to_string(param));

    TreeFunction f = build_block(id, param, I);
    TelescopeClaim claim = telescope_claim(id, param, I);
    TreeFunction image = hecke_apply(f, HeckeOp::T) - f.scaled(I.ap);
    TreeFunction rem = image - claim.principal;

    bool shape_ok = true, tail_ok = true;
    std::optional<HalfInt> shape_margin, tail_margin;
    std::string shape_witness, tail_witness;
    long floor_needed = claim.obound.twice;
    if (claim.residual_scale)
        floor_needed = std::max(floor_needed, claim.residual_scale->twice);
    for (const auto& [vtx, val] : rem.support()) {
        for (long j = 0; j <= I.r; ++j) {
            const ExtScalar& x = val.c[j];
            if (x.is_exact_zero()) continue;
            if (x.is_zero()) {
                if (x.floor_vpi() < floor_needed)
                    throw precision_error("verify_telescoping: floor too low at " + vtx.str());
                continue;
            }
            bool allowed = false;
            for (long a : claim.allowed_monomials) allowed = allowed || a == j;
            HalfInt v = HalfInt::of_vpi(x.vpi());
            HalfInt req = claim.obound;
            if (allowed && claim.residual_scale && *claim.residual_scale < req)
                req = *claim.residual_scale;
            HalfInt margin = v - req;
            auto& ok = allowed ? shape_ok : tail_ok;
            auto& best = allowed ? shape_margin : tail_margin;
            auto& wit = allowed ? shape_witness : tail_witness;
            if (!best || margin < *best) {
                best = margin;
                if (margin.twice < 0) {
                    std::ostringstream os;
                    os << vtx.str() << " j=" << j << " valuation " << v.str();
                    wit = os.str();
                }
            }
            if (margin.twice < 0) ok = false;
        }
    }
    if (claim.residual_scale)
        rep.add("residual has the stated shape and scale", shape_ok, shape_margin,
                shape_witness);
    rep.add("remainder is O(p^(" + claim.obound.str() + "))", tail_ok, tail_margin,
            tail_witness);
    return rep;
}

}  // namespace zigzag
