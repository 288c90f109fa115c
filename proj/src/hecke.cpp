#include "zigzag/hecke.hpp"

#include <sstream>

namespace zigzag {

TreeFunction TreeFunction::term(long p, long r, int K, const TreeVertex& v, EPoly value) {
    TreeFunction f(p, r, K);
    f.add_term(v, value);
    return f;
}

int TreeFunction::max_radius() const {
    int m = 0;
    for (const auto& [v, val] : supp_) m = std::max(m, v.radius());
    return m;
}

void TreeFunction::add_term(const TreeVertex& v, const EPoly& value) {
    auto it = supp_.find(v);
    if (it == supp_.end()) {
        if (!value.is_exact_zero()) supp_.emplace(v, value);
        return;
    }
    it->second = it->second + value;
    if (it->second.is_exact_zero()) supp_.erase(it);
}

TreeFunction TreeFunction::operator+(const TreeFunction& o) const {
    TreeFunction out = *this;
    for (const auto& [v, val] : o.supp_) out.add_term(v, val);
    return out;
}

TreeFunction TreeFunction::operator-(const TreeFunction& o) const {
    TreeFunction out = *this;
    for (const auto& [v, val] : o.supp_) out.add_term(v, val.scaled(-ExtScalar::one(p_, K_)));
    return out;
}

TreeFunction TreeFunction::scaled(const ExtScalar& s) const {
    TreeFunction out(p_, r_, K_);
    for (const auto& [v, val] : supp_) out.add_term(v, val.scaled(s));
    return out;
}

TreeFunction TreeFunction::translated(const Gl2E& g) const {
    TreeFunction out(p_, r_, K_);
    for (const auto& [v, val] : supp_) {
        Gl2E M = g * vertex_matrix(p_, K_, v);
        CosetDecomp dec = coset_normalize(M);
        out.add_term(dec.vertex, kz_act(dec.k, val));
    }
    return out;
}

std::string TreeFunction::str() const {
    std::ostringstream os;
    for (const auto& [v, val] : supp_) os << "[" << v.str() << ", " << val.str() << "]\n";
    return os.str();
}

namespace {

// T+ on a single elementary function [vtx, v].
void hecke_plus_term(const TreeVertex& vtx, const EPoly& v, TreeFunction& out) {
    long p = v.p;
    int K = v.K;
    for (long lam = 0; lam < p; ++lam) {
        ExtScalar y = lam ? -eteich(p, K, lam) : ExtScalar::zero(p);
        EPoly w = v.sub_hecke_plus(y);
        if (vtx.side == 0) {
            // g0(m, word) * g0(1, [lam]) = g0(m+1, word + [lam] p^m): canonical
            std::vector<int> word = vtx.word;
            word.push_back(static_cast<int>(lam));
            out.add_term(TreeVertex::g0(std::move(word)), w);
        } else {
            Gl2E M = vertex_matrix(p, K, vtx) *
                     Gl2E(ExtScalar::one(p, K).mul_p_pow(1), eteich(p, K, lam),
                          ExtScalar::zero(p), ExtScalar::one(p, K));
            CosetDecomp dec = coset_normalize(M);
            out.add_term(dec.vertex, kz_act(dec.k, w));
        }
    }
}

// T- on a single elementary function.
void hecke_minus_term(const TreeVertex& vtx, const EPoly& v, TreeFunction& out) {
    long p = v.p;
    int K = v.K;
    EPoly w = v.sub_px();
    if (vtx.side == 0) {
        if (vtx.depth == 0) {
            out.add_term(TreeVertex::alpha(), w);
        } else {
            // g0(m, word) * alpha = p * g0(m-1, word') * (1 [w_last]; 0 1)
            std::vector<int> word(vtx.word.begin(), vtx.word.end() - 1);
            int last = vtx.word.back();
            EPoly val = last ? w.sub_upper(eteich(p, K, last)) : w;
            out.add_term(TreeVertex::g0(std::move(word)), val);
        }
    } else {
        // g1(m, word) * alpha = g1(m+1, word extended by 0): canonical
        std::vector<int> word = vtx.word;
        word.push_back(0);
        out.add_term(TreeVertex::g1(std::move(word)), w);
    }
}

}  // namespace

TreeFunction hecke_apply(const TreeFunction& f, HeckeOp which) {
    TreeFunction out(f.p(), f.r(), f.K());
    for (const auto& [vtx, val] : f.support()) {
        if (which != HeckeOp::Minus) hecke_plus_term(vtx, val, out);
        if (which != HeckeOp::Plus) hecke_minus_term(vtx, val, out);
    }
    return out;
}

ValuationScan scan_valuations(const TreeFunction& f) {
    ValuationScan scan;
    scan.certified_floor_vpi = LONG_MAX / 4;
    for (const auto& [vtx, val] : f.support()) {
        for (long j = 0; j <= f.r(); ++j) {
            const ExtScalar& x = val.c[j];
            if (x.is_exact_zero()) continue;
            if (x.is_zero()) {
                scan.certified_floor_vpi = std::min(scan.certified_floor_vpi, x.floor_vpi());
                continue;
            }
            HalfInt v = HalfInt::of_vpi(x.vpi());
            if (!scan.min_val || v < *scan.min_val) {
                scan.min_val = v;
                scan.where = vtx;
                scan.monomial = j;
            }
        }
    }
    return scan;
}

VerificationReport big_o_compare(const TreeFunction& f, const TreeFunction& g, HalfInt s) {
    VerificationReport rep;
    rep.title = "big-o-compare";
    TreeFunction diff = f - g;
    ValuationScan scan = scan_valuations(diff);
    if (scan.certified_floor_vpi < s.twice)
        throw precision_error("big_o_compare: precision floor pi^" +
                              std::to_string(scan.certified_floor_vpi) +
                              " cannot certify the requested bound");
    CheckResult c;
    c.id = "difference divisible by p^(" + s.str() + ")";
    if (!scan.min_val) {
        c.pass = true;
    } else {
        c.pass = *scan.min_val >= s;
        c.margin = *scan.min_val - s;
        if (!c.pass) {
            std::ostringstream os;
            os << "vertex " << scan.where.str() << " monomial j=" << scan.monomial
               << " has valuation " << scan.min_val->str();
            c.witness = os.str();
        }
    }
    rep.checks.push_back(c);
    return rep;
}

FpTreeFunction FpTreeFunction::term(long p, JHFactor J, const TreeVertex& v, FpPoly value) {
    FpTreeFunction f;
    f.p = p;
    f.factor = J;
    f.add_term(v, value);
    return f;
}

void FpTreeFunction::add_term(const TreeVertex& v, const FpPoly& value) {
    auto it = supp.find(v);
    if (it == supp.end()) {
        if (!value.is_zero()) supp.emplace(v, value);
        return;
    }
    it->second = it->second + value;
    if (it->second.is_zero()) supp.erase(it);
}

FpTreeFunction FpTreeFunction::operator+(const FpTreeFunction& o) const {
    FpTreeFunction out = *this;
    for (const auto& [v, val] : o.supp) out.add_term(v, val);
    return out;
}

FpTreeFunction FpTreeFunction::operator-(const FpTreeFunction& o) const {
    FpTreeFunction out = *this;
    for (const auto& [v, val] : o.supp) out.add_term(v, val.scaled(static_cast<fp_t>(p - 1)));
    return out;
}

FpTreeFunction FpTreeFunction::scaled(fp_t s) const {
    FpTreeFunction out;
    out.p = p;
    out.factor = factor;
    for (const auto& [v, val] : supp) out.add_term(v, val.scaled(s));
    return out;
}

std::string FpTreeFunction::str() const {
    std::ostringstream os;
    for (const auto& [v, val] : supp) {
        os << "[" << v.str() << ",";
        for (long j = 0; j <= val.r; ++j) os << " " << val.c[j];
        os << "]\n";
    }
    return os.str();
}

FpTreeFunction fp_hecke_apply(const FpTreeFunction& f) {
    long p = f.p;
    long m = f.factor.m;
    FpTreeFunction out;
    out.p = p;
    out.factor = f.factor;
    int K0 = 0;
    for (const auto& [v, val] : f.supp) K0 = std::max(K0, 2 * v.radius() + 8);
    for (const auto& [vtx, val] : f.supp) {
        // T+: value v(X, -[lam]X + pY) = (sum_j c_j (-lam)^j) X^m mod p
        for (long lam = 0; lam < p; ++lam) {
            unsigned long acc = 0;
            fp_t neg = lam ? static_cast<fp_t>(p - lam) : 0;
            fp_t pw = 1;
            for (long j = 0; j <= m; ++j) {
                acc += 1UL * val.c[j] * pw % p;
                pw = static_cast<fp_t>(1UL * pw * neg % p);
            }
            FpPoly w = FpPoly::monomial(p, m, 0, static_cast<fp_t>(acc % p));
            if (vtx.side == 0) {
                std::vector<int> word = vtx.word;
                word.push_back(static_cast<int>(lam));
                out.add_term(TreeVertex::g0(std::move(word)), w);
            } else {
                Gl2E M = vertex_matrix(p, K0, vtx) *
                         Gl2E(ExtScalar::one(p, K0).mul_p_pow(1), eteich(p, K0, lam),
                              ExtScalar::zero(p), ExtScalar::one(p, K0));
                CosetDecomp dec = coset_normalize(M);
                Gamma2 kbar = reduce_mod_pi(dec.k);
                FpPoly img = gamma_act(kbar, w).scaled(fp_pow(kbar.det(), f.factor.twist, p));
                out.add_term(dec.vertex, img);
            }
        }
        // T-: value v(pX, Y) = c_m Y^m mod p
        FpPoly w = FpPoly::monomial(p, m, m, val.c[m]);
        if (vtx.side == 0) {
            if (vtx.depth == 0) {
                out.add_term(TreeVertex::alpha(), w);
            } else {
                std::vector<int> word(vtx.word.begin(), vtx.word.end() - 1);
                int last = vtx.word.back();
                FpPoly img = w;
                if (last) {
                    Gamma2 k{p, 1, static_cast<fp_t>(last), 0, 1};
                    img = gamma_act(k, w);  // det = 1, twist immaterial
                }
                out.add_term(TreeVertex::g0(std::move(word)), img);
            }
        } else {
            std::vector<int> word = vtx.word;
            word.push_back(0);
            out.add_term(TreeVertex::g1(std::move(word)), w);
        }
    }
    return out;
}

FpTreeFunction reduce_and_project(const TreeFunction& f, const JHFactor& target,
                                  const QuotientBasis& Q) {
    FpTreeFunction out;
    out.p = f.p();
    out.factor = target;
    for (const auto& [vtx, val] : f.support()) {
        FpPoly bar = [&] {
            try {
                return val.residue();
            } catch (const precondition_error& e) {
                throw precondition_error(std::string(e.what()) + " at vertex " + vtx.str());
            }
        }();
        if (bar.is_zero()) continue;
        auto img = Q.project_class(Q.class_of(bar), target);
        if (!img)
            throw precondition_error("reduce_and_project: class at vertex " + vtx.str() +
                                     " lies outside the factor's subquotient");
        out.add_term(vtx, *img);
    }
    return out;
}

}  // namespace zigzag
