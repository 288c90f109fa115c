#include "zigzag/tree.hpp"

#include <sstream>

namespace zigzag {

std::string TreeVertex::str() const {
    std::ostringstream os;
    os << "g" << side << "(" << depth << ";";
    for (size_t i = 0; i < word.size(); ++i) {
        if (i) os << ",";
        os << word[i];
    }
    os << ")";
    return os.str();
}

Gl2E Gl2E::identity(long p, int K) {
    return Gl2E(ExtScalar::one(p, K), ExtScalar::zero(p), ExtScalar::zero(p),
                ExtScalar::one(p, K));
}

Gl2E Gl2E::operator*(const Gl2E& o) const {
    return Gl2E(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
}

bool Gl2E::is_identity() const {
    return b.is_zero() && c.is_zero() && !a.is_zero() && !d.is_zero() &&
           (a - d).is_zero() && a.vpi() == 0 && a.digit(0) == 1 &&
           [&] {
               for (int i = 1; i < a.ndigits(); ++i)
                   if (a.digit(i)) return false;
               return true;
           }();
}

ExtScalar teich_word_value(long p, int K, const std::vector<int>& word) {
    ExtScalar acc = ExtScalar::zero(p);
    for (size_t i = 0; i < word.size(); ++i)
        acc += eteich(p, K, word[i]).mul_p_pow(static_cast<long>(i));
    return acc;
}

Gl2E vertex_matrix(long p, int K, const TreeVertex& v) {
    ExtScalar lam = teich_word_value(p, K, v.word);
    ExtScalar one = ExtScalar::one(p, K);
    if (v.side == 0)
        return Gl2E(one.mul_p_pow(v.depth), lam, ExtScalar::zero(p), one);
    return Gl2E(one, ExtScalar::zero(p), lam.mul_p_pow(1), one.mul_p_pow(v.depth + 1));
}

namespace {

constexpr long kBigVpi = LONG_MAX / 8;

// Decidable valuation in pi-units: exact zeros count as infinite; an
// inexact zero is usable only as "at least its floor".
long entry_vpi(const ExtScalar& x) {
    if (x.is_exact_zero()) return kBigVpi;
    if (x.is_zero()) return x.floor_vpi();
    return x.vpi();
}

bool entry_is_unit(const ExtScalar& x) { return !x.is_zero() && x.vpi() == 0; }

// Teichmueller digit word of an integral x mod p^m.
std::vector<int> teich_digits(ExtScalar x, long m, long p, int K) {
    std::vector<int> word;
    for (long i = 0; i < m; ++i) {
        long d = x.residue();  // raises precision_error when unresolved
        word.push_back(static_cast<int>(d));
        if (d != 0) x -= eteich(p, K, d);
        x = x.mul_p_pow(-1);
    }
    return word;
}

}  // namespace

CosetDecomp coset_normalize(const Gl2E& g) {
    long p = g.a.prime() ? g.a.prime() : g.b.prime();
    int K = 0;
    for (const ExtScalar* e : {&g.a, &g.b, &g.c, &g.d})
        if (!e->is_zero()) K = std::max(K, e->ndigits());
    if (K == 0) throw precondition_error("coset_normalize: zero matrix");

    for (const ExtScalar* e : {&g.a, &g.b, &g.c, &g.d})
        if (!e->is_zero() && e->vpi() % 2 != 0)
            throw precondition_error("coset_normalize: entries must lie in Q_p");

    long nu = std::min(std::min(entry_vpi(g.a), entry_vpi(g.b)),
                       std::min(entry_vpi(g.c), entry_vpi(g.d)));
    if (nu >= kBigVpi) throw precondition_error("coset_normalize: zero matrix");
    if (nu % 2 != 0) throw precision_error("coset_normalize: valuation floor is odd");

    Gl2E M(g.a.mul_pi_pow(-nu), g.b.mul_pi_pow(-nu), g.c.mul_pi_pow(-nu),
           g.d.mul_pi_pow(-nu));
    ExtScalar det = M.det();
    if (det.is_zero()) throw precision_error("coset_normalize: determinant vanishes within precision");
    if (det.vpi() % 2 != 0) throw precondition_error("coset_normalize: non-integral class");
    long vd = det.vpi() / 2;

    bool bottom_unit = entry_is_unit(M.c) || entry_is_unit(M.d);
    TreeVertex vtx;
    Gl2E rep_inv;
    if (bottom_unit) {
        long m = vd;
        ExtScalar x = entry_is_unit(M.d) ? M.b.div(M.d) : M.a.div(M.c);
        vtx = TreeVertex::g0(teich_digits(x, m, p, K));
        ExtScalar lam = teich_word_value(p, K, vtx.word);
        ExtScalar one = ExtScalar::one(p, K);
        rep_inv = Gl2E(one.mul_p_pow(-m), (-lam).mul_p_pow(-m), ExtScalar::zero(p), one);
    } else {
        if (!(entry_is_unit(M.a) || entry_is_unit(M.b)))
            throw precision_error("coset_normalize: no unit entry after scaling");
        if (vd < 1) throw precision_error("coset_normalize: inconsistent valuations");
        long m = vd - 1;
        ExtScalar y = entry_is_unit(M.a) ? M.c.div(M.a) : M.d.div(M.b);
        // y = p * lam with lam a Teichmueller word mod p^m
        vtx = TreeVertex::g1(teich_digits(y.mul_p_pow(-1), m, p, K));
        ExtScalar lam = teich_word_value(p, K, vtx.word);
        ExtScalar one = ExtScalar::one(p, K);
        rep_inv = Gl2E(one, ExtScalar::zero(p), (-lam).mul_p_pow(-m),
                       one.mul_p_pow(-(m + 1)));
    }

    Gl2E k = rep_inv * M;
    ExtScalar kdet = k.det();
    if (kdet.is_zero() || kdet.vpi() != 0)
        throw precision_error("coset_normalize: residual factor is not in K");
    for (const ExtScalar* e : {&k.a, &k.b, &k.c, &k.d}) {
        if (e->is_zero()) {
            if (e->floor_vpi() < 0)
                throw precision_error("coset_normalize: residual entry unresolved");
        } else if (e->vpi() < 0) {
            throw precision_error("coset_normalize: residual factor is not integral");
        }
    }
    return CosetDecomp{std::move(vtx), std::move(k), nu / 2};
}

EPoly kz_act(const Gl2E& k, const EPoly& v) {
    if (k.is_identity()) return v;
    if (!k.a.is_zero() && k.a.vpi() == 0) {
        // k = lower(c/a) * diag(a, det/a) * upper(b/a)
        ExtScalar ai = k.a.inv();
        ExtScalar y = k.b.is_zero() ? ExtScalar::zero(v.p) : k.b * ai;
        ExtScalar x = k.c.is_zero() ? ExtScalar::zero(v.p) : k.c * ai;
        ExtScalar w = k.det() * ai;
        EPoly out = v.sub_upper(y);
        out = out.sub_diag(k.a, w);
        out = out.sub_lower(x);
        return out;
    }
    if (!k.c.is_zero() && k.c.vpi() == 0) {
        // swap rows first: k = w * (c d; a b)
        Gl2E h(k.c, k.d, k.a, k.b);
        return kz_act(h, v).sub_swap();
    }
    throw precondition_error("kz_act: matrix has no unit first-column entry");
}

Gamma2 reduce_mod_pi(const Gl2E& k) {
    long p = 0;
    for (const ExtScalar* e : {&k.a, &k.b, &k.c, &k.d})
        if (e->prime()) p = e->prime();
    Gamma2 g;
    g.p = p;
    g.a = static_cast<fp_t>(k.a.residue());
    g.b = static_cast<fp_t>(k.b.residue());
    g.c = static_cast<fp_t>(k.c.residue());
    g.d = static_cast<fp_t>(k.d.residue());
    return g;
}

}  // namespace zigzag
