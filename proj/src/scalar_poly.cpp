#include "zigzag/scalar_poly.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace zigzag {

namespace {

struct TeichTable {
    std::vector<ExtScalar> reps;
};

const TeichTable& teich_table(long p, int K) {
    static std::mutex mu;
    static std::map<std::pair<long, int>, std::unique_ptr<TeichTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, K);
    auto& slot = cache[key];
    if (!slot) {
        auto tab = std::make_unique<TeichTable>();
        tab->reps.reserve(p);
        for (long lam = 0; lam < p; ++lam) tab->reps.push_back(ExtScalar::teichmuller(p, lam, K));
        slot = std::move(tab);
    }
    return *slot;
}

struct BinomTable {
    std::vector<std::vector<ExtScalar>> rows;
};

const BinomTable& binom_table(long p, int K, long upto) {
    static std::mutex mu;
    static std::map<std::pair<long, int>, std::unique_ptr<BinomTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, K);
    auto& slot = cache[key];
    if (!slot) slot = std::make_unique<BinomTable>();
    auto& rows = slot->rows;
    if (static_cast<long>(rows.size()) <= upto) {
        mpz_class b;
        for (long n = static_cast<long>(rows.size()); n <= upto; ++n) {
            std::vector<ExtScalar> row;
            row.reserve(n + 1);
            for (long k = 0; k <= n; ++k) {
                mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
                             static_cast<unsigned long>(k));
                row.push_back(ExtScalar::from_mpz(p, b, K));
            }
            rows.push_back(std::move(row));
        }
    }
    return *slot;
}

}  // namespace

const ExtScalar& eteich(long p, int K, long lam) {
    lam %= p;
    if (lam < 0) lam += p;
    return teich_table(p, K).reps[lam];
}

const ExtScalar& ebinom(long p, int K, long n, long k) {
    const auto& tab = binom_table(p, K, n);
    return tab.rows[n][k];
}

EPoly EPoly::zero(long p, long r, int K) {
    EPoly P;
    P.p = p;
    P.r = r;
    P.K = K;
    P.c.assign(r + 1, ExtScalar::zero(p));
    return P;
}

EPoly EPoly::monomial(long p, long r, int K, long j, const ExtScalar& coeff) {
    if (j < 0 || j > r) throw precondition_error("EPoly::monomial: index out of range");
    EPoly P = zero(p, r, K);
    P.c[j] = coeff;
    return P;
}

bool EPoly::is_zero() const {
    for (const auto& x : c)
        if (!x.is_zero()) return false;
    return true;
}

bool EPoly::is_exact_zero() const {
    for (const auto& x : c)
        if (!x.is_exact_zero()) return false;
    return true;
}

EPoly EPoly::operator+(const EPoly& o) const {
    if (p != o.p || r != o.r) throw precondition_error("EPoly: mixed shapes");
    EPoly out = *this;
    for (long j = 0; j <= r; ++j) out.c[j] += o.c[j];
    return out;
}

EPoly EPoly::operator-(const EPoly& o) const {
    if (p != o.p || r != o.r) throw precondition_error("EPoly: mixed shapes");
    EPoly out = *this;
    for (long j = 0; j <= r; ++j) out.c[j] -= o.c[j];
    return out;
}

EPoly EPoly::scaled(const ExtScalar& s) const {
    EPoly out = *this;
    for (long j = 0; j <= r; ++j)
        if (!out.c[j].is_exact_zero()) out.c[j] *= s;
    return out;
}

EPoly EPoly::sub_hecke_plus(const ExtScalar& y) const {
    // P(X, yX + pY): coefficient i picks up p^i sum_j C(j,i) y^(j-i) c_j.
    EPoly out = zero(p, r, K);
    std::vector<ExtScalar> ypow(r + 1, ExtScalar::one(p, K));
    for (long k = 1; k <= r; ++k) ypow[k] = ypow[k - 1] * y;
    for (long j = 0; j <= r; ++j) {
        if (c[j].is_zero()) continue;
        for (long i = 0; i <= j; ++i) {
            ExtScalar term = c[j] * ebinom(p, K, j, i);
            if (j > i) term *= ypow[j - i];
            out.c[i] += term.mul_p_pow(i);
        }
    }
    return out;
}

EPoly EPoly::sub_px() const {
    EPoly out = *this;
    for (long j = 0; j <= r; ++j)
        if (!out.c[j].is_exact_zero()) out.c[j] = out.c[j].mul_p_pow(r - j);
    return out;
}

EPoly EPoly::sub_upper(const ExtScalar& y) const {
    if (y.is_zero()) return *this;
    EPoly out = zero(p, r, K);
    std::vector<ExtScalar> ypow(r + 1, ExtScalar::one(p, K));
    for (long k = 1; k <= r; ++k) ypow[k] = ypow[k - 1] * y;
    for (long j = 0; j <= r; ++j) {
        if (c[j].is_zero()) continue;
        for (long i = 0; i <= j; ++i) {
            ExtScalar term = c[j] * ebinom(p, K, j, i);
            if (j > i) term *= ypow[j - i];
            out.c[i] += term;
        }
    }
    return out;
}

EPoly EPoly::sub_lower(const ExtScalar& x) const {
    if (x.is_zero()) return *this;
    EPoly out = zero(p, r, K);
    std::vector<ExtScalar> xpow(r + 1, ExtScalar::one(p, K));
    for (long k = 1; k <= r; ++k) xpow[k] = xpow[k - 1] * x;
    for (long j = 0; j <= r; ++j) {
        if (c[j].is_zero()) continue;
        for (long i = j; i <= r; ++i) {
            ExtScalar term = c[j] * ebinom(p, K, r - j, i - j);
            if (i > j) term *= xpow[i - j];
            out.c[i] += term;
        }
    }
    return out;
}

EPoly EPoly::sub_diag(const ExtScalar& u, const ExtScalar& w) const {
    EPoly out = zero(p, r, K);
    std::vector<ExtScalar> upow(r + 1, ExtScalar::one(p, K));
    std::vector<ExtScalar> wpow(r + 1, ExtScalar::one(p, K));
    for (long k = 1; k <= r; ++k) {
        upow[k] = upow[k - 1] * u;
        wpow[k] = wpow[k - 1] * w;
    }
    for (long j = 0; j <= r; ++j) {
        if (c[j].is_exact_zero()) continue;
        out.c[j] = c[j] * upow[r - j] * wpow[j];
    }
    return out;
}

EPoly EPoly::sub_swap() const {
    EPoly out = zero(p, r, K);
    for (long j = 0; j <= r; ++j) out.c[j] = c[r - j];
    return out;
}

FpPoly EPoly::residue() const {
    FpPoly out = FpPoly::zero(p, r);
    for (long j = 0; j <= r; ++j) {
        if (c[j].is_exact_zero()) continue;
        if (!c[j].is_integral())
            throw precondition_error("EPoly::residue: non-integral coefficient at j=" +
                                     std::to_string(j));
        out.c[j] = static_cast<fp_t>(c[j].residue());
    }
    return out;
}

std::string EPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (long j = 0; j <= r; ++j) {
        if (c[j].is_exact_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << c[j].str() << "*X^" << (r - j) << "Y^" << j;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace zigzag
