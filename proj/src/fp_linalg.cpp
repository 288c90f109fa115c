#include "zigzag/fp_linalg.hpp"

#include <map>
#include <mutex>

namespace zigzag {

fp_t fp_pow(fp_t a, long e, long p) {
    long r = 1, b = a % p;
    e %= (p - 1);
    if (e < 0) e += p - 1;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<fp_t>(r);
}

fp_t fp_inv(fp_t a, long p) {
    if (a % p == 0) throw precondition_error("fp_inv of 0");
    return fp_pow(a, p - 2, p);
}

long primitive_root(long p) {
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        long x = 1;
        for (long e = 1; e < p - 1 && ok; ++e) {
            x = x * g % p;
            if (x == 1) ok = false;
        }
        x = x * g % p;
        if (ok && x == 1) return g;
    }
    throw precondition_error("no primitive root (p not prime?)");
}

const std::vector<std::vector<fp_t>>& pascal_fp(long p, long upto) {
    static std::mutex mu;
    static std::map<long, std::vector<std::vector<fp_t>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& tab = cache[p];
    if (static_cast<long>(tab.size()) <= upto) {
        size_t old = tab.size();
        tab.resize(upto + 1);
        for (size_t n = old; n <= static_cast<size_t>(upto); ++n) {
            tab[n].assign(n + 1, 1);
            for (size_t k = 1; k < n; ++k)
                tab[n][k] = (tab[n - 1][k - 1] + tab[n - 1][k]) % p;
        }
    }
    return tab;
}

FpPoly FpPoly::monomial(long p, long r, long j, fp_t coeff) {
    FpPoly P = zero(p, r);
    if (j < 0 || j > r) throw precondition_error("monomial index out of range");
    P.c[j] = coeff % p;
    return P;
}

FpPoly FpPoly::theta(long p) {
    FpPoly P = zero(p, p + 1);
    P.c[1] = 1;
    P.c[p] = static_cast<fp_t>(p - 1);
    return P;
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
    if (p != o.p || r != o.r) throw precondition_error("FpPoly: mixed shapes");
    FpPoly out = *this;
    for (long j = 0; j <= r; ++j) out.c[j] = (out.c[j] + o.c[j]) % p;
    return out;
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
    if (p != o.p || r != o.r) throw precondition_error("FpPoly: mixed shapes");
    FpPoly out = *this;
    for (long j = 0; j <= r; ++j) out.c[j] = (out.c[j] + p - o.c[j]) % p;
    return out;
}

FpPoly FpPoly::scaled(fp_t s) const {
    FpPoly out = *this;
    s %= p;
    for (long j = 0; j <= r; ++j) out.c[j] = static_cast<fp_t>(1UL * out.c[j] * s % p);
    return out;
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    if (p != o.p) throw precondition_error("FpPoly: mixed primes");
    FpPoly out = zero(p, r + o.r);
    for (long i = 0; i <= r; ++i) {
        if (!c[i]) continue;
        for (long j = 0; j <= o.r; ++j)
            out.c[i + j] = (out.c[i + j] + 1UL * c[i] * o.c[j]) % p;
    }
    return out;
}

namespace {

// Elementary substitutions; each is O(r^2) on the coefficient vector.
FpPoly act_upper(const FpPoly& P, fp_t y) {  // P(X, yX + Y)
    long p = P.p, r = P.r;
    if (y == 0) return P;
    const auto& pas = pascal_fp(p, r);
    FpPoly out = FpPoly::zero(p, r);
    std::vector<fp_t> ypow(r + 1, 1);
    for (long k = 1; k <= r; ++k) ypow[k] = static_cast<fp_t>(1UL * ypow[k - 1] * y % p);
    for (long j = 0; j <= r; ++j) {
        if (!P.c[j]) continue;
        for (long i = 0; i <= j; ++i)
            out.c[i] = (out.c[i] + 1UL * P.c[j] * pas[j][i] % p * ypow[j - i]) % p;
    }
    return out;
}

FpPoly act_lower(const FpPoly& P, fp_t x) {  // P(X + xY, Y)
    long p = P.p, r = P.r;
    if (x == 0) return P;
    const auto& pas = pascal_fp(p, r);
    FpPoly out = FpPoly::zero(p, r);
    std::vector<fp_t> xpow(r + 1, 1);
    for (long k = 1; k <= r; ++k) xpow[k] = static_cast<fp_t>(1UL * xpow[k - 1] * x % p);
    for (long j = 0; j <= r; ++j) {
        if (!P.c[j]) continue;
        for (long i = j; i <= r; ++i)
            out.c[i] = (out.c[i] + 1UL * P.c[j] * pas[r - j][i - j] % p * xpow[i - j]) % p;
    }
    return out;
}

FpPoly act_diag(const FpPoly& P, fp_t u, fp_t w) {  // P(uX, wY)
    long p = P.p, r = P.r;
    FpPoly out = FpPoly::zero(p, r);
    for (long j = 0; j <= r; ++j) {
        if (!P.c[j]) continue;
        fp_t s = static_cast<fp_t>(1UL * fp_pow(u, r - j, p) * fp_pow(w, j, p) % p);
        out.c[j] = static_cast<fp_t>(1UL * P.c[j] * s % p);
    }
    return out;
}

FpPoly act_swap(const FpPoly& P) {  // P(Y, X)
    FpPoly out = P;
    for (long j = 0; j <= P.r; ++j) out.c[j] = P.c[P.r - j];
    return out;
}

}  // namespace

FpPoly gamma_act(const Gamma2& g, const FpPoly& P) {
    if (g.det() == 0) throw precondition_error("gamma_act: singular matrix");
    long p = P.p;
    if (g.a % p == 0) {
        // g = w * (c d; a b); apply the second factor first
        Gamma2 h{p, g.c, g.d, g.a, g.b};
        return act_swap(gamma_act(h, P));
    }
    // g = lower(c/a) * diag(a, det/a) * upper(b/a)
    fp_t ai = fp_inv(g.a, p);
    fp_t y = static_cast<fp_t>(1UL * g.b * ai % p);
    fp_t x = static_cast<fp_t>(1UL * g.c * ai % p);
    fp_t w = static_cast<fp_t>(1UL * g.det() * ai % p);
    FpPoly out = act_upper(P, y);
    out = act_diag(out, g.a, w);
    out = act_lower(out, x);
    return out;
}

std::optional<FpPoly> theta_factor(const FpPoly& P) {
    long p = P.p, r = P.r;
    if (r < p + 1) return std::nullopt;
    // theta*Q has c_j = q_(j-1) - q_(j-p); solve ascending and verify.
    FpPoly Q = FpPoly::zero(p, r - p - 1);
    for (long i = 0; i <= r - p - 1; ++i) {
        fp_t prev = (i + 1 - p >= 0) ? Q.c[i + 1 - p] : 0;
        Q.c[i] = (P.c[i + 1] + prev) % p;
    }
    FpPoly theta = FpPoly::theta(p);
    if (!(theta * Q == P)) return std::nullopt;
    return Q;
}

bool FpSpan::insert(std::vector<fp_t> v) {
    v = reduce(std::move(v));
    long piv = -1;
    for (long j = 0; j < width_; ++j)
        if (v[j]) {
            piv = j;
            break;
        }
    if (piv < 0) return false;
    fp_t inv = fp_inv(v[piv], p_);
    for (long j = 0; j < width_; ++j) v[j] = static_cast<fp_t>(1UL * v[j] * inv % p_);
    // clear this column in existing rows to stay fully reduced
    for (size_t k = 0; k < rows_.size(); ++k) {
        fp_t f = rows_[k][piv];
        if (!f) continue;
        for (long j = 0; j < width_; ++j)
            rows_[k][j] = static_cast<fp_t>((rows_[k][j] + 1UL * (p_ - f) * v[j]) % p_);
    }
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, piv);
    return true;
}

std::vector<fp_t> FpSpan::reduce(std::vector<fp_t> v) const {
    for (size_t k = 0; k < rows_.size(); ++k) {
        fp_t f = v[pivots_[k]];
        if (!f) continue;
        const auto& row = rows_[k];
        for (long j = 0; j < width_; ++j)
            v[j] = static_cast<fp_t>((v[j] + 1UL * (p_ - f) * row[j]) % p_);
    }
    return v;
}

bool FpSpan::contains(const std::vector<fp_t>& v) const {
    auto red = reduce(v);
    for (fp_t x : red)
        if (x) return false;
    return true;
}

std::optional<std::vector<fp_t>> FpSpan::coords(const std::vector<fp_t>& v) const {
    std::vector<fp_t> cs(rows_.size(), 0);
    std::vector<fp_t> w = v;
    for (size_t k = 0; k < rows_.size(); ++k) {
        fp_t f = w[pivots_[k]];
        cs[k] = f;
        if (!f) continue;
        const auto& row = rows_[k];
        for (long j = 0; j < width_; ++j)
            w[j] = static_cast<fp_t>((w[j] + 1UL * (p_ - f) * row[j]) % p_);
    }
    for (fp_t x : w)
        if (x) return std::nullopt;
    return cs;
}

std::vector<std::vector<fp_t>> fp_nullspace(const std::vector<std::vector<fp_t>>& rows, long n,
                                            long p) {
    FpSpan span(p, n);
    for (const auto& row : rows) span.insert(row);
    std::vector<bool> ispivot(n, false);
    for (long piv : span.pivots()) ispivot[piv] = true;
    std::vector<std::vector<fp_t>> basis;
    for (long j = 0; j < n; ++j) {
        if (ispivot[j]) continue;
        std::vector<fp_t> v(n, 0);
        v[j] = 1;
        for (size_t k = 0; k < span.rows().size(); ++k) {
            fp_t coeff = span.rows()[k][j];
            v[span.pivots()[k]] = coeff ? static_cast<fp_t>(p - coeff) : 0;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<fp_t>> fp_solve(const std::vector<std::vector<fp_t>>& rows,
                                          const std::vector<fp_t>& b, long n, long p) {
    // Augment with the RHS and reduce.
    FpSpan span(p, n + 1);
    for (size_t i = 0; i < rows.size(); ++i) {
        std::vector<fp_t> row = rows[i];
        row.push_back(b[i]);
        span.insert(std::move(row));
    }
    // Inconsistent iff some echelon row pivots in the last column.
    for (size_t k = 0; k < span.rows().size(); ++k)
        if (span.pivots()[k] == n) return std::nullopt;
    std::vector<fp_t> x(n, 0);
    for (size_t k = 0; k < span.rows().size(); ++k) {
        // rows are fully reduced: pivot variable value is the augmented entry
        x[span.pivots()[k]] = span.rows()[k][n];
    }
    // verify (free variables set to 0)
    for (size_t i = 0; i < rows.size(); ++i) {
        unsigned long acc = 0;
        for (long j = 0; j < n; ++j) acc += 1UL * rows[i][j] * x[j] % p;
        if (acc % p != b[i]) return std::nullopt;
    }
    return x;
}

}  // namespace zigzag
