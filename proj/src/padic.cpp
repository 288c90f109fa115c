#include "zigzag/padic.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <climits>

namespace zigzag {

namespace {

constexpr long kInfFloor = LONG_MAX / 4;

// Carry normalization for base-p digits of a pi-expansion: p*pi^i = pi^(i+2),
// so carries move with stride 2.  Entries may be any int64 on input.
void carry_fix(std::vector<int64_t>& buf, long p) {
    for (size_t i = 0; i < buf.size(); ++i) {
        int64_t c = buf[i];
        int64_t q = c >= 0 ? c / p : -((-c + p - 1) / p);
        int64_t r = c - q * p;
        buf[i] = r;
        if (q != 0 && i + 2 < buf.size()) buf[i + 2] += q;
    }
}

std::vector<int64_t> raw_mul(const std::vector<int32_t>& a, const std::vector<int32_t>& b,
                             size_t outlen, long p) {
    std::vector<int64_t> buf(outlen, 0);
    for (size_t i = 0; i < a.size() && i < outlen; ++i) {
        if (a[i] == 0) continue;
        int64_t ai = a[i];
        size_t jmax = std::min(b.size(), outlen - i);
        for (size_t j = 0; j < jmax; ++j) buf[i + j] += ai * b[j];
    }
    carry_fix(buf, p);
    return buf;
}

}  // namespace

std::string HalfInt::str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

ExtScalar ExtScalar::zero_mod(long p, long floor_vpi) {
    ExtScalar z(p);
    z.exact_ = false;
    z.vpi_ = floor_vpi;
    return z;
}

ExtScalar ExtScalar::pi(long p, int nd) {
    ExtScalar x = one(p, nd);
    return x.mul_pi_pow(1);
}

ExtScalar ExtScalar::from_long(long p, long value, int nd) {
    return from_mpz(p, mpz_class(value), nd);
}

ExtScalar ExtScalar::from_mpz(long p, const mpz_class& value, int nd) {
    if (p < 3) throw precondition_error("ExtScalar: prime must be odd and >= 3");
    if (nd < 1) throw precondition_error("ExtScalar: need at least one digit");
    if (value == 0) return zero(p);
    mpz_class u = value;
    unsigned long v = mpz_remove(u.get_mpz_t(), u.get_mpz_t(), mpz_class(p).get_mpz_t());
    size_t m = static_cast<size_t>((nd + 1) / 2);
    mpz_class pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), m);
    mpz_class w;
    mpz_fdiv_r(w.get_mpz_t(), u.get_mpz_t(), pm.get_mpz_t());  // non-negative rep
    ExtScalar x(p);
    x.zero_ = false;
    x.vpi_ = 2 * static_cast<long>(v);
    x.digits_.assign(2 * m, 0);
    for (size_t i = 0; i < m; ++i) {
        mpz_class d = w % p;
        x.digits_[2 * i] = static_cast<int32_t>(d.get_si());
        w /= p;
    }
    while (x.digits_.size() > static_cast<size_t>(nd) && x.digits_.back() == 0)
        x.digits_.pop_back();
    assert(x.digits_[0] != 0);
    return x;
}

ExtScalar ExtScalar::from_rational(long p, const mpz_class& num, const mpz_class& den, int nd) {
    if (den == 0) throw precondition_error("from_rational: zero denominator");
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)))
        throw precondition_error("from_rational: denominator divisible by p");
    return from_mpz(p, num, nd).div(from_mpz(p, den, nd));
}

ExtScalar ExtScalar::teichmuller(long p, long lam, int nd) {
    lam %= p;
    if (lam < 0) lam += p;
    if (lam == 0) return zero(p);
    size_t m = static_cast<size_t>((nd + 1) / 2);
    mpz_class pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), m);
    mpz_class x(lam);
    // x -> x^p gains one reliable p-digit per step.
    for (size_t i = 0; i + 1 < m; ++i)
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p), pm.get_mpz_t());
    ExtScalar r(p);
    r.zero_ = false;
    r.vpi_ = 0;
    r.digits_.assign(2 * m, 0);
    for (size_t i = 0; i < m; ++i) {
        mpz_class d = x % p;
        r.digits_[2 * i] = static_cast<int32_t>(d.get_si());
        x /= p;
    }
    return r;
}

long ExtScalar::vpi() const {
    if (zero_) throw precision_error("vpi() of a zero value");
    return vpi_;
}

long ExtScalar::floor_vpi() const {
    if (zero_) return exact_ ? kInfFloor : vpi_;
    return vpi_ + static_cast<long>(digits_.size());
}

std::optional<HalfInt> ExtScalar::valuation() const {
    if (zero_) return std::nullopt;
    return HalfInt::of_vpi(vpi_);
}

void ExtScalar::normalize(std::vector<int32_t>&& buf, long base, long floor) {
    size_t lead = 0;
    while (lead < buf.size() && buf[lead] == 0) ++lead;
    if (lead == buf.size()) {
        zero_ = true;
        exact_ = floor >= kInfFloor;
        vpi_ = floor;
        digits_.clear();
        return;
    }
    zero_ = false;
    exact_ = false;
    vpi_ = base + static_cast<long>(lead);
    digits_.assign(buf.begin() + lead, buf.end());
}

ExtScalar ExtScalar::operator-() const {
    if (zero_) return *this;
    ExtScalar r(*this);
    std::vector<int64_t> buf(digits_.begin(), digits_.end());
    for (size_t i = 0; i < buf.size(); ++i) buf[i] = -buf[i];
    carry_fix(buf, p_);
    for (size_t i = 0; i < buf.size(); ++i) r.digits_[i] = static_cast<int32_t>(buf[i]);
    assert(r.digits_[0] != 0);
    return r;
}

ExtScalar ExtScalar::operator+(const ExtScalar& o) const {
    if (is_exact_zero()) return o;
    if (o.is_exact_zero()) return *this;
    if (p_ != o.p_) throw precondition_error("ExtScalar: mixed primes");
    long floor = std::min(floor_vpi(), o.floor_vpi());
    long base = floor;
    if (!zero_) base = std::min(base, vpi_);
    if (!o.zero_) base = std::min(base, o.vpi_);
    if (base >= floor) return zero_mod(p_, floor);
    std::vector<int64_t> buf(static_cast<size_t>(floor - base), 0);
    auto fold = [&](const ExtScalar& x) {
        if (x.zero_) return;
        size_t off = static_cast<size_t>(x.vpi_ - base);
        for (size_t i = 0; i < x.digits_.size() && off + i < buf.size(); ++i)
            buf[off + i] += x.digits_[i];
    };
    fold(*this);
    fold(o);
    carry_fix(buf, p_);
    ExtScalar r(p_);
    std::vector<int32_t> out(buf.begin(), buf.end());
    r.normalize(std::move(out), base, floor);
    return r;
}

ExtScalar ExtScalar::operator-(const ExtScalar& o) const { return *this + (-o); }

ExtScalar ExtScalar::operator*(const ExtScalar& o) const {
    if (p_ != o.p_ && p_ != 0 && o.p_ != 0) throw precondition_error("ExtScalar: mixed primes");
    long p = p_ ? p_ : o.p_;
    if (is_exact_zero() || o.is_exact_zero()) return zero(p);
    if (zero_ || o.zero_) {
        // vpi_ is the floor for an inexact zero and the valuation otherwise;
        // either way the product vanishes mod pi^(vpi_ + o.vpi_).
        return zero_mod(p, vpi_ + o.vpi_);
    }
    size_t nd = std::min(digits_.size(), o.digits_.size());
    std::vector<int64_t> buf = raw_mul(digits_, o.digits_, nd, p);
    ExtScalar r(p);
    r.zero_ = false;
    r.exact_ = false;
    r.vpi_ = vpi_ + o.vpi_;
    r.digits_.assign(buf.begin(), buf.end());
    assert(r.digits_[0] != 0);
    return r;
}

ExtScalar ExtScalar::inv() const {
    if (zero_) {
        if (exact_) throw precondition_error("inv() of zero");
        throw precision_error("inv() of a value that vanishes within precision");
    }
    size_t nd = digits_.size();
    // Newton iteration y <- y(2 - u y); correct digits double each round.
    long u0 = digits_[0];
    long y0 = 1;
    {  // inverse mod p by Fermat
        long e = p_ - 2, b = u0 % p_;
        while (e) {
            if (e & 1) y0 = (y0 * b) % p_;
            b = (b * b) % p_;
            e >>= 1;
        }
    }
    std::vector<int32_t> y{static_cast<int32_t>(y0)};
    size_t len = 1;
    while (len < nd) {
        len = std::min(2 * len, nd);
        std::vector<int64_t> uy = raw_mul(digits_, y, len, p_);
        std::vector<int64_t> two(len, 0);
        two[0] = 2;
        for (size_t i = 0; i < len; ++i) two[i] -= uy[i];
        carry_fix(two, p_);
        std::vector<int32_t> t(two.begin(), two.end());
        std::vector<int64_t> yn = raw_mul(y, t, len, p_);
        y.assign(yn.begin(), yn.end());
    }
    ExtScalar r(p_);
    r.zero_ = false;
    r.exact_ = false;
    r.vpi_ = -vpi_;
    r.digits_ = std::move(y);
    return r;
}

ExtScalar ExtScalar::pow_u(unsigned long e) const {
    ExtScalar acc = one(p_, zero_ ? 1 : static_cast<int>(digits_.size()));
    ExtScalar base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

ExtScalar ExtScalar::mul_pi_pow(long e) const {
    ExtScalar r(*this);
    if (r.is_exact_zero()) return r;
    r.vpi_ += e;
    return r;
}

bool ExtScalar::is_integral() const {
    if (zero_) {
        if (exact_) return true;
        if (vpi_ > 0) return true;
        throw precision_error("integrality undecidable at current precision");
    }
    return vpi_ >= 0;
}

long ExtScalar::residue() const {
    if (zero_) {
        if (exact_ || vpi_ >= 1) return 0;
        throw precision_error("residue undecidable: value only known to be O(pi^" +
                              std::to_string(vpi_) + ")");
    }
    if (vpi_ < 0) throw precondition_error("residue of a non-integral value");
    return vpi_ > 0 ? 0 : digits_[0];
}

bool ExtScalar::same_scalar(const ExtScalar& o) const {
    if (zero_ != o.zero_) return false;
    if (zero_) return exact_ == o.exact_ && (exact_ || vpi_ == o.vpi_);
    return vpi_ == o.vpi_ && digits_ == o.digits_;
}

bool ExtScalar::congruent(const ExtScalar& o, long min_floor_vpi) const {
    long floor = std::min(floor_vpi(), o.floor_vpi());
    if (floor < min_floor_vpi)
        throw precision_error("congruence check below requested precision");
    ExtScalar d = *this - o;
    return d.is_zero() || d.vpi() >= min_floor_vpi;
}

std::string ExtScalar::str() const {
    if (zero_) {
        if (exact_) return "0";
        return "O(pi^" + std::to_string(vpi_) + ")";
    }
    std::string s;
    if (vpi_ != 0) s += "pi^" + std::to_string(vpi_) + "*";
    s += "(";
    bool first = true;
    for (size_t i = 0; i < digits_.size(); ++i) {
        if (digits_[i] == 0) continue;
        if (!first) s += " + ";
        first = false;
        s += std::to_string(digits_[i]);
        if (i == 1) s += "*pi";
        if (i > 1) s += "*pi^" + std::to_string(i);
    }
    if (first) s += "0";
    s += ")";
    return s;
}

namespace {

struct Cursor {
    std::string_view s;
    size_t i = 0;
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool eat_word(std::string_view w) {
        skip();
        if (s.substr(i, w.size()) == w) {
            i += w.size();
            return true;
        }
        return false;
    }
    std::optional<long> number() {
        skip();
        size_t j = i;
        bool neg = false;
        if (j < s.size() && (s[j] == '-' || s[j] == '+')) {
            neg = s[j] == '-';
            ++j;
        }
        size_t k = j;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == j) return std::nullopt;
        long v = std::stol(std::string(s.substr(j, k - j)));
        i = k;
        return neg ? -v : v;
    }
    bool done() {
        skip();
        return i == s.size();
    }
};

}  // namespace

ExtScalar ExtScalar::parse(long p, std::string_view text, int nd) {
    Cursor c{text};
    c.skip();
    long piexp = 0;
    bool have_prefix = false;
    if (c.eat_word("pi")) {
        have_prefix = true;
        piexp = 1;
        if (c.eat('^')) {
            auto e = c.number();
            if (!e) throw precondition_error("scalar parse: exponent expected after ^");
            piexp = *e;
        }
    } else if (c.eat_word("p")) {
        have_prefix = true;
        piexp = 2;  // p is pi^2
        if (c.eat('^')) {
            auto e = c.number();
            if (!e) throw precondition_error("scalar parse: exponent expected after ^");
            piexp = 2 * *e;
        }
    }

    if (have_prefix) {
        if (c.done()) return one(p, nd).mul_pi_pow(piexp);
        if (!c.eat('*'))
            throw precondition_error("scalar parse: expected '*' or end after pi power");
    }

    c.skip();
    if (c.eat('(')) {
        ExtScalar acc = zero(p);
        do {
            auto d = c.number();
            if (!d || *d < 0 || *d >= p)
                throw precondition_error("scalar parse: digit in [0,p) expected");
            long e = 0;
            if (c.eat('*')) {
                if (!c.eat_word("pi")) throw precondition_error("scalar parse: pi expected");
                e = 1;
                if (c.eat('^')) {
                    auto ee = c.number();
                    if (!ee || *ee < 0)
                        throw precondition_error("scalar parse: nonneg exponent expected");
                    e = *ee;
                }
            }
            if (*d != 0) acc += from_long(p, *d, nd + static_cast<int>(e)).mul_pi_pow(e);
        } while (c.eat('+'));
        if (!c.eat(')')) throw precondition_error("scalar parse: ')' expected");
        if (!c.done()) throw precondition_error("scalar parse: trailing characters");
        return acc.mul_pi_pow(piexp);
    }
    if (have_prefix) throw precondition_error("scalar parse: '(' expected");
    auto v = c.number();
    if (!v || !c.done()) throw precondition_error("scalar parse: bad scalar literal");
    return from_long(p, *v, nd);
}

ExtScalar operator*(long a, const ExtScalar& b) {
    if (b.prime() == 0) throw precondition_error("scaling an uninitialized scalar");
    int nd = b.is_zero() ? 8 : b.ndigits();
    return ExtScalar::from_long(b.prime(), a, std::max(nd, 8)) * b;
}

}  // namespace zigzag
